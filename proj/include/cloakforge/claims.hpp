#pragma once

#include "cloakforge/dsl.hpp"

namespace cloakforge::claims {

// The claim registry: every in-scope lemma/proposition maps to exactly one
// verification routine in its owning module. `verify` expands the instance
// (or recipe) into the claim's cell grid and returns one report per cell.
std::vector<std::string> claim_ids();
bool is_claim(const std::string& id);
std::string owning_module(const std::string& id);

std::vector<dsl::Report> verify(const std::string& claim_id,
                                const std::vector<dsl::InstanceDoc>& docs);

// Expands `file-or-recipe`: "recipe:<name(args)>" or a path to a JSON file.
std::vector<dsl::InstanceDoc> load_instances(const std::string& src);

// The full acceptance grid: every claim over its default recipe grid.
// Reports come back sorted by (claim, instance) regardless of the execution
// order; cells run through the parallel scan layer.
std::vector<dsl::Report> run_suite();

}  // namespace cloakforge::claims
