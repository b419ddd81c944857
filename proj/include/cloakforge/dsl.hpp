#pragma once

#include <memory>

#include "cloakforge/em.hpp"
#include "cloakforge/fusion.hpp"
#include "cloakforge/procomonad.hpp"
#include "cloakforge/prof.hpp"

namespace cloakforge::dsl {

enum class Kind {
  Category,
  Poset,
  Monoid,
  Magmal,
  Comonad,
  Monad,
  Profunctor,
  Presheaf,
  Procomonad,
  Bundle,
};

std::string kind_name(Kind k);

// A parsed and fully resolved instance. The payload is kept in canonical
// form so that parse∘serialize is the identity byte-for-byte.
struct InstanceDoc {
  Kind kind = Kind::Poset;
  std::string name;
  std::string canonical_payload;  // canonical JSON text of the payload

  // resolved structures, filled according to kind
  std::optional<fincat::Poset> poset;
  fincat::CatPtr category;
  std::optional<magmal::MagmalCategory> magmal_cat;
  std::optional<magmal::MagmalComonad> comonad;
  std::optional<em::OpmagmalMonad> monad;
  std::optional<fusion::FiniteMonoid> monoid;
  std::optional<prof::Profunctor> profunctor;
  std::optional<prof::Presheaf> presheaf;
  std::optional<procomonad::MagmalProcomonad> procomonad_inst;
};

// Parses one document or an array of documents (names resolve backwards
// within the array and against the builtin lattices). Errors:
//   ParseError      — syntax, with line/column
//   ResolveError    — unknown name, with the JSON path
//   ValidationError — delegated law failure, naming the violated instance
std::vector<InstanceDoc> parse_documents(const std::string& text);
InstanceDoc parse_instance(const std::string& text);
std::string serialize(const InstanceDoc& doc);

// Instance generators (the engine's instance classes).
//   heyting-chain(n); diamond; all-heyting(n); interior-operators(lattice);
//   closure-operators(lattice); monoid(name); all-monoids(n);
//   cyclic-group(n); delta-comonads-from-adjoints(lattice)
std::vector<InstanceDoc> generate_instance(const std::string& recipe);

// All Heyting lattices with ≤ n elements, up to isomorphism, deterministic.
std::vector<fincat::Poset> all_heyting(int n);
std::vector<std::vector<fincat::Id>> interior_operators(const fincat::Poset& p);
std::vector<std::vector<fincat::Id>> closure_operators(const fincat::Poset& p);
// (closure, interior) adjoint pairs t ⊣ g on the lattice.
std::vector<std::pair<std::vector<fincat::Id>, std::vector<fincat::Id>>>
adjoint_pairs(const fincat::Poset& p);

// The bounded presheaf test set used by the presheaf-layer suites: representables,
// terminal, empty, and every 01-presheaf on the base.
std::vector<prof::Presheaf> presheaf_test_set(const fincat::CatPtr& c);

// One verdict line of a report stream.
struct Report {
  std::string claim;
  std::string instance;
  bool holds = false;
  std::string detail;     // witness or counterexample
  double timing_ms = 0.0; // excluded from byte-stability comparisons
  std::string to_json(bool with_timing = true) const;
};

// CLI driver; argv excludes the program name. Returns the exit code:
// 0 all verdicts hold, 1 falsified claim, 2 usage error.
int run_command(const std::vector<std::string>& argv, std::ostream& out,
                std::ostream& err);

}  // namespace cloakforge::dsl
