// Acceptance suite: one line per criterion, with the stated runtime budgets
// pinned in code. Exit status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cloakforge/claims.hpp"
#include "cloakforge/dsl.hpp"
#include "cloakforge/em.hpp"
#include "cloakforge/procomonad.hpp"

using namespace cloakforge;
using cloakforge::dsl::Report;

namespace {

struct Criterion {
  int number;
  std::string summary;
  double budget_s;
  std::function<bool(std::string&)> run;
};

bool all_hold(const std::vector<Report>& reports, std::string& detail) {
  int bad = 0;
  for (const auto& r : reports)
    if (!r.holds) {
      ++bad;
      if (bad == 1) detail = r.claim + "/" + r.instance + ": " + r.detail;
    }
  if (bad > 1) detail += " (+" + std::to_string(bad - 1) + " more)";
  detail += detail.empty() ? std::to_string(reports.size()) + " cells" : "";
  return bad == 0;
}

}  // namespace

int main() {
  auto grid = dsl::generate_instance("all-heyting(5)");
  auto monoids = dsl::generate_instance("all-monoids(4)");

  std::vector<Criterion> criteria;

  criteria.push_back({1, "Heyting grid: L2.4, L2.5, L3.5, L3.8, P3.9", 60.0,
                      [&](std::string& d) {
                        bool ok = true;
                        for (const char* id :
                             {"L2.4", "L2.5", "L3.5", "L3.8", "P3.9"})
                          ok = all_hold(claims::verify(id, grid), d) && ok;
                        return ok;
                      }});

  criteria.push_back({2, "P3.3: cofree-only agrees with all-coalgebras",
                      30.0, [&](std::string& d) {
                        return all_hold(claims::verify("P3.3", grid), d);
                      }});

  criteria.push_back({3, "monoids of order ≤ 4: Hopf = group", 60.0,
                      [&](std::string& d) {
                        return all_hold(claims::verify("EX4", monoids), d);
                      }});

  criteria.push_back({4, "P4.2 on all adjoint closure/interior pairs",
                      60.0, [&](std::string& d) {
                        return all_hold(claims::verify("P4.2", grid), d);
                      }});

  criteria.push_back(
      {5, "derived procomonads: C^{T*} ≅ C^T and C^{G*} ≅ C^G over C", 30.0,
       [&](std::string& d) {
         for (const auto& doc : grid) {
           if (!doc.poset || !doc.magmal_cat) continue;
           for (auto& op : dsl::interior_operators(*doc.poset)) {
             auto g = magmal::poset_comonad(*doc.magmal_cat, op);
             if (!g) continue;
             auto alg = procomonad::build_gamma_algebras(
                 procomonad::gamma_from_comonad(*g));
             if (!procomonad::algebras_match_em(alg, em::build_em(*g))) {
               d = "comonad case fails on " + doc.name;
               return false;
             }
           }
           for (auto& op : dsl::closure_operators(*doc.poset)) {
             auto t = em::poset_monad(*doc.magmal_cat, op);
             if (!t) continue;
             auto alg = procomonad::build_gamma_algebras(
                 procomonad::gamma_from_monad(*t));
             if (!procomonad::algebras_match_em(alg, em::build_em_monad(*t))) {
               d = "monad case fails on " + doc.name;
               return false;
             }
           }
         }
         return true;
       }});

  criteria.push_back(
      {6, "fusion coherence (P5.8/C5.9) and T5.12 with the diamond "
          "counterexample",
       120.0, [&](std::string& d) {
         bool ok = all_hold(claims::verify("P5.8", grid), d) &&
                   all_hold(claims::verify("C5.9", grid), d) &&
                   all_hold(claims::verify("T5.12", grid), d);
         // the designated non-Hopf instance: diamond with g = −∧a
         auto pd = fincat::diamond_poset();
         auto cd = magmal::meet_magmal(pd);
         auto g = magmal::poset_comonad(cd, {0, 1, 0, 1});
         if (!g) return false;
         auto mg = procomonad::magmal_gamma_from_comonad(*g);
         auto cloaks = magmal::compute_cloaks(cd);
         auto rep = procomonad::omega_and_theorem(mg, cloaks, {1, 0}, {0, 0});
         if (rep.hopf || rep.creation_side || !rep.iff_holds) {
           d = "diamond counterexample misbehaves";
           ok = false;
         }
         return ok;
       }});

  criteria.push_back(
      {7, "presheaf layer (P5.6) and L5.11 on bounded test sets", 120.0,
       [&](std::string& d) {
         return all_hold(claims::verify("P5.6", grid), d) &&
                all_hold(claims::verify("L5.11", grid), d);
       }});

  criteria.push_back(
      {8, "A-series: EM round-trips and doctrinal verdicts on ≥ 20 "
          "morphisms",
       60.0, [&](std::string& d) {
         auto a3 = claims::verify("A3", grid);
         if (a3.size() < 20) {
           d = "only " + std::to_string(a3.size()) + " morphisms";
           return false;
         }
         bool ok = all_hold(a3, d);
         for (const char* id : {"A1", "A2", "A4", "A5"})
           ok = all_hold(claims::verify(id, grid), d) && ok;
         return ok;
       }});

  criteria.push_back(
      {9, "B-series: B1, B2(i)–(iii), B3 on ≥ 20 bundles; Dubuc never "
          "fails",
       120.0, [&](std::string& d) {
         bool ok = true;
         for (const char* id : {"B1", "B2", "B3"}) {
           auto reports = claims::verify(id, grid);
           if (reports.size() < 20) {
             d = std::string(id) + ": only " +
                 std::to_string(reports.size()) + " bundles";
             ok = false;
           }
           ok = all_hold(reports, d) && ok;
         }
         auto dubuc = claims::verify("DUBUC", grid);
         for (const auto& r : dubuc)
           if (r.detail == "fails") {
             d = "Dubuc returned fails on " + r.instance;
             ok = false;
           }
         ok = all_hold(dubuc, d) && ok;
         return ok;
       }});

  criteria.push_back(
      {10, "infrastructure: round-trips, deterministic reports, suite exit 0",
       600.0, [&](std::string& d) {
         // parse ∘ serialize identity over the generated corpus
         for (const char* recipe :
              {"all-heyting(5)", "all-monoids(3)", "interior-operators(diamond)",
               "closure-operators(chain4)",
               "delta-comonads-from-adjoints(diamond)", "cyclic-group(6)"})
           for (const auto& doc : dsl::generate_instance(recipe)) {
             std::string s = dsl::serialize(doc);
             if (dsl::serialize(dsl::parse_instance(s)) != s) {
               d = "round-trip failed for " + doc.name;
               return false;
             }
           }
         // two consecutive runs must be byte-stable modulo the timing field
         auto a = claims::verify("P3.9", grid);
         auto b = claims::verify("P3.9", grid);
         if (a.size() != b.size()) {
           d = "report streams differ in length";
           return false;
         }
         for (size_t i = 0; i < a.size(); ++i)
           if (a[i].to_json(false) != b[i].to_json(false)) {
             d = "report streams differ";
             return false;
           }
         // the full suite must exit 0
         std::ostringstream out, err;
         if (dsl::run_command({"suite"}, out, err) != 0) {
           d = "suite exit code is nonzero";
           return false;
         }
         return true;
       }});

  int failed = 0;
  for (auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const Error& e) {
      detail = e.what();
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    bool in_budget = secs < c.budget_s;
    bool pass = ok && in_budget;
    if (!pass) ++failed;
    std::printf("criterion %2d: %s  (%6.2fs / %.0fs)  %s%s%s\n", c.number,
                pass ? "PASS" : "FAIL", secs, c.budget_s, c.summary.c_str(),
                detail.empty() ? "" : " — ", detail.c_str());
    std::fflush(stdout);
  }
  return failed;
}
