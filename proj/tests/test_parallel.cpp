#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cloakforge/claims.hpp"
#include "cloakforge/fusion.hpp"
#include "cloakforge/parallel.hpp"

using namespace cloakforge;
using namespace cloakforge::fincat;
using namespace cloakforge::magmal;

// The OpenMP scan kernels must agree with the serial reference bit for bit:
// every grid cell writes only its own slot, so the outputs are comparable
// directly.

namespace {

struct ParGuard {
  bool was;
  explicit ParGuard(bool on) : was(par::enabled()) { par::set_enabled(on); }
  ~ParGuard() { par::set_enabled(was); }
};

}  // namespace

TEST_CASE("cloak grid: serial and parallel runs are identical") {
  auto p = diamond_poset();
  auto c = meet_magmal(p);
  CloakTable serial, parallel;
  {
    ParGuard g(false);
    serial = compute_cloaks(c);
  }
  {
    ParGuard g(true);
    parallel = compute_cloaks(c);
  }
  for (Id y = 0; y < 4; ++y)
    for (Id z = 0; z < 4; ++z) {
      REQUIRE(serial.at[y][z].has_value() == parallel.at[y][z].has_value());
      if (serial.at[y][z]) {
        CHECK(serial.at[y][z]->hom_obj == parallel.at[y][z]->hom_obj);
        CHECK(serial.at[y][z]->ev == parallel.at[y][z]->ev);
        CHECK(serial.at[y][z]->passing_candidates ==
              parallel.at[y][z]->passing_candidates);
      }
    }
}

TEST_CASE("hopf scan: serial and parallel runs agree") {
  auto p = diamond_poset();
  auto c = meet_magmal(p);
  auto g = poset_comonad(c, {0, 1, 0, 1});
  REQUIRE(g.has_value());
  auto emc = em::build_em(*g);
  auto cloaks = compute_cloaks(c);
  fusion::HopfReport a, b;
  {
    ParGuard gd(false);
    a = fusion::hopf_wood_check(*g, emc, cloaks,
                                fusion::HopfMode::AllCoalgebras);
  }
  {
    ParGuard gd(true);
    b = fusion::hopf_wood_check(*g, emc, cloaks,
                                fusion::HopfMode::AllCoalgebras);
  }
  CHECK(a.hopf == b.hopf);
  CHECK(a.failures == b.failures);
}

TEST_CASE("claim cells: serial and parallel reports are identical") {
  auto docs = dsl::generate_instance("diamond()");
  std::vector<dsl::Report> a, b;
  {
    ParGuard g(false);
    a = claims::verify("L5.11", docs);
  }
  {
    ParGuard g(true);
    b = claims::verify("L5.11", docs);
  }
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].to_json(false) == b[i].to_json(false));
  }
}
