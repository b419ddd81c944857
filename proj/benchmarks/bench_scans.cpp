// Serial vs OpenMP comparison on the scan grids: the cloak search grid, the
// Wood fusion scan, and the γ-fusion Hopf grid (per-cell coend quotients) on
// the Boolean lattice 2^3.

#include <benchmark/benchmark.h>

#include "cloakforge/em.hpp"
#include "cloakforge/fusion.hpp"
#include "cloakforge/parallel.hpp"
#include "cloakforge/procomonad.hpp"

using namespace cloakforge;
using namespace cloakforge::fincat;
using namespace cloakforge::magmal;

namespace {

Poset boolean3() {
  // subsets of {0,1,2} ordered by inclusion
  std::vector<std::vector<bool>> leq(8, std::vector<bool>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) leq[a][b] = (a & b) == a;
  return poset_category(leq, "bool3");
}

struct Fixture {
  Poset p = boolean3();
  MagmalCategory c = meet_magmal(p);
  MagmalComonad g;
  em::EMCategory emc;
  CloakTable cloaks;
  procomonad::MagmalProcomonad mg;
  Fixture()
      : g(*poset_comonad(c, [] {
          std::vector<Id> op(8);
          for (int x = 0; x < 8; ++x) op[x] = x & 3;  // meet with {0,1}
          return op;
        }())),
        emc(em::build_em(g)),
        cloaks(compute_cloaks(c)),
        mg(procomonad::magmal_gamma_from_comonad(g)) {}
};

Fixture& fixture() {
  static Fixture f;
  return f;
}

void bench_cloak_grid(benchmark::State& state, bool parallel) {
  auto& f = fixture();
  par::set_enabled(parallel);
  for (auto _ : state) {
    auto t = compute_cloaks(f.c);
    benchmark::DoNotOptimize(t);
  }
  par::set_enabled(true);
}

void bench_hopf_scan(benchmark::State& state, bool parallel) {
  auto& f = fixture();
  par::set_enabled(parallel);
  for (auto _ : state) {
    auto r = fusion::hopf_wood_check(f.g, f.emc, f.cloaks,
                                     fusion::HopfMode::AllCoalgebras);
    benchmark::DoNotOptimize(r);
  }
  par::set_enabled(true);
}

void bench_gamma_hopf_grid(benchmark::State& state, bool parallel) {
  auto& f = fixture();
  par::set_enabled(parallel);
  procomonad::GammaAlgebra ya{3, 0};  // ({0,1}, fix)
  for (auto _ : state) {
    auto r = procomonad::hopf_at(f.mg, f.cloaks, ya, false, {});
    benchmark::DoNotOptimize(r);
  }
  par::set_enabled(true);
}

}  // namespace

BENCHMARK_CAPTURE(bench_cloak_grid, serial, false);
BENCHMARK_CAPTURE(bench_cloak_grid, openmp, true);
BENCHMARK_CAPTURE(bench_hopf_scan, serial, false);
BENCHMARK_CAPTURE(bench_hopf_scan, openmp, true);
BENCHMARK_CAPTURE(bench_gamma_hopf_grid, serial, false);
BENCHMARK_CAPTURE(bench_gamma_hopf_grid, openmp, true);

BENCHMARK_MAIN();
