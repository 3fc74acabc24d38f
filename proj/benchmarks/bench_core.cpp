#include <random>

#include <benchmark/benchmark.h>

#include "vircoh/exactalg.hpp"
#include "vircoh/inertia.hpp"
#include "vircoh/subring.hpp"
#include "vircoh/sym_product.hpp"

using namespace vircoh;

static void BM_Rref(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> dist(-4, 4);
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = dist(rng);
  for (auto _ : state) benchmark::DoNotOptimize(rref(m).rank);
}
BENCHMARK(BM_Rref)->Arg(8)->Arg(16)->Arg(32);

// pushforwards of every fixed-locus basis class
static void BM_Pushforward(benchmark::State& state) {
  const SymmetricProduct sp(make_cp(static_cast<int>(state.range(0))), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) {
    std::size_t nonzero = 0;
    for (std::size_t g = 0; g < sp.group()->order(); ++g) {
      const auto& fixed = sp.fixed_model(g);
      for (std::size_t a = 0; a < fixed.dim(); ++a)
        nonzero += !sp.pushforward(g, CohClass::basis(fixed.ring_ptr(), a)).is_zero();
    }
    benchmark::DoNotOptimize(nonzero);
  }
}
BENCHMARK(BM_Pushforward)->Args({1, 3})->Args({2, 3})->Args({1, 4});

static void BM_Closure(benchmark::State& state) {
  const SymmetricProduct sp(make_cp(static_cast<int>(state.range(0))), static_cast<std::size_t>(state.range(1)));
  const GeneratorSet gens = sp.generators();
  for (auto _ : state) benchmark::DoNotOptimize(close_subring(gens).basis().size());
}
BENCHMARK(BM_Closure)->Args({1, 2})->Args({2, 2})->Args({1, 3})->Args({2, 3});

static void BM_DirectRing(benchmark::State& state) {
  const InertiaScenario sc = build_scenario_cpn_zp(static_cast<int>(state.range(0)), 5, true);
  for (auto _ : state) benchmark::DoNotOptimize(virtual_ring_direct(sc).dims.total);
}
BENCHMARK(BM_DirectRing)->Arg(2)->Arg(4);
BENCHMARK_MAIN();
