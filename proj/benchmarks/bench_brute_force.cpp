#include <benchmark/benchmark.h>

#include "qasa/ising.hpp"

namespace {

void bm_brute_force(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  qasa::Rng rng(n);
  const auto problem = qasa::generate_problem(n, 6, rng);
  for (auto _ : state) benchmark::DoNotOptimize(qasa::brute_force(problem));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}
BENCHMARK(bm_brute_force)->DenseRange(12, 22, 2)->Unit(benchmark::kMillisecond);

}  // namespace
