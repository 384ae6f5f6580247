#include <benchmark/benchmark.h>

#include "qasa/annealer.hpp"

namespace {

void bm_anneal(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  qasa::Rng rng(n);
  const auto problem = qasa::generate_problem(n, 6, rng);
  const auto ladder = qasa::build_beta_schedule();
  qasa::SAParams params;
  params.sweeps = n;
  for (auto _ : state) {
    ++params.seed;
    benchmark::DoNotOptimize(qasa::anneal(problem, ladder, params));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(ladder.steps() * n));
}
BENCHMARK(bm_anneal)->DenseRange(10, 22, 4)->Unit(benchmark::kMicrosecond);

}  // namespace
