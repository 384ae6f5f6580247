#include <benchmark/benchmark.h>

#include "qasa/schedule.hpp"
#include "qasa/statevector.hpp"

namespace {

qasa::IsingProblem instance(std::size_t n) {
  qasa::Rng rng(n);
  return qasa::generate_problem(n, 6, rng);
}

void bm_problem_phase(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto table = qasa::build_energy_table(instance(n));
  auto psi = qasa::init_uniform(n);
  for (auto _ : state) {
    qasa::apply_problem_phase(psi, table, 0.01);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(psi.dimension()));
}
BENCHMARK(bm_problem_phase)->DenseRange(12, 22, 2)->Unit(benchmark::kMillisecond);

void bm_mixer(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto psi = qasa::init_uniform(n);
  for (auto _ : state) {
    qasa::apply_mixer(psi, -0.05);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(psi.dimension() * n));
}
BENCHMARK(bm_mixer)->DenseRange(12, 22, 2)->Unit(benchmark::kMillisecond);

void bm_energy_table(benchmark::State& state) {
  const auto problem = instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qasa::build_energy_table(problem));
}
BENCHMARK(bm_energy_table)->DenseRange(12, 22, 2)->Unit(benchmark::kMillisecond);

void bm_evolve_p200(benchmark::State& state) {
  const auto table = qasa::build_energy_table(instance(static_cast<std::size_t>(state.range(0))));
  const auto angles = qasa::discretize(qasa::bundled_schedule(), 200, qasa::kDefaultTauNs);
  for (auto _ : state) benchmark::DoNotOptimize(qasa::evolve(table, angles));
}
BENCHMARK(bm_evolve_p200)->Arg(14)->Arg(18)->Unit(benchmark::kMillisecond);

}  // namespace
