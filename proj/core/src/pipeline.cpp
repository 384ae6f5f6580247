#include "qasa/pipeline.hpp"

#include <chrono>
#include <mutex>
#include <stdexcept>
#include <string>

#include "qasa/errors.hpp"
#include "qasa/parallel.hpp"

namespace qasa {

namespace {

constexpr std::uint64_t kShotStream = 0x5107'0000'0000'0001ULL;

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

}  // namespace

void QasaConfig::validate() const {
  if (p < 1) throw std::invalid_argument("QasaConfig: p must be at least 1");
  if (p_prime < 1 || p_prime > p) {
    throw std::invalid_argument("QasaConfig: p' = " + std::to_string(p_prime) + " outside [1, " +
                                std::to_string(p) + "]");
  }
  if (!(tau_ns > 0.0)) throw std::invalid_argument("QasaConfig: tau must be positive");
  if (fit.m < 2) throw std::invalid_argument("QasaConfig: m must be at least 2");
  if (b < 1) throw std::invalid_argument("QasaConfig: b must be at least 1");
  if (sweeps && *sweeps < 1) throw std::invalid_argument("QasaConfig: sweeps must be at least 1");
  if (repetitions < 1) throw std::invalid_argument("QasaConfig: repetitions must be at least 1");
  if (schedule.samples().empty()) throw std::invalid_argument("QasaConfig: no annealing schedule");
}

QasaResult run_qasa(const IsingProblem& problem, const QasaConfig& config, const GroundTruth* truth,
                    std::string_view problem_id) {
  config.validate();
  const std::size_t n = problem.size();
  const auto ladder = build_beta_schedule(config.beta0, config.beta_max, config.b);
  const std::size_t sweeps = config.sweeps.value_or(n);
  QasaResult result;
  result.diagnostics.sweeps = sweeps;

  // Step 1: the first p' layers of the p-layer discretisation.
  auto t0 = Clock::now();
  const auto full = discretize(config.schedule, config.p, config.tau_ns, {.include_tau_in_gamma = !config.literal_gamma});
  const auto partial = truncate(full, config.p_prime, config.terminal_delta);
  const auto table = build_energy_table(problem, config.max_qubits);
  const auto state = evolve(table, partial);
  result.diagnostics.diqa_ms = elapsed_ms(t0);

  // Step 2: readout, Gibbs fit and the matching ladder rung. Exact mode reads
  // once; shot mode draws a fresh sample for every repetition.
  struct Readout {
    std::optional<BetaEstimate> estimate;
    std::size_t b_prime = 1;
    SpinConfiguration best;
    double best_energy = 0.0;
    std::string fallback_reason;
  };
  auto read = [&](const OutcomeDistribution& dist) {
    Readout out;
    std::size_t best_entry = 0;
    for (std::size_t k = 1; k < dist.entries.size(); ++k) {
      if (table[dist.entries[k].index] < table[dist.entries[best_entry].index]) best_entry = k;
    }
    out.best = SpinConfiguration::from_index(dist.entries[best_entry].index, n);
    out.best_energy = energy(problem, out.best);
    try {
      out.estimate = estimate_beta(dist, table, config.fit);
      out.b_prime = beta_to_start_step(out.estimate->beta, ladder, config.step_metric);
    } catch (const EstimationError& e) {
      out.fallback_reason = e.what();
    }
    return out;
  };
  const std::uint64_t shot_master = combine_seeds(config.seed, kShotStream);
  auto read_repetition = [&](std::size_t r) {
    if (config.shots == 0) {
      return read(extract_top_m(state, std::min<std::size_t>(config.fit.m, state.dimension())));
    }
    Rng shot_rng(derive_seed(shot_master, problem_id, r));
    return read(sample(state, config.shots, shot_rng));
  };

  t0 = Clock::now();
  const Readout first = read_repetition(0);
  result.beta_estimate = first.estimate;
  result.b_prime = first.b_prime;
  result.diqa_best = first.best;
  result.diqa_best_energy = first.best_energy;
  result.diagnostics.fallback = !first.estimate.has_value();
  result.diagnostics.fallback_reason = first.fallback_reason;
  result.diagnostics.sa_steps = config.b - result.b_prime + 1;
  result.diagnostics.fit_ms = elapsed_ms(t0);
  if (config.beta_only) {
    result.final_state = result.diqa_best;
    result.final_energy = result.diqa_best_energy;
    return result;
  }

  // Step 3: truncated SA from rung b', warm-started at the best readout.
  t0 = Clock::now();
  std::size_t hits = 0;
  bool have_final = false;
  for (std::size_t r = 0; r < config.repetitions; ++r) {
    const bool redraw = config.shots != 0 && r > 0;
    Readout fresh;
    if (redraw) fresh = read_repetition(r);
    const Readout& readout = redraw ? fresh : first;
    const bool failed = !readout.estimate.has_value();
    SAParams params;
    params.sweeps = sweeps;
    params.start_index = readout.b_prime - 1;
    if (!failed || config.fallback == FallbackMode::warm_from_start) params.initial = readout.best;
    params.seed = derive_seed(config.seed, problem_id, r);
    if (failed) ++result.diagnostics.fallback_repetitions;
    result.diagnostics.sa_steps_total += config.b - readout.b_prime + 1;

    auto run = anneal_ladder(problem, ladder.betas(), params);
    if (truth != nullptr && truth->contains(run.final_state)) ++hits;
    const double e = energy(problem, run.final_state);
    if (!have_final || e < result.final_energy) {
      result.final_energy = e;
      result.final_state = std::move(run.final_state);
      have_final = true;
    }
  }
  result.diagnostics.repetitions_run = config.repetitions;
  if (truth != nullptr) {
    result.success_probability = static_cast<double>(hits) / static_cast<double>(config.repetitions);
  }
  result.diagnostics.sa_ms = elapsed_ms(t0);
  return result;
}

BatchOutcome run_qasa_batch(std::span<const BatchItem> corpus, const QasaConfig& config, std::size_t workers) {
  BatchOutcome outcome;
  std::mutex mutex;
  parallel_for(corpus.size(), workers, [&](std::size_t i) {
    const auto& item = corpus[i];
    try {
      auto result = run_qasa(item.problem, config, item.truth ? &*item.truth : nullptr, item.id);
      std::lock_guard lock(mutex);
      outcome.results.emplace(item.id, std::move(result));
    } catch (const std::exception& e) {
      std::lock_guard lock(mutex);
      outcome.errors.emplace(item.id, e.what());
    }
  });
  return outcome;
}

}  // namespace qasa
