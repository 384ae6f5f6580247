#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qasa/annealer.hpp"
#include "qasa/gibbs.hpp"
#include "qasa/ising.hpp"
#include "qasa/schedule.hpp"
#include "qasa/statevector.hpp"

namespace qasa {

/// What the SA stage does when the beta fit fails.
enum class FallbackMode {
  plain_sa,        // random start at rung 1
  warm_from_start  // keep the best DiQA bitstring, start at rung 1
};

struct QasaConfig {
  AnnealSchedule schedule;
  std::size_t p = 200;
  std::size_t p_prime = 100;
  double tau_ns = kDefaultTauNs;
  bool literal_gamma = false;
  bool terminal_delta = false;

  /// 0 reads the exact top-m from the statevector once for all SA
  /// repetitions; otherwise every repetition draws this many measurement
  /// shots and fits its own beta and b'.
  std::uint64_t shots = 0;
  FitOptions fit;
  StepMetric step_metric = StepMetric::log;

  std::size_t b = kDefaultAnnealSteps;
  double beta0 = kDefaultBeta0;
  double beta_max = kDefaultBetaMax;
  /// Metropolis attempts per rung; empty means n.
  std::optional<std::size_t> sweeps;
  std::size_t repetitions = kDefaultRepetitions;
  std::uint64_t seed = 0;
  FallbackMode fallback = FallbackMode::plain_sa;

  /// Stop after the beta fit (no SA stage).
  bool beta_only = false;
  std::size_t max_qubits = kDefaultMaxVariables;

  /// Throws std::invalid_argument when inconsistent.
  void validate() const;
};

struct QasaDiagnostics {
  bool fallback = false;
  std::string fallback_reason;
  std::size_t sweeps = 0;
  /// Ladder rungs b - b' + 1 for the reported (first) readout.
  std::size_t sa_steps = 0;
  /// Sum of b - b'_r + 1 over repetitions; repetitions * sa_steps in exact mode.
  std::size_t sa_steps_total = 0;
  /// Repetitions whose readout could not be fitted.
  std::size_t fallback_repetitions = 0;
  std::size_t repetitions_run = 0;
  double diqa_ms = 0.0;
  double fit_ms = 0.0;
  double sa_ms = 0.0;
};

/// In shot mode beta_estimate, b_prime and diqa_best describe the readout of
/// repetition 0.
struct QasaResult {
  std::optional<BetaEstimate> beta_estimate;
  std::size_t b_prime = 1;
  SpinConfiguration diqa_best;
  double diqa_best_energy = 0.0;
  /// Lowest-energy final configuration over all SA repetitions.
  SpinConfiguration final_state;
  double final_energy = 0.0;
  std::optional<double> success_probability;
  QasaDiagnostics diagnostics;
};

/// Partial DiQA (first p' of p layers), Gibbs fit of the readout, then SA
/// from rung b' warm-started at the lowest-energy observed bitstring.
QasaResult run_qasa(const IsingProblem& problem, const QasaConfig& config, const GroundTruth* truth = nullptr,
                    std::string_view problem_id = {});

struct BatchItem {
  std::string id;
  IsingProblem problem;
  std::optional<GroundTruth> truth;
};

struct BatchOutcome {
  std::map<std::string, QasaResult> results;
  std::map<std::string, std::string> errors;
};

/// Runs every item with config.seed; per-run seeds derive from the item id,
/// so output does not depend on order or worker count.
BatchOutcome run_qasa_batch(std::span<const BatchItem> corpus, const QasaConfig& config, std::size_t workers = 0);

}  // namespace qasa
