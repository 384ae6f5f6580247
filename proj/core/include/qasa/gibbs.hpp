#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "qasa/annealer.hpp"
#include "qasa/ising.hpp"
#include "qasa/statevector.hpp"
#include "qasa/stats.hpp"

namespace qasa {

inline constexpr std::size_t kDefaultTopM = 50;

/// Which top-m member is paired against all the others.
enum class AnchorRule { second_largest, largest, lowest_energy };

enum class Aggregation { median, mean };

/// Distance used to find the ladder rung closest to a fitted beta.
enum class StepMetric { log, linear };

AnchorRule parse_anchor_rule(std::string_view text);  // "second" | "first" | "lowest-energy"
Aggregation parse_aggregation(std::string_view text);  // "median" | "mean"
StepMetric parse_step_metric(std::string_view text);   // "log" | "linear"
std::string_view to_string(AnchorRule rule);
std::string_view to_string(Aggregation agg);
std::string_view to_string(StepMetric metric);

/// Inverse temperature implied by two Gibbs probabilities:
///   beta = (ln p1 - ln p2) / (e2 - e1).
/// Throws std::domain_error for non-positive probabilities and
/// DegeneratePairError when |e1 - e2| < tie_epsilon.
double beta_from_pair(double p1, double e1, double p2, double e2, double tie_epsilon = kTieEpsilon);

struct BetaEstimate {
  double beta = 0.0;
  std::vector<double> pair_values;
  BasisIndex anchor_index = 0;
  std::size_t skipped_pairs = 0;

  friend bool operator==(const BetaEstimate&, const BetaEstimate&) = default;
};

struct FitOptions {
  std::size_t m = kDefaultTopM;
  AnchorRule anchor = AnchorRule::second_largest;
  Aggregation aggregation = Aggregation::median;
  double tie_epsilon = kTieEpsilon;
};

/// Pairwise Gibbs fit over the m most probable outcomes. The anchor is
/// paired with each other member; equal-energy and zero-probability pairs
/// are skipped and counted. Throws EstimationError if no pair survives.
BetaEstimate estimate_beta(const OutcomeDistribution& dist, const BasisEnergyTable& table,
                           const FitOptions& options = {});
BetaEstimate estimate_beta(const OutcomeDistribution& dist, const IsingProblem& problem,
                           const FitOptions& options = {});

/// 1-based rung b' of the ladder element closest to beta (clamped to
/// [1, b]; non-positive beta maps to 1).
std::size_t beta_to_start_step(double beta, const InverseTemperatureSchedule& schedule,
                               StepMetric metric = StepMetric::log);

}  // namespace qasa
