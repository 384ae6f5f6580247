#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qasa/ising.hpp"
#include "qasa/rng.hpp"

namespace qasa {

inline constexpr double kDefaultBeta0 = 0.01;
inline constexpr double kDefaultBetaMax = 100.0;
inline constexpr std::size_t kDefaultAnnealSteps = 200;
inline constexpr std::size_t kDefaultRepetitions = 2000;

/// Geometric inverse-temperature ladder
///   beta_i = beta0 * (beta_max / beta0)^(i / b),  i = 0 .. b-1.
/// beta_max itself is never reached; the last rung is one ratio below it.
class InverseTemperatureSchedule {
 public:
  InverseTemperatureSchedule(double beta0, double beta_max, std::size_t steps);

  std::span<const double> betas() const noexcept { return betas_; }
  double operator[](std::size_t i) const { return betas_.at(i); }
  std::size_t steps() const noexcept { return betas_.size(); }
  double beta0() const noexcept { return beta0_; }
  double beta_max() const noexcept { return beta_max_; }

 private:
  double beta0_;
  double beta_max_;
  std::vector<double> betas_;
};

InverseTemperatureSchedule build_beta_schedule(double beta0 = kDefaultBeta0, double beta_max = kDefaultBetaMax,
                                               std::size_t steps = kDefaultAnnealSteps);

struct SAParams {
  /// Single-site Metropolis attempts per inverse temperature.
  std::size_t sweeps = 1;
  /// First ladder rung used (0-based).
  std::size_t start_index = 0;
  /// Starting configuration; uniformly random when empty.
  std::optional<SpinConfiguration> initial;
  std::uint64_t seed = 0;
  /// Cross-check every local energy difference against a full recompute.
  bool verify_delta = false;
  /// Also report the lowest-energy configuration visited.
  bool track_best = false;
};

/// One Metropolis attempt, as seen by an observer.
struct StepRecord {
  std::size_t rung = 0;
  std::size_t variable = 0;
  double delta = 0.0;
  /// Uniform draw, present only for non-negative delta.
  std::optional<double> draw;
  bool accepted = false;
};

using StepObserver = std::function<void(const StepRecord&)>;

/// Metropolis decision for an energy difference: downhill moves are always
/// taken; otherwise one uniform r is drawn and the move is taken iff
/// r < exp(-beta * delta). Differences within kTieEpsilon of zero count as 0.
bool metropolis_accept(double delta, double beta, Rng& rng, std::optional<double>* draw = nullptr);

/// Proposes flipping spin i and applies the Metropolis rule.
SpinConfiguration metropolis_step(SpinConfiguration sigma, std::size_t i, const IsingProblem& problem, double beta,
                                  Rng& rng);

struct AnnealRun {
  SpinConfiguration final_state;
  std::optional<SpinConfiguration> best_seen;
  std::size_t rungs_executed = 0;
  std::size_t attempts = 0;
};

/// Simulated annealing over an arbitrary ladder of inverse temperatures,
/// starting at rung params.start_index.
AnnealRun anneal_ladder(const IsingProblem& problem, std::span<const double> betas, const SAParams& params,
                        const StepObserver& observer = {});

/// Final configuration of one annealing run.
SpinConfiguration anneal(const IsingProblem& problem, const InverseTemperatureSchedule& schedule,
                         const SAParams& params);

/// Fraction of `repetitions` independent runs ending in a ground state.
/// Run r uses seed derive_seed(params.seed, problem_id, r).
double estimate_success(const IsingProblem& problem, const GroundTruth& truth,
                        const InverseTemperatureSchedule& schedule, const SAParams& params,
                        std::size_t repetitions = kDefaultRepetitions, std::string_view problem_id = {});

}  // namespace qasa
