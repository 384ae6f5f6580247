#include "qasa/annealer.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qasa {

InverseTemperatureSchedule::InverseTemperatureSchedule(double beta0, double beta_max, std::size_t steps)
    : beta0_(beta0), beta_max_(beta_max) {
  if (!(beta0 > 0.0) || !(beta_max > beta0) || !std::isfinite(beta_max)) {
    throw std::invalid_argument("InverseTemperatureSchedule: need 0 < beta0 < beta_max");
  }
  if (steps < 1) {
    throw std::invalid_argument("InverseTemperatureSchedule: need at least one step");
  }
  betas_.resize(steps);
  const double ratio = beta_max / beta0;
  for (std::size_t i = 0; i < steps; ++i) {
    betas_[i] = beta0 * std::pow(ratio, static_cast<double>(i) / static_cast<double>(steps));
  }
}

InverseTemperatureSchedule build_beta_schedule(double beta0, double beta_max, std::size_t steps) {
  return InverseTemperatureSchedule(beta0, beta_max, steps);
}

bool metropolis_accept(double delta, double beta, Rng& rng, std::optional<double>* draw) {
  if (std::abs(delta) < kTieEpsilon) {
    delta = 0.0;
  }
  if (delta < 0.0) {
    return true;
  }
  const double r = rng.uniform01();
  if (draw != nullptr) {
    *draw = r;
  }
  return r < std::exp(-beta * delta);
}

SpinConfiguration metropolis_step(SpinConfiguration sigma, std::size_t i, const IsingProblem& problem, double beta,
                                  Rng& rng) {
  if (sigma.size() != problem.size()) {
    throw std::invalid_argument("metropolis_step: configuration length mismatch");
  }
  if (i >= problem.size()) {
    throw std::invalid_argument("metropolis_step: index " + std::to_string(i) + " out of range");
  }
  if (metropolis_accept(energy_delta_unchecked(problem, sigma.spins(), i), beta, rng)) {
    sigma.flip(i);
  }
  return sigma;
}

AnnealRun anneal_ladder(const IsingProblem& problem, std::span<const double> betas, const SAParams& params,
                        const StepObserver& observer) {
  const std::size_t n = problem.size();
  if (n == 0) {
    throw std::invalid_argument("anneal: empty problem");
  }
  if (params.sweeps < 1) {
    throw std::invalid_argument("anneal: sweeps must be at least 1");
  }
  if (params.start_index >= betas.size()) {
    throw std::invalid_argument("anneal: start index " + std::to_string(params.start_index) +
                                " outside a ladder of " + std::to_string(betas.size()));
  }
  if (params.initial && params.initial->size() != n) {
    throw std::invalid_argument("anneal: initial configuration length mismatch");
  }

  Rng rng(params.seed);
  std::vector<std::int8_t> spins(n);
  if (params.initial) {
    const auto init = params.initial->spins();
    spins.assign(init.begin(), init.end());
  } else {
    for (auto& s : spins) {
      s = rng.below(2) == 0 ? 1 : -1;
    }
  }

  AnnealRun run;
  double current = params.track_best || params.verify_delta ? energy(problem, spins) : 0.0;
  double best = current;
  if (params.track_best) {
    run.best_seen = SpinConfiguration(spins);
  }

  for (std::size_t rung = params.start_index; rung < betas.size(); ++rung) {
    const double beta = betas[rung];
    for (std::size_t k = 0; k < params.sweeps; ++k) {
      const auto i = static_cast<std::size_t>(rng.below(n));
      const double delta = energy_delta_unchecked(problem, spins, i);
      if (params.verify_delta) {
        spins[i] = static_cast<std::int8_t>(-spins[i]);
        const double full = energy(problem, spins) - current;
        spins[i] = static_cast<std::int8_t>(-spins[i]);
        if (std::abs(full - delta) > 1e-9) {
          throw std::logic_error("anneal: local energy difference " + std::to_string(delta) +
                                 " disagrees with full recompute " + std::to_string(full));
        }
      }
      std::optional<double> draw;
      const bool accepted = metropolis_accept(delta, beta, rng, observer ? &draw : nullptr);
      if (accepted) {
        spins[i] = static_cast<std::int8_t>(-spins[i]);
        if (params.track_best || params.verify_delta) {
          current = params.verify_delta ? energy(problem, spins) : current + delta;
        }
        if (params.track_best && current < best) {
          best = current;
          run.best_seen = SpinConfiguration(spins);
        }
      }
      if (observer) {
        observer(StepRecord{rung, i, delta, draw, accepted});
      }
      ++run.attempts;
    }
    ++run.rungs_executed;
  }
  run.final_state = SpinConfiguration(std::move(spins));
  return run;
}

SpinConfiguration anneal(const IsingProblem& problem, const InverseTemperatureSchedule& schedule,
                         const SAParams& params) {
  return anneal_ladder(problem, schedule.betas(), params).final_state;
}

double estimate_success(const IsingProblem& problem, const GroundTruth& truth,
                        const InverseTemperatureSchedule& schedule, const SAParams& params, std::size_t repetitions,
                        std::string_view problem_id) {
  if (repetitions < 1) {
    throw std::invalid_argument("estimate_success: repetitions must be at least 1");
  }
  std::size_t hits = 0;
  SAParams run_params = params;
  for (std::size_t r = 0; r < repetitions; ++r) {
    run_params.seed = derive_seed(params.seed, problem_id, r);
    const auto final_state = anneal_ladder(problem, schedule.betas(), run_params).final_state;
    if (truth.contains(final_state)) {
      ++hits;
    }
  }
  return static_cast<double>(hits) / static_cast<double>(repetitions);
}

}  // namespace qasa
