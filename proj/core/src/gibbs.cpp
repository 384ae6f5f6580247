#include "qasa/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>
#include <stdexcept>
#include <string>

#include "qasa/errors.hpp"

namespace qasa {

AnchorRule parse_anchor_rule(std::string_view text) {
  if (text == "second") return AnchorRule::second_largest;
  if (text == "first") return AnchorRule::largest;
  if (text == "lowest-energy") return AnchorRule::lowest_energy;
  throw std::invalid_argument("unknown anchor rule '" + std::string(text) + "'");
}

Aggregation parse_aggregation(std::string_view text) {
  if (text == "median") return Aggregation::median;
  if (text == "mean") return Aggregation::mean;
  throw std::invalid_argument("unknown aggregation '" + std::string(text) + "'");
}

StepMetric parse_step_metric(std::string_view text) {
  if (text == "log") return StepMetric::log;
  if (text == "linear") return StepMetric::linear;
  throw std::invalid_argument("unknown step metric '" + std::string(text) + "'");
}

std::string_view to_string(AnchorRule rule) {
  switch (rule) {
    case AnchorRule::second_largest: return "second";
    case AnchorRule::largest: return "first";
    case AnchorRule::lowest_energy: return "lowest-energy";
  }
  return "?";
}

std::string_view to_string(Aggregation agg) { return agg == Aggregation::median ? "median" : "mean"; }

std::string_view to_string(StepMetric metric) { return metric == StepMetric::log ? "log" : "linear"; }

double beta_from_pair(double p1, double e1, double p2, double e2, double tie_epsilon) {
  if (!(p1 > 0.0) || !(p2 > 0.0)) {
    throw std::domain_error("beta_from_pair: probabilities must be positive");
  }
  if (std::abs(e1 - e2) < tie_epsilon) {
    throw DegeneratePairError("beta_from_pair: equal energies carry no temperature information");
  }
  return (std::log(p1) - std::log(p2)) / (e2 - e1);
}

namespace {

BetaEstimate fit_top(std::vector<OutcomeEntry> top, const std::vector<double>& energies, const FitOptions& options) {
  std::size_t anchor = 0;
  switch (options.anchor) {
    case AnchorRule::largest:
      anchor = 0;
      break;
    case AnchorRule::second_largest:
      anchor = 1;
      break;
    case AnchorRule::lowest_energy:
      for (std::size_t k = 1; k < top.size(); ++k) {
        if (energies[k] < energies[anchor] - options.tie_epsilon) anchor = k;
      }
      break;
  }

  BetaEstimate estimate;
  estimate.anchor_index = top[anchor].index;
  for (std::size_t k = 0; k < top.size(); ++k) {
    if (k == anchor) continue;
    try {
      const double value =
          beta_from_pair(top[anchor].probability, energies[anchor], top[k].probability, energies[k],
                         options.tie_epsilon);
      if (std::isfinite(value)) {
        estimate.pair_values.push_back(value);
      } else {
        ++estimate.skipped_pairs;
      }
    } catch (const DegeneratePairError&) {
      ++estimate.skipped_pairs;
    } catch (const std::domain_error&) {
      ++estimate.skipped_pairs;
    }
  }
  if (estimate.pair_values.empty()) {
    throw EstimationError("estimate_beta: no usable pair among the top " + std::to_string(top.size()) +
                          " outcomes (" + std::to_string(estimate.skipped_pairs) + " skipped)");
  }
  if (options.aggregation == Aggregation::median) {
    estimate.beta = median(estimate.pair_values);
  } else {
    estimate.beta = std::accumulate(estimate.pair_values.begin(), estimate.pair_values.end(), 0.0) /
                    static_cast<double>(estimate.pair_values.size());
  }
  return estimate;
}

template <typename EnergyOf>
BetaEstimate estimate_with(const OutcomeDistribution& dist, EnergyOf&& energy_of, const FitOptions& options) {
  if (options.m < 2) {
    throw std::invalid_argument("estimate_beta: m must be at least 2");
  }
  std::vector<OutcomeEntry> entries;
  for (const auto& e : dist.entries) {
    if (e.probability > 0.0) entries.push_back(e);
  }
  if (entries.size() < 2) {
    throw EstimationError("estimate_beta: need at least two outcomes with positive probability");
  }
  sort_outcomes(entries);
  if (entries.size() > options.m) entries.resize(options.m);
  std::vector<double> energies;
  energies.reserve(entries.size());
  for (const auto& e : entries) energies.push_back(energy_of(e.index));
  return fit_top(std::move(entries), energies, options);
}

}  // namespace

BetaEstimate estimate_beta(const OutcomeDistribution& dist, const BasisEnergyTable& table,
                           const FitOptions& options) {
  return estimate_with(
      dist,
      [&](BasisIndex index) {
        if (index >= table.size()) {
          throw std::invalid_argument("estimate_beta: outcome index outside the energy table");
        }
        return table[index];
      },
      options);
}

BetaEstimate estimate_beta(const OutcomeDistribution& dist, const IsingProblem& problem, const FitOptions& options) {
  return estimate_with(dist, [&](BasisIndex index) { return energy_of_index(problem, index); }, options);
}

std::size_t beta_to_start_step(double beta, const InverseTemperatureSchedule& schedule, StepMetric metric) {
  if (std::isnan(beta)) {
    throw std::invalid_argument("beta_to_start_step: beta is NaN");
  }
  const auto betas = schedule.betas();
  if (beta <= 0.0) {
    std::clog << "warning: non-positive fitted beta " << beta << "; starting from the first rung\n";
    return 1;
  }
  if (beta <= betas.front()) return 1;
  if (beta >= betas.back()) return betas.size();

  auto distance = [&](double rung) {
    return metric == StepMetric::log ? std::abs(std::log(rung) - std::log(beta)) : std::abs(rung - beta);
  };
  std::size_t best = 0;
  double best_distance = distance(betas[0]);
  for (std::size_t i = 1; i < betas.size(); ++i) {
    const double d = distance(betas[i]);
    if (d < best_distance) {
      best = i;
      best_distance = d;
    }
  }
  return best + 1;
}

}  // namespace qasa
