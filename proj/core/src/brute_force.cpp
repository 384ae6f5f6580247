#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gray_walk.hpp"
#include "qasa/errors.hpp"
#include "qasa/ising.hpp"

namespace qasa {

namespace {
// Running energies may drift from the exact value by far less than this;
// candidates inside the window are re-scored exactly at the end.
constexpr double kCandidateSlack = 1e-6;
}  // namespace

GroundTruth brute_force(const IsingProblem& problem, const BruteForceOptions& options) {
  const std::size_t n = problem.size();
  if (n > options.max_variables || n > 63) {
    throw ResourceLimitError("brute_force: " + std::to_string(n) + " variables exceeds the cap of " +
                             std::to_string(std::min<std::size_t>(options.max_variables, 63)));
  }

  const double window = options.tie_epsilon + kCandidateSlack;
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::pair<BasisIndex, double>> candidates;

  detail::gray_walk(problem, [&](BasisIndex index, double e) {
    if (e > best + window) {
      return;
    }
    if (e < best) {
      best = e;
      std::erase_if(candidates, [&](const auto& c) { return c.second > best + window; });
    }
    candidates.emplace_back(index, e);
  });

  GroundTruth truth;
  truth.min_energy = std::numeric_limits<double>::infinity();
  for (auto& [index, e] : candidates) {
    e = energy_of_index(problem, index);
    truth.min_energy = std::min(truth.min_energy, e);
  }
  for (const auto& [index, e] : candidates) {
    if (e < truth.min_energy + options.tie_epsilon) {
      truth.ground_states.push_back(index);
    }
  }
  std::sort(truth.ground_states.begin(), truth.ground_states.end());
  return truth;
}

}  // namespace qasa
