#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qasa/rng.hpp"

namespace qasa {

/// Energies closer than this are treated as equal (ground-state degeneracy,
/// degenerate Gibbs pairs, zero Metropolis differences).
inline constexpr double kTieEpsilon = 1e-9;

/// Largest variable count handled by exhaustive enumeration or simulation
/// unless a caller raises it.
inline constexpr std::size_t kDefaultMaxVariables = 26;

/// Basis index: bit k set means variable k has spin -1.
using BasisIndex = std::uint64_t;

/// A vector of bipolar spins.
///
/// Bit encoding: bit k of the index describes variable k, with bit value 0
/// for spin +1 and 1 for spin -1. The bitstring form writes variable 0 first.
class SpinConfiguration {
 public:
  SpinConfiguration() = default;
  explicit SpinConfiguration(std::vector<std::int8_t> spins);

  static SpinConfiguration all_up(std::size_t n);
  static SpinConfiguration from_index(BasisIndex index, std::size_t n);
  static SpinConfiguration from_bitstring(std::string_view bits);

  BasisIndex to_index() const;
  std::string to_bitstring() const;

  std::size_t size() const noexcept { return spins_.size(); }
  int operator[](std::size_t i) const { return spins_[i]; }
  void flip(std::size_t i) { spins_.at(i) = static_cast<std::int8_t>(-spins_[i]); }

  std::span<const std::int8_t> spins() const noexcept { return spins_; }
  std::span<std::int8_t> spins() noexcept { return spins_; }

  friend bool operator==(const SpinConfiguration&, const SpinConfiguration&) = default;

 private:
  std::vector<std::int8_t> spins_;
};

struct Coupling {
  std::size_t i = 0;
  std::size_t j = 0;
  double value = 0.0;

  friend bool operator==(const Coupling&, const Coupling&) = default;
};

/// E(s) = sum_i h_i s_i + sum_{i<j} J_ij s_i s_j over n variables.
///
/// Immutable after construction. Couplings are stored sorted by (i, j);
/// a per-variable neighbor list is kept for local energy differences.
class IsingProblem {
 public:
  struct Neighbor {
    std::uint32_t vertex;
    double coupling;
  };

  IsingProblem() = default;
  IsingProblem(std::vector<double> h, std::vector<Coupling> couplings,
               std::optional<std::uint64_t> seed = std::nullopt);

  std::size_t size() const noexcept { return h_.size(); }
  std::span<const double> h() const noexcept { return h_; }
  std::span<const Coupling> couplings() const noexcept { return couplings_; }
  std::span<const Neighbor> neighbors(std::size_t i) const {
    return {neighbors_.data() + offsets_.at(i), neighbors_.data() + offsets_[i + 1]};
  }
  std::size_t degree(std::size_t i) const { return offsets_.at(i + 1) - offsets_[i]; }

  /// Generator seed recorded for provenance, if any.
  std::optional<std::uint64_t> seed() const noexcept { return seed_; }

  /// Copy with every coefficient multiplied by factor.
  IsingProblem scaled(double factor) const;

  /// Copy with variable v renamed to permutation[v].
  IsingProblem permuted(std::span<const std::size_t> permutation) const;

  bool is_zero() const;

  friend bool operator==(const IsingProblem& a, const IsingProblem& b) {
    return a.h_ == b.h_ && a.couplings_ == b.couplings_ && a.seed_ == b.seed_;
  }

 private:
  std::vector<double> h_;
  std::vector<Coupling> couplings_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> neighbors_;
  std::optional<std::uint64_t> seed_;
};

double energy(const IsingProblem& problem, const SpinConfiguration& sigma);
double energy(const IsingProblem& problem, std::span<const std::int8_t> spins);
double energy_of_index(const IsingProblem& problem, BasisIndex index);

/// E(sigma with spin i flipped) - E(sigma), from the neighborhood of i only.
double energy_delta(const IsingProblem& problem, const SpinConfiguration& sigma, std::size_t i);

/// Unchecked variant for inner loops; spins.size() must equal problem.size().
inline double energy_delta_unchecked(const IsingProblem& problem, std::span<const std::int8_t> spins,
                                     std::size_t i) {
  double field = problem.h()[i];
  for (const auto& nb : problem.neighbors(i)) {
    field += nb.coupling * spins[nb.vertex];
  }
  return -2.0 * spins[i] * field;
}

/// Random instance on a uniformly sampled simple degree-regular graph.
/// h_i is uniform on {-2.0, -1.9, ..., 2.0}, J_ij uniform on {-1.0, ..., 1.0}.
IsingProblem generate_problem(std::size_t n, std::size_t degree, Rng& rng);

/// Samples the edge set of a simple degree-regular graph on n vertices by
/// random stub pairing, restarting whenever a self-loop or multi-edge appears.
std::vector<std::pair<std::size_t, std::size_t>> sample_regular_graph(std::size_t n, std::size_t degree,
                                                                       Rng& rng);

struct GroundTruth {
  double min_energy = 0.0;
  std::vector<BasisIndex> ground_states;  // ascending

  bool contains(BasisIndex index) const;
  bool contains(const SpinConfiguration& sigma) const { return contains(sigma.to_index()); }

  friend bool operator==(const GroundTruth&, const GroundTruth&) = default;
};

struct BruteForceOptions {
  std::size_t max_variables = kDefaultMaxVariables;
  double tie_epsilon = kTieEpsilon;
};

/// Exact minimum and every minimiser, by Gray-code enumeration of all 2^n
/// configurations with incremental energy updates.
GroundTruth brute_force(const IsingProblem& problem, const BruteForceOptions& options = {});

}  // namespace qasa
