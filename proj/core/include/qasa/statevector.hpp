#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qasa/ising.hpp"
#include "qasa/rng.hpp"
#include "qasa/schedule.hpp"

namespace qasa {

using Amplitude = std::complex<double>;

/// 2^n complex amplitudes; amplitude k belongs to basis state k under the
/// BasisIndex convention (bit v set = variable v is spin -1).
class Statevector {
 public:
  Statevector() = default;
  Statevector(std::size_t qubits, std::vector<Amplitude> amplitudes);

  /// Computational basis state |index>.
  static Statevector basis(std::size_t qubits, BasisIndex index);

  std::size_t qubits() const noexcept { return qubits_; }
  std::size_t dimension() const noexcept { return amplitudes_.size(); }
  std::span<const Amplitude> amplitudes() const noexcept { return amplitudes_; }
  std::span<Amplitude> amplitudes() noexcept { return amplitudes_; }

  double probability(BasisIndex index) const { return std::norm(amplitudes_.at(index)); }
  double norm_squared() const;

 private:
  std::size_t qubits_ = 0;
  std::vector<Amplitude> amplitudes_;
};

/// Equal superposition 2^{-n/2} sum_k |k>.
Statevector init_uniform(std::size_t qubits, std::size_t max_qubits = kDefaultMaxVariables);

/// Diagonal of the problem Hamiltonian: energies[k] = E(decode(k)).
class BasisEnergyTable {
 public:
  BasisEnergyTable() = default;
  BasisEnergyTable(std::size_t qubits, std::vector<double> energies);

  std::size_t qubits() const noexcept { return qubits_; }
  std::size_t size() const noexcept { return energies_.size(); }
  std::span<const double> energies() const noexcept { return energies_; }
  double operator[](BasisIndex index) const { return energies_[index]; }
  double min_energy() const;

 private:
  std::size_t qubits_ = 0;
  std::vector<double> energies_;
};

BasisEnergyTable build_energy_table(const IsingProblem& problem, std::size_t max_qubits = kDefaultMaxVariables);

/// amplitude_k *= exp(-i gamma energies[k]).
void apply_problem_phase(Statevector& state, const BasisEnergyTable& table, double gamma);

/// exp(-i delta sum_v X_v): the rotation [[cos d, -i sin d], [-i sin d, cos d]]
/// on every qubit.
void apply_mixer(Statevector& state, double delta);

/// Problem phase gamma_l then mixer delta_l for l = 1..p, starting from the
/// uniform superposition.
Statevector evolve(const BasisEnergyTable& table, const AngleSequence& angles);
Statevector evolve(const IsingProblem& problem, const AngleSequence& angles,
                   std::size_t max_qubits = kDefaultMaxVariables);

/// Probability mass on the ground states.
double success_probability(const Statevector& state, const GroundTruth& truth);

struct OutcomeEntry {
  BasisIndex index = 0;
  double probability = 0.0;

  friend bool operator==(const OutcomeEntry&, const OutcomeEntry&) = default;
};

enum class OutcomeSource { exact, sampled };

/// Measurement outcomes; entries sorted by descending probability, then
/// ascending index.
struct OutcomeDistribution {
  std::size_t qubits = 0;
  OutcomeSource source = OutcomeSource::exact;
  std::uint64_t shots = 0;
  std::vector<OutcomeEntry> entries;

  friend bool operator==(const OutcomeDistribution&, const OutcomeDistribution&) = default;
};

/// The m most probable basis states with exact probabilities.
OutcomeDistribution extract_top_m(const Statevector& state, std::size_t m);

/// Multinomial measurement: probabilities are counts / shots.
OutcomeDistribution sample(const Statevector& state, std::uint64_t shots, Rng& rng);

/// Re-sorts entries into the canonical order (descending probability,
/// ascending index).
void sort_outcomes(std::vector<OutcomeEntry>& entries);

}  // namespace qasa
