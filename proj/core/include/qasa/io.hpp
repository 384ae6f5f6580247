#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "qasa/ising.hpp"
#include "qasa/statevector.hpp"

namespace qasa {

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

/// Problem file (JSON object):
///   { "n": <int>, "seed": <uint, optional>, "h": [<n numbers>],
///     "couplings": [[i, j, J], ...] }
void write_problem(std::ostream& out, const IsingProblem& problem);
IsingProblem read_problem(std::istream& in);
void save_problem(const std::filesystem::path& path, const IsingProblem& problem);
IsingProblem load_problem(const std::filesystem::path& path);

/// Ground-truth sidecar (JSON object):
///   { "n": <int>, "min_energy": <number>, "ground_states": [<basis index>, ...],
///     "bitstrings": ["0110...", ...] }
/// Only the indices are read back; bitstrings are for people.
void write_truth(std::ostream& out, const GroundTruth& truth, std::size_t n);
GroundTruth read_truth(std::istream& in);
void save_truth(const std::filesystem::path& path, const GroundTruth& truth, std::size_t n);
GroundTruth load_truth(const std::filesystem::path& path);

/// Outcome distribution (CSV):
///   # source=<exact|sampled> shots=<k> qubits=<n>
///   index,bitstring,probability
///   <index>,<bitstring>,<probability>
void write_distribution(std::ostream& out, const OutcomeDistribution& dist);
OutcomeDistribution read_distribution(std::istream& in);
OutcomeDistribution load_distribution(const std::filesystem::path& path);

/// Writes `text` to `path` via a temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& text);

}  // namespace qasa
