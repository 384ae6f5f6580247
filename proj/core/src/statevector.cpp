#include "qasa/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <stdexcept>
#include <string>

#include "gray_walk.hpp"
#include "qasa/errors.hpp"

#ifdef QASA_HAVE_OPENMP
#define QASA_PARALLEL_FOR _Pragma("omp parallel for schedule(static)")
#else
#define QASA_PARALLEL_FOR
#endif

namespace qasa {

namespace {

// Qubits below this index are rotated tile by tile so each tile stays in
// cache for all of them (2^12 amplitudes = 64 KiB).
constexpr std::size_t kTileBits = 12;

void check_qubit_count(std::size_t qubits, std::size_t max_qubits, const char* who) {
  if (qubits < 1 || qubits > max_qubits || qubits > 40) {
    throw ResourceLimitError(std::string(who) + ": " + std::to_string(qubits) + " qubits outside [1, " +
                             std::to_string(std::min<std::size_t>(max_qubits, 40)) + "]");
  }
}

// In-place exp(-i delta X) on the pair (lo, hi), with c = cos delta,
// s = sin delta.
inline void rotate_pair(double* lo, double* hi, double c, double s) {
  const double a0r = lo[0], a0i = lo[1];
  const double a1r = hi[0], a1i = hi[1];
  lo[0] = c * a0r + s * a1i;
  lo[1] = c * a0i - s * a1r;
  hi[0] = c * a1r + s * a0i;
  hi[1] = c * a1i - s * a0r;
}

void rotate_qubit_in_block(double* block, std::size_t block_size, std::size_t qubit, double c, double s) {
  const std::size_t stride = std::size_t{1} << qubit;
  for (std::size_t base = 0; base < block_size; base += 2 * stride) {
    double* lo = block + 2 * base;
    double* hi = lo + 2 * stride;
    for (std::size_t k = 0; k < stride; ++k) {
      rotate_pair(lo + 2 * k, hi + 2 * k, c, s);
    }
  }
}

}  // namespace

Statevector::Statevector(std::size_t qubits, std::vector<Amplitude> amplitudes)
    : qubits_(qubits), amplitudes_(std::move(amplitudes)) {
  if (qubits > 40 || amplitudes_.size() != (std::size_t{1} << qubits)) {
    throw std::invalid_argument("Statevector: amplitude count must be 2^" + std::to_string(qubits));
  }
}

Statevector Statevector::basis(std::size_t qubits, BasisIndex index) {
  check_qubit_count(qubits, 40, "Statevector::basis");
  std::vector<Amplitude> amps(std::size_t{1} << qubits);
  amps.at(index) = 1.0;
  return Statevector(qubits, std::move(amps));
}

double Statevector::norm_squared() const {
  double sum = 0.0;
  for (const auto& a : amplitudes_) sum += std::norm(a);
  return sum;
}

Statevector init_uniform(std::size_t qubits, std::size_t max_qubits) {
  check_qubit_count(qubits, max_qubits, "init_uniform");
  const std::size_t dim = std::size_t{1} << qubits;
  const double amp = std::pow(2.0, -0.5 * static_cast<double>(qubits));
  return Statevector(qubits, std::vector<Amplitude>(dim, Amplitude(amp, 0.0)));
}

BasisEnergyTable::BasisEnergyTable(std::size_t qubits, std::vector<double> energies)
    : qubits_(qubits), energies_(std::move(energies)) {
  if (qubits > 40 || energies_.size() != (std::size_t{1} << qubits)) {
    throw std::invalid_argument("BasisEnergyTable: entry count must be 2^" + std::to_string(qubits));
  }
}

double BasisEnergyTable::min_energy() const {
  if (energies_.empty()) {
    throw std::logic_error("BasisEnergyTable::min_energy: empty table");
  }
  return *std::min_element(energies_.begin(), energies_.end());
}

BasisEnergyTable build_energy_table(const IsingProblem& problem, std::size_t max_qubits) {
  check_qubit_count(problem.size(), max_qubits, "build_energy_table");
  std::vector<double> energies(std::size_t{1} << problem.size());
  detail::gray_walk(problem, [&](BasisIndex index, double e) { energies[index] = e; });
  return BasisEnergyTable(problem.size(), std::move(energies));
}

void apply_problem_phase(Statevector& state, const BasisEnergyTable& table, double gamma) {
  if (table.size() != state.dimension()) {
    throw std::invalid_argument("apply_problem_phase: table has " + std::to_string(table.size()) +
                                " entries, state has " + std::to_string(state.dimension()));
  }
  if (gamma == 0.0) return;
  auto amps = state.amplitudes();
  const double* energies = table.energies().data();
  const auto dim = static_cast<std::ptrdiff_t>(amps.size());
  auto* raw = reinterpret_cast<double*>(amps.data());
  QASA_PARALLEL_FOR
  for (std::ptrdiff_t k = 0; k < dim; ++k) {
    const double phi = -gamma * energies[k];
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    const double re = raw[2 * k];
    const double im = raw[2 * k + 1];
    raw[2 * k] = re * c - im * s;
    raw[2 * k + 1] = re * s + im * c;
  }
}

void apply_mixer(Statevector& state, double delta) {
  if (delta == 0.0) return;
  const double c = std::cos(delta);
  const double s = std::sin(delta);
  const std::size_t n = state.qubits();
  const std::size_t dim = state.dimension();
  auto* raw = reinterpret_cast<double*>(state.amplitudes().data());

  const std::size_t tile_bits = std::min(n, kTileBits);
  const std::size_t tile = std::size_t{1} << tile_bits;
  const auto tiles = static_cast<std::ptrdiff_t>(dim / tile);
  QASA_PARALLEL_FOR
  for (std::ptrdiff_t t = 0; t < tiles; ++t) {
    double* block = raw + 2 * static_cast<std::size_t>(t) * tile;
    for (std::size_t q = 0; q < tile_bits; ++q) {
      rotate_qubit_in_block(block, tile, q, c, s);
    }
  }

  for (std::size_t q = tile_bits; q < n; ++q) {
    const std::size_t stride = std::size_t{1} << q;
    // q >= tile_bits, so the dim/2 pairs split evenly into chunks of width.
    const std::size_t width = tile / 2;
    const auto chunks = static_cast<std::ptrdiff_t>(dim / 2 / width);
    QASA_PARALLEL_FOR
    for (std::ptrdiff_t chunk = 0; chunk < chunks; ++chunk) {
      const std::size_t first = static_cast<std::size_t>(chunk) * width;
      for (std::size_t j = first; j < first + width; ++j) {
        // lo is j with a zero bit inserted at position q.
        const std::size_t lo = ((j >> q) << (q + 1)) | (j & (stride - 1));
        rotate_pair(raw + 2 * lo, raw + 2 * (lo + stride), c, s);
      }
    }
  }
}

Statevector evolve(const BasisEnergyTable& table, const AngleSequence& angles) {
  if (angles.p() < 1 || angles.gammas.size() != angles.p()) {
    throw std::invalid_argument("evolve: angle sequence must have p >= 1 matching deltas and gammas");
  }
  Statevector state = init_uniform(table.qubits(), table.qubits());
  for (std::size_t l = 0; l < angles.p(); ++l) {
    apply_problem_phase(state, table, angles.gammas[l]);
    apply_mixer(state, angles.deltas[l]);
  }
  return state;
}

Statevector evolve(const IsingProblem& problem, const AngleSequence& angles, std::size_t max_qubits) {
  return evolve(build_energy_table(problem, max_qubits), angles);
}

double success_probability(const Statevector& state, const GroundTruth& truth) {
  double total = 0.0;
  for (BasisIndex index : truth.ground_states) {
    if (index >= state.dimension()) {
      throw std::invalid_argument("success_probability: ground state index " + std::to_string(index) +
                                  " outside a " + std::to_string(state.qubits()) + "-qubit state");
    }
    total += state.probability(index);
  }
  return total;
}

void sort_outcomes(std::vector<OutcomeEntry>& entries) {
  std::sort(entries.begin(), entries.end(), [](const OutcomeEntry& a, const OutcomeEntry& b) {
    if (a.probability != b.probability) return a.probability > b.probability;
    return a.index < b.index;
  });
}

OutcomeDistribution extract_top_m(const Statevector& state, std::size_t m) {
  if (m < 1 || m > state.dimension()) {
    throw std::invalid_argument("extract_top_m: m = " + std::to_string(m) + " outside [1, " +
                                std::to_string(state.dimension()) + "]");
  }
  // "Worse" entries at the top of the heap so they are evicted first.
  auto better = [](const OutcomeEntry& a, const OutcomeEntry& b) {
    if (a.probability != b.probability) return a.probability > b.probability;
    return a.index < b.index;
  };
  std::priority_queue<OutcomeEntry, std::vector<OutcomeEntry>, decltype(better)> heap(better);
  const auto amps = state.amplitudes();
  for (std::size_t k = 0; k < amps.size(); ++k) {
    OutcomeEntry entry{k, std::norm(amps[k])};
    if (heap.size() < m) {
      heap.push(entry);
    } else if (better(entry, heap.top())) {
      heap.pop();
      heap.push(entry);
    }
  }
  OutcomeDistribution dist;
  dist.qubits = state.qubits();
  dist.source = OutcomeSource::exact;
  dist.entries.reserve(m);
  while (!heap.empty()) {
    dist.entries.push_back(heap.top());
    heap.pop();
  }
  sort_outcomes(dist.entries);
  return dist;
}

OutcomeDistribution sample(const Statevector& state, std::uint64_t shots, Rng& rng) {
  if (shots < 1) {
    throw std::invalid_argument("sample: shots must be at least 1");
  }
  const auto amps = state.amplitudes();
  std::vector<double> cumulative(amps.size());
  double running = 0.0;
  for (std::size_t k = 0; k < amps.size(); ++k) {
    running += std::norm(amps[k]);
    cumulative[k] = running;
  }
  std::map<BasisIndex, std::uint64_t> counts;
  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    const double u = rng.uniform01() * running;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) it = cumulative.end() - 1;
    ++counts[static_cast<BasisIndex>(it - cumulative.begin())];
  }
  OutcomeDistribution dist;
  dist.qubits = state.qubits();
  dist.source = OutcomeSource::sampled;
  dist.shots = shots;
  dist.entries.reserve(counts.size());
  for (const auto& [index, count] : counts) {
    dist.entries.push_back({index, static_cast<double>(count) / static_cast<double>(shots)});
  }
  sort_outcomes(dist.entries);
  return dist;
}

}  // namespace qasa
