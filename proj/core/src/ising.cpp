#include "qasa/ising.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace qasa {

SpinConfiguration::SpinConfiguration(std::vector<std::int8_t> spins) : spins_(std::move(spins)) {
  for (auto s : spins_) {
    if (s != 1 && s != -1) {
      throw std::invalid_argument("SpinConfiguration: spins must be -1 or +1");
    }
  }
}

SpinConfiguration SpinConfiguration::all_up(std::size_t n) {
  return SpinConfiguration(std::vector<std::int8_t>(n, 1));
}

SpinConfiguration SpinConfiguration::from_index(BasisIndex index, std::size_t n) {
  if (n > 64) {
    throw std::invalid_argument("SpinConfiguration::from_index: more than 64 variables");
  }
  if (n < 64 && (index >> n) != 0) {
    throw std::invalid_argument("SpinConfiguration::from_index: index has bits beyond n");
  }
  std::vector<std::int8_t> spins(n);
  for (std::size_t k = 0; k < n; ++k) {
    spins[k] = ((index >> k) & 1U) != 0 ? -1 : 1;
  }
  return SpinConfiguration(std::move(spins));
}

SpinConfiguration SpinConfiguration::from_bitstring(std::string_view bits) {
  std::vector<std::int8_t> spins;
  spins.reserve(bits.size());
  for (char c : bits) {
    if (c == '0') {
      spins.push_back(1);
    } else if (c == '1') {
      spins.push_back(-1);
    } else {
      throw std::invalid_argument("SpinConfiguration::from_bitstring: expected only '0' and '1'");
    }
  }
  return SpinConfiguration(std::move(spins));
}

BasisIndex SpinConfiguration::to_index() const {
  if (spins_.size() > 64) {
    throw std::invalid_argument("SpinConfiguration::to_index: more than 64 variables");
  }
  BasisIndex index = 0;
  for (std::size_t k = 0; k < spins_.size(); ++k) {
    if (spins_[k] < 0) {
      index |= BasisIndex{1} << k;
    }
  }
  return index;
}

std::string SpinConfiguration::to_bitstring() const {
  std::string bits(spins_.size(), '0');
  for (std::size_t k = 0; k < spins_.size(); ++k) {
    if (spins_[k] < 0) {
      bits[k] = '1';
    }
  }
  return bits;
}

IsingProblem::IsingProblem(std::vector<double> h, std::vector<Coupling> couplings,
                           std::optional<std::uint64_t> seed)
    : h_(std::move(h)), couplings_(std::move(couplings)), seed_(seed) {
  const std::size_t n = h_.size();
  if (n > std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("IsingProblem: too many variables");
  }
  for (double v : h_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("IsingProblem: non-finite linear coefficient");
    }
  }
  for (auto& c : couplings_) {
    if (c.i >= n || c.j >= n) {
      throw std::invalid_argument("IsingProblem: coupling index out of range");
    }
    if (c.i == c.j) {
      throw std::invalid_argument("IsingProblem: self-coupling (" + std::to_string(c.i) + ", " +
                                  std::to_string(c.j) + ")");
    }
    if (!std::isfinite(c.value)) {
      throw std::invalid_argument("IsingProblem: non-finite coupling");
    }
    if (c.i > c.j) {
      std::swap(c.i, c.j);
    }
  }
  std::sort(couplings_.begin(), couplings_.end(),
            [](const Coupling& a, const Coupling& b) { return std::tie(a.i, a.j) < std::tie(b.i, b.j); });
  auto dup = std::adjacent_find(couplings_.begin(), couplings_.end(),
                                [](const Coupling& a, const Coupling& b) { return a.i == b.i && a.j == b.j; });
  if (dup != couplings_.end()) {
    throw std::invalid_argument("IsingProblem: duplicate coupling (" + std::to_string(dup->i) + ", " +
                                std::to_string(dup->j) + ")");
  }

  offsets_.assign(n + 1, 0);
  for (const auto& c : couplings_) {
    ++offsets_[c.i + 1];
    ++offsets_[c.j + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  neighbors_.resize(offsets_[n]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& c : couplings_) {
    neighbors_[fill[c.i]++] = {static_cast<std::uint32_t>(c.j), c.value};
    neighbors_[fill[c.j]++] = {static_cast<std::uint32_t>(c.i), c.value};
  }
}

IsingProblem IsingProblem::scaled(double factor) const {
  std::vector<double> h = h_;
  for (auto& v : h) v *= factor;
  std::vector<Coupling> couplings = couplings_;
  for (auto& c : couplings) c.value *= factor;
  return IsingProblem(std::move(h), std::move(couplings), seed_);
}

IsingProblem IsingProblem::permuted(std::span<const std::size_t> permutation) const {
  const std::size_t n = size();
  if (permutation.size() != n) {
    throw std::invalid_argument("IsingProblem::permuted: permutation length mismatch");
  }
  std::vector<bool> seen(n, false);
  for (auto v : permutation) {
    if (v >= n || seen[v]) {
      throw std::invalid_argument("IsingProblem::permuted: not a permutation");
    }
    seen[v] = true;
  }
  std::vector<double> h(n);
  for (std::size_t v = 0; v < n; ++v) h[permutation[v]] = h_[v];
  std::vector<Coupling> couplings;
  couplings.reserve(couplings_.size());
  for (const auto& c : couplings_) {
    couplings.push_back({permutation[c.i], permutation[c.j], c.value});
  }
  return IsingProblem(std::move(h), std::move(couplings), seed_);
}

bool IsingProblem::is_zero() const {
  return std::all_of(h_.begin(), h_.end(), [](double v) { return v == 0.0; }) &&
         std::all_of(couplings_.begin(), couplings_.end(), [](const Coupling& c) { return c.value == 0.0; });
}

double energy(const IsingProblem& problem, std::span<const std::int8_t> spins) {
  if (spins.size() != problem.size()) {
    throw std::invalid_argument("energy: configuration has " + std::to_string(spins.size()) +
                                " spins, problem has " + std::to_string(problem.size()));
  }
  double e = 0.0;
  const auto h = problem.h();
  for (std::size_t i = 0; i < h.size(); ++i) {
    e += h[i] * spins[i];
  }
  for (const auto& c : problem.couplings()) {
    e += c.value * spins[c.i] * spins[c.j];
  }
  return e;
}

double energy(const IsingProblem& problem, const SpinConfiguration& sigma) {
  return energy(problem, sigma.spins());
}

double energy_of_index(const IsingProblem& problem, BasisIndex index) {
  return energy(problem, SpinConfiguration::from_index(index, problem.size()));
}

double energy_delta(const IsingProblem& problem, const SpinConfiguration& sigma, std::size_t i) {
  if (sigma.size() != problem.size()) {
    throw std::invalid_argument("energy_delta: configuration length mismatch");
  }
  if (i >= problem.size()) {
    throw std::invalid_argument("energy_delta: index " + std::to_string(i) + " out of range");
  }
  return energy_delta_unchecked(problem, sigma.spins(), i);
}

namespace {

using EdgeList = std::vector<std::pair<std::size_t, std::size_t>>;

// Configuration model: pair stubs uniformly, restart on a loop or a repeated
// edge. Accepted pairings are uniform over simple labelled graphs.
EdgeList pairing_sample(std::size_t n, std::size_t degree, Rng& rng) {
  constexpr std::size_t kMaxAttempts = 10'000'000;
  std::vector<std::size_t> stubs;
  std::vector<std::vector<std::size_t>> adjacency(n);
  EdgeList edges;

  for (std::size_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
    stubs.clear();
    for (std::size_t v = 0; v < n; ++v) {
      stubs.insert(stubs.end(), degree, v);
    }
    for (auto& adj : adjacency) adj.clear();
    edges.clear();

    bool simple = true;
    while (!stubs.empty()) {
      const std::size_t a = stubs.back();
      stubs.pop_back();
      const auto pick = static_cast<std::size_t>(rng.below(stubs.size()));
      const std::size_t b = stubs[pick];
      stubs[pick] = stubs.back();
      stubs.pop_back();
      if (a == b || std::find(adjacency[a].begin(), adjacency[a].end(), b) != adjacency[a].end()) {
        simple = false;
        break;
      }
      adjacency[a].push_back(b);
      adjacency[b].push_back(a);
      edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    if (simple) {
      std::sort(edges.begin(), edges.end());
      return edges;
    }
  }
  throw std::runtime_error("sample_regular_graph: no simple graph after " + std::to_string(kMaxAttempts) +
                           " attempts");
}

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> sample_regular_graph(std::size_t n, std::size_t degree,
                                                                       Rng& rng) {
  if (degree >= n && !(n == 0 && degree == 0)) {
    throw std::invalid_argument("sample_regular_graph: degree " + std::to_string(degree) +
                                " must be below vertex count " + std::to_string(n));
  }
  if ((n * degree) % 2 != 0) {
    throw std::invalid_argument("sample_regular_graph: n * degree must be even");
  }
  if (2 * degree <= n - 1 || n == 0) {
    return pairing_sample(n, degree, rng);
  }

  // Dense case: complementation is a bijection between d-regular and
  // (n-1-d)-regular graphs, and the sparse side is far cheaper to sample.
  const auto sparse = pairing_sample(n, n - 1 - degree, rng);
  EdgeList edges;
  edges.reserve(n * degree / 2);
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (next < sparse.size() && sparse[next] == std::pair{i, j}) {
        ++next;
      } else {
        edges.emplace_back(i, j);
      }
    }
  }
  return edges;
}

IsingProblem generate_problem(std::size_t n, std::size_t degree, Rng& rng) {
  if (n == 0) {
    throw std::invalid_argument("generate_problem: n must be positive");
  }
  const auto edges = sample_regular_graph(n, degree, rng);
  std::vector<double> h(n);
  for (auto& v : h) {
    v = static_cast<double>(rng.between(-20, 20)) / 10.0;
  }
  std::vector<Coupling> couplings;
  couplings.reserve(edges.size());
  for (const auto& [i, j] : edges) {
    couplings.push_back({i, j, static_cast<double>(rng.between(-10, 10)) / 10.0});
  }
  return IsingProblem(std::move(h), std::move(couplings));
}

bool GroundTruth::contains(BasisIndex index) const {
  return std::binary_search(ground_states.begin(), ground_states.end(), index);
}

}  // namespace qasa
