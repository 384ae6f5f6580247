#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace oracle {

std::vector<std::vector<double>> dense_couplings(const qasa::IsingProblem& problem) {
  const std::size_t n = problem.size();
  std::vector<std::vector<double>> j(n, std::vector<double>(n, 0.0));
  for (const auto& c : problem.couplings()) {
    j[c.i][c.j] = c.value;
    j[c.j][c.i] = c.value;
  }
  return j;
}

std::vector<int> decode(std::uint64_t index, std::size_t n) {
  std::vector<int> spins(n);
  for (std::size_t k = 0; k < n; ++k) spins[k] = ((index >> k) & 1U) ? -1 : 1;
  return spins;
}

double energy(const qasa::IsingProblem& problem, const std::vector<int>& spins) {
  const auto j = dense_couplings(problem);
  const auto h = problem.h();
  double e = 0.0;
  for (std::size_t a = 0; a < spins.size(); ++a) {
    e += h[a] * spins[a];
    for (std::size_t b = a + 1; b < spins.size(); ++b) e += j[a][b] * spins[a] * spins[b];
  }
  return e;
}

double energy_of_index(const qasa::IsingProblem& problem, std::uint64_t index) {
  return energy(problem, decode(index, problem.size()));
}

Truth naive_ground_truth(const qasa::IsingProblem& problem, double tie_epsilon) {
  const std::size_t n = problem.size();
  const auto j = dense_couplings(problem);
  const auto h = problem.h();
  std::vector<double> all(std::size_t{1} << n);
  for (std::uint64_t k = 0; k < all.size(); ++k) {
    double e = 0.0;
    const auto s = decode(k, n);
    for (std::size_t a = 0; a < n; ++a) {
      e += h[a] * s[a];
      for (std::size_t b = a + 1; b < n; ++b) e += j[a][b] * s[a] * s[b];
    }
    all[k] = e;
  }
  Truth truth;
  truth.min_energy = *std::min_element(all.begin(), all.end());
  for (std::uint64_t k = 0; k < all.size(); ++k) {
    if (all[k] < truth.min_energy + tie_epsilon) truth.ground_states.push_back(k);
  }
  return truth;
}

Matrix identity(std::size_t d) {
  Matrix m(d, Vector(d, 0.0));
  for (std::size_t k = 0; k < d; ++k) m[k][k] = 1.0;
  return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t d = a.size();
  Matrix c(d, Vector(d, 0.0));
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t k = 0; k < d; ++k) {
      for (std::size_t col = 0; col < d; ++col) c[r][col] += a[r][k] * b[k][col];
    }
  }
  return c;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  const std::size_t da = a.size(), db = b.size();
  Matrix c(da * db, Vector(da * db, 0.0));
  for (std::size_t r1 = 0; r1 < da; ++r1) {
    for (std::size_t c1 = 0; c1 < da; ++c1) {
      for (std::size_t r2 = 0; r2 < db; ++r2) {
        for (std::size_t c2 = 0; c2 < db; ++c2) c[r1 * db + r2][c1 * db + c2] = a[r1][c1] * b[r2][c2];
      }
    }
  }
  return c;
}

Matrix scale(const Matrix& a, Complex factor) {
  Matrix c = a;
  for (auto& row : c) {
    for (auto& x : row) x *= factor;
  }
  return c;
}

Matrix add(const Matrix& a, const Matrix& b) {
  Matrix c = a;
  for (std::size_t r = 0; r < a.size(); ++r) {
    for (std::size_t col = 0; col < a.size(); ++col) c[r][col] += b[r][col];
  }
  return c;
}

Vector apply(const Matrix& m, const Vector& v) {
  Vector out(v.size(), 0.0);
  for (std::size_t r = 0; r < m.size(); ++r) {
    for (std::size_t k = 0; k < v.size(); ++k) out[r] += m[r][k] * v[k];
  }
  return out;
}

Matrix expm(const Matrix& a) {
  double norm = 0.0;
  for (const auto& row : a) {
    double sum = 0.0;
    for (const auto& x : row) sum += std::abs(x);
    norm = std::max(norm, sum);
  }
  int squarings = 0;
  while (norm > 0.5) {
    norm /= 2.0;
    ++squarings;
  }
  const Matrix small = scale(a, std::ldexp(1.0, -squarings));
  Matrix result = identity(a.size());
  Matrix term = identity(a.size());
  for (int k = 1; k <= 30; ++k) {
    term = scale(multiply(term, small), 1.0 / k);
    result = add(result, term);
  }
  for (int k = 0; k < squarings; ++k) result = multiply(result, result);
  return result;
}

Matrix problem_hamiltonian(const qasa::IsingProblem& problem) {
  const std::size_t n = problem.size();
  const Matrix z{{1.0, 0.0}, {0.0, -1.0}};
  const Matrix one = identity(2);
  // Z_v with qubit 0 as the rightmost (least significant) factor.
  auto z_on = [&](std::size_t v) {
    Matrix m = identity(1);
    for (std::size_t q = n; q-- > 0;) m = kron(m, q == v ? z : one);
    return m;
  };
  const std::size_t d = std::size_t{1} << n;
  Matrix h(d, Vector(d, 0.0));
  for (std::size_t v = 0; v < n; ++v) h = add(h, scale(z_on(v), problem.h()[v]));
  for (const auto& c : problem.couplings()) h = add(h, scale(multiply(z_on(c.i), z_on(c.j)), c.value));
  return h;
}

Matrix mixer_hamiltonian(std::size_t n) {
  const Matrix x{{0.0, 1.0}, {1.0, 0.0}};
  const Matrix one = identity(2);
  const std::size_t d = std::size_t{1} << n;
  Matrix h(d, Vector(d, 0.0));
  for (std::size_t v = 0; v < n; ++v) {
    Matrix m = identity(1);
    for (std::size_t q = n; q-- > 0;) m = kron(m, q == v ? x : one);
    h = add(h, m);
  }
  return h;
}

Vector uniform_state(std::size_t n) {
  const std::size_t d = std::size_t{1} << n;
  return Vector(d, Complex(1.0 / std::sqrt(static_cast<double>(d)), 0.0));
}

Vector dense_evolve(const qasa::IsingProblem& problem, const std::vector<double>& gammas,
                    const std::vector<double>& deltas) {
  const auto hp = problem_hamiltonian(problem);
  const auto hm = mixer_hamiltonian(problem.size());
  const Complex minus_i(0.0, -1.0);
  Vector psi = uniform_state(problem.size());
  for (std::size_t l = 0; l < gammas.size(); ++l) {
    psi = oracle::apply(expm(scale(hp, minus_i * gammas[l])), psi);
    psi = oracle::apply(expm(scale(hm, minus_i * deltas[l])), psi);
  }
  return psi;
}

std::pair<double, double> interpolate(const std::vector<qasa::ScheduleSample>& samples, double s) {
  for (std::size_t k = 0; k + 1 < samples.size(); ++k) {
    const auto& lo = samples[k];
    const auto& hi = samples[k + 1];
    if (s >= lo.s && s <= hi.s) {
      if (s == lo.s) return {lo.a_ghz, lo.b_ghz};
      if (s == hi.s) return {hi.a_ghz, hi.b_ghz};
      const double w = (s - lo.s) / (hi.s - lo.s);
      return {lo.a_ghz + w * (hi.a_ghz - lo.a_ghz), lo.b_ghz + w * (hi.b_ghz - lo.b_ghz)};
    }
  }
  return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
}

Angles formula_angles(const std::vector<qasa::ScheduleSample>& samples, std::size_t p, double tau_ns,
                      bool tau_in_gamma) {
  const double unit = 1.0 / (4.0 * std::numbers::pi);
  auto a = [&](std::size_t l) { return interpolate(samples, static_cast<double>(l) / p).first * unit; };
  auto b = [&](std::size_t l) { return interpolate(samples, static_cast<double>(l) / p).second * unit; };
  Angles out;
  for (std::size_t l = 1; l <= p; ++l) {
    out.deltas.push_back(l < p ? -tau_ns * (a(l + 1) + a(l)) / 2.0 : -tau_ns * a(p) / 2.0);
    out.gammas.push_back(tau_in_gamma ? tau_ns * b(l) : b(l));
  }
  return out;
}

ReferenceRun reference_anneal(const qasa::IsingProblem& problem, const std::vector<double>& betas,
                              std::size_t sweeps, std::size_t start_index,
                              const std::optional<std::vector<int>>& initial, std::uint64_t seed) {
  const std::size_t n = problem.size();
  qasa::Rng rng(seed);
  std::vector<int> sigma(n);
  if (initial) {
    sigma = *initial;
  } else {
    for (std::size_t k = 0; k < n; ++k) sigma[k] = rng.below(2) == 0 ? 1 : -1;
  }
  ReferenceRun run;
  for (std::size_t rung = start_index; rung < betas.size(); ++rung) {
    for (std::size_t step = 0; step < sweeps; ++step) {
      TraceStep t;
      t.rung = rung;
      t.variable = static_cast<std::size_t>(rng.below(n));
      const double before = energy(problem, sigma);
      sigma[t.variable] = -sigma[t.variable];
      double diff = energy(problem, sigma) - before;
      if (std::abs(diff) < 1e-9) diff = 0.0;
      if (diff < 0.0) {
        t.accepted = true;
      } else {
        const double r = rng.uniform01();
        t.draw = r;
        t.accepted = r < std::exp(-betas[rung] * diff);
      }
      if (!t.accepted) sigma[t.variable] = -sigma[t.variable];
      run.trace.push_back(t);
    }
  }
  run.final_spins = sigma;
  return run;
}

double one_spin_down_probability(double h, const std::vector<double>& betas, std::size_t sweeps) {
  // State 0: spin +1 (energy h); state 1: spin -1 (energy -h).
  double up = 0.5, down = 0.5;
  const double up_to_down_delta = -2.0 * h;
  for (double beta : betas) {
    const double p_up_down = up_to_down_delta < 0.0 ? 1.0 : std::exp(-beta * up_to_down_delta);
    const double p_down_up = -up_to_down_delta < 0.0 ? 1.0 : std::exp(beta * up_to_down_delta);
    for (std::size_t k = 0; k < sweeps; ++k) {
      const double next_up = up * (1.0 - p_up_down) + down * p_down_up;
      const double next_down = down * (1.0 - p_down_up) + up * p_up_down;
      up = next_up;
      down = next_down;
    }
  }
  return down;
}

namespace {

double middle(const std::vector<double>& sorted, std::size_t first, std::size_t count) {
  const std::size_t mid = first + count / 2;
  return count % 2 ? sorted[mid] : (sorted[mid - 1] + sorted[mid]) / 2.0;
}

}  // namespace

Quantiles tukey(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  Quantiles q;
  q.median = middle(values, 0, n);
  const std::size_t half = n / 2;
  if (n == 1) {
    q.q1 = q.q3 = values[0];
  } else {
    q.q1 = middle(values, 0, half);
    q.q3 = middle(values, n - half, half);
  }
  const double iqr = q.q3 - q.q1;
  const double lo_fence = q.q1 - 1.5 * iqr;
  const double hi_fence = q.q3 + 1.5 * iqr;
  q.low = std::numeric_limits<double>::infinity();
  q.high = -std::numeric_limits<double>::infinity();
  for (double v : values) {
    if (v < lo_fence || v > hi_fence) {
      q.outliers.push_back(v);
    } else {
      q.low = std::min(q.low, v);
      q.high = std::max(q.high, v);
    }
  }
  return q;
}

qasa::IsingProblem random_problem(std::size_t n, double edge_probability, qasa::Rng& rng) {
  std::vector<double> h(n);
  for (auto& x : h) x = static_cast<double>(rng.between(-20, 20)) / 10.0;
  std::vector<qasa::Coupling> couplings;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.uniform01() < edge_probability) {
        couplings.push_back({i, j, static_cast<double>(rng.between(-10, 10)) / 10.0});
      }
    }
  }
  return qasa::IsingProblem(std::move(h), std::move(couplings));
}

}  // namespace oracle
