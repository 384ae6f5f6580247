#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "qasa/ising.hpp"

namespace qasa::detail {

// Full recompute interval; bounds the drift of the running sum.
inline constexpr std::uint64_t kGrayResyncInterval = 1024;

// Calls visit(index, energy) for all 2^n configurations in reflected Gray
// code order, updating the energy by one local difference per step.
template <typename Visitor>
void gray_walk(const IsingProblem& problem, Visitor&& visit) {
  const std::size_t n = problem.size();
  std::vector<std::int8_t> spins(n, 1);
  BasisIndex index = 0;
  double e = energy(problem, spins);
  visit(index, e);
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t step = 1; step < count; ++step) {
    const auto bit = static_cast<std::size_t>(std::countr_zero(step));
    const double delta = energy_delta_unchecked(problem, spins, bit);
    spins[bit] = static_cast<std::int8_t>(-spins[bit]);
    index ^= BasisIndex{1} << bit;
    if (step % kGrayResyncInterval == 0) {
      e = energy(problem, spins);
    } else {
      e += delta;
    }
    visit(index, e);
  }
}

}  // namespace qasa::detail
