#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string_view>

namespace qasa {

/// Seedable random stream used by every stochastic routine in the library.
///
/// Wraps std::mt19937_64 (whose output sequence is fixed by the standard) and
/// performs the integer and floating-point conversions itself, so a given
/// seed produces the same draws with any standard library.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Order-dependent combination of two seeds.
std::uint64_t combine_seeds(std::uint64_t a, std::uint64_t b);

/// FNV-1a hash of an identifier string.
std::uint64_t hash_id(std::string_view id);

/// Seed for one independent run: f(master, problem id, repetition).
std::uint64_t derive_seed(std::uint64_t master, std::string_view problem_id, std::uint64_t repetition);

}  // namespace qasa
