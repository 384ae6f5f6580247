#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qasa {

/// GHz to angular units: 1/(2*pi) for cycles to radians and 1/2 from the
/// A/2, B/2 prefactors of the annealing Hamiltonian.
inline constexpr double kGhzToAngle = 1.0 / (4.0 * std::numbers::pi);

inline constexpr double kDefaultTauNs = 0.8;

struct ScheduleSample {
  double s = 0.0;
  double a_ghz = 0.0;
  double b_ghz = 0.0;
};

/// Annealing schedule (A(s), B(s)) sampled on 0 = s_0 < ... < s_k = 1, GHz.
///
/// Construction rejects a malformed grid; soft shape violations (A rising,
/// B falling, A(1) far from 0) are kept as warnings.
class AnnealSchedule {
 public:
  struct Point {
    double a_ghz;
    double b_ghz;
  };

  AnnealSchedule() = default;
  explicit AnnealSchedule(std::vector<ScheduleSample> samples);

  std::span<const ScheduleSample> samples() const noexcept { return samples_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  /// Piecewise-linear interpolation; exact at sample points.
  Point evaluate(double s) const;

 private:
  std::vector<ScheduleSample> samples_;
  std::vector<std::string> warnings_;
};

/// Reads `s,A_GHz,B_GHz` rows (comma, tab or space separated) after a header
/// row. Lines starting with '#' and blank lines are ignored. Errors carry the
/// 1-based line number.
AnnealSchedule load_schedule(std::istream& in);
AnnealSchedule load_schedule_file(const std::filesystem::path& path);

/// The shipped dwave_2000Q_6-style schedule (see data/schedules/).
AnnealSchedule bundled_schedule();
std::string_view bundled_schedule_text();

inline constexpr double kSyntheticA0Ghz = 6.4;
inline constexpr double kSyntheticB1Ghz = 11.8;

/// Linear fallback schedule A(s) = a0 (1 - s), B(s) = b1 s.
AnnealSchedule synthetic_schedule(double a0_ghz = kSyntheticA0Ghz, double b1_ghz = kSyntheticB1Ghz,
                                  std::size_t rows = 101);

/// Resolves "bundled", "synthetic" or a file path.
AnnealSchedule resolve_schedule(std::string_view name_or_path);

/// Per-layer angles of the discretised anneal.
///
/// Layer l (1-based) sits at grid[l-1] = l/p. deltas are the mixer angles
/// (non-positive for A >= 0), gammas the problem-phase angles.
/// terminal_deltas[l-1] is the half-step mixer angle layer l would get if the
/// anneal ended there; it equals deltas[p-1] for the last layer.
struct AngleSequence {
  double tau_ns = kDefaultTauNs;
  std::vector<double> grid;
  std::vector<double> deltas;
  std::vector<double> gammas;
  std::vector<double> terminal_deltas;

  std::size_t p() const noexcept { return deltas.size(); }

  friend bool operator==(const AngleSequence&, const AngleSequence&) = default;
};

struct DiscretizeOptions {
  /// gamma_l = tau * B(s_l) (converted). When false, gamma_l = B(s_l)
  /// (converted) with no tau factor.
  bool include_tau_in_gamma = true;
};

AngleSequence discretize(const AnnealSchedule& schedule, std::size_t p, double tau_ns,
                         const DiscretizeOptions& options = {});

/// First p_prime layers. With terminal_delta the last kept layer uses the
/// half-step angle instead of the bridging average.
AngleSequence truncate(const AngleSequence& angles, std::size_t p_prime, bool terminal_delta = false);

}  // namespace qasa
