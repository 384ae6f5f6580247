#include "qasa/schedule.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <stdexcept>

#include "qasa/errors.hpp"

namespace qasa {

namespace {

constexpr double kEndpointTolerance = 1e-9;
constexpr double kShapeTolerance = 1e-6;  // GHz
constexpr double kFinalAWarnGhz = 1e-2;

std::string_view trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r");
  return text.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  const bool has_comma = line.find(',') != std::string_view::npos;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    std::size_t end = has_comma ? line.find(',', pos) : line.find_first_of(" \t", pos);
    if (end == std::string_view::npos) end = line.size();
    auto field = trim(line.substr(pos, end - pos));
    if (has_comma || !field.empty()) fields.push_back(field);
    pos = end + 1;
  }
  return fields;
}

std::optional<double> parse_double(std::string_view text) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  if (!text.empty() && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) return std::nullopt;
  return value;
}

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

void validate_grid(const std::vector<ScheduleSample>& samples) {
  if (samples.size() < 2) {
    throw std::invalid_argument("AnnealSchedule: at least two samples required");
  }
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const auto& smp = samples[k];
    if (!std::isfinite(smp.s) || !std::isfinite(smp.a_ghz) || !std::isfinite(smp.b_ghz)) {
      throw std::invalid_argument("AnnealSchedule: non-finite value in sample " + std::to_string(k));
    }
    if (k > 0 && !(smp.s > samples[k - 1].s)) {
      throw std::invalid_argument("AnnealSchedule: s not strictly increasing at sample " + std::to_string(k));
    }
  }
  if (samples.front().s != 0.0 || samples.back().s != 1.0) {
    throw std::invalid_argument("AnnealSchedule: s must run from 0 to 1");
  }
}

}  // namespace

AnnealSchedule::AnnealSchedule(std::vector<ScheduleSample> samples) : samples_(std::move(samples)) {
  validate_grid(samples_);
  for (std::size_t k = 0; k < samples_.size(); ++k) {
    const auto& smp = samples_[k];
    if (smp.a_ghz < 0.0 || smp.b_ghz < 0.0) {
      warnings_.push_back("negative schedule value at s=" + std::to_string(smp.s));
    }
    if (k > 0 && smp.a_ghz > samples_[k - 1].a_ghz + kShapeTolerance) {
      warnings_.push_back("A increases at s=" + std::to_string(smp.s));
    }
    if (k > 0 && smp.b_ghz < samples_[k - 1].b_ghz - kShapeTolerance) {
      warnings_.push_back("B decreases at s=" + std::to_string(smp.s));
    }
  }
  if (std::abs(samples_.back().a_ghz) > kFinalAWarnGhz) {
    warnings_.push_back("A(1) = " + std::to_string(samples_.back().a_ghz) + " GHz is not close to 0");
  }
}

AnnealSchedule::Point AnnealSchedule::evaluate(double s) const {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw std::invalid_argument("AnnealSchedule::evaluate: s = " + std::to_string(s) + " outside [0, 1]");
  }
  if (samples_.empty()) {
    throw std::logic_error("AnnealSchedule::evaluate: empty schedule");
  }
  auto upper = std::upper_bound(samples_.begin(), samples_.end(), s,
                                [](double value, const ScheduleSample& smp) { return value < smp.s; });
  if (upper == samples_.end()) {
    return {samples_.back().a_ghz, samples_.back().b_ghz};
  }
  const auto& hi = *upper;
  const auto& lo = *(upper - 1);
  if (s == lo.s) {
    return {lo.a_ghz, lo.b_ghz};
  }
  const double t = (s - lo.s) / (hi.s - lo.s);
  return {lo.a_ghz + t * (hi.a_ghz - lo.a_ghz), lo.b_ghz + t * (hi.b_ghz - lo.b_ghz)};
}

AnnealSchedule load_schedule(std::istream& in) {
  std::vector<ScheduleSample> samples;
  std::size_t col_s = 0, col_a = 1, col_b = 2;
  bool header_seen = false;
  std::size_t row = 0;
  std::size_t first_row = 0;
  std::size_t last_row = 0;
  std::string line;

  while (std::getline(in, line)) {
    ++row;
    auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    auto fields = split_fields(text);

    if (!header_seen) {
      header_seen = true;
      if (!parse_double(fields.front())) {
        std::optional<std::size_t> s_idx, a_idx, b_idx;
        for (std::size_t c = 0; c < fields.size(); ++c) {
          const auto name = lower(fields[c]);
          if (name == "s") s_idx = c;
          if (name == "a_ghz" || name == "a") a_idx = c;
          if (name == "b_ghz" || name == "b") b_idx = c;
        }
        if (!s_idx || !a_idx || !b_idx) {
          throw FormatError("header must name columns s, A_GHz, B_GHz", row);
        }
        col_s = *s_idx;
        col_a = *a_idx;
        col_b = *b_idx;
        continue;
      }
    }

    const std::size_t needed = std::max({col_s, col_a, col_b}) + 1;
    if (fields.size() < needed) {
      throw FormatError("expected " + std::to_string(needed) + " columns, found " + std::to_string(fields.size()),
                        row);
    }
    auto s = parse_double(fields[col_s]);
    auto a = parse_double(fields[col_a]);
    auto b = parse_double(fields[col_b]);
    if (!s || !a || !b || !std::isfinite(*s) || !std::isfinite(*a) || !std::isfinite(*b)) {
      throw FormatError("unparseable number", row);
    }
    if (!samples.empty() && !(*s > samples.back().s)) {
      throw FormatError("s values must be strictly increasing", row);
    }
    if (samples.empty()) first_row = row;
    last_row = row;
    samples.push_back({*s, *a, *b});
  }

  if (samples.size() < 2) {
    throw FormatError("schedule needs at least two data rows", row);
  }
  if (std::abs(samples.front().s) > kEndpointTolerance) {
    throw FormatError("first s must be 0", first_row);
  }
  if (std::abs(samples.back().s - 1.0) > kEndpointTolerance) {
    throw FormatError("last s must be 1", last_row);
  }
  samples.front().s = 0.0;
  samples.back().s = 1.0;
  return AnnealSchedule(std::move(samples));
}

AnnealSchedule load_schedule_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open schedule file " + path.string());
  }
  return load_schedule(in);
}

AnnealSchedule synthetic_schedule(double a0_ghz, double b1_ghz, std::size_t rows) {
  if (rows < 2) {
    throw std::invalid_argument("synthetic_schedule: at least two rows");
  }
  std::vector<ScheduleSample> samples(rows);
  for (std::size_t k = 0; k < rows; ++k) {
    const double s = static_cast<double>(k) / static_cast<double>(rows - 1);
    samples[k] = {s, a0_ghz * (1.0 - s), b1_ghz * s};
  }
  return AnnealSchedule(std::move(samples));
}

AnnealSchedule resolve_schedule(std::string_view name_or_path) {
  if (name_or_path == "bundled") return bundled_schedule();
  if (name_or_path == "synthetic") return synthetic_schedule();
  return load_schedule_file(std::filesystem::path(name_or_path));
}

AngleSequence discretize(const AnnealSchedule& schedule, std::size_t p, double tau_ns,
                         const DiscretizeOptions& options) {
  if (p < 1) {
    throw std::invalid_argument("discretize: p must be at least 1");
  }
  if (!(tau_ns > 0.0) || !std::isfinite(tau_ns)) {
    throw std::invalid_argument("discretize: tau must be positive");
  }

  AngleSequence angles;
  angles.tau_ns = tau_ns;
  angles.grid.resize(p);
  std::vector<double> a(p), b(p);
  for (std::size_t l = 0; l < p; ++l) {
    angles.grid[l] = static_cast<double>(l + 1) / static_cast<double>(p);
    const auto point = schedule.evaluate(angles.grid[l]);
    a[l] = point.a_ghz * kGhzToAngle;
    b[l] = point.b_ghz * kGhzToAngle;
  }

  angles.deltas.resize(p);
  angles.gammas.resize(p);
  angles.terminal_deltas.resize(p);
  for (std::size_t l = 0; l < p; ++l) {
    angles.terminal_deltas[l] = -tau_ns * a[l] / 2.0;
    angles.deltas[l] = l + 1 < p ? -tau_ns * (a[l + 1] + a[l]) / 2.0 : angles.terminal_deltas[l];
    angles.gammas[l] = options.include_tau_in_gamma ? tau_ns * b[l] : b[l];
  }
  return angles;
}

AngleSequence truncate(const AngleSequence& angles, std::size_t p_prime, bool terminal_delta) {
  if (p_prime < 1 || p_prime > angles.p()) {
    throw std::invalid_argument("truncate: p' = " + std::to_string(p_prime) + " outside [1, " +
                                std::to_string(angles.p()) + "]");
  }
  AngleSequence out;
  out.tau_ns = angles.tau_ns;
  out.grid.assign(angles.grid.begin(), angles.grid.begin() + static_cast<std::ptrdiff_t>(p_prime));
  out.deltas.assign(angles.deltas.begin(), angles.deltas.begin() + static_cast<std::ptrdiff_t>(p_prime));
  out.gammas.assign(angles.gammas.begin(), angles.gammas.begin() + static_cast<std::ptrdiff_t>(p_prime));
  out.terminal_deltas.assign(angles.terminal_deltas.begin(),
                             angles.terminal_deltas.begin() + static_cast<std::ptrdiff_t>(p_prime));
  if (terminal_delta) {
    out.deltas.back() = out.terminal_deltas.back();
  }
  return out;
}

}  // namespace qasa
