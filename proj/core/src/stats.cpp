#include "qasa/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qasa {

double median(std::vector<double> values) {
  if (values.empty()) {
    throw std::invalid_argument("median: empty sample");
  }
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) {
    return upper;
  }
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return lower + (upper - lower) / 2.0;
}

double median_absolute_deviation(const std::vector<double>& values) {
  const double center = median(values);
  std::vector<double> deviations;
  deviations.reserve(values.size());
  for (double v : values) deviations.push_back(std::abs(v - center));
  return median(std::move(deviations));
}

BoxplotStats boxplot(std::vector<double> values) {
  if (values.empty()) {
    throw std::invalid_argument("boxplot: empty sample");
  }
  std::sort(values.begin(), values.end());
  BoxplotStats box;
  box.count = values.size();
  box.median = median(values);

  const std::size_t half = values.size() / 2;
  if (values.size() == 1) {
    box.q1 = box.q3 = values.front();
  } else {
    box.q1 = median({values.begin(), values.begin() + static_cast<std::ptrdiff_t>(half)});
    box.q3 = median({values.end() - static_cast<std::ptrdiff_t>(half), values.end()});
  }
  const double iqr = box.q3 - box.q1;
  const double low_fence = box.q1 - 1.5 * iqr;
  const double high_fence = box.q3 + 1.5 * iqr;

  box.whisker_low = box.q1;
  box.whisker_high = box.q3;
  bool inside_seen = false;
  for (double v : values) {
    if (v < low_fence || v > high_fence) {
      box.outliers.push_back(v);
      continue;
    }
    if (!inside_seen) {
      box.whisker_low = v;
      inside_seen = true;
    }
    box.whisker_high = v;
  }
  return box;
}

}  // namespace qasa
