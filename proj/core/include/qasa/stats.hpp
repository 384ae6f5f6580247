#pragma once

#include <cstddef>
#include <vector>

namespace qasa {

/// Median of a non-empty sample; the mean of the two middle values for even
/// sizes.
double median(std::vector<double> values);

/// median(|x_i - median(x)|).
double median_absolute_deviation(const std::vector<double>& values);

/// Tukey box-plot summary. Quartiles are medians of the lower and upper
/// halves (the middle value is excluded from both halves for odd sizes).
/// Whiskers reach the most extreme values inside 1.5 IQR of the quartiles;
/// everything beyond is an outlier.
struct BoxplotStats {
  std::size_t count = 0;
  double whisker_low = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double whisker_high = 0.0;
  std::vector<double> outliers;  // ascending
};

BoxplotStats boxplot(std::vector<double> values);

}  // namespace qasa
