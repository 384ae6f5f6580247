#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qasa/experiment.hpp"
#include "qasa/stats.hpp"

namespace qasa {

struct AggregateRow {
  std::string method;
  std::string params;
  std::size_t n = 0;
  double median = 0.0;
  double mad = 0.0;
  std::size_t count = 0;

  friend bool operator==(const AggregateRow&, const AggregateRow&) = default;
};

/// Groups records by (method, params, n) and reports the median and MAD of
/// the success probabilities. NaN values are dropped; groups left empty are
/// omitted with a warning. Rows come out sorted by (method, params, n).
std::vector<AggregateRow> aggregate(std::span<const ResultRecord> records);

enum class ExportFormat { table_text, csv, plot_data };

ExportFormat parse_export_format(std::string_view text);  // "table" | "csv" | "plot"

inline constexpr const char* kAggregateHeader = "method,params,n,median,mad,count";

void write_aggregate_csv(std::ostream& out, std::span<const AggregateRow> rows);
void write_aggregate_table(std::ostream& out, std::span<const AggregateRow> rows);

/// One plot series per (method, params): columns n, median, mad, count.
void write_plot_series(std::ostream& out, std::span<const AggregateRow> rows);

/// csv and table write `destination` as a file; plot_data treats it as a
/// directory and writes one "<method>_<k>.dat" file per series plus an
/// index.csv mapping file names to params. Throws IoError when the
/// destination cannot be written.
void export_stats(std::span<const AggregateRow> rows, ExportFormat format, const std::filesystem::path& destination);

struct BoxplotRow {
  std::size_t p_prime = 0;
  std::string quantity;  // "beta" or "b_prime"
  BoxplotStats stats;
};

/// Box-plot summaries of the fitted beta and the start rung b', one pair of
/// rows per p'. Fallback runs (no beta) are left out.
std::vector<BoxplotRow> beta_boxplots(std::span<const QasaDetail> details);

inline constexpr const char* kBoxplotHeader = "p_prime,quantity,count,min,q1,median,q3,max,outliers";

/// min and max are the whisker ends; outliers are ';'-separated.
void write_boxplot_csv(std::ostream& out, std::span<const BoxplotRow> rows);

}  // namespace qasa
