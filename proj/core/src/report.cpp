#include "qasa/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "qasa/errors.hpp"
#include "qasa/io.hpp"

namespace qasa {

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace

std::vector<AggregateRow> aggregate(std::span<const ResultRecord> records) {
  std::map<std::tuple<std::string, std::string, std::size_t>, std::vector<double>> groups;
  for (const auto& r : records) {
    auto& values = groups[{r.method, r.params, r.n}];
    if (!std::isnan(r.success_prob)) values.push_back(r.success_prob);
  }
  std::vector<AggregateRow> rows;
  for (const auto& [key, values] : groups) {
    const auto& [method, params, n] = key;
    if (values.empty()) {
      std::clog << "warning: no usable records for " << method << " [" << params << "] n=" << n << '\n';
      continue;
    }
    rows.push_back({method, params, n, median(values), median_absolute_deviation(values), values.size()});
  }
  return rows;
}

ExportFormat parse_export_format(std::string_view text) {
  if (text == "table") return ExportFormat::table_text;
  if (text == "csv") return ExportFormat::csv;
  if (text == "plot") return ExportFormat::plot_data;
  throw std::invalid_argument("unknown export format '" + std::string(text) + "'");
}

void write_aggregate_csv(std::ostream& out, std::span<const AggregateRow> rows) {
  out << kAggregateHeader << '\n';
  for (const auto& r : rows) {
    out << r.method << ',' << r.params << ',' << r.n << ',' << format_double(r.median) << ','
        << format_double(r.mad) << ',' << r.count << '\n';
  }
}

void write_aggregate_table(std::ostream& out, std::span<const AggregateRow> rows) {
  std::vector<std::vector<std::string>> cells{{"method", "params", "n", "median", "mad", "count"}};
  for (const auto& r : rows) {
    std::ostringstream median_text, mad_text;
    median_text << std::fixed << std::setprecision(4) << r.median;
    mad_text << std::fixed << std::setprecision(4) << r.mad;
    cells.push_back({r.method, r.params, std::to_string(r.n), median_text.str(), mad_text.str(),
                     std::to_string(r.count)});
  }
  std::vector<std::size_t> width(6, 0);
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      // Text columns left-aligned, numbers right-aligned.
      if (c < 2) {
        out << std::left << std::setw(static_cast<int>(width[c])) << row[c];
      } else {
        out << std::right << std::setw(static_cast<int>(width[c])) << row[c];
      }
      out << (c + 1 < row.size() ? "  " : "\n");
    }
  }
  out << std::left;
}

void write_plot_series(std::ostream& out, std::span<const AggregateRow> rows) {
  if (!rows.empty()) out << "# method=" << rows.front().method << " params=" << rows.front().params << '\n';
  out << "# n median mad count\n";
  for (const auto& r : rows) {
    out << r.n << ' ' << format_double(r.median) << ' ' << format_double(r.mad) << ' ' << r.count << '\n';
  }
}

void export_stats(std::span<const AggregateRow> rows, ExportFormat format, const std::filesystem::path& destination) {
  std::ostringstream text;
  switch (format) {
    case ExportFormat::csv:
      write_aggregate_csv(text, rows);
      write_text(destination, text.str());
      return;
    case ExportFormat::table_text:
      write_aggregate_table(text, rows);
      write_text(destination, text.str());
      return;
    case ExportFormat::plot_data:
      break;
  }

  std::error_code ec;
  std::filesystem::create_directories(destination, ec);
  if (ec || !std::filesystem::is_directory(destination)) {
    throw IoError("cannot create directory " + destination.string());
  }
  std::map<std::pair<std::string, std::string>, std::vector<AggregateRow>> series;
  for (const auto& r : rows) series[{r.method, r.params}].push_back(r);

  std::ostringstream index;
  index << "file,method,params\n";
  std::map<std::string, std::size_t> counter;
  for (auto& [key, members] : series) {
    std::sort(members.begin(), members.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
    const auto file = key.first + "_" + std::to_string(counter[key.first]++) + ".dat";
    std::ostringstream body;
    write_plot_series(body, members);
    write_text(destination / file, body.str());
    index << file << ',' << key.first << ',' << key.second << '\n';
  }
  write_text(destination / "index.csv", index.str());
}

std::vector<BoxplotRow> beta_boxplots(std::span<const QasaDetail> details) {
  std::map<std::size_t, std::pair<std::vector<double>, std::vector<double>>> groups;
  for (const auto& d : details) {
    if (d.fallback || std::isnan(d.beta)) continue;
    auto& [betas, rungs] = groups[d.p_prime];
    betas.push_back(d.beta);
    rungs.push_back(static_cast<double>(d.b_prime));
  }
  std::vector<BoxplotRow> rows;
  for (auto& [p_prime, values] : groups) {
    rows.push_back({p_prime, "beta", boxplot(values.first)});
    rows.push_back({p_prime, "b_prime", boxplot(values.second)});
  }
  return rows;
}

void write_boxplot_csv(std::ostream& out, std::span<const BoxplotRow> rows) {
  out << kBoxplotHeader << '\n';
  for (const auto& r : rows) {
    const auto& s = r.stats;
    out << r.p_prime << ',' << r.quantity << ',' << s.count << ',' << format_double(s.whisker_low) << ','
        << format_double(s.q1) << ',' << format_double(s.median) << ',' << format_double(s.q3) << ','
        << format_double(s.whisker_high) << ',';
    for (std::size_t k = 0; k < s.outliers.size(); ++k) out << (k ? ";" : "") << format_double(s.outliers[k]);
    out << '\n';
  }
}

}  // namespace qasa
