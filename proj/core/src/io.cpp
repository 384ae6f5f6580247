#include "qasa/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>

#include "json.hpp"
#include "qasa/errors.hpp"

namespace qasa {

namespace {

using nlohmann::json;

json parse_json(std::istream& in, const char* what) {
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(std::string(what) + ": " + e.what(), 0);
  }
}

template <typename T>
T field(const json& obj, const char* key, const char* what) {
  if (!obj.contains(key)) {
    throw FormatError(std::string(what) + ": missing field '" + key + "'", 0);
  }
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(std::string(what) + ": bad field '" + key + "': " + e.what(), 0);
  }
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 64> buffer{};
  auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
  return std::string(buffer.data(), ptr);
}

void write_problem(std::ostream& out, const IsingProblem& problem) {
  out << "{\n  \"n\": " << problem.size() << ",\n";
  if (problem.seed()) out << "  \"seed\": " << *problem.seed() << ",\n";
  out << "  \"h\": [";
  const auto h = problem.h();
  for (std::size_t i = 0; i < h.size(); ++i) {
    out << (i ? ", " : "") << format_double(h[i]);
  }
  out << "],\n  \"couplings\": [";
  const auto couplings = problem.couplings();
  for (std::size_t k = 0; k < couplings.size(); ++k) {
    const auto& c = couplings[k];
    out << (k ? ",\n    " : "\n    ") << '[' << c.i << ", " << c.j << ", " << format_double(c.value) << ']';
  }
  out << (couplings.empty() ? "]\n}\n" : "\n  ]\n}\n");
}

IsingProblem read_problem(std::istream& in) {
  const json doc = parse_json(in, "problem");
  if (!doc.is_object()) throw FormatError("problem: expected a JSON object", 0);
  const auto n = field<std::size_t>(doc, "n", "problem");
  auto h = field<std::vector<double>>(doc, "h", "problem");
  if (h.size() != n) {
    throw FormatError("problem: 'h' has " + std::to_string(h.size()) + " entries, n = " + std::to_string(n), 0);
  }
  std::vector<Coupling> couplings;
  const auto& raw = doc.contains("couplings") ? doc.at("couplings") : json::array();
  if (!raw.is_array()) throw FormatError("problem: 'couplings' must be an array", 0);
  for (std::size_t k = 0; k < raw.size(); ++k) {
    const auto& triple = raw[k];
    if (!triple.is_array() || triple.size() != 3 || !triple[0].is_number_unsigned() ||
        !triple[1].is_number_unsigned() || !triple[2].is_number()) {
      throw FormatError("problem: coupling " + std::to_string(k) + " must be [i, j, J]", 0);
    }
    couplings.push_back({triple[0].get<std::size_t>(), triple[1].get<std::size_t>(), triple[2].get<double>()});
  }
  std::optional<std::uint64_t> seed;
  if (doc.contains("seed") && !doc.at("seed").is_null()) seed = field<std::uint64_t>(doc, "seed", "problem");
  try {
    return IsingProblem(std::move(h), std::move(couplings), seed);
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("problem: ") + e.what(), 0);
  }
}

void save_problem(const std::filesystem::path& path, const IsingProblem& problem) {
  std::ostringstream out;
  write_problem(out, problem);
  write_file_atomic(path, out.str());
}

IsingProblem load_problem(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_problem(in);
}

void write_truth(std::ostream& out, const GroundTruth& truth, std::size_t n) {
  out << "{\n  \"n\": " << n << ",\n  \"min_energy\": " << format_double(truth.min_energy)
      << ",\n  \"ground_states\": [";
  for (std::size_t k = 0; k < truth.ground_states.size(); ++k) {
    out << (k ? ", " : "") << truth.ground_states[k];
  }
  out << "],\n  \"bitstrings\": [";
  for (std::size_t k = 0; k < truth.ground_states.size(); ++k) {
    out << (k ? ", " : "") << '"' << SpinConfiguration::from_index(truth.ground_states[k], n).to_bitstring() << '"';
  }
  out << "]\n}\n";
}

GroundTruth read_truth(std::istream& in) {
  const json doc = parse_json(in, "ground truth");
  GroundTruth truth;
  truth.min_energy = field<double>(doc, "min_energy", "ground truth");
  truth.ground_states = field<std::vector<BasisIndex>>(doc, "ground_states", "ground truth");
  std::sort(truth.ground_states.begin(), truth.ground_states.end());
  return truth;
}

void save_truth(const std::filesystem::path& path, const GroundTruth& truth, std::size_t n) {
  std::ostringstream out;
  write_truth(out, truth, n);
  write_file_atomic(path, out.str());
}

GroundTruth load_truth(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_truth(in);
}

void write_distribution(std::ostream& out, const OutcomeDistribution& dist) {
  out << "# source=" << (dist.source == OutcomeSource::exact ? "exact" : "sampled") << " shots=" << dist.shots
      << " qubits=" << dist.qubits << '\n';
  out << "index,bitstring,probability\n";
  for (const auto& e : dist.entries) {
    out << e.index << ',' << SpinConfiguration::from_index(e.index, dist.qubits).to_bitstring() << ','
        << format_double(e.probability) << '\n';
  }
}

OutcomeDistribution read_distribution(std::istream& in) {
  OutcomeDistribution dist;
  std::string line;
  std::size_t row = 0;
  bool header = false;
  bool qubits_known = false;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::istringstream meta(line.substr(1));
      std::string token;
      while (meta >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) continue;
        const auto key = token.substr(0, eq);
        const auto value = token.substr(eq + 1);
        if (key == "source") dist.source = value == "sampled" ? OutcomeSource::sampled : OutcomeSource::exact;
        if (key == "shots") dist.shots = std::stoull(value);
        if (key == "qubits") {
          dist.qubits = std::stoull(value);
          qubits_known = true;
        }
      }
      continue;
    }
    if (!header) {
      header = true;
      if (line.rfind("index", 0) == 0) continue;
    }
    std::istringstream fields(line);
    std::string index_text, bits, prob_text;
    if (!std::getline(fields, index_text, ',') || !std::getline(fields, bits, ',') ||
        !std::getline(fields, prob_text, ',')) {
      throw FormatError("distribution: expected index,bitstring,probability", row);
    }
    try {
      OutcomeEntry entry{std::stoull(index_text), std::stod(prob_text)};
      if (!bits.empty()) {
        const auto from_bits = SpinConfiguration::from_bitstring(bits);
        if (from_bits.to_index() != entry.index) {
          throw FormatError("distribution: index and bitstring disagree", row);
        }
        if (!qubits_known) dist.qubits = std::max(dist.qubits, bits.size());
      }
      if (entry.probability < 0.0) throw FormatError("distribution: negative probability", row);
      dist.entries.push_back(entry);
    } catch (const std::logic_error&) {
      throw FormatError("distribution: unparseable row", row);
    }
  }
  sort_outcomes(dist.entries);
  return dist;
}

OutcomeDistribution load_distribution(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_distribution(in);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << text;
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

}  // namespace qasa
