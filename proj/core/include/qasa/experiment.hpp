#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qasa/annealer.hpp"
#include "qasa/corpus.hpp"
#include "qasa/pipeline.hpp"
#include "qasa/schedule.hpp"

namespace qasa {

struct DiqaMethod {
  std::size_t p = 200;
  double tau_ns = kDefaultTauNs;
  bool literal_gamma = false;
  /// Stop after this many layers (the success probability is read there).
  std::optional<std::size_t> truncate_at;
  bool terminal_delta = false;
  std::string schedule_name = "bundled";
  AnnealSchedule schedule;
};

struct SaMethod {
  std::size_t b = kDefaultAnnealSteps;
  double beta0 = kDefaultBeta0;
  double beta_max = kDefaultBetaMax;
  /// Attempts per rung; empty means n.
  std::optional<std::size_t> sweeps;
  std::size_t repetitions = kDefaultRepetitions;
  std::size_t start_index = 0;
  /// Fixed starting configuration for every repetition.
  std::optional<SpinConfiguration> initial;
};

struct QasaMethod {
  QasaConfig config;  // config.seed is replaced by the experiment seed
  std::string schedule_name = "bundled";
};

using MethodSpec = std::variant<DiqaMethod, SaMethod, QasaMethod>;

/// "diqa", "sa" or "qasa".
std::string method_name(const MethodSpec& method);

/// Canonical key=value list separated by ';', e.g.
/// "b=200;sweeps=n;beta0=0.01;beta_max=100;reps=2000".
std::string method_params(const MethodSpec& method);

struct ResultRecord {
  std::string instance_id;
  std::string method;
  std::string params;
  std::size_t n = 0;
  double success_prob = 0.0;
  std::uint64_t seed = 0;
  double wall_ms = 0.0;

  friend bool operator==(const ResultRecord&, const ResultRecord&) = default;
};

inline constexpr const char* kResultHeader = "instance_id,method,params,n,success_prob,seed,wall_ms";

void write_record(std::ostream& out, const ResultRecord& record);
std::vector<ResultRecord> read_records(std::istream& in);
std::vector<ResultRecord> load_records(const std::filesystem::path& path);

/// Per-instance QASA internals, kept for the beta / b' analysis.
struct QasaDetail {
  std::string instance_id;
  std::string params;
  std::size_t n = 0;
  std::size_t p_prime = 0;
  double beta = 0.0;  // NaN after a fallback
  std::size_t b_prime = 1;
  std::size_t skipped_pairs = 0;
  bool fallback = false;
  std::size_t sa_steps = 0;
  double diqa_best_energy = 0.0;

  friend bool operator==(const QasaDetail&, const QasaDetail&) = default;
};

inline constexpr const char* kDetailHeader =
    "instance_id,params,n,p_prime,beta,b_prime,skipped_pairs,fallback,sa_steps,diqa_best_energy";

void write_detail(std::ostream& out, const QasaDetail& detail);
std::vector<QasaDetail> read_details(std::istream& in);
std::vector<QasaDetail> load_details(const std::filesystem::path& path);

struct ExperimentOptions {
  std::uint64_t seed = 0;
  std::size_t workers = 0;  // 0 = default_workers()
  /// Fill wall_ms with measured time; left at 0 otherwise so reruns are
  /// byte-identical.
  bool record_timing = false;
};

struct ExperimentResult {
  std::vector<ResultRecord> records;  // corpus order
  std::vector<QasaDetail> details;    // QASA only
  std::map<std::string, std::string> errors;
};

/// Runs the method on every corpus instance (or on the listed ids only).
/// Per-instance failures are collected in `errors` and do not stop the run.
ExperimentResult run_experiment(const Corpus& corpus, const MethodSpec& method, const ExperimentOptions& options,
                                const std::vector<std::string>* only_ids = nullptr);

/// Appends records for instances not yet present in `results` (same method
/// and params) in corpus order. QASA details go to `details` when given.
/// Returns every record for this method and params, old and new.
ExperimentResult run_experiment_to_file(const Corpus& corpus, const MethodSpec& method,
                                        const ExperimentOptions& options, const std::filesystem::path& results,
                                        const std::optional<std::filesystem::path>& details = std::nullopt);

}  // namespace qasa
