#include "qasa/experiment.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>

#include "qasa/errors.hpp"
#include "qasa/io.hpp"
#include "qasa/parallel.hpp"
#include "qasa/statevector.hpp"

namespace qasa {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::string sweeps_text(const std::optional<std::size_t>& sweeps) {
  return sweeps ? std::to_string(*sweeps) : std::string("n");
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

template <typename T>
T parse_number(const std::string& text, std::size_t row, const char* what) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw FormatError(std::string("bad ") + what + " '" + text + "'", row);
  }
  return value;
}

template <typename Row, typename Parse>
std::vector<Row> read_csv(std::istream& in, const char* header, std::size_t columns, Parse&& parse) {
  std::vector<Row> rows;
  std::string line;
  std::size_t row = 0;
  bool seen_header = false;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!seen_header) {
      if (line != header) throw FormatError("expected header '" + std::string(header) + "'", row);
      seen_header = true;
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != columns) {
      throw FormatError("expected " + std::to_string(columns) + " fields, got " + std::to_string(fields.size()), row);
    }
    rows.push_back(parse(fields, row));
  }
  return rows;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

struct InstanceOutcome {
  std::optional<ResultRecord> record;
  std::optional<QasaDetail> detail;
  std::string error;
};

using Clock = std::chrono::steady_clock;

// Runs the listed corpus positions on a worker pool and hands every outcome
// to `sink` in list order, one at a time.
void run_positions(const Corpus& corpus, const MethodSpec& method, const ExperimentOptions& options,
                   const std::vector<std::size_t>& positions,
                   const std::function<void(std::size_t, InstanceOutcome&&)>& sink) {
  const auto name = method_name(method);
  const auto params = method_params(method);

  std::optional<AngleSequence> diqa_angles;
  if (const auto* diqa = std::get_if<DiqaMethod>(&method)) {
    diqa_angles = discretize(diqa->schedule, diqa->p, diqa->tau_ns, {.include_tau_in_gamma = !diqa->literal_gamma});
    if (diqa->truncate_at) diqa_angles = truncate(*diqa_angles, *diqa->truncate_at, diqa->terminal_delta);
  }
  std::optional<InverseTemperatureSchedule> sa_ladder;
  if (const auto* sa = std::get_if<SaMethod>(&method)) {
    sa_ladder = build_beta_schedule(sa->beta0, sa->beta_max, sa->b);
  }
  if (const auto* q = std::get_if<QasaMethod>(&method)) q->config.validate();

  auto run_one = [&](const CorpusInstance& inst) {
    InstanceOutcome outcome;
    const auto start = Clock::now();
    ResultRecord record{inst.id, name, params, inst.problem.size(), 0.0, options.seed, 0.0};
    std::visit(overloaded{
                   [&](const DiqaMethod&) {
                     const auto state = evolve(inst.problem, *diqa_angles);
                     record.success_prob = success_probability(state, inst.truth);
                   },
                   [&](const SaMethod& sa) {
                     SAParams sa_params;
                     sa_params.sweeps = sa.sweeps.value_or(inst.problem.size());
                     sa_params.seed = options.seed;
                     sa_params.start_index = sa.start_index;
                     sa_params.initial = sa.initial;
                     record.success_prob = estimate_success(inst.problem, inst.truth, *sa_ladder, sa_params,
                                                            sa.repetitions, inst.id);
                   },
                   [&](const QasaMethod& q) {
                     auto config = q.config;
                     config.seed = options.seed;
                     const auto result = run_qasa(inst.problem, config, &inst.truth, inst.id);
                     record.success_prob =
                         result.success_probability.value_or(std::numeric_limits<double>::quiet_NaN());
                     QasaDetail detail;
                     detail.instance_id = inst.id;
                     detail.params = params;
                     detail.n = inst.problem.size();
                     detail.p_prime = config.p_prime;
                     detail.beta = result.beta_estimate ? result.beta_estimate->beta
                                                        : std::numeric_limits<double>::quiet_NaN();
                     detail.b_prime = result.b_prime;
                     detail.skipped_pairs = result.beta_estimate ? result.beta_estimate->skipped_pairs : 0;
                     detail.fallback = result.diagnostics.fallback;
                     detail.sa_steps = result.diagnostics.sa_steps;
                     detail.diqa_best_energy = result.diqa_best_energy;
                     outcome.detail = detail;
                   },
               },
               method);
    if (options.record_timing) {
      record.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    }
    outcome.record = record;
    return outcome;
  };

  std::mutex mutex;
  std::map<std::size_t, InstanceOutcome> pending;
  std::size_t next = 0;
  const std::size_t workers = options.workers ? options.workers : default_workers();
  parallel_for(positions.size(), workers, [&](std::size_t k) {
    const auto& inst = corpus.instances[positions[k]];
    InstanceOutcome outcome;
    try {
      outcome = run_one(inst);
    } catch (const std::exception& e) {
      outcome.error = e.what();
    }
    std::lock_guard lock(mutex);
    pending.emplace(k, std::move(outcome));
    while (!pending.empty() && pending.begin()->first == next) {
      sink(positions[next], std::move(pending.begin()->second));
      pending.erase(pending.begin());
      ++next;
    }
  });
}

void collect(ExperimentResult& result, const Corpus& corpus, std::size_t position, InstanceOutcome&& outcome) {
  if (outcome.record) {
    result.records.push_back(std::move(*outcome.record));
    if (outcome.detail) result.details.push_back(std::move(*outcome.detail));
  } else {
    const auto& id = corpus.instances[position].id;
    std::clog << "warning: " << id << ": " << outcome.error << '\n';
    result.errors[id] = std::move(outcome.error);
  }
}

}  // namespace

std::string method_name(const MethodSpec& method) {
  return std::visit(overloaded{
                        [](const DiqaMethod&) { return std::string("diqa"); },
                        [](const SaMethod&) { return std::string("sa"); },
                        [](const QasaMethod&) { return std::string("qasa"); },
                    },
                    method);
}

std::string method_params(const MethodSpec& method) {
  std::ostringstream out;
  std::visit(overloaded{
                 [&](const DiqaMethod& m) {
                   out << "p=" << m.p << ";tau_ns=" << format_double(m.tau_ns) << ";schedule=" << m.schedule_name;
                   if (m.literal_gamma) out << ";gamma=literal";
                   if (m.truncate_at) out << ";truncate_at=" << *m.truncate_at;
                   if (m.terminal_delta) out << ";terminal_delta=1";
                 },
                 [&](const SaMethod& m) {
                   out << "b=" << m.b << ";sweeps=" << sweeps_text(m.sweeps) << ";beta0=" << format_double(m.beta0)
                       << ";beta_max=" << format_double(m.beta_max) << ";reps=" << m.repetitions;
                   if (m.start_index) out << ";start_index=" << m.start_index;
                   if (m.initial) out << ";init=" << m.initial->to_bitstring();
                 },
                 [&](const QasaMethod& m) {
                   const auto& c = m.config;
                   out << "p=" << c.p << ";p_prime=" << c.p_prime << ";tau_ns=" << format_double(c.tau_ns)
                       << ";schedule=" << m.schedule_name;
                   if (c.literal_gamma) out << ";gamma=literal";
                   if (c.terminal_delta) out << ";terminal_delta=1";
                   out << ";shots=" << c.shots << ";m=" << c.fit.m << ";anchor=" << to_string(c.fit.anchor)
                       << ";agg=" << to_string(c.fit.aggregation) << ";metric=" << to_string(c.step_metric)
                       << ";b=" << c.b << ";sweeps=" << sweeps_text(c.sweeps) << ";beta0=" << format_double(c.beta0)
                       << ";beta_max=" << format_double(c.beta_max) << ";reps=" << c.repetitions;
                   if (c.fallback == FallbackMode::warm_from_start) out << ";fallback=warm";
                   if (c.beta_only) out << ";beta_only=1";
                 },
             },
             method);
  return out.str();
}

void write_record(std::ostream& out, const ResultRecord& r) {
  out << r.instance_id << ',' << r.method << ',' << r.params << ',' << r.n << ',' << format_double(r.success_prob)
      << ',' << r.seed << ',' << format_double(r.wall_ms) << '\n';
}

std::vector<ResultRecord> read_records(std::istream& in) {
  return read_csv<ResultRecord>(in, kResultHeader, 7, [](const std::vector<std::string>& f, std::size_t row) {
    return ResultRecord{f[0],
                        f[1],
                        f[2],
                        parse_number<std::size_t>(f[3], row, "n"),
                        parse_number<double>(f[4], row, "success_prob"),
                        parse_number<std::uint64_t>(f[5], row, "seed"),
                        parse_number<double>(f[6], row, "wall_ms")};
  });
}

std::vector<ResultRecord> load_records(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_records(in);
}

void write_detail(std::ostream& out, const QasaDetail& d) {
  out << d.instance_id << ',' << d.params << ',' << d.n << ',' << d.p_prime << ',' << format_double(d.beta) << ','
      << d.b_prime << ',' << d.skipped_pairs << ',' << (d.fallback ? 1 : 0) << ',' << d.sa_steps << ','
      << format_double(d.diqa_best_energy) << '\n';
}

std::vector<QasaDetail> read_details(std::istream& in) {
  return read_csv<QasaDetail>(in, kDetailHeader, 10, [](const std::vector<std::string>& f, std::size_t row) {
    QasaDetail d;
    d.instance_id = f[0];
    d.params = f[1];
    d.n = parse_number<std::size_t>(f[2], row, "n");
    d.p_prime = parse_number<std::size_t>(f[3], row, "p_prime");
    d.beta = parse_number<double>(f[4], row, "beta");
    d.b_prime = parse_number<std::size_t>(f[5], row, "b_prime");
    d.skipped_pairs = parse_number<std::size_t>(f[6], row, "skipped_pairs");
    d.fallback = parse_number<int>(f[7], row, "fallback") != 0;
    d.sa_steps = parse_number<std::size_t>(f[8], row, "sa_steps");
    d.diqa_best_energy = parse_number<double>(f[9], row, "diqa_best_energy");
    return d;
  });
}

std::vector<QasaDetail> load_details(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_details(in);
}

ExperimentResult run_experiment(const Corpus& corpus, const MethodSpec& method, const ExperimentOptions& options,
                                const std::vector<std::string>* only_ids) {
  std::vector<std::size_t> positions;
  for (std::size_t k = 0; k < corpus.instances.size(); ++k) {
    if (only_ids && std::find(only_ids->begin(), only_ids->end(), corpus.instances[k].id) == only_ids->end()) {
      continue;
    }
    positions.push_back(k);
  }
  ExperimentResult result;
  run_positions(corpus, method, options, positions, [&](std::size_t position, InstanceOutcome&& outcome) {
    collect(result, corpus, position, std::move(outcome));
  });
  return result;
}

ExperimentResult run_experiment_to_file(const Corpus& corpus, const MethodSpec& method,
                                        const ExperimentOptions& options, const std::filesystem::path& results,
                                        const std::optional<std::filesystem::path>& details) {
  const auto name = method_name(method);
  const auto params = method_params(method);

  ExperimentResult result;
  std::set<std::string> done;
  const bool results_exist = std::filesystem::exists(results);
  if (results_exist) {
    for (auto& r : load_records(results)) {
      if (r.method == name && r.params == params && r.seed == options.seed) {
        done.insert(r.instance_id);
        result.records.push_back(std::move(r));
      }
    }
  }
  const bool details_exist = details && std::filesystem::exists(*details);
  if (details_exist) {
    for (auto& d : load_details(*details)) {
      if (d.params == params && done.contains(d.instance_id)) result.details.push_back(std::move(d));
    }
  }

  if (results.has_parent_path()) std::filesystem::create_directories(results.parent_path());
  std::ofstream out(results, std::ios::app | std::ios::binary);
  if (!out) throw IoError("cannot write " + results.string());
  if (!results_exist) out << kResultHeader << '\n';
  std::ofstream detail_out;
  if (details && std::holds_alternative<QasaMethod>(method)) {
    if (details->has_parent_path()) std::filesystem::create_directories(details->parent_path());
    detail_out.open(*details, std::ios::app | std::ios::binary);
    if (!detail_out) throw IoError("cannot write " + details->string());
    if (!details_exist) detail_out << kDetailHeader << '\n';
  }

  std::vector<std::size_t> positions;
  for (std::size_t k = 0; k < corpus.instances.size(); ++k) {
    if (!done.contains(corpus.instances[k].id)) positions.push_back(k);
  }
  run_positions(corpus, method, options, positions, [&](std::size_t position, InstanceOutcome&& outcome) {
    if (outcome.record) {
      write_record(out, *outcome.record);
      out.flush();
      if (outcome.detail && detail_out.is_open()) {
        write_detail(detail_out, *outcome.detail);
        detail_out.flush();
      }
      if (!out) throw IoError("write failed for " + results.string());
    }
    collect(result, corpus, position, std::move(outcome));
  });
  return result;
}

}  // namespace qasa
