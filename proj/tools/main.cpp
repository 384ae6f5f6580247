// qasa: command-line front end for corpus generation, the three solvers and
// result aggregation.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qasa/corpus.hpp"
#include "qasa/errors.hpp"
#include "qasa/experiment.hpp"
#include "qasa/gibbs.hpp"
#include "qasa/io.hpp"
#include "qasa/parallel.hpp"
#include "qasa/pipeline.hpp"
#include "qasa/report.hpp"
#include "qasa/schedule.hpp"
#include "qasa/statevector.hpp"

namespace fs = std::filesystem;

namespace {

struct CommonFlags {
  std::uint64_t seed = 0;
  std::string out;
  bool timing = false;
};

struct DiqaFlags {
  std::string schedule = "bundled";
  std::size_t p = 200;
  double tau_ns = qasa::kDefaultTauNs;
  bool literal = false;
  std::optional<std::size_t> truncate_at;
  bool terminal_delta = false;
  std::uint64_t shots = 0;
  std::size_t top_m = qasa::kDefaultTopM;
  std::string dist_out;
};

struct SaFlags {
  std::size_t b = qasa::kDefaultAnnealSteps;
  double beta0 = qasa::kDefaultBeta0;
  double beta_max = qasa::kDefaultBetaMax;
  std::string sweeps = "n";
  std::size_t reps = qasa::kDefaultRepetitions;
  std::size_t start_index = 0;
  std::string init;
};

struct FitFlags {
  std::size_t m = qasa::kDefaultTopM;
  std::string anchor = "second";
  std::string agg = "median";
  std::string step_metric = "log";
};

struct QasaFlags {
  std::size_t p_prime = 100;
  std::string fallback = "plain";
  bool beta_only = false;
};

struct SourceFlags {
  std::string problem;
  std::string truth;
  std::string corpus;
  std::string details;
  double verify_fraction = 0.05;
};

std::optional<std::size_t> parse_sweeps(const std::string& text) {
  if (text == "n") return std::nullopt;
  std::size_t used = 0;
  const auto value = std::stoul(text, &used);
  if (used != text.size() || value == 0) throw std::invalid_argument("--sweeps must be a positive integer or 'n'");
  return value;
}

void add_common(CLI::App* cmd, CommonFlags& f, bool with_timing) {
  cmd->add_option("--seed", f.seed, "Master seed");
  cmd->add_option("--out", f.out, "Output path (stdout when omitted)");
  if (with_timing) cmd->add_flag("--timing", f.timing, "Record wall-clock time in wall_ms");
}

void add_schedule_flags(CLI::App* cmd, DiqaFlags& f) {
  cmd->add_option("--schedule", f.schedule, "bundled | synthetic | path to a schedule file");
  cmd->add_option("--p", f.p, "Number of layers")->check(CLI::PositiveNumber);
  cmd->add_option("--tau-ns", f.tau_ns, "Time step in ns")->check(CLI::PositiveNumber);
  cmd->add_flag("--phase-without-tau", f.literal, "Leave the time step out of the phase angles");
}

void add_diqa_flags(CLI::App* cmd, DiqaFlags& f) {
  add_schedule_flags(cmd, f);
  cmd->add_option("--truncate-at", f.truncate_at, "Stop after this many layers")->check(CLI::PositiveNumber);
  cmd->add_flag("--terminal-delta", f.terminal_delta, "Use the terminal half-step mixer at the truncation layer");
}

void add_sa_flags(CLI::App* cmd, SaFlags& f) {
  cmd->add_option("--b", f.b, "Inverse-temperature steps")->check(CLI::PositiveNumber);
  cmd->add_option("--beta0", f.beta0, "First inverse temperature")->check(CLI::PositiveNumber);
  cmd->add_option("--beta-max", f.beta_max, "Ladder end point")->check(CLI::PositiveNumber);
  cmd->add_option("--sweeps", f.sweeps, "Metropolis attempts per step, or 'n'");
  cmd->add_option("--reps", f.reps, "Repetitions")->check(CLI::PositiveNumber);
}

void add_fit_flags(CLI::App* cmd, FitFlags& f) {
  cmd->add_option("--m", f.m, "Number of most probable outcomes used")->check(CLI::Range(2, 1 << 30));
  cmd->add_option("--anchor", f.anchor, "second | first | lowest-energy");
  cmd->add_option("--agg", f.agg, "median | mean");
  cmd->add_option("--step-metric", f.step_metric, "log | linear");
}

void add_qasa_flags(CLI::App* cmd, QasaFlags& f) {
  cmd->add_option("--p-prime", f.p_prime, "Layers run before the readout")->check(CLI::PositiveNumber);
  cmd->add_option("--fallback", f.fallback, "plain | warm: SA start when the fit fails");
  cmd->add_flag("--beta-only", f.beta_only, "Stop after the beta fit");
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    qasa::write_file_atomic(out, text);
  }
}

qasa::DiqaMethod diqa_method(const DiqaFlags& f) {
  qasa::DiqaMethod m;
  m.p = f.p;
  m.tau_ns = f.tau_ns;
  m.literal_gamma = f.literal;
  m.truncate_at = f.truncate_at;
  m.terminal_delta = f.terminal_delta;
  m.schedule_name = f.schedule;
  m.schedule = qasa::resolve_schedule(f.schedule);
  return m;
}

qasa::SaMethod sa_method(const SaFlags& f) {
  qasa::SaMethod m;
  m.b = f.b;
  m.beta0 = f.beta0;
  m.beta_max = f.beta_max;
  m.sweeps = parse_sweeps(f.sweeps);
  m.repetitions = f.reps;
  m.start_index = f.start_index;
  if (!f.init.empty()) m.initial = qasa::SpinConfiguration::from_bitstring(f.init);
  return m;
}

qasa::FitOptions fit_options(const FitFlags& f) {
  qasa::FitOptions options;
  options.m = f.m;
  options.anchor = qasa::parse_anchor_rule(f.anchor);
  options.aggregation = qasa::parse_aggregation(f.agg);
  return options;
}

qasa::QasaMethod qasa_method(const DiqaFlags& d, const SaFlags& s, const FitFlags& fit, const QasaFlags& q) {
  qasa::QasaMethod m;
  auto& c = m.config;
  c.schedule = qasa::resolve_schedule(d.schedule);
  m.schedule_name = d.schedule;
  c.p = d.p;
  c.p_prime = q.p_prime;
  c.tau_ns = d.tau_ns;
  c.literal_gamma = d.literal;
  c.terminal_delta = d.terminal_delta;
  c.shots = d.shots;
  c.fit = fit_options(fit);
  c.step_metric = qasa::parse_step_metric(fit.step_metric);
  c.b = s.b;
  c.beta0 = s.beta0;
  c.beta_max = s.beta_max;
  c.sweeps = parse_sweeps(s.sweeps);
  c.repetitions = s.reps;
  if (q.fallback == "warm") {
    c.fallback = qasa::FallbackMode::warm_from_start;
  } else if (q.fallback != "plain") {
    throw std::invalid_argument("--fallback must be 'plain' or 'warm'");
  }
  c.beta_only = q.beta_only;
  return m;
}

// A one-instance corpus named after the problem file.
qasa::Corpus single_problem(const SourceFlags& src) {
  qasa::CorpusInstance inst;
  inst.id = fs::path(src.problem).stem().string();
  inst.problem = qasa::load_problem(src.problem);
  inst.seed = inst.problem.seed().value_or(0);
  inst.truth = src.truth.empty() ? qasa::brute_force(inst.problem) : qasa::load_truth(src.truth);
  qasa::Corpus corpus;
  corpus.manifest = {{inst.problem.size()}, 1, 0, inst.seed};
  corpus.instances.push_back(std::move(inst));
  return corpus;
}

std::string records_text(const qasa::ExperimentResult& result) {
  std::ostringstream out;
  out << qasa::kResultHeader << '\n';
  for (const auto& r : result.records) qasa::write_record(out, r);
  return out.str();
}

std::string details_text(const qasa::ExperimentResult& result) {
  std::ostringstream out;
  out << qasa::kDetailHeader << '\n';
  for (const auto& d : result.details) qasa::write_detail(out, d);
  return out.str();
}

// Runs on --problem (whole output rewritten) or --corpus (resumable append).
int run_method(const qasa::MethodSpec& method, const SourceFlags& src, const CommonFlags& common) {
  qasa::ExperimentOptions options{common.seed, qasa::default_workers(), common.timing};
  if (!src.corpus.empty()) {
    if (common.out.empty()) throw std::invalid_argument("--out is required with --corpus");
    const auto corpus = qasa::load_corpus(src.corpus, {src.verify_fraction, common.seed});
    std::optional<fs::path> details;
    if (!src.details.empty()) details = src.details;
    const auto result = qasa::run_experiment_to_file(corpus, method, options, common.out, details);
    return result.errors.empty() ? 0 : 2;
  }
  if (src.problem.empty()) throw std::invalid_argument("either --problem or --corpus is required");
  const auto corpus = single_problem(src);
  const auto result = qasa::run_experiment(corpus, method, options);
  emit(common.out, records_text(result));
  if (!src.details.empty() && std::holds_alternative<qasa::QasaMethod>(method)) {
    qasa::write_file_atomic(src.details, details_text(result));
  }
  return result.errors.empty() ? 0 : 2;
}

void write_diqa_distribution(const DiqaFlags& f, const qasa::Corpus& corpus, std::uint64_t seed) {
  const auto& inst = corpus.instances.front();
  const auto method = diqa_method(f);
  auto angles = qasa::discretize(method.schedule, f.p, f.tau_ns, {.include_tau_in_gamma = !f.literal});
  if (f.truncate_at) angles = qasa::truncate(angles, *f.truncate_at, f.terminal_delta);
  const auto state = qasa::evolve(inst.problem, angles);
  qasa::OutcomeDistribution dist;
  if (f.shots > 0) {
    qasa::Rng rng(qasa::derive_seed(seed, inst.id, 0));
    dist = qasa::sample(state, f.shots, rng);
  } else {
    dist = qasa::extract_top_m(state, std::min<std::size_t>(f.top_m, state.dimension()));
  }
  std::ostringstream out;
  qasa::write_distribution(out, dist);
  emit(f.dist_out, out.str());
}

std::vector<qasa::ResultRecord> load_all_records(const std::vector<std::string>& paths) {
  std::vector<qasa::ResultRecord> records;
  for (const auto& path : paths) {
    auto more = qasa::load_records(path);
    records.insert(records.end(), more.begin(), more.end());
  }
  return records;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discretised quantum annealing, simulated annealing and QASA on Ising problems"};
  app.require_subcommand(1);
  int status = 0;

  // gen-corpus
  auto* gen = app.add_subcommand("gen-corpus", "Generate and brute-force a corpus of random regular instances");
  CommonFlags gen_common;
  std::vector<std::size_t> gen_sizes;
  std::size_t gen_count = qasa::kDeskCountPerSize;
  std::size_t gen_degree = qasa::kDefaultDegree;
  bool gen_full = false;
  gen->add_option("--seed", gen_common.seed, "Corpus seed");
  gen->add_option("--out", gen_common.out, "Corpus directory")->required();
  gen->add_option("--sizes", gen_sizes, "Problem sizes (default 10 14 18)");
  gen->add_option("--count", gen_count, "Instances per size")->check(CLI::PositiveNumber);
  gen->add_option("--degree", gen_degree, "Graph degree")->check(CLI::PositiveNumber);
  gen->add_flag("--full", gen_full, "Sizes 10, 12, ..., 22 with 100 instances each");
  gen->callback([&] {
    auto sizes = gen_sizes;
    auto count = gen_count;
    if (gen_full) {
      sizes = qasa::full_sizes();
      count = qasa::kFullCountPerSize;
    } else if (sizes.empty()) {
      sizes = qasa::desk_sizes();
    }
    const auto corpus =
        qasa::generate_corpus(sizes, count, gen_degree, gen_common.seed, qasa::default_workers());
    qasa::save_corpus(corpus, gen_common.out);
    std::clog << "wrote " << corpus.instances.size() << " instances to " << gen_common.out << '\n';
  });

  // brute
  auto* brute = app.add_subcommand("brute", "Exhaustive ground-state search");
  std::string brute_problem, brute_out;
  std::size_t brute_max = qasa::kDefaultMaxVariables;
  brute->add_option("--problem", brute_problem, "Problem file")->required();
  brute->add_option("--out", brute_out, "Ground-truth file (stdout when omitted)");
  brute->add_option("--max-n", brute_max, "Refuse problems larger than this");
  brute->callback([&] {
    const auto problem = qasa::load_problem(brute_problem);
    const auto truth = qasa::brute_force(problem, {brute_max, qasa::kTieEpsilon});
    std::ostringstream out;
    qasa::write_truth(out, truth, problem.size());
    emit(brute_out, out.str());
  });

  // angles
  auto* angles_cmd = app.add_subcommand("angles", "Print the discretised angle sequence");
  DiqaFlags angles_flags;
  std::string angles_out;
  add_diqa_flags(angles_cmd, angles_flags);
  angles_cmd->add_option("--out", angles_out, "Output path (stdout when omitted)");
  angles_cmd->callback([&] {
    const auto schedule = qasa::resolve_schedule(angles_flags.schedule);
    auto angles = qasa::discretize(schedule, angles_flags.p, angles_flags.tau_ns,
                                   {.include_tau_in_gamma = !angles_flags.literal});
    if (angles_flags.truncate_at) {
      angles = qasa::truncate(angles, *angles_flags.truncate_at, angles_flags.terminal_delta);
    }
    std::ostringstream out;
    out << "layer,s,delta,gamma\n";
    for (std::size_t l = 0; l < angles.p(); ++l) {
      out << l + 1 << ',' << qasa::format_double(angles.grid[l]) << ',' << qasa::format_double(angles.deltas[l])
          << ',' << qasa::format_double(angles.gammas[l]) << '\n';
    }
    emit(angles_out, out.str());
  });

  // diqa
  auto* diqa = app.add_subcommand("diqa", "Exact statevector run of discretised quantum annealing");
  DiqaFlags diqa_flags;
  SourceFlags diqa_src;
  CommonFlags diqa_common;
  add_diqa_flags(diqa, diqa_flags);
  add_common(diqa, diqa_common, true);
  diqa->add_option("--problem", diqa_src.problem, "Problem file")->required();
  diqa->add_option("--truth", diqa_src.truth, "Ground-truth file (brute-forced when omitted)");
  diqa->add_option("--shots", diqa_flags.shots, "Sample this many measurements for --dist-out");
  diqa->add_option("--top-m", diqa_flags.top_m, "Exact most probable outcomes for --dist-out");
  diqa->add_option("--dist-out", diqa_flags.dist_out, "Write the outcome distribution here");
  diqa->callback([&] {
    status = run_method(diqa_method(diqa_flags), diqa_src, diqa_common);
    if (!diqa_flags.dist_out.empty()) write_diqa_distribution(diqa_flags, single_problem(diqa_src), diqa_common.seed);
  });

  // sa
  auto* sa = app.add_subcommand("sa", "Simulated annealing success probability");
  SaFlags sa_flags;
  SourceFlags sa_src;
  CommonFlags sa_common;
  add_sa_flags(sa, sa_flags);
  add_common(sa, sa_common, true);
  sa->add_option("--problem", sa_src.problem, "Problem file")->required();
  sa->add_option("--truth", sa_src.truth, "Ground-truth file (brute-forced when omitted)");
  sa->add_option("--start-index", sa_flags.start_index, "First ladder step (0-based)");
  sa->add_option("--init", sa_flags.init, "Starting bitstring, variable 0 first");
  sa->callback([&] { status = run_method(sa_method(sa_flags), sa_src, sa_common); });

  // fit-beta
  auto* fit = app.add_subcommand("fit-beta", "Fit an inverse temperature to an outcome distribution");
  FitFlags fit_flags;
  SaFlags fit_ladder;
  std::string fit_dist, fit_problem, fit_out;
  add_fit_flags(fit, fit_flags);
  fit->add_option("--dist", fit_dist, "Outcome distribution file")->required();
  fit->add_option("--problem", fit_problem, "Problem file")->required();
  fit->add_option("--b", fit_ladder.b, "Ladder steps used for b'")->check(CLI::PositiveNumber);
  fit->add_option("--beta0", fit_ladder.beta0, "First inverse temperature")->check(CLI::PositiveNumber);
  fit->add_option("--beta-max", fit_ladder.beta_max, "Ladder end point")->check(CLI::PositiveNumber);
  fit->add_option("--out", fit_out, "Output path (stdout when omitted)");
  fit->callback([&] {
    const auto dist = qasa::load_distribution(fit_dist);
    const auto problem = qasa::load_problem(fit_problem);
    const auto estimate = qasa::estimate_beta(dist, problem, fit_options(fit_flags));
    const auto ladder = qasa::build_beta_schedule(fit_ladder.beta0, fit_ladder.beta_max, fit_ladder.b);
    const auto b_prime =
        qasa::beta_to_start_step(estimate.beta, ladder, qasa::parse_step_metric(fit_flags.step_metric));
    std::ostringstream out;
    out << "beta=" << qasa::format_double(estimate.beta) << '\n'
        << "b_prime=" << b_prime << '\n'
        << "anchor=" << qasa::SpinConfiguration::from_index(estimate.anchor_index, problem.size()).to_bitstring()
        << '\n'
        << "pairs=" << estimate.pair_values.size() << '\n'
        << "skipped_pairs=" << estimate.skipped_pairs << '\n';
    emit(fit_out, out.str());
  });

  // qasa
  auto* qasa_cmd = app.add_subcommand("qasa", "Partial DiQA, Gibbs fit, then warm-started SA");
  DiqaFlags q_diqa;
  SaFlags q_sa;
  FitFlags q_fit;
  QasaFlags q_flags;
  SourceFlags q_src;
  CommonFlags q_common;
  add_schedule_flags(qasa_cmd, q_diqa);
  add_sa_flags(qasa_cmd, q_sa);
  add_fit_flags(qasa_cmd, q_fit);
  add_qasa_flags(qasa_cmd, q_flags);
  add_common(qasa_cmd, q_common, true);
  qasa_cmd->add_flag("--terminal-delta", q_diqa.terminal_delta, "Terminal half-step mixer at layer p'");
  qasa_cmd->add_option("--shots", q_diqa.shots, "Fit sampled outcomes instead of the exact top m");
  auto* q_problem = qasa_cmd->add_option("--problem", q_src.problem, "Problem file");
  auto* q_corpus = qasa_cmd->add_option("--corpus", q_src.corpus, "Corpus directory");
  q_problem->excludes(q_corpus);
  qasa_cmd->add_option("--truth", q_src.truth, "Ground-truth file (brute-forced when omitted)");
  qasa_cmd->add_option("--details", q_src.details, "Also write per-instance beta and b' here");
  qasa_cmd->callback(
      [&] { status = run_method(qasa_method(q_diqa, q_sa, q_fit, q_flags), q_src, q_common); });

  // run
  auto* run = app.add_subcommand("run", "Run one method over a corpus (resumable)");
  std::string run_method_name;
  DiqaFlags r_diqa;
  SaFlags r_sa;
  FitFlags r_fit;
  QasaFlags r_flags;
  SourceFlags r_src;
  CommonFlags r_common;
  run->add_option("--method", run_method_name, "diqa | sa | qasa")
      ->required()
      ->check(CLI::IsMember({"diqa", "sa", "qasa"}));
  run->add_option("--corpus", r_src.corpus, "Corpus directory")->required();
  run->add_option("--details", r_src.details, "QASA per-instance beta and b' file");
  run->add_option("--verify-fraction", r_src.verify_fraction, "Share of ground truths re-checked on load");
  add_diqa_flags(run, r_diqa);
  add_sa_flags(run, r_sa);
  add_fit_flags(run, r_fit);
  add_qasa_flags(run, r_flags);
  run->add_option("--shots", r_diqa.shots, "QASA: fit sampled outcomes instead of the exact top m");
  add_common(run, r_common, true);
  run->callback([&] {
    qasa::MethodSpec method;
    if (run_method_name == "diqa") {
      method = diqa_method(r_diqa);
    } else if (run_method_name == "sa") {
      method = sa_method(r_sa);
    } else {
      method = qasa_method(r_diqa, r_sa, r_fit, r_flags);
    }
    status = run_method(method, r_src, r_common);
  });

  // aggregate
  auto* agg = app.add_subcommand("aggregate", "Median and MAD per (method, params, n)");
  std::vector<std::string> agg_results;
  std::string agg_out;
  agg->add_option("--results", agg_results, "Result files")->required();
  agg->add_option("--out", agg_out, "Output path (stdout when omitted)");
  agg->callback([&] {
    const auto records = load_all_records(agg_results);
    std::ostringstream out;
    qasa::write_aggregate_csv(out, qasa::aggregate(records));
    emit(agg_out, out.str());
  });

  // export
  auto* exp = app.add_subcommand("export", "Write tables, plot series and beta box plots");
  std::vector<std::string> exp_results, exp_details;
  std::string exp_format = "table", exp_out, exp_boxplot;
  exp->add_option("--results", exp_results, "Result files");
  exp->add_option("--format", exp_format, "table | csv | plot")->check(CLI::IsMember({"table", "csv", "plot"}));
  exp->add_option("--out", exp_out, "Output file (directory for plot)");
  exp->add_option("--details", exp_details, "QASA detail files");
  exp->add_option("--boxplot", exp_boxplot, "Box-plot CSV of beta and b' per p'");
  exp->callback([&] {
    if (!exp_results.empty()) {
      if (exp_out.empty()) throw std::invalid_argument("--out is required with --results");
      const auto rows = qasa::aggregate(load_all_records(exp_results));
      qasa::export_stats(rows, qasa::parse_export_format(exp_format), exp_out);
    }
    if (!exp_details.empty()) {
      if (exp_boxplot.empty()) throw std::invalid_argument("--boxplot is required with --details");
      std::vector<qasa::QasaDetail> details;
      for (const auto& path : exp_details) {
        auto more = qasa::load_details(path);
        details.insert(details.end(), more.begin(), more.end());
      }
      std::ostringstream out;
      qasa::write_boxplot_csv(out, qasa::beta_boxplots(details));
      emit(exp_boxplot, out.str());
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return status;
}
