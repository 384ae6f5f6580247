// Acceptance checks. Prints one PASS/FAIL line per criterion; exits non-zero
// when any criterion fails.
//
//   acceptance [--workdir DIR] [criterion ...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qasa/annealer.hpp"
#include "qasa/corpus.hpp"
#include "qasa/experiment.hpp"
#include "qasa/gibbs.hpp"
#include "qasa/parallel.hpp"
#include "qasa/pipeline.hpp"
#include "qasa/schedule.hpp"
#include "qasa/statevector.hpp"

namespace fs = std::filesystem;
using namespace qasa;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = false;
  std::string summary;
};

std::string fmt(double v, int precision = 4) {
  std::ostringstream out;
  out << std::setprecision(precision) << v;
  return out.str();
}

void detail(const std::string& line) { std::cout << "    " << line << std::endl; }

fs::path g_workdir = fs::temp_directory_path() / "qasa_acceptance";

// 1: statevector evolution against dense matrix products.
Outcome simulator_oracle() {
  Rng rng(101);
  double worst = 0.0;
  for (int c = 0; c < 100; ++c) {
    const std::size_t n = 1 + rng.below(3);
    const std::size_t p = 1 + rng.below(5);
    const auto problem = oracle::random_problem(n, 0.7, rng);
    AngleSequence angles;
    for (std::size_t l = 0; l < p; ++l) {
      angles.grid.push_back(static_cast<double>(l + 1) / static_cast<double>(p));
      angles.deltas.push_back(-2.0 * rng.uniform01());
      angles.gammas.push_back(2.0 * rng.uniform01());
    }
    const auto state = evolve(problem, angles);
    const auto ref = oracle::dense_evolve(problem, angles.gammas, angles.deltas);
    for (std::size_t k = 0; k < ref.size(); ++k) worst = std::max(worst, std::abs(state.amplitudes()[k] - ref[k]));
  }
  return {worst <= 1e-8, "100 cases n<=3 p<=5, max amplitude error " + fmt(worst, 3) + " (limit 1e-8)"};
}

// 2: n = 22 norm and wall time.
Outcome norm_preservation() {
  Rng rng(202);
  const auto problem = generate_problem(22, 6, rng);
  const auto angles = discretize(bundled_schedule(), 200, 0.8);
  const auto t0 = Clock::now();
  const auto state = evolve(problem, angles);
  const double secs = seconds_since(t0);
  const double drift = std::abs(state.norm_squared() - 1.0);
  return {drift <= 1e-9 && secs <= 600.0,
          "n=22 p=200: |norm-1| = " + fmt(drift, 3) + " (limit 1e-9), " + fmt(secs, 4) + " s (limit 600 s, " +
              std::to_string(default_workers()) + " worker(s))"};
}

// 3: exact Gibbs recovery.
Outcome gibbs_recovery() {
  Rng rng(303);
  double worst = 0.0;
  int fits = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const auto problem = generate_problem(8, 6, rng);
    const auto table = build_energy_table(problem);
    const double e_min = table.min_energy();
    for (double beta : {0.1, 1.0, 10.0}) {
      OutcomeDistribution dist;
      dist.qubits = 8;
      double z = 0.0;
      for (BasisIndex k = 0; k < table.size(); ++k) z += std::exp(-beta * (table[k] - e_min));
      for (BasisIndex k = 0; k < table.size(); ++k) dist.entries.push_back({k, std::exp(-beta * (table[k] - e_min)) / z});
      sort_outcomes(dist.entries);
      for (auto anchor : {AnchorRule::second_largest, AnchorRule::largest, AnchorRule::lowest_energy}) {
        FitOptions options;
        options.anchor = anchor;
        worst = std::max(worst, std::abs(estimate_beta(dist, table, options).beta - beta));
        ++fits;
      }
    }
  }
  return {worst <= 1e-9, std::to_string(fits) + " fits at beta* in {0.1, 1, 10}, max error " + fmt(worst, 3) +
                             " (limit 1e-9)"};
}

// 4: start-step mapping.
Outcome start_step_mapping() {
  const auto ladder = build_beta_schedule();
  const auto low = beta_to_start_step(0.1815, ladder);
  const auto high = beta_to_start_step(1.34812, ladder);
  const bool ok = low >= 63 && low <= 65 && high >= 107 && high <= 109;
  return {ok, "beta 0.1815 -> b' = " + std::to_string(low) + " (64 +/- 1), beta 1.34812 -> b' = " +
                  std::to_string(high) + " (108 +/- 1)"};
}

// 5: Metropolis acceptance frequency.
Outcome metropolis_statistics() {
  Rng rng(505);
  bool ok = true;
  std::string summary;
  for (auto [delta, beta] : std::vector<std::pair<double, double>>{{0.4, 1.0}, {1.2, 0.5}, {0.2, 10.0}}) {
    const double expected = std::exp(-beta * delta);
    const int trials = 100000;
    int accepted = 0;
    for (int k = 0; k < trials; ++k) accepted += metropolis_accept(delta, beta, rng) ? 1 : 0;
    const double sigma = std::sqrt(trials * expected * (1.0 - expected));
    const double z = (accepted - trials * expected) / sigma;
    ok = ok && std::abs(z) <= 4.0;
    summary += (summary.empty() ? "" : ", ") + std::string("dE=") + fmt(delta) + " beta=" + fmt(beta) +
               ": z=" + fmt(z, 3);
  }
  return {ok, "1e5 trials each, " + summary + " (limit |z| <= 4)"};
}

std::map<std::size_t, double> medians_by_size(const ExperimentResult& result) {
  std::map<std::size_t, std::vector<double>> values;
  for (const auto& r : result.records) values[r.n].push_back(r.success_prob);
  std::map<std::size_t, double> out;
  for (auto& [n, v] : values) out[n] = median(v);
  return out;
}

void save_records(const ExperimentResult& result, const std::string& name) {
  std::ofstream out(g_workdir / "orderings" / (name + ".csv"));
  out << kResultHeader << '\n';
  for (const auto& r : result.records) write_record(out, r);
}

// 6: orderings on the desk-scale corpus.
Outcome orderings() {
  const auto t0 = Clock::now();
  fs::create_directories(g_workdir / "orderings");
  const auto sizes = desk_sizes();
  const auto corpus = generate_corpus(sizes, kDeskCountPerSize, kDefaultDegree, 6006);
  save_corpus(corpus, g_workdir / "orderings" / "corpus");
  detail("corpus: " + std::to_string(corpus.instances.size()) + " instances, " + fmt(seconds_since(t0)) + " s");

  ExperimentOptions options;
  options.seed = 6;
  auto run = [&](const MethodSpec& method, const std::string& name) {
    const auto t = Clock::now();
    auto result = run_experiment(corpus, method, options);
    save_records(result, name);
    if (!result.errors.empty()) detail(name + ": " + std::to_string(result.errors.size()) + " instance errors");
    std::string line = name + " (" + fmt(seconds_since(t)) + " s): median P";
    for (const auto& [n, m] : medians_by_size(result)) line += " n" + std::to_string(n) + "=" + fmt(m);
    detail(line);
    return result;
  };

  SaMethod sa_n;
  SaMethod sa_1;
  sa_1.sweeps = 1;
  SaMethod sa_100;
  sa_100.b = 100;
  DiqaMethod diqa_200;
  diqa_200.schedule = bundled_schedule();
  DiqaMethod diqa_100 = diqa_200;
  diqa_100.p = 100;
  QasaMethod qasa_100;
  qasa_100.config.schedule = bundled_schedule();
  qasa_100.config.p_prime = 100;

  const auto r_sa_n = run(sa_n, "sa_b200_sweeps_n");
  const auto r_sa_1 = run(sa_1, "sa_b200_sweeps_1");
  const auto r_sa_100 = run(sa_100, "sa_b100_sweeps_n");
  const auto r_diqa_200 = run(diqa_200, "diqa_p200");
  const auto r_diqa_100 = run(diqa_100, "diqa_p100");
  const auto r_qasa = run(qasa_100, "qasa_pprime100");

  const auto m_sa_n = medians_by_size(r_sa_n);
  const auto m_sa_1 = medians_by_size(r_sa_1);
  const auto m_sa_100 = medians_by_size(r_sa_100);
  const auto m_diqa_200 = medians_by_size(r_diqa_200);
  const auto m_diqa_100 = medians_by_size(r_diqa_100);
  const auto m_qasa = medians_by_size(r_qasa);

  int a = 0, b = 0, c = 0, d = 0;
  for (auto n : sizes) {
    a += m_sa_n.at(n) > m_sa_1.at(n);
    b += m_diqa_200.at(n) >= m_diqa_100.at(n);
    c += m_sa_100.at(n) > m_diqa_100.at(n);
    d += m_qasa.at(n) >= m_sa_n.at(n) - 0.05;
  }

  // Step budget: every QASA run anneals over exactly b - b' + 1 rungs.
  bool steps_ok = r_qasa.details.size() == corpus.instances.size();
  for (const auto& det : r_qasa.details) steps_ok = steps_ok && det.sa_steps == 200 - det.b_prime + 1;
  {
    const auto& inst = corpus.instances.front();
    const auto& det = r_qasa.details.front();
    SAParams params;
    params.sweeps = inst.problem.size();
    params.start_index = det.b_prime - 1;
    params.initial = SpinConfiguration(std::vector<std::int8_t>(inst.problem.size(), 1));
    const auto ladder = build_beta_schedule();
    const auto trace = anneal_ladder(inst.problem, ladder.betas(), params);
    steps_ok = steps_ok && trace.rungs_executed == det.sa_steps;
  }

  const bool ok_a = a == 3, ok_b = b >= 2, ok_c = c >= 2, ok_d = d == 3 && steps_ok;
  detail(std::string("6a SA(sweeps=n) > SA(sweeps=1) at ") + std::to_string(a) + "/3 sizes: " + (ok_a ? "met" : "not met"));
  detail(std::string("6b DiQA(200) >= DiQA(100) at ") + std::to_string(b) + "/3 sizes: " + (ok_b ? "met" : "not met"));
  detail(std::string("6c SA(b=100) > DiQA(100) at ") + std::to_string(c) + "/3 sizes (bundled schedule): " +
         (ok_c ? "met" : "not met"));
  detail(std::string("6d QASA(100) >= SA(b=200) - 0.05 at ") + std::to_string(d) + "/3 sizes, step budget " +
         (steps_ok ? "respected" : "violated") + ": " + (ok_d ? "met" : "not met"));
  const double secs = seconds_since(t0);
  return {ok_a && ok_b && ok_c && ok_d && secs <= 4 * 3600.0,
          "orderings a-d on 50 instances at n = 10, 14, 18 (" + fmt(secs, 5) + " s, budget 14400 s)"};
}

// 7: fitted beta against p'.
Outcome beta_monotonicity() {
  const std::vector<std::size_t> sizes{10};
  const auto corpus = generate_corpus(sizes, kDeskCountPerSize, kDefaultDegree, 7007);
  std::vector<BatchItem> items;
  for (const auto& inst : corpus.instances) items.push_back({inst.id, inst.problem, inst.truth});
  std::vector<double> medians;
  std::size_t fitted_min = items.size();
  for (std::size_t p_prime : {50, 100, 150}) {
    QasaConfig config;
    config.schedule = bundled_schedule();
    config.p_prime = p_prime;
    config.beta_only = true;
    config.seed = 7;
    const auto outcome = run_qasa_batch(items, config);
    std::vector<double> betas;
    for (const auto& [id, r] : outcome.results) {
      if (r.beta_estimate) betas.push_back(r.beta_estimate->beta);
    }
    fitted_min = std::min(fitted_min, betas.size());
    medians.push_back(betas.empty() ? std::nan("") : median(betas));
  }
  const bool monotone = medians[0] <= medians[1] && medians[1] <= medians[2];
  const bool band50 = medians[0] >= 0.05 && medians[0] <= 0.6;
  const bool band100 = medians[1] >= 0.6 && medians[1] <= 3.0;
  return {fitted_min >= 20 && monotone && band50 && band100,
          "median beta at p' = 50/100/150: " + fmt(medians[0]) + " / " + fmt(medians[1]) + " / " + fmt(medians[2]) +
              " over " + std::to_string(fitted_min) + "+ fitted instances (bands [0.05, 0.6] and [0.6, 3])"};
}

// 8: brute force speed and agreement.
Outcome brute_force_check() {
  Rng rng(808);
  bool agree = true;
  for (std::size_t n = 1; n <= 14; ++n) {
    for (int k = 0; k < 3; ++k) {
      const auto problem = oracle::random_problem(n, 0.5, rng);
      const auto truth = brute_force(problem);
      const auto ref = oracle::naive_ground_truth(problem);
      agree = agree && truth.ground_states == ref.ground_states && std::abs(truth.min_energy - ref.min_energy) <= 1e-9;
    }
  }
  const auto big = generate_problem(20, 6, rng);
  const auto t0 = Clock::now();
  const auto truth = brute_force(big);
  const double secs = seconds_since(t0);
  agree = agree && std::abs(energy_of_index(big, truth.ground_states.front()) - truth.min_energy) <= 1e-9;
  return {agree && secs <= 60.0, "n=20 in " + fmt(secs, 3) + " s (limit 60 s); naive oracle agreement n=1..14: " +
                                     (agree ? "exact" : "MISMATCH")};
}

std::map<std::string, std::string> tree_contents(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    files[fs::relative(entry.path(), root).string()] = text.str();
  }
  return files;
}

// 9: byte-identical CLI output on reruns.
Outcome cli_determinism() {
#ifndef QASA_CLI_PATH
  return {false, "command-line tool was not built"};
#else
  const std::string cli = QASA_CLI_PATH;
  const std::vector<std::string> commands{
      "gen-corpus --out corpus --sizes 10 12 --count 3 --seed 11",
      "brute --problem corpus/n10/n10_i000.json --out brute.json",
      "angles --p 20 --out angles.csv",
      "diqa --problem corpus/n10/n10_i000.json --p 50 --top-m 20 --dist-out dist.csv --seed 3 --out diqa.csv",
      "diqa --problem corpus/n10/n10_i000.json --p 50 --shots 500 --dist-out dist_shots.csv --seed 3 --out "
      "diqa_shots.csv",
      "sa --problem corpus/n10/n10_i000.json --reps 200 --seed 3 --out sa.csv",
      "fit-beta --dist dist.csv --problem corpus/n10/n10_i000.json --out fit.txt",
      "qasa --problem corpus/n10/n10_i000.json --p 50 --p-prime 25 --reps 200 --seed 3 --out qasa.csv "
      "--details qasa_details.csv",
      "qasa --corpus corpus --p 50 --p-prime 25 --reps 100 --shots 300 --seed 3 --out qasa_shots.csv",
      "run --method diqa --corpus corpus --p 50 --seed 3 --out run_diqa.csv",
      "run --method sa --corpus corpus --reps 200 --seed 3 --out run_sa.csv",
      "run --method qasa --corpus corpus --p 50 --p-prime 25 --reps 200 --seed 3 --out run_qasa.csv "
      "--details run_qasa_details.csv",
      "aggregate --results run_diqa.csv run_sa.csv run_qasa.csv --out aggregate.csv",
      "export --results run_diqa.csv run_sa.csv run_qasa.csv --format table --out table.txt",
      "export --results run_diqa.csv run_sa.csv run_qasa.csv --format csv --out export.csv",
      "export --results run_diqa.csv run_sa.csv run_qasa.csv --format plot --out plot",
      "export --details run_qasa_details.csv --boxplot boxplot.csv",
  };
  const auto root = g_workdir / "cli";
  fs::remove_all(root);
  std::vector<std::map<std::string, std::string>> trees;
  for (const char* pass : {"first", "second"}) {
    const auto dir = root / pass;
    fs::create_directories(dir);
    for (std::size_t k = 0; k < commands.size(); ++k) {
      const std::string line = "cd \"" + dir.string() + "\" && \"" + cli + "\" " + commands[k] + " > stdout_" +
                               std::to_string(k) + ".txt 2> stderr_" + std::to_string(k) + ".log";
      if (std::system(line.c_str()) != 0) return {false, "command failed: qasa " + commands[k]};
    }
    auto tree = tree_contents(dir);
    for (auto it = tree.begin(); it != tree.end();) {
      it = it->first.ends_with(".log") ? tree.erase(it) : std::next(it);
    }
    trees.push_back(std::move(tree));
  }
  std::vector<std::string> differing;
  for (const auto& [name, text] : trees[0]) {
    const auto other = trees[1].find(name);
    if (other == trees[1].end() || other->second != text) differing.push_back(name);
  }
  if (trees[0].size() != trees[1].size()) differing.push_back("(file sets differ)");
  std::string summary = std::to_string(commands.size()) + " commands, " + std::to_string(trees[0].size()) +
                        " output files compared";
  for (const auto& name : differing) summary += "; differs: " + name;
  return {differing.empty(), summary};
#endif
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--workdir" && i + 1 < argc) {
      g_workdir = argv[++i];
    } else {
      try {
        selected.insert(std::stoi(arg));
      } catch (const std::exception&) {
        std::cerr << "usage: acceptance [--workdir DIR] [criterion ...]\n";
        return 2;
      }
    }
  }
  fs::create_directories(g_workdir);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"simulator oracle equivalence", simulator_oracle},
      {"norm preservation", norm_preservation},
      {"exact Gibbs beta recovery", gibbs_recovery},
      {"b' mapping", start_step_mapping},
      {"Metropolis statistics", metropolis_statistics},
      {"ordering reproduction", orderings},
      {"beta monotonicity", beta_monotonicity},
      {"brute-force performance", brute_force_check},
      {"determinism", cli_determinism},
  };

  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int number = static_cast<int>(k) + 1;
    if (!selected.empty() && !selected.contains(number)) continue;
    Outcome outcome;
    try {
      outcome = criteria[k].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    failures += outcome.pass ? 0 : 1;
    std::cout << (outcome.pass ? "PASS" : "FAIL") << " criterion " << number << " (" << criteria[k].first
              << "): " << outcome.summary << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
