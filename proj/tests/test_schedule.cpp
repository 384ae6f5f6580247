#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "qasa/errors.hpp"
#include "qasa/schedule.hpp"

using namespace qasa;

namespace {

AnnealSchedule parse(const std::string& text) {
  std::istringstream in(text);
  return load_schedule(in);
}

std::vector<ScheduleSample> samples_of(const AnnealSchedule& s) { return {s.samples().begin(), s.samples().end()}; }

const std::string kBundledPath = std::string(QASA_SOURCE_DIR) + "/data/schedules/dwave_2000Q_6_style.csv";

}  // namespace

TEST_CASE("two-row schedule") {
  const auto s = parse("s,A_GHz,B_GHz\n0,10,0\n1,0,10\n");
  REQUIRE(s.samples().size() == 2);
  CHECK(s.warnings().empty());
  const auto mid = s.evaluate(0.5);
  CHECK(mid.a_ghz == 5.0);
  CHECK(mid.b_ghz == 5.0);
  CHECK(s.evaluate(0.0).a_ghz == 10.0);
  CHECK(s.evaluate(1.0).b_ghz == 10.0);
  CHECK_THROWS_AS(s.evaluate(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(s.evaluate(1.0 + 1e-9), std::invalid_argument);
}

TEST_CASE("format errors carry the row number") {
  try {
    parse("s,A_GHz,B_GHz\n0.5,1,1\n0.2,1,1\n1,0,2\n");
    FAIL("expected a format error");
  } catch (const FormatError& e) {
    CHECK(e.row() == 3);
  }
  try {
    parse("# comment\ns,A_GHz,B_GHz\n0,1,1\n1,0\n");
    FAIL("expected a format error");
  } catch (const FormatError& e) {
    CHECK(e.row() == 4);
  }
  CHECK_THROWS_AS(parse("s,A_GHz,B_GHz\n0.1,1,1\n1,0,1\n"), FormatError);
  CHECK_THROWS_AS(parse("s,A_GHz,B_GHz\n0,1,1\n0.9,0,1\n"), FormatError);
  CHECK_THROWS_AS(parse("s,A_GHz,B_GHz\n0,1,1\n"), FormatError);
  CHECK_THROWS_AS(parse("time,A,B\n0,1,1\n1,0,1\n"), FormatError);
  CHECK_THROWS_AS(parse("s,A_GHz,B_GHz\n0,abc,1\n1,0,1\n"), FormatError);
}

TEST_CASE("separators, column order and comments") {
  const auto tabbed = parse("# note\n\ns\tA_GHz\tB_GHz\n0\t2\t0\n1\t0\t4\n");
  CHECK(tabbed.evaluate(0.25).a_ghz == doctest::Approx(1.5));
  const auto reordered = parse("B_GHz,s,A_GHz\n0,0,2\n4,1,0\n");
  CHECK(reordered.evaluate(0.25).b_ghz == doctest::Approx(1.0));
  const auto headerless = parse("0 2 0\n1 0 4\n");
  CHECK(headerless.samples().size() == 2);
}

TEST_CASE("shape violations warn but load") {
  const auto s = parse("s,A_GHz,B_GHz\n0,1,1\n0.5,2,0.5\n1,0.5,2\n");
  CHECK(s.warnings().size() >= 3);  // A rises, B falls, A(1) far from 0
}

TEST_CASE("bundled schedule matches its data file") {
  std::ifstream in(kBundledPath);
  REQUIRE(in.good());
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 's') continue;
    std::istringstream fields(line);
    std::vector<double> row;
    std::string cell;
    while (std::getline(fields, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  const auto bundled = bundled_schedule();
  REQUIRE(bundled.samples().size() == rows.size());
  CHECK(bundled.samples().front().s == rows.front()[0]);
  CHECK(bundled.samples().front().a_ghz == rows.front()[1]);
  CHECK(bundled.samples().front().b_ghz == rows.front()[2]);
  CHECK(bundled.samples().back().s == rows.back()[0]);
  CHECK(bundled.samples().back().a_ghz == rows.back()[1]);
  CHECK(bundled.samples().back().b_ghz == rows.back()[2]);
  CHECK(bundled.warnings().empty());
  CHECK(load_schedule_file(kBundledPath).samples().size() == rows.size());
  CHECK(resolve_schedule("bundled").samples().size() == rows.size());
  CHECK(resolve_schedule(kBundledPath).samples().size() == rows.size());
}

TEST_CASE("interpolation matches the scanning oracle") {
  const auto bundled = bundled_schedule();
  const auto samples = samples_of(bundled);
  for (const auto& smp : samples) {
    const auto pt = bundled.evaluate(smp.s);
    CHECK(pt.a_ghz == smp.a_ghz);
    CHECK(pt.b_ghz == smp.b_ghz);
  }
  Rng rng(7);
  for (int k = 0; k < 2000; ++k) {
    const double s = rng.uniform01();
    const auto pt = bundled.evaluate(s);
    const auto [a, b] = oracle::interpolate(samples, s);
    CHECK(std::abs(pt.a_ghz - a) <= 1e-12);
    CHECK(std::abs(pt.b_ghz - b) <= 1e-12);
  }
}

TEST_CASE("synthetic schedule") {
  const auto s = synthetic_schedule();
  CHECK(s.evaluate(0.0).a_ghz == kSyntheticA0Ghz);
  CHECK(s.evaluate(1.0).a_ghz == 0.0);
  CHECK(s.evaluate(1.0).b_ghz == kSyntheticB1Ghz);
  CHECK(s.evaluate(0.3).a_ghz == doctest::Approx(kSyntheticA0Ghz * 0.7));
  CHECK(s.warnings().empty());
}

TEST_CASE("discretize: constant A and vanishing A(1)") {
  const double a = 3.0;
  const AnnealSchedule flat({{0.0, a, 0.0}, {1.0, a, 5.0}});
  const auto angles = discretize(flat, 10, 0.8);
  CHECK(angles.p() == 10);
  CHECK(angles.gammas.size() == 10);
  CHECK(angles.grid.back() == 1.0);
  for (std::size_t l = 0; l + 1 < 10; ++l) {
    CHECK(angles.deltas[l] == doctest::Approx(-0.8 * a / (4.0 * std::numbers::pi)).epsilon(1e-14));
  }
  CHECK(angles.deltas[9] == doctest::Approx(-0.8 * a / (8.0 * std::numbers::pi)).epsilon(1e-14));

  const AnnealSchedule ending({{0.0, 1.0, 0.0}, {1.0, 0.0, 1.0}});
  CHECK(discretize(ending, 7, 0.8).deltas.back() == 0.0);
}

TEST_CASE("discretize matches the formula oracle on the bundled schedule") {
  const auto bundled = bundled_schedule();
  for (bool tau_in_gamma : {true, false}) {
    const auto angles = discretize(bundled, 200, 0.8, {tau_in_gamma});
    const auto ref = oracle::formula_angles(samples_of(bundled), 200, 0.8, tau_in_gamma);
    REQUIRE(angles.p() == 200);
    for (std::size_t l = 0; l < 200; ++l) {
      CHECK(std::abs(angles.deltas[l] - ref.deltas[l]) <= 1e-12);
      CHECK(std::abs(angles.gammas[l] - ref.gammas[l]) <= 1e-12);
      CHECK(angles.deltas[l] <= 0.0);
      CHECK(angles.gammas[l] >= 0.0);
    }
    // Terminal half-step.
    CHECK(std::abs(angles.deltas[199] + 0.8 * bundled.evaluate(1.0).a_ghz * kGhzToAngle / 2.0) <= 1e-15);
  }
}

TEST_CASE("discretize rejects bad arguments and is pure") {
  const auto s = synthetic_schedule();
  CHECK_THROWS_AS(discretize(s, 0, 0.8), std::invalid_argument);
  CHECK_THROWS_AS(discretize(s, 5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(discretize(s, 5, -1.0), std::invalid_argument);
  CHECK(discretize(bundled_schedule(), 123, 0.8) == discretize(bundled_schedule(), 123, 0.8));
}

TEST_CASE("refinement: doubling p and halving tau converges") {
  const auto bundled = bundled_schedule();
  const double total_ns = 160.0;
  std::vector<double> delta_sums, gamma_sums;
  for (std::size_t p : {50, 100, 200, 400, 800}) {
    const auto angles = discretize(bundled, p, total_ns / static_cast<double>(p));
    double ds = 0.0, gs = 0.0;
    for (std::size_t l = 0; l < p; ++l) {
      ds += angles.deltas[l];
      gs += angles.gammas[l];
    }
    delta_sums.push_back(ds);
    gamma_sums.push_back(gs);
  }
  const double delta_bound = std::abs(delta_sums[1] - delta_sums[0]) * 100.0;
  const double gamma_bound = std::abs(gamma_sums[1] - gamma_sums[0]) * 100.0;
  for (std::size_t k = 1; k < delta_sums.size(); ++k) {
    const double p = 50.0 * std::pow(2.0, static_cast<double>(k - 1));
    CHECK(std::abs(delta_sums[k] - delta_sums[k - 1]) <= delta_bound / p * 1.01);
    CHECK(std::abs(gamma_sums[k] - gamma_sums[k - 1]) <= gamma_bound / p * 1.01);
  }
}

TEST_CASE("truncate keeps the bridging angle unless asked for the terminal one") {
  const auto angles = discretize(bundled_schedule(), 200, 0.8);
  const auto bridged = truncate(angles, 100);
  CHECK(bridged.p() == 100);
  CHECK(bridged.deltas.back() == angles.deltas[99]);
  CHECK(bridged.gammas.back() == angles.gammas[99]);
  const auto terminal = truncate(angles, 100, true);
  CHECK(terminal.deltas.back() == doctest::Approx(-0.8 * bundled_schedule().evaluate(0.5).a_ghz * kGhzToAngle / 2));
  CHECK(terminal.deltas[98] == angles.deltas[98]);
  CHECK(truncate(angles, 200) == angles);
  CHECK_THROWS_AS(truncate(angles, 0), std::invalid_argument);
  CHECK_THROWS_AS(truncate(angles, 201), std::invalid_argument);
}
