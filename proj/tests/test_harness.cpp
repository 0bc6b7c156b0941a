#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "fograil/errors.hpp"
#include "fograil/harness.hpp"

using namespace fograil;
using namespace fograil::harness;

TEST_CASE("number formatting round-trips") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(2.0) == "2");
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(format_number(std::nan("")) == "nan");
}

TEST_CASE("solver names") {
  CHECK(parse_solver("dynamic") == SolverKind::Dynamic);
  CHECK(parse_solver("Invariant") == SolverKind::Invariant);
  CHECK_THROWS_AS(parse_solver("greedy"), DomainError);
}

TEST_CASE("solve and trajectory CSV") {
  ScenarioConfig cfg;
  cfg.grid_points = 200;
  const auto out = run_solve(cfg, {});
  CHECK(out.report.cost_total > 0.0);
  std::ostringstream os;
  write_trajectory_csv(os, cfg, out.trajectory);
  std::istringstream is(os.str());
  std::string header;
  std::getline(is, header);
  CHECK(header == "t,P1,P2,C_t,segment_mode_1,segment_mode_2");
  std::size_t lines = 0;
  for (std::string line; std::getline(is, line);) ++lines;
  CHECK(lines == 200);
  std::ostringstream again;
  write_trajectory_csv(again, cfg, run_solve(cfg, {}).trajectory);
  CHECK(again.str() == os.str());
}

TEST_CASE("expected cost over requests") {
  ScenarioConfig cfg;
  cfg.grid_points = 200;
  const auto popc = make_placement(cfg, Strategy::PopC, 1);
  const auto nonc = make_placement(cfg, Strategy::NonC, 1);
  const auto ep = expected_cost(cfg, popc, SolverKind::Dynamic);
  const auto en = expected_cost(cfg, nonc, SolverKind::Dynamic);
  CHECK(ep.feasible);
  CHECK(ep.solves <= 4);
  CHECK(en.solves == 1);
  CHECK(ep.cost_total < en.cost_total);
}

TEST_CASE("sweep rows and CSV") {
  ScenarioConfig cfg;
  cfg.grid_points = 150;
  SweepSpec spec;
  spec.param = "eta";
  spec.values = {0.5, 1.5};
  spec.rndc_trials = 3;
  const auto rows = run_sweep(cfg, spec);
  CHECK(rows.size() == 2 * 3 * 2);
  std::ostringstream os;
  write_sweep_csv(os, spec.param, rows);
  CHECK(os.str().rfind("eta,strategy,solver,cost_total,cost_transmit,cost_backhaul,iterations,cost_total_std\n", 0) == 0);
  std::ostringstream os2;
  write_sweep_csv(os2, spec.param, run_sweep(cfg, spec));
  CHECK(os.str() == os2.str());
  CHECK_THROWS_AS(sweep_point(cfg, SweepSpec{"colour", {}}, 1.0), DomainError);
  CHECK(default_values("tau_max").size() == 8);
}

TEST_CASE("convergence and tradeoff") {
  ScenarioConfig cfg;
  cfg.grid_points = 150;
  const auto conv = run_convergence(cfg, {});
  REQUIRE_FALSE(conv.empty());
  CHECK(conv.front().iteration == 1);
  const auto trade = run_tradeoff(cfg, {1.0, 2.0}, {10.0, 20.0}, {});
  CHECK(trade.size() == 4);
  std::ostringstream os;
  write_tradeoff_csv(os, trade);
  CHECK(os.str().rfind("tau_max,content_size,regime,feasible,", 0) == 0);
}
