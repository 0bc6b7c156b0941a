// Command-line front end: solve, sweep, convergence, tradeoff.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "fograil/errors.hpp"
#include "fograil/harness.hpp"

using namespace fograil;

namespace {

void setup_logging() {
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* lvl = std::getenv("FOGRAIL_LOG")) {
    spdlog::set_level(spdlog::level::from_str(lvl));
  }
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

// Writes to path, or to stdout for "-".
template <class F>
void emit(const std::string& path, F&& write) {
  if (path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream f(path);
  if (!f) throw DomainError("cannot write " + path);
  write(f);
  spdlog::info("wrote {}", path);
}

struct Common {
  std::string config;
  std::string solver = "dynamic";
  std::string strategy = "popc";
  std::uint64_t seed = 1;
  std::size_t grid_points = 0;
  std::string out;

  ScenarioConfig load() const {
    ScenarioConfig cfg;
    if (!config.empty()) cfg = load_config(config);
    if (grid_points) cfg.grid_points = grid_points;
    cfg.validate();
    return cfg;
  }
  harness::SolveOptions options() const {
    return {harness::parse_solver(solver), parse_strategy(strategy), seed};
  }
};

void add_common(CLI::App* app, Common& c, const std::string& default_out) {
  c.out = default_out;
  app->add_option("--config", c.config, "scenario JSON (defaults when omitted)");
  app->add_option("--solver", c.solver, "dynamic or invariant")
      ->check(CLI::IsMember({"dynamic", "invariant"}));
  app->add_option("--strategy", c.strategy, "popc, rndc or nonc")
      ->check(CLI::IsMember({"popc", "rndc", "nonc"}, CLI::ignore_case));
  app->add_option("--seed", c.seed, "seed for random placement");
  app->add_option("--grid-points", c.grid_points, "time samples M");
  app->add_option("--out", c.out, "output CSV path, - for stdout");
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Power scheduling for a train passing two cache-equipped radio heads"};
  app.require_subcommand(1);

  Common solve_opt, sweep_opt, conv_opt, trade_opt;
  auto* solve = app.add_subcommand("solve", "one MM solve; trajectory CSV, report JSON on stdout");
  add_common(solve, solve_opt, "trajectory.csv");
  std::string report_path = "-";
  solve->add_option("--report", report_path, "report JSON path, - for stdout");

  auto* sweep = app.add_subcommand("sweep", "expected cost over a parameter grid");
  add_common(sweep, sweep_opt, "sweep.csv");
  std::string param = "tau_max", values, strategies = "popc,rndc,nonc", solvers;
  std::size_t trials = 100;
  sweep->add_option("--param", param, "tau_max, eta, speed_kmh, snr_db or strategy")
      ->check(CLI::IsMember({"tau_max", "eta", "speed_kmh", "snr_db", "strategy"}));
  sweep->add_option("--values", values, "comma-separated values (default grid otherwise)");
  sweep->add_option("--strategies", strategies, "comma-separated strategies");
  sweep->add_option("--solvers", solvers, "comma-separated solvers (default: both)");
  sweep->add_option("--trials", trials, "random placements per RndC point")
      ->check(CLI::PositiveNumber);

  auto* conv = app.add_subcommand("convergence", "MM cost per iteration");
  add_common(conv, conv_opt, "convergence.csv");

  auto* trade = app.add_subcommand("tradeoff", "cost over (tau_max, content size)");
  add_common(trade, trade_opt, "tradeoff.csv");
  std::string taus = "0.5,0.75,1,1.5,2", sizes = "1,5,10,15,20,25";
  trade->add_option("--taus", taus, "comma-separated tau_max values");
  trade->add_option("--sizes", sizes, "comma-separated content sizes Q");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) {
      const auto cfg = solve_opt.load();
      const auto out = harness::run_solve(cfg, solve_opt.options());
      spdlog::info("{} after {} iterations, total {}", out.report.label, out.report.iterations,
                   out.report.cost_total);
      emit(solve_opt.out, [&](std::ostream& o) { harness::write_trajectory_csv(o, cfg, out.trajectory); });
      nlohmann::json j = out.report;
      j["placement"] = out.placement;
      emit(report_path, [&](std::ostream& o) { o << j.dump(2) << '\n'; });
    } else if (*sweep) {
      const auto cfg = sweep_opt.load();
      harness::SweepSpec spec;
      spec.param = param;
      spec.values = values.empty() ? harness::default_values(param) : parse_list(values);
      spec.strategies.clear();
      std::stringstream ss(strategies);
      for (std::string s; std::getline(ss, s, ',');) spec.strategies.push_back(parse_strategy(s));
      if (!solvers.empty()) {
        spec.solvers.clear();
        std::stringstream sv(solvers);
        for (std::string s; std::getline(sv, s, ',');) spec.solvers.push_back(harness::parse_solver(s));
      } else if (sweep->count("--solver")) {
        spec.solvers = {harness::parse_solver(sweep_opt.solver)};
      }
      spec.rndc_trials = trials;
      spec.seed = sweep_opt.seed;
      const auto rows = harness::run_sweep(cfg, spec);
      emit(sweep_opt.out, [&](std::ostream& o) { harness::write_sweep_csv(o, param, rows); });
    } else if (*conv) {
      const auto cfg = conv_opt.load();
      const auto rows = harness::run_convergence(cfg, conv_opt.options());
      emit(conv_opt.out, [&](std::ostream& o) { harness::write_convergence_csv(o, rows); });
    } else if (*trade) {
      const auto cfg = trade_opt.load();
      const auto rows = harness::run_tradeoff(cfg, parse_list(taus), parse_list(sizes),
                                              trade_opt.options());
      emit(trade_opt.out, [&](std::ostream& o) { harness::write_tradeoff_csv(o, rows); });
    }
  } catch (const InfeasibleError& e) {
    spdlog::error("infeasible: {}", e.what());
    std::cerr << "Infeasible: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 0;
}
