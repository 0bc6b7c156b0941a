#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fograil/caching.hpp"
#include "fograil/scenario.hpp"
#include "fograil/surrogate.hpp"
#include "fograil/trajectory.hpp"

namespace fograil::harness {

enum class SolverKind { Dynamic, Invariant };

std::string to_string(SolverKind k);
SolverKind parse_solver(const std::string& s);

struct SolveOptions {
  SolverKind solver = SolverKind::Dynamic;
  Strategy strategy = Strategy::PopC;
  std::uint64_t seed = 1;
};

CachePlacement make_placement(const ScenarioConfig& cfg, Strategy strategy, std::uint64_t seed);

struct SolveOutput {
  PowerTrajectory trajectory;
  SolveReport report;
  CachePlacement placement;
};

/// MM solve for cfg.requested_content. Throws InfeasibleError.
SolveOutput run_solve(const ScenarioConfig& cfg, const SolveOptions& opt);
/// Same, with an explicit placement and 0-based content.
SolveOutput solve_with(const ScenarioConfig& cfg, const CachePlacement& placement,
                       std::size_t content, SolverKind solver);

/// Columns t, P1, P2, ..., C_t, segment_mode_1, segment_mode_2, ...
void write_trajectory_csv(std::ostream& out, const ScenarioConfig& cfg, const PowerTrajectory& p);

/// Cost averaged over the request distribution for a fixed placement. Requests
/// that see the same cached/uncached pattern share one solve.
struct ExpectedCost {
  bool feasible = true;
  double cost_total = 0.0;
  double cost_transmit = 0.0;
  double cost_backhaul = 0.0;
  double iterations = 0.0;
  std::size_t solves = 0;
};

ExpectedCost expected_cost(const ScenarioConfig& cfg, const CachePlacement& placement,
                           SolverKind solver);

struct SweepSpec {
  std::string param;  // tau_max | eta | speed_kmh | snr_db | strategy
  std::vector<double> values;
  std::vector<Strategy> strategies{Strategy::PopC, Strategy::RndC, Strategy::NonC};
  std::vector<SolverKind> solvers{SolverKind::Dynamic, SolverKind::Invariant};
  std::size_t rndc_trials = 100;
  std::uint64_t seed = 1;
};

/// Default value grid for a sweep parameter.
std::vector<double> default_values(const std::string& param);

struct SweepRow {
  double value = 0.0;
  Strategy strategy = Strategy::PopC;
  SolverKind solver = SolverKind::Dynamic;
  bool feasible = true;
  double cost_total = 0.0;
  double cost_transmit = 0.0;
  double cost_backhaul = 0.0;
  double iterations = 0.0;
  double cost_total_std = 0.0;  // across RndC trials, 0 otherwise
};

/// Scenario for one sweep point. The speed sweep uses one shared horizon,
/// the time for the fastest train to reach the midpoint between the RRHs.
ScenarioConfig sweep_point(const ScenarioConfig& base, const SweepSpec& spec, double value);

std::vector<SweepRow> run_sweep(const ScenarioConfig& base, const SweepSpec& spec);
void write_sweep_csv(std::ostream& out, const std::string& param,
                     const std::vector<SweepRow>& rows);

struct ConvergenceRow {
  int iteration = 0;
  double cost = 0.0;
};

std::vector<ConvergenceRow> run_convergence(const ScenarioConfig& cfg, const SolveOptions& opt);
void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows);

struct TradeoffRow {
  double tau_max = 0.0;
  double content_size = 0.0;
  int regime = 1;
  bool feasible = true;
  double cost_total = 0.0;
  double cost_transmit = 0.0;
  double cost_backhaul = 0.0;
  int iterations = 0;
};

/// Cost surface over (tau_max, Q) with the placement fixed from cfg.
std::vector<TradeoffRow> run_tradeoff(const ScenarioConfig& cfg, const std::vector<double>& taus,
                                      const std::vector<double>& sizes, const SolveOptions& opt);
void write_tradeoff_csv(std::ostream& out, const std::vector<TradeoffRow>& rows);

/// Shortest round-trip decimal form, so CSV output is stable across runs.
std::string format_number(double v);

}  // namespace fograil::harness
