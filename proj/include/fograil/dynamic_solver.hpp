#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fograil/kernels.hpp"
#include "fograil/numerics.hpp"
#include "fograil/scenario.hpp"
#include "fograil/surrogate.hpp"
#include "fograil/trajectory.hpp"

namespace fograil::dynamic {

// ---------------------------------------------------------------------------
// Delay-limited regime (T / tau_max >= Q), two RRHs.
//
// With C(t) pinned to 1/tau_max, P1 = a0 - a2 P2 and the problem reduces to a
// linear program in P2 alone: minimize int (k2 - k1 a2) P2 subject to
// 0 <= P2 <= a3, int P2 <= T P2avg and int a2 P2 >= D.

struct ReducedCoefficients {
  numerics::TimeGrid grid;
  std::vector<double> a0;     // floor power of RRH 1 alone
  std::vector<double> a2;     // kappa2 / kappa1
  std::vector<double> a3;     // a0 / a2, RRH-2 power that zeroes RRH 1
  std::vector<double> price;  // k2 - k1 a2
  double k1 = 1.0;
  double k2 = 1.0;
  double p1_avg = 0.0;
  double p2_avg = 0.0;
  double A = 0.0;  // int a0
  double D = 0.0;  // A - T p1_avg

  double budget1() const { return grid.horizon() * p1_avg; }
  double budget2() const { return grid.horizon() * p2_avg; }
};

/// Build from sampled a0 and a2; derives a3, price, A and D.
ReducedCoefficients make_reduced(numerics::TimeGrid grid, std::vector<double> a0,
                                 std::vector<double> a2, double k1, double k2,
                                 double p1_avg, double p2_avg);

ReducedCoefficients reduce(const ScenarioConfig& cfg, const SurrogateWeights& w,
                           const numerics::TimeGrid& grid);

struct MonotonicityReport {
  bool price_nonincreasing = true;
  bool a2_nondecreasing = true;
  bool a3_nonincreasing = true;
  std::optional<double> price_violation;  // first offending sample time
  std::optional<double> a2_violation;
  std::optional<double> a3_violation;

  bool all() const { return price_nonincreasing && a2_nondecreasing && a3_nonincreasing; }
};

MonotonicityReport verify_monotonicity(const ReducedCoefficients& rc);
MonotonicityReport verify_monotonicity(const ScenarioConfig& cfg, const SurrogateWeights& w,
                                       const numerics::TimeGrid& grid);

enum class PriceSign { Crosses, PositiveEverywhere, NonPositiveEverywhere };

/// Continuous critical times plus the grid indices they induce. A switch
/// index j means P2 is saturated on samples m >= j.
struct CriticalTimes {
  std::optional<double> t_price;    // first time with k2 - k1 a2 <= 0
  std::optional<double> t_deficit;  // tail int of a0 from t equals D
  std::optional<double> t_budget;   // tail int of a3 from t equals T p2avg
  PriceSign price_sign = PriceSign::Crosses;
  std::size_t j_price = 0;                  // first sample with price <= 0 (M if none)
  std::optional<std::size_t> j_deficit;     // latest switch that still covers D
  std::optional<std::size_t> j_budget;      // earliest switch within RRH-2 budget
  bool deficit_unreachable = false;         // D > A
  std::vector<std::string> diagnostics;
};

CriticalTimes critical_times(const ReducedCoefficients& rc);

struct Feasibility {
  bool feasible = true;
  std::string reason;
};

Feasibility check_feasibility(const ReducedCoefficients& rc, const CriticalTimes& ct);
Feasibility check_feasibility(const ReducedCoefficients& rc);

enum class Regime1Case { Case1 = 1, Case2 = 2, Case3 = 3, Case4 = 4 };

struct Regime1Solution {
  PowerTrajectory trajectory;
  Regime1Case which = Regime1Case::Case1;
  bool used_lp = false;        // monotonicity failed, solved as a full LP
  std::size_t switch_index = 0;
  CriticalTimes times;
};

/// Throws InfeasibleError.
Regime1Solution solve_regime1_detailed(const ScenarioConfig& cfg, const SurrogateWeights& w,
                                       const numerics::TimeGrid& grid);
PowerTrajectory solve_regime1(const ScenarioConfig& cfg, const SurrogateWeights& w,
                              const numerics::TimeGrid& grid);
/// The closed form from reduced coefficients (no monotonicity check).
Regime1Solution solve_reduced(const ReducedCoefficients& rc);
/// Full-horizon LP in P2 on the grid; status Infeasible when the set is empty.
numerics::LpResult reduced_lp(const ReducedCoefficients& rc);
/// P1 = a0 - a2 P2 with round-off clipping; throws NumericsError below -1e-9.
std::vector<double> recover_p1(const ReducedCoefficients& rc, const std::vector<double>& p2);

/// One RRH: P1 = floor / kappa1. Throws InfeasibleError over budget.
PowerTrajectory solve_single_rrh(const ScenarioConfig& cfg, const SurrogateWeights& w,
                                 const numerics::TimeGrid& grid);

// ---------------------------------------------------------------------------
// Rate-limited regime (T / tau_max < Q), any number of RRHs.

struct Regime2Problem {
  numerics::TimeGrid grid;
  std::vector<std::vector<double>> kappa;  // [n][m]
  std::vector<double> price;               // k_n
  std::vector<double> energy_cap;          // T p_avg_n
  std::vector<std::vector<double>> base;   // delay-only optimum P*_{n,1}
  double snr_floor = 0.0;
  double bits = 0.0;  // Q
  double bandwidth = 1.0;
  kernels::Backend backend = kernels::default_backend();

  std::size_t num_rrh() const { return price.size(); }
  std::size_t size() const { return grid.size(); }
  /// Bits delivered with every sample at the SNR floor.
  double floor_bits() const;
};

/// Builds the problem; base comes from the delay-only solve.
Regime2Problem make_regime2_problem(const ScenarioConfig& cfg, const SurrogateWeights& w,
                                    const numerics::TimeGrid& grid);

struct DualState {
  std::vector<double> mu1;  // per-RRH budget multipliers
  double mu2 = 0.0;         // rate multiplier
  std::vector<double> mu3;  // per-sample delay multipliers
};

struct Regime2Solution {
  PowerTrajectory trajectory;
  std::vector<std::vector<double>> extra;  // P_{n,2} = P_n - P*_{n,1}
  std::vector<double> residual_budget;     // p_avg_n - (1/T) int P*_{n,1}
  DualState duals;
  int dual_rounds = 0;
};

/// Dual bisection on the rate multiplier with per-sample waterfilling, budget
/// multipliers by coordinate bisection, then an exact solve for the resulting
/// assignment. Throws InfeasibleError.
Regime2Solution solve_regime2(const Regime2Problem& prob);
Regime2Solution solve_regime2(const ScenarioConfig& cfg, const SurrogateWeights& w,
                              const numerics::TimeGrid& grid);

/// Water level lambda meeting the rate target exactly for per-sample SNR
/// prices pi (S_m = max(floor, lambda/pi_m - 1)). Returns 0 when the floor
/// already delivers the bits.
double rate_level(const std::vector<double>& pi, double snr_floor, double bandwidth,
                  double step, double bits);

/// One Gauss-Seidel sweep of the stationarity fixed point for the extra
/// powers with duals held fixed. Throws SolverError on divergence.
std::vector<std::vector<double>> kkt_update(const DualState& state,
                                            const std::vector<std::vector<double>>& extra,
                                            const Regime2Problem& prob);

struct KktOptions {
  int max_iter = 4000;
  double tol = 1e-6;
};

struct KktResult {
  std::vector<std::vector<double>> extra;
  DualState duals;
  bool converged = false;
  int iterations = 0;
  double cost = 0.0;          // sum_n k_n int P_n
  double rate_residual = 0.0; // (Q - bits delivered) / Q
  double budget_residual = 0.0;
};

KktResult kkt_solve(const Regime2Problem& prob, const KktOptions& opt = {});

/// sum_n k_n int P_n for total powers.
double inner_cost(const std::vector<double>& price, const PowerTrajectory& p);

/// Dispatch on regime and RRH count. Matches InnerSolver once bound.
PowerTrajectory solve_inner(const ScenarioConfig& cfg, const SurrogateWeights& w,
                            const numerics::TimeGrid& grid);

}  // namespace fograil::dynamic
