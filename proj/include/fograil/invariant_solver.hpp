#pragma once

#include <cstddef>
#include <vector>

#include "fograil/caching.hpp"
#include "fograil/numerics.hpp"
#include "fograil/scenario.hpp"
#include "fograil/surrogate.hpp"
#include "fograil/trajectory.hpp"

namespace fograil::invariant {

/// Prices for constant powers: k'_n = T + b_n / (theta + P0_n), where b_n is
/// the same backhaul weight as the dynamic surrogate and P0_n is in watts.
struct InvariantWeights {
  double theta = 0.01;
  double horizon = 1.0;
  std::vector<double> backhaul_weight;
  std::vector<double> price;
  std::vector<double> expansion;

  std::size_t num_rrh() const { return price.size(); }
};

InvariantWeights invariant_weights(const ScenarioConfig& cfg, const CachePlacement& placement,
                                   std::size_t content, const std::vector<double>& p0,
                                   const numerics::TimeGrid& grid);
InvariantWeights expand_at(InvariantWeights w, const std::vector<double>& p0);

/// Weights that price constant powers exactly like the dynamic inner problem
/// (k'_n = T k_n), used to compare both solvers on one objective.
InvariantWeights matched_weights(const std::vector<double>& dynamic_price, double horizon);

struct InvariantSolution {
  std::vector<double> power;  // constant watts per RRH
  std::vector<double> price;  // k'_n used for the solve
  std::vector<double> base;   // delay-only part (regime 2), else equals power
  SolveReport report;
  int lp_rounds = 0;  // row-generation rounds in the delay-only LP
};

InvariantSolution solve_invariant_regime1(const ScenarioConfig& cfg, const InvariantWeights& w,
                                          const numerics::TimeGrid& grid);
InvariantSolution solve_invariant_regime2(const ScenarioConfig& cfg, const InvariantWeights& w,
                                          const numerics::TimeGrid& grid);
InvariantSolution solve_invariant(const ScenarioConfig& cfg, const InvariantWeights& w,
                                  const numerics::TimeGrid& grid);

/// sum_n k'_n P_n.
double invariant_inner_cost(const InvariantSolution& s);
/// T sum P_n + sum b_n log(P_n/theta + 1).
double invariant_smoothed_cost(const std::vector<double>& power, const InvariantWeights& w);

/// Same outer loop and stopping rule as the dynamic solver.
InvariantSolution mm_solve_invariant(const ScenarioConfig& cfg, const CachePlacement& placement,
                                     std::size_t content, const numerics::TimeGrid& grid);

PowerTrajectory to_trajectory(const InvariantSolution& s, const numerics::TimeGrid& grid);

}  // namespace fograil::invariant
