#pragma once

// Brute-force references for the convex inner problems. They share the
// discretization with the solvers but none of their structural shortcuts.

#include <cstddef>
#include <vector>

#include "fograil/dynamic_solver.hpp"
#include "fograil/numerics.hpp"
#include "fograil/scenario.hpp"

namespace fograil::oracle {

struct OracleResult {
  bool feasible = false;
  double cost = 0.0;                        // sum_n price_n * energy_n
  std::vector<std::vector<double>> power;   // [n][m], dynamic oracles
  std::vector<double> constants;            // invariant oracle
  std::size_t evaluations = 0;
  double slack = 0.0;                       // quantization allowance
};

/// Full LP over P2 on every sample with box, budget and deficit rows.
OracleResult oracle_regime1_lp(const dynamic::ReducedCoefficients& rc);

/// Greedy ascent over a per-sample lattice of (serving RRH, SNR level) pairs,
/// K levels per RRH. Meant for coarse grids (M up to about 60).
OracleResult oracle_regime2_grid(const dynamic::Regime2Problem& prob, std::size_t levels = 50);

/// Enumerates pairwise intersections of the sampled SNR rows and box edges
/// for constant powers (one or two RRHs). Cubic in the sample count.
OracleResult oracle_invariant_vertices(const ScenarioConfig& cfg,
                                       const std::vector<double>& price,
                                       const numerics::TimeGrid& grid);

}  // namespace fograil::oracle
