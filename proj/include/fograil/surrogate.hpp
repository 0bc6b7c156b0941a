#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "fograil/caching.hpp"
#include "fograil/scenario.hpp"
#include "fograil/trajectory.hpp"
#include "json.hpp"

namespace fograil {

/// Linearization of the smoothed backhaul term around expansion energies E.
struct SurrogateWeights {
  double theta = 0.01;
  double c_smooth = 0.0;                // 1 / log(1/theta + 1)
  std::vector<double> backhaul_weight;  // b_n = c beta (1 - c_{n,l}) int R_n
  std::vector<double> price;            // k_n = 1 + b_n / (theta + E_n)
  std::vector<double> expansion;        // E_n

  std::size_t num_rrh() const { return price.size(); }
};

double smoothed_l0(double x, double theta);

/// Backhaul weights for the requested content (0-based), prices left at 1.
SurrogateWeights backhaul_weights(const ScenarioConfig& cfg, const CachePlacement& placement,
                                  std::size_t content, const numerics::TimeGrid& grid);

/// Re-expand around new energies; b_n and theta are kept.
SurrogateWeights expand_at(SurrogateWeights w, const std::vector<double>& energies);

SurrogateWeights weights(const ScenarioConfig& cfg, const CachePlacement& placement,
                         std::size_t content, const PowerTrajectory& p0);

/// sum_n E_n + sum_n b_n log(E_n/theta + 1) at the energies of p.
double smoothed_cost(const PowerTrajectory& p, const SurrogateWeights& w);
double smoothed_cost(const std::vector<double>& energies, const SurrogateWeights& w);

/// Tangent upper bound at w.expansion evaluated at p (linear part plus constant).
double surrogate_cost(const PowerTrajectory& p, const SurrogateWeights& w);
double surrogate_constant(const SurrogateWeights& w);

struct SolveReport {
  std::string status = "optimal";  // optimal | max_iter | stalled | infeasible
  std::string solver = "dynamic";
  std::string label;
  int regime = 1;
  double cost_total = 0.0;
  double cost_transmit = 0.0;
  double cost_backhaul = 0.0;
  double cost_smoothed = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> costs;  // smoothed objective after each MM iteration
  std::string reason;         // set when infeasible
};

void to_json(nlohmann::json& j, const SolveReport& r);

struct MmTrace {
  std::vector<double> history;
  int iterations = 0;
  bool converged = false;
  bool stalled = false;  // stopped because an iterate would have raised the cost
};

/// Generic majorize-minimize loop. make_weights(x) builds the tangent model at
/// x, inner(weights) minimizes it and cost(x) is the true smoothed objective.
/// Stops on relative cost change < tol, on unchanged weights, or at max_iter.
/// An iterate that raises the cost by more than 1e-9 relative is rejected.
template <class Iterate, class MakeWeights, class Inner, class Cost, class Prices>
Iterate mm_loop(Iterate x, MakeWeights make_weights, Inner inner, Cost cost, Prices prices,
                double tol, int max_iter, MmTrace& trace) {
  auto w = make_weights(x);
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (int it = 1; it <= max_iter; ++it) {
    Iterate next = inner(w);
    const double c = cost(next);
    if (!trace.history.empty() && c > prev + 1e-9 * std::abs(prev)) {
      trace.stalled = true;
      trace.converged = true;
      return x;
    }
    x = std::move(next);
    trace.history.push_back(c);
    trace.iterations = it;
    auto w_next = make_weights(x);
    bool same = true;
    const auto& a = prices(w);
    const auto& b = prices(w_next);
    for (std::size_t n = 0; n < a.size(); ++n) {
      if (std::abs(a[n] - b[n]) > 1e-12 * std::abs(a[n])) same = false;
    }
    if (same || (trace.history.size() > 1 && std::abs(c - prev) <= tol * std::abs(prev))) {
      trace.converged = true;
      return x;
    }
    prev = c;
    w = std::move(w_next);
  }
  return x;
}

using InnerSolver = std::function<PowerTrajectory(const SurrogateWeights&)>;

struct MmResult {
  PowerTrajectory trajectory;
  SurrogateWeights weights;  // weights of the last inner solve
  SolveReport report;
};

/// Starts from P0_n = p_avg_n / 2 on the grid; content is 0-based.
MmResult mm_solve(const ScenarioConfig& cfg, const CachePlacement& placement,
                  std::size_t content, const numerics::TimeGrid& grid,
                  const InnerSolver& inner);

}  // namespace fograil
