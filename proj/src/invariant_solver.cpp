#include "fograil/invariant_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fograil/errors.hpp"

namespace fograil::invariant {

InvariantWeights expand_at(InvariantWeights w, const std::vector<double>& p0) {
  if (p0.size() != w.backhaul_weight.size()) throw DomainError("expand_at: one power per RRH");
  w.expansion = p0;
  w.price.resize(p0.size());
  for (std::size_t n = 0; n < p0.size(); ++n) {
    if (p0[n] < 0.0) throw DomainError("expansion power must be nonnegative");
    w.price[n] = w.horizon + w.backhaul_weight[n] / (w.theta + p0[n]);
  }
  return w;
}

InvariantWeights invariant_weights(const ScenarioConfig& cfg, const CachePlacement& placement,
                                   std::size_t content, const std::vector<double>& p0,
                                   const numerics::TimeGrid& grid) {
  const auto dyn = backhaul_weights(cfg, placement, content, grid);
  InvariantWeights w;
  w.theta = cfg.theta;
  w.horizon = grid.horizon();
  w.backhaul_weight = dyn.backhaul_weight;
  return expand_at(std::move(w), p0);
}

InvariantWeights matched_weights(const std::vector<double>& dynamic_price, double horizon) {
  InvariantWeights w;
  w.horizon = horizon;
  w.backhaul_weight.assign(dynamic_price.size(), 0.0);
  w.expansion.assign(dynamic_price.size(), 0.0);
  w.price = dynamic_price;
  for (double& k : w.price) k *= horizon;
  return w;
}

namespace {

double row_slack(const std::vector<std::vector<double>>& gains, std::size_t m,
                 const std::vector<double>& p, double s) {
  double snr = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) snr += gains[n][m] * p[n];
  return snr - s;
}

std::vector<double> bits_integrand_gains(const std::vector<std::vector<double>>& gains,
                                         std::size_t m) {
  std::vector<double> g(gains.size());
  for (std::size_t n = 0; n < gains.size(); ++n) g[n] = gains[n][m];
  return g;
}

}  // namespace

InvariantSolution solve_invariant_regime1(const ScenarioConfig& cfg, const InvariantWeights& w,
                                          const numerics::TimeGrid& grid) {
  const std::size_t N = cfg.num_rrh(), M = grid.size();
  if (w.num_rrh() != N) throw DomainError("weights and scenario disagree on RRH count");
  const auto gains = gain_table(cfg, grid);
  const double s = cfg.snr_floor();

  numerics::LinearProgram lp;
  lp.objective = w.price;
  lp.lower.assign(N, 0.0);
  lp.upper = cfg.p_avg;
  // Seed with the endpoints and each RRH's weakest sample, then add the most
  // violated sampled constraint until none is violated.
  std::vector<bool> used(M, false);
  auto add_row = [&](std::size_t m) {
    if (used[m]) return;
    used[m] = true;
    lp.rows.push_back({bits_integrand_gains(gains, m), numerics::RowSense::GreaterEqual, s});
  };
  add_row(0);
  add_row(M - 1);
  for (std::size_t n = 0; n < N; ++n) {
    add_row(static_cast<std::size_t>(
        std::min_element(gains[n].begin(), gains[n].end()) - gains[n].begin()));
  }

  InvariantSolution sol;
  for (int round = 1;; ++round) {
    const auto res = numerics::solve_lp(lp);
    sol.lp_rounds = round;
    if (res.status != numerics::LpStatus::Optimal) {
      throw InfeasibleError("constant powers within the budgets cannot hold the delay floor");
    }
    double worst = 0.0;
    std::size_t worst_m = M;
    for (std::size_t m = 0; m < M; ++m) {
      const double v = -row_slack(gains, m, res.values, s);
      if (v > worst) {
        worst = v;
        worst_m = m;
      }
    }
    if (worst_m == M || worst <= 1e-13 * s || used[worst_m]) {
      sol.power = res.values;
      break;
    }
    add_row(worst_m);
  }
  sol.price = w.price;
  sol.base = sol.power;
  sol.report.solver = "invariant";
  sol.report.label = "invariant/regime1";
  sol.report.regime = 1;
  return sol;
}

InvariantSolution solve_invariant_regime2(const ScenarioConfig& cfg, const InvariantWeights& w,
                                          const numerics::TimeGrid& grid) {
  const std::size_t N = cfg.num_rrh(), M = grid.size();
  if (N > 2) throw DomainError("the constant-power baseline handles one or two RRHs");
  auto sol = solve_invariant_regime1(cfg, w, grid);
  sol.report.label = "invariant/regime2";
  sol.report.regime = 2;
  const double Q = cfg.content_size;
  const double B = cfg.bandwidth_hz, dt = grid.step(), s = cfg.snr_floor();
  const auto gains = gain_table(cfg, grid);
  const std::vector<double>& cap = cfg.p_avg;

  auto bits = [&](const std::vector<double>& p) {
    double acc = 0.0;
    for (std::size_t m = 0; m < M; ++m) {
      double snr = 1.0;
      for (std::size_t n = 0; n < N; ++n) snr += gains[n][m] * p[n];
      acc += std::log2(snr);
    }
    return acc * B * dt;
  };
  if (bits(sol.power) >= Q) return sol;
  if (bits(cap) < Q) throw InfeasibleError("content cannot be delivered with constant powers");

  // Smallest last power meeting the floors and the bit target with the
  // others fixed; infinity when even its cap falls short.
  constexpr double kNone = std::numeric_limits<double>::infinity();
  auto complete = [&](std::vector<double> p) {
    const std::size_t n = N - 1;
    double lo = 0.0;
    for (std::size_t m = 0; m < M; ++m) {
      double others = 0.0;
      for (std::size_t j = 0; j < n; ++j) others += gains[j][m] * p[j];
      lo = std::max(lo, (s - others) / gains[n][m]);
    }
    if (lo > cap[n]) return kNone;
    p[n] = lo;
    if (bits(p) >= Q) return lo;
    p[n] = cap[n];
    if (bits(p) < Q) return kNone;
    double hi = cap[n];
    for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
      p[n] = 0.5 * (lo + hi);
      (bits(p) >= Q ? hi : lo) = p[n];
    }
    return hi;
  };

  std::vector<double> x(N, 0.0);
  if (N == 1) {
    x[0] = complete(x);
  } else {
    // Feasibility is monotone in P1; then golden section on the convex
    // value function P1 -> k1 P1 + k2 P2min(P1).
    double lo = 0.0;
    if (!std::isfinite(complete({0.0, 0.0}))) {
      double a = 0.0, b = cap[0];
      for (int it = 0; it < 200 && b - a > 1e-13 * std::max(1.0, b); ++it) {
        const double mid = 0.5 * (a + b);
        (std::isfinite(complete({mid, 0.0})) ? b : a) = mid;
      }
      lo = b;
    }
    auto value = [&](double x1) {
      const double x2 = complete({x1, 0.0});
      return std::pair{w.price[0] * x1 + w.price[1] * x2, x2};
    };
    double a = lo, b = cap[0];
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = value(c).first, fd = value(d).first;
    while (b - a > 1e-10 * std::max(1.0, cap[0])) {
      if (fc <= fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - g * (b - a);
        fc = value(c).first;
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + g * (b - a);
        fd = value(d).first;
      }
    }
    double best_x1 = 0.5 * (a + b);
    auto best = value(best_x1);
    for (double cand : {lo, cap[0]}) {
      const auto v = value(cand);
      if (v.first < best.first) {
        best = v;
        best_x1 = cand;
      }
    }
    x = {best_x1, best.second};
  }
  sol.power = x;
  return sol;
}

InvariantSolution solve_invariant(const ScenarioConfig& cfg, const InvariantWeights& w,
                                  const numerics::TimeGrid& grid) {
  if (cfg.delay_bits() >= cfg.content_size) return solve_invariant_regime1(cfg, w, grid);
  return solve_invariant_regime2(cfg, w, grid);
}

double invariant_inner_cost(const InvariantSolution& s) {
  double c = 0.0;
  for (std::size_t n = 0; n < s.power.size(); ++n) c += s.price[n] * s.power[n];
  return c;
}

double invariant_smoothed_cost(const std::vector<double>& power, const InvariantWeights& w) {
  double c = 0.0;
  for (std::size_t n = 0; n < power.size(); ++n) {
    c += w.horizon * power[n] + w.backhaul_weight[n] * std::log1p(power[n] / w.theta);
  }
  return c;
}

PowerTrajectory to_trajectory(const InvariantSolution& s, const numerics::TimeGrid& grid) {
  auto p = PowerTrajectory::constant(grid, s.power);
  p.label = s.report.label;
  return p;
}

InvariantSolution mm_solve_invariant(const ScenarioConfig& cfg, const CachePlacement& placement,
                                     std::size_t content, const numerics::TimeGrid& grid) {
  std::vector<double> half(cfg.p_avg);
  for (double& v : half) v *= 0.5;
  const auto base = invariant_weights(cfg, placement, content, half, grid);
  InvariantSolution start;
  start.power = half;

  auto make = [&](const InvariantSolution& x) { return expand_at(base, x.power); };
  auto inner = [&](const InvariantWeights& w) { return solve_invariant(cfg, w, grid); };
  auto cost = [&](const InvariantSolution& x) { return invariant_smoothed_cost(x.power, base); };
  auto prices = [](const InvariantWeights& w) -> const std::vector<double>& { return w.price; };

  MmTrace trace;
  auto x = mm_loop(std::move(start), make, inner, cost, prices, cfg.mm_tol, cfg.mm_max_iter,
                   trace);
  const auto traj = to_trajectory(x, grid);
  const auto cb = total_cost(traj, placement, content, cfg);
  auto& r = x.report;
  r.solver = "invariant";
  r.cost_transmit = cb.transmit;
  r.cost_backhaul = cb.backhaul;
  r.cost_total = cb.total;
  r.cost_smoothed = cost(x);
  r.iterations = trace.iterations;
  r.converged = trace.converged;
  r.costs = trace.history;
  r.regime = cfg.delay_bits() >= cfg.content_size ? 1 : 2;
  r.status = trace.stalled ? "stalled" : (trace.converged ? "optimal" : "max_iter");
  return x;
}

}  // namespace fograil::invariant
