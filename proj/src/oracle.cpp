#include "fograil/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fograil/errors.hpp"

namespace fograil::oracle {

OracleResult oracle_regime1_lp(const dynamic::ReducedCoefficients& rc) {
  const std::size_t M = rc.grid.size();
  const double dt = rc.grid.step();
  numerics::LinearProgram lp;
  lp.objective.resize(M);
  lp.lower.assign(M, 0.0);
  lp.upper.resize(M);
  numerics::LinearRow budget{std::vector<double>(M), numerics::RowSense::LessEqual, rc.budget2()};
  numerics::LinearRow rrh1{std::vector<double>(M), numerics::RowSense::LessEqual, rc.budget1()};
  double a0_total = 0.0;
  for (std::size_t m = 0; m < M; ++m) {
    // Objective written in total power: k1 (a0 - a2 x) + k2 x.
    lp.objective[m] = (rc.k2 - rc.k1 * rc.a2[m]) * dt;
    lp.upper[m] = rc.a0[m] / rc.a2[m];
    budget.coeffs[m] = dt;
    rrh1.coeffs[m] = -rc.a2[m] * dt;  // int (a0 - a2 x) <= T p1avg
    a0_total += rc.a0[m] * dt;
  }
  rrh1.rhs -= a0_total;
  lp.rows = {budget, rrh1};
  const auto res = numerics::solve_lp(lp);
  OracleResult out;
  out.evaluations = res.pivots;
  if (res.status != numerics::LpStatus::Optimal) return out;
  out.feasible = true;
  out.power.assign(2, std::vector<double>(M));
  double e1 = 0.0, e2 = 0.0;
  for (std::size_t m = 0; m < M; ++m) {
    const double x = res.values[m];
    out.power[1][m] = x;
    out.power[0][m] = std::max(0.0, rc.a0[m] - rc.a2[m] * x);
    e1 += out.power[0][m];
    e2 += x;
  }
  out.cost = (rc.k1 * e1 + rc.k2 * e2) * dt;
  return out;
}

namespace {

// Greedy ascent on the lattice. Moves are ranked by bits per unit of the
// shaded price k_n + shade_n; costs and budgets use the true values.
OracleResult lattice_greedy(const dynamic::Regime2Problem& prob, std::size_t levels,
                            const std::vector<double>& shade, double top) {
  const std::size_t N = prob.num_rrh(), M = prob.size();
  const double s = prob.snr_floor, dt = prob.grid.step(), B = prob.bandwidth;
  OracleResult out;
  const double delta = (top - s) / static_cast<double>(levels - 1);
  auto snr_of = [&](std::size_t j) { return s + delta * static_cast<double>(j); };
  auto use_of = [&](std::size_t n, std::size_t m, std::size_t j) {
    return snr_of(j) / prob.kappa[n][m] * dt;
  };
  auto cost_of = [&](std::size_t n, std::size_t m, std::size_t j) {
    return prob.price[n] * use_of(n, m, j);
  };
  auto rank_of = [&](std::size_t n, std::size_t m, std::size_t j) {
    return (prob.price[n] + shade[n]) * use_of(n, m, j);
  };

  std::vector<std::size_t> who(M), lvl(M, 0);
  std::vector<double> used(N, 0.0);
  for (std::size_t m = 0; m < M; ++m) {
    std::size_t best = 0;
    for (std::size_t n = 1; n < N; ++n) {
      if (rank_of(n, m, 0) < rank_of(best, m, 0)) best = n;
    }
    who[m] = best;
    used[best] += use_of(best, m, 0);
  }
  // Budget screening of the floor assignment.
  for (std::size_t guard = 0; guard < M * N; ++guard) {
    std::size_t over = N;
    for (std::size_t n = 0; n < N; ++n) {
      if (used[n] > prob.energy_cap[n]) over = n;
    }
    if (over == N) break;
    double best = std::numeric_limits<double>::infinity();
    std::size_t bm = M, bn = N;
    for (std::size_t m = 0; m < M; ++m) {
      if (who[m] != over) continue;
      for (std::size_t n = 0; n < N; ++n) {
        if (n == over || used[n] + use_of(n, m, 0) > prob.energy_cap[n]) continue;
        const double extra = (cost_of(n, m, 0) - cost_of(over, m, 0)) / use_of(over, m, 0);
        if (extra < best) {
          best = extra;
          bm = m;
          bn = n;
        }
      }
    }
    if (bm == M) return out;
    used[over] -= use_of(over, bm, 0);
    used[bn] += use_of(bn, bm, 0);
    who[bm] = bn;
  }
  for (std::size_t n = 0; n < N; ++n) {
    if (used[n] > prob.energy_cap[n]) return out;
  }

  double bits = static_cast<double>(M) * B * std::log2(1.0 + s) * dt;
  double max_step = 0.0;
  while (bits < prob.bits) {
    double best = -1.0;
    std::size_t bm = M, bn = N, bj = 0;
    double b_gain = 0.0, b_cost = 0.0;
    for (std::size_t m = 0; m < M; ++m) {
      const double cur_snr = snr_of(lvl[m]);
      const double cur_rank = rank_of(who[m], m, lvl[m]);
      const double cur_cost = cost_of(who[m], m, lvl[m]);
      for (std::size_t n = 0; n < N; ++n) {
        const std::size_t j = lvl[m] + 1;
        if (j >= levels) continue;
        const double freed = n == who[m] ? use_of(n, m, lvl[m]) : 0.0;
        if (used[n] - freed + use_of(n, m, j) > prob.energy_cap[n]) continue;
        ++out.evaluations;
        const double gain = B * dt * std::log2((1.0 + snr_of(j)) / (1.0 + cur_snr));
        const double dr = rank_of(n, m, j) - cur_rank;
        const double score = dr <= 0.0 ? std::numeric_limits<double>::infinity() : gain / dr;
        if (score > best) {
          best = score;
          bm = m;
          bn = n;
          bj = j;
          b_gain = gain;
          b_cost = cost_of(n, m, j) - cur_cost;
        }
      }
    }
    if (bm == M) return out;  // lattice exhausted or budgets bind everywhere
    used[who[bm]] -= use_of(who[bm], bm, lvl[bm]);
    used[bn] += use_of(bn, bm, bj);
    who[bm] = bn;
    lvl[bm] = bj;
    bits += b_gain;
    max_step = std::max(max_step, b_cost);
  }

  out.feasible = true;
  out.power.assign(N, std::vector<double>(M, 0.0));
  out.cost = 0.0;
  for (std::size_t m = 0; m < M; ++m) {
    out.power[who[m]][m] = snr_of(lvl[m]) / prob.kappa[who[m]][m];
    out.cost += cost_of(who[m], m, lvl[m]);
  }
  out.slack = 2.0 * max_step;
  return out;
}

}  // namespace

OracleResult oracle_regime2_grid(const dynamic::Regime2Problem& prob, std::size_t levels) {
  const std::size_t N = prob.num_rrh(), M = prob.size();
  if (levels < 2) throw DomainError("oracle_regime2_grid: need at least two levels");
  const double s = prob.snr_floor, B = prob.bandwidth;
  const double T = prob.grid.horizon();

  // SNR lattice: s, s + delta, ..., up to a bound on any waterfilled SNR.
  double pmin = std::numeric_limits<double>::infinity(), pmax = 0.0;
  for (std::size_t m = 0; m < M; ++m) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < N; ++n) best = std::min(best, prob.price[n] / prob.kappa[n][m]);
    pmin = std::min(pmin, best);
    pmax = std::max(pmax, best);
  }
  const double uniform = std::exp2(prob.bits / (B * T)) - 1.0;
  const double top = std::max(s * 2.0, 1.5 * (1.0 + uniform) * pmax / pmin - 1.0);

  // Budgets can make the plain greedy spend a cheap RRH too early, so it is
  // rerun with that RRH's price shaded upward over a geometric scan.
  OracleResult best;
  std::size_t evaluations = 0;
  auto consider = [&](const std::vector<double>& shade) {
    auto r = lattice_greedy(prob, levels, shade, top);
    evaluations += r.evaluations;
    if (r.feasible && (!best.feasible || r.cost < best.cost)) best = std::move(r);
  };
  consider(std::vector<double>(N, 0.0));
  for (std::size_t n = 0; n < N; ++n) {
    for (int e = -12; e <= 8; ++e) {
      std::vector<double> shade(N, 0.0);
      shade[n] = prob.price[n] * std::pow(10.0, e / 4.0);
      consider(shade);
    }
  }
  best.evaluations = evaluations;
  return best;
}

namespace {

struct Line {
  double a, b, c;  // a x + b y (>= or <=) c, normalized
};

}  // namespace

OracleResult oracle_invariant_vertices(const ScenarioConfig& cfg,
                                       const std::vector<double>& price,
                                       const numerics::TimeGrid& grid) {
  const std::size_t N = cfg.num_rrh(), M = grid.size();
  if (N > 2 || price.size() != N) throw DomainError("vertex oracle handles one or two RRHs");
  const auto gains = gain_table(cfg, grid);
  const double s = cfg.snr_floor();
  OracleResult out;

  auto feasible = [&](const std::vector<double>& p) {
    for (std::size_t n = 0; n < N; ++n) {
      if (p[n] < -1e-12 || p[n] > cfg.p_avg[n] * (1.0 + 1e-12) + 1e-12) return false;
    }
    for (std::size_t m = 0; m < M; ++m) {
      double snr = 0.0;
      for (std::size_t n = 0; n < N; ++n) snr += gains[n][m] * p[n];
      if (snr < s * (1.0 - 1e-10)) return false;
    }
    return true;
  };
  auto consider = [&](const std::vector<double>& p) {
    ++out.evaluations;
    if (!feasible(p)) return;
    double c = 0.0;
    for (std::size_t n = 0; n < N; ++n) c += price[n] * p[n];
    if (!out.feasible || c < out.cost) {
      out.feasible = true;
      out.cost = c;
      out.constants = p;
    }
  };

  if (N == 1) {
    consider({0.0});
    consider({cfg.p_avg[0]});
    for (std::size_t m = 0; m < M; ++m) consider({s / gains[0][m]});
    return out;
  }

  std::vector<Line> lines;
  auto push = [&](double a, double b, double c) {
    const double norm = std::hypot(a, b);
    Line l{a / norm, b / norm, c / norm};
    for (const auto& q : lines) {
      if (std::abs(q.a - l.a) <= 1e-12 && std::abs(q.b - l.b) <= 1e-12 &&
          std::abs(q.c - l.c) <= 1e-12) {
        return;
      }
    }
    lines.push_back(l);
  };
  for (std::size_t m = 0; m < M; ++m) push(gains[0][m], gains[1][m], s);
  push(1.0, 0.0, 0.0);
  push(1.0, 0.0, cfg.p_avg[0]);
  push(0.0, 1.0, 0.0);
  push(0.0, 1.0, cfg.p_avg[1]);

  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const auto& p = lines[i];
      const auto& q = lines[j];
      const double det = p.a * q.b - p.b * q.a;
      if (std::abs(det) < 1e-14) continue;
      const double x = (p.c * q.b - p.b * q.c) / det;
      const double y = (p.a * q.c - p.c * q.a) / det;
      consider({x, y});
    }
  }
  return out;
}

}  // namespace fograil::oracle
