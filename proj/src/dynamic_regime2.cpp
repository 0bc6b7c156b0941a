#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "fograil/dynamic_solver.hpp"
#include "fograil/errors.hpp"

namespace fograil::dynamic {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

// Per-sample allocation for fixed budget multipliers.
struct Allocation {
  std::vector<double> pi;  // cheapest SNR price per sample
  std::vector<std::uint32_t> server;
  std::vector<double> snr;
  std::vector<double> usage;  // energy per RRH
  double level = 0.0;
};

Allocation allocate(const Regime2Problem& prob, const std::vector<double>& mu1,
                    const std::vector<double>& flat_kappa) {
  const std::size_t N = prob.num_rrh(), M = prob.size();
  Allocation a;
  a.pi.resize(M);
  a.server.resize(M);
  a.snr.resize(M);
  std::vector<double> unit(N);
  for (std::size_t n = 0; n < N; ++n) unit[n] = prob.price[n] + mu1[n];
  kernels::serving_prices(flat_kappa, N, unit, a.pi, a.server, prob.backend);
  a.level = rate_level(a.pi, prob.snr_floor, prob.bandwidth, prob.grid.step(), prob.bits);
  kernels::waterfill_snr(a.pi, a.level, prob.snr_floor, a.snr, prob.backend);
  a.usage.assign(N, 0.0);
  for (std::size_t m = 0; m < M; ++m) {
    const auto n = a.server[m];
    a.usage[n] += a.snr[m] / prob.kappa[n][m];
  }
  for (double& u : a.usage) u *= prob.grid.step();
  return a;
}

std::vector<double> flatten(const std::vector<std::vector<double>>& k) {
  std::vector<double> out;
  out.reserve(k.size() * (k.empty() ? 0 : k[0].size()));
  for (const auto& row : k) out.insert(out.end(), row.begin(), row.end());
  return out;
}

// Budget multipliers by cyclic coordinate bisection. Each coordinate is moved
// to the point where its own budget is met (or to zero when slack).
std::vector<double> budget_multipliers(const Regime2Problem& prob,
                                       const std::vector<double>& flat, int& rounds) {
  const std::size_t N = prob.num_rrh();
  std::vector<double> mu(N, 0.0);
  auto usage_of = [&](std::size_t n) { return allocate(prob, mu, flat).usage[n]; };
  rounds = 0;
  for (int round = 0; round < 100; ++round) {
    rounds = round + 1;
    bool changed = false;
    for (std::size_t n = 0; n < N; ++n) {
      const double cap = prob.energy_cap[n];
      const double tol = 1e-10 * std::max(cap, 1e-300);
      const double before = mu[n];
      const double u = usage_of(n);
      if (u > cap + tol) {
        double lo = mu[n];
        double hi = std::max(2.0 * mu[n], prob.price[n]);
        for (;;) {
          mu[n] = hi;
          if (usage_of(n) <= cap) break;
          lo = hi;
          hi *= 2.0;
          if (hi > 1e12 * prob.price[n]) {
            throw InfeasibleError("no schedule meets the delay floor and content size within RRH " +
                                  std::to_string(n + 1) + "'s power budget");
          }
        }
        for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
          mu[n] = 0.5 * (lo + hi);
          (usage_of(n) <= cap ? hi : lo) = mu[n];
        }
        mu[n] = hi;
      } else if (mu[n] > 0.0 && u < cap - tol) {
        double hi = mu[n];
        mu[n] = 0.0;
        if (usage_of(n) > cap) {
          double lo = 0.0;
          for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
            mu[n] = 0.5 * (lo + hi);
            (usage_of(n) <= cap ? hi : lo) = mu[n];
          }
          mu[n] = hi;
        }
      }
      if (std::abs(mu[n] - before) > 1e-12 * std::max(before, prob.price[n])) changed = true;
    }
    if (!changed) break;
  }
  return mu;
}

struct Group {
  std::vector<std::size_t> samples;
  std::vector<double> inv_sorted;  // 1/kappa, ascending
  double cap_level = 0.0;          // water level that spends the whole budget
};

double group_usage(const Group& g, double w, double s, double dt) {
  double u = 0.0;
  for (double inv : g.inv_sorted) u += std::max(s * inv, w - inv);
  return u * dt;
}

// Level w with usage(w) = cap, rounded down so the budget holds.
double budget_level(const Group& g, double s, double dt, double cap) {
  const auto& inv = g.inv_sorted;
  const std::size_t K = inv.size();
  const double target = cap / dt;
  double floor_sum = 0.0;
  for (double v : inv) floor_sum += s * v;
  std::vector<double> pre(K + 1, 0.0);
  for (std::size_t i = 0; i < K; ++i) pre[i + 1] = pre[i] + inv[i];
  double w = (1.0 + s) * inv[0];
  for (std::size_t k = 1; k <= K; ++k) {
    const double rest = s * (pre[K] - pre[k]);
    const double wk = (target + pre[k] - rest) / static_cast<double>(k);
    const double lo_thr = (1.0 + s) * inv[k - 1];
    const double hi_thr = k < K ? (1.0 + s) * inv[k] : std::numeric_limits<double>::infinity();
    if (wk >= lo_thr && wk <= hi_thr) {
      w = wk;
      break;
    }
    if (k == K) w = wk;
  }
  for (int i = 0; i < 64 && group_usage(g, w, s, dt) > cap; ++i) {
    w -= std::max(std::abs(w) * 1e-15, 1e-300) * std::ldexp(1.0, i);
  }
  return w;
}

// Move samples off RRHs whose floor-only usage already exceeds their budget.
void repair_assignment(const Regime2Problem& prob, std::vector<std::uint32_t>& server) {
  const std::size_t N = prob.num_rrh(), M = prob.size();
  const double s = prob.snr_floor, dt = prob.grid.step();
  std::vector<double> floor_use(N, 0.0);
  for (std::size_t m = 0; m < M; ++m) floor_use[server[m]] += s / prob.kappa[server[m]][m] * dt;
  for (std::size_t guard = 0; guard <= M * N; ++guard) {
    std::size_t over = N;
    for (std::size_t n = 0; n < N; ++n) {
      if (floor_use[n] > prob.energy_cap[n] * (1.0 + 1e-12)) {
        over = n;
        break;
      }
    }
    if (over == N) return;
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_m = M, best_to = N;
    for (std::size_t m = 0; m < M; ++m) {
      if (server[m] != over) continue;
      const double own = prob.price[over] / prob.kappa[over][m];
      for (std::size_t j = 0; j < N; ++j) {
        if (j == over) continue;
        const double need = s / prob.kappa[j][m] * dt;
        if (floor_use[j] + need > prob.energy_cap[j]) continue;
        const double ratio = (prob.price[j] / prob.kappa[j][m]) / own;
        if (ratio < best) {
          best = ratio;
          best_m = m;
          best_to = j;
        }
      }
    }
    if (best_m == M) {
      throw InfeasibleError("budgets cannot hold the delay floor at every sample");
    }
    floor_use[over] -= s / prob.kappa[over][best_m] * dt;
    floor_use[best_to] += s / prob.kappa[best_to][best_m] * dt;
    server[best_m] = static_cast<std::uint32_t>(best_to);
  }
  throw InfeasibleError("budgets cannot hold the delay floor at every sample");
}

void fill_duals(const Regime2Problem& prob, const std::vector<double>& mu1, double lambda,
                DualState& d) {
  const std::size_t N = prob.num_rrh(), M = prob.size();
  d.mu1 = mu1;
  d.mu2 = lambda * kLn2 / prob.bandwidth;
  d.mu3.assign(M, 0.0);
  for (std::size_t m = 0; m < M; ++m) {
    double pi = std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < N; ++n) pi = std::min(pi, (prob.price[n] + mu1[n]) / prob.kappa[n][m]);
    d.mu3[m] = std::max(0.0, pi - lambda / (1.0 + prob.snr_floor));
  }
}

// Exact optimum for a fixed sample-to-RRH assignment.
Regime2Solution solve_assigned(const Regime2Problem& prob, std::vector<std::uint32_t> server) {
  const std::size_t N = prob.num_rrh(), M = prob.size();
  const double s = prob.snr_floor, dt = prob.grid.step(), B = prob.bandwidth;
  repair_assignment(prob, server);

  std::vector<Group> groups(N);
  for (std::size_t m = 0; m < M; ++m) groups[server[m]].samples.push_back(m);
  double level_max = 0.0;
  for (std::size_t n = 0; n < N; ++n) {
    auto& g = groups[n];
    if (g.samples.empty()) continue;
    for (auto m : g.samples) g.inv_sorted.push_back(1.0 / prob.kappa[n][m]);
    std::sort(g.inv_sorted.begin(), g.inv_sorted.end());
    g.cap_level = budget_level(g, s, dt, prob.energy_cap[n]);
    level_max = std::max(level_max, prob.price[n] * g.cap_level);
  }

  auto water = [&](std::size_t n, double lambda) {
    return std::min(lambda / prob.price[n], groups[n].cap_level);
  };
  auto bits_at = [&](double lambda) {
    double acc = 0.0;
    for (std::size_t n = 0; n < N; ++n) {
      if (groups[n].samples.empty()) continue;
      const double w = water(n, lambda);
      for (auto m : groups[n].samples) {
        acc += std::log2(std::max(1.0 + s, prob.kappa[n][m] * w));
      }
    }
    return acc * B * dt;
  };

  double lambda = 0.0;
  if (prob.bits > prob.floor_bits()) {
    if (bits_at(level_max) < prob.bits * (1.0 - 1e-12)) {
      throw InfeasibleError("content cannot be delivered within the power budgets");
    }
    double lo = 0.0, hi = level_max;
    for (int it = 0; it < 300 && hi - lo > 1e-15 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (bits_at(mid) >= prob.bits ? hi : lo) = mid;
    }
    lambda = hi;
  }

  Regime2Solution sol{PowerTrajectory(prob.grid, N), {}, {}, {}, 0};
  auto& P = sol.trajectory.power;
  std::vector<SegmentMode> mode_row(M);
  std::vector<std::vector<Segment>> segs(N);
  for (std::size_t n = 0; n < N; ++n) {
    const double w = groups[n].samples.empty() ? 0.0 : water(n, lambda);
    for (auto m : groups[n].samples) {
      const double inv = 1.0 / prob.kappa[n][m];
      P[n][m] = std::max(s * inv, w - inv);
    }
  }
  for (std::size_t n = 0; n < N; ++n) {
    for (std::size_t m = 0; m < M; ++m) {
      mode_row[m] = P[n][m] == 0.0 ? SegmentMode::Zero : SegmentMode::ClosedForm;
    }
    segs[n] = segments_from_modes(mode_row);
  }
  sol.trajectory.segments = std::move(segs);
  sol.trajectory.label = "regime2";

  std::vector<double> mu1(N, 0.0);
  for (std::size_t n = 0; n < N; ++n) {
    if (groups[n].samples.empty() || lambda == 0.0) continue;
    if (lambda / prob.price[n] > groups[n].cap_level) {
      mu1[n] = lambda / groups[n].cap_level - prob.price[n];
    }
  }
  fill_duals(prob, mu1, lambda, sol.duals);
  return sol;
}

void finish(const Regime2Problem& prob, Regime2Solution& sol) {
  const std::size_t N = prob.num_rrh();
  const double T = prob.grid.horizon();
  sol.extra.assign(N, {});
  sol.residual_budget.assign(N, 0.0);
  for (std::size_t n = 0; n < N; ++n) {
    sol.extra[n].resize(prob.size());
    for (std::size_t m = 0; m < prob.size(); ++m) {
      sol.extra[n][m] = sol.trajectory.power[n][m] - prob.base[n][m];
    }
    sol.residual_budget[n] =
        (prob.energy_cap[n] - numerics::integrate_samples(prob.base[n], prob.grid)) / T;
  }
}

// Primal point of the Lagrangian at mu. The per-sample SNR is unique; a
// sample whose cheapest shaded price is shared by several RRHs may be split
// between them, and a small LP picks the split that fits the budgets.
std::optional<Regime2Solution> split_ties(const Regime2Problem& prob,
                                          const std::vector<double>& mu,
                                          const std::vector<double>& flat) {
  const std::size_t N = prob.num_rrh(), M = prob.size();
  const double dt = prob.grid.step();
  const auto a = allocate(prob, mu, flat);
  Regime2Solution sol{PowerTrajectory(prob.grid, N), {}, {}, {}, 0};
  auto& P = sol.trajectory.power;
  std::vector<double> used(N, 0.0);
  struct Var {
    std::size_t n, m;
  };
  std::vector<Var> vars;
  std::vector<std::size_t> tied_samples;
  for (std::size_t m = 0; m < M; ++m) {
    std::vector<std::size_t> tied;
    for (std::size_t n = 0; n < N; ++n) {
      if ((prob.price[n] + mu[n]) / prob.kappa[n][m] <= a.pi[m] * (1.0 + 1e-9)) tied.push_back(n);
    }
    if (tied.size() == 1) {
      const auto n = tied.front();
      P[n][m] = a.snr[m] / prob.kappa[n][m];
      used[n] += P[n][m] * dt;
      continue;
    }
    tied_samples.push_back(m);
    for (auto n : tied) vars.push_back({n, m});
  }
  if (!vars.empty()) {
    numerics::LinearProgram lp;
    lp.lower.assign(vars.size(), 0.0);
    lp.upper.assign(vars.size(), numerics::kInf);
    for (const auto& v : vars) lp.objective.push_back(prob.price[v.n] * dt);
    for (auto m : tied_samples) {
      numerics::LinearRow row{std::vector<double>(vars.size(), 0.0), numerics::RowSense::Equal,
                              a.snr[m]};
      for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i].m == m) row.coeffs[i] = prob.kappa[vars[i].n][m];
      }
      lp.rows.push_back(std::move(row));
    }
    for (std::size_t n = 0; n < N; ++n) {
      numerics::LinearRow row{std::vector<double>(vars.size(), 0.0), numerics::RowSense::LessEqual,
                              prob.energy_cap[n] - used[n]};
      bool any = false;
      for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i].n == n) {
          row.coeffs[i] = dt;
          any = true;
        }
      }
      if (any) lp.rows.push_back(std::move(row));
    }
    const auto res = numerics::solve_lp(lp);
    if (res.status != numerics::LpStatus::Optimal) return std::nullopt;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      const double p = std::max(0.0, res.values[i]);
      P[vars[i].n][vars[i].m] = p;
      used[vars[i].n] += p * dt;
    }
  }
  for (std::size_t n = 0; n < N; ++n) {
    if (used[n] > prob.energy_cap[n] * (1.0 + 1e-9)) return std::nullopt;
  }
  std::vector<SegmentMode> mode_row(M);
  sol.trajectory.segments.resize(N);
  for (std::size_t n = 0; n < N; ++n) {
    for (std::size_t m = 0; m < M; ++m) {
      mode_row[m] = P[n][m] == 0.0 ? SegmentMode::Zero : SegmentMode::ClosedForm;
    }
    sol.trajectory.segments[n] = segments_from_modes(mode_row);
  }
  sol.trajectory.label = "regime2";
  fill_duals(prob, mu, a.level, sol.duals);
  return sol;
}

double priced_energy(const Regime2Problem& prob, const PowerTrajectory& p) {
  double c = 0.0;
  for (std::size_t n = 0; n < prob.num_rrh(); ++n) c += prob.price[n] * p.energy(n);
  return c;
}

Regime2Solution solve_dual(const Regime2Problem& prob) {
  const auto flat = flatten(prob.kappa);
  int rounds = 0;
  const auto mu = budget_multipliers(prob, flat, rounds);
  const auto alloc = allocate(prob, mu, flat);
  auto split = split_ties(prob, mu, flat);
  std::optional<Regime2Solution> assigned;
  try {
    assigned = solve_assigned(prob, alloc.server);
  } catch (const InfeasibleError&) {
    if (!split) throw;
  }
  Regime2Solution sol = !split ? std::move(*assigned)
                        : !assigned ? std::move(*split)
                        : priced_energy(prob, split->trajectory) <=
                                  priced_energy(prob, assigned->trajectory)
                            ? std::move(*split)
                            : std::move(*assigned);
  sol.dual_rounds = rounds;
  return sol;
}

}  // namespace

double Regime2Problem::floor_bits() const {
  return bandwidth * std::log2(1.0 + snr_floor) * grid.step() * static_cast<double>(size());
}

double rate_level(const std::vector<double>& pi, double snr_floor, double bandwidth,
                  double step, double bits) {
  const std::size_t M = pi.size();
  const double L = std::log2(1.0 + snr_floor);
  const double target = bits / (bandwidth * step);
  if (static_cast<double>(M) * L >= target) return 0.0;
  std::vector<double> lp(M);
  for (std::size_t m = 0; m < M; ++m) lp[m] = std::log2(pi[m]);
  std::sort(lp.begin(), lp.end());
  double prefix = 0.0;
  for (std::size_t k = 1; k <= M; ++k) {
    prefix += lp[k - 1];
    const double u = (target - static_cast<double>(M - k) * L + prefix) / static_cast<double>(k);
    if (k == M || lp[k] + L >= u) return std::exp2(u);
  }
  return 0.0;  // unreachable
}

Regime2Problem make_regime2_problem(const ScenarioConfig& cfg, const SurrogateWeights& w,
                                    const numerics::TimeGrid& grid) {
  const std::size_t N = cfg.num_rrh();
  if (w.num_rrh() != N) throw DomainError("weights and scenario disagree on RRH count");
  Regime2Problem prob{grid, gain_table(cfg, grid), w.price, {}, {}, cfg.snr_floor(),
                      cfg.content_size, cfg.bandwidth_hz, kernels::default_backend()};
  prob.energy_cap.resize(N);
  for (std::size_t n = 0; n < N; ++n) prob.energy_cap[n] = grid.horizon() * cfg.p_avg[n];

  if (N == 1) {
    prob.base = solve_single_rrh(cfg, w, grid).power;
  } else if (N == 2) {
    prob.base = solve_regime1_detailed(cfg, w, grid).trajectory.power;
  } else {
    Regime2Problem floor_only = prob;
    floor_only.bits = floor_only.floor_bits();
    floor_only.base.assign(N, std::vector<double>(grid.size(), 0.0));
    prob.base = solve_dual(floor_only).trajectory.power;
  }
  return prob;
}

Regime2Solution solve_regime2(const Regime2Problem& prob) {
  if (prob.base.size() != prob.num_rrh()) throw DomainError("regime-2 problem lacks a base");
  Regime2Solution sol{PowerTrajectory(prob.grid, prob.num_rrh()), {}, {}, {}, 0};
  if (prob.bits <= prob.floor_bits() * (1.0 + 1e-12)) {
    sol.trajectory.power = prob.base;
    sol.trajectory.label = "regime2/floor";
    sol.duals.mu1.assign(prob.num_rrh(), 0.0);
    sol.duals.mu3.assign(prob.size(), 0.0);
  } else {
    sol = solve_dual(prob);
  }
  finish(prob, sol);
  return sol;
}

Regime2Solution solve_regime2(const ScenarioConfig& cfg, const SurrogateWeights& w,
                              const numerics::TimeGrid& grid) {
  return solve_regime2(make_regime2_problem(cfg, w, grid));
}

std::vector<std::vector<double>> kkt_update(const DualState& st,
                                            const std::vector<std::vector<double>>& extra,
                                            const Regime2Problem& prob) {
  const std::size_t N = prob.num_rrh(), M = prob.size();
  if (st.mu1.size() != N || st.mu3.size() != M || extra.size() != N) {
    throw DomainError("kkt_update: dimension mismatch");
  }
  if (st.mu2 < 0.0) throw DomainError("kkt_update: negative multiplier");
  const double level = st.mu2 * prob.bandwidth / kLn2;
  auto out = extra;
  for (std::size_t m = 0; m < M; ++m) {
    double c0 = 1.0;
    for (std::size_t n = 0; n < N; ++n) c0 += prob.kappa[n][m] * prob.base[n][m];
    for (std::size_t n = 0; n < N; ++n) {
      double others = 0.0;
      for (std::size_t j = 0; j < N; ++j) {
        if (j != n) others += prob.kappa[j][m] * out[j][m];
      }
      const double denom = prob.price[n] + st.mu1[n] - st.mu3[m] * prob.kappa[n][m];
      if (!(denom > 0.0)) throw SolverError("kkt_update: effective price is not positive");
      const double v = level / denom - (c0 + others) / prob.kappa[n][m];
      out[n][m] = std::max(v, -prob.base[n][m]);
      if (!(std::abs(out[n][m]) <= 1e6)) throw SolverError("kkt_update: iterate diverged");
    }
  }
  return out;
}

KktResult kkt_solve(const Regime2Problem& prob, const KktOptions& opt) {
  const std::size_t N = prob.num_rrh(), M = prob.size();
  const double dt = prob.grid.step(), s = prob.snr_floor, B = prob.bandwidth;
  const double T = prob.grid.horizon();
  KktResult r;
  r.extra.assign(N, std::vector<double>(M, 0.0));
  r.duals.mu1.assign(N, 0.0);
  r.duals.mu3.assign(M, 0.0);
  const auto flat = flatten(prob.kappa);
  double lambda = allocate(prob, r.duals.mu1, flat).level;
  if (lambda == 0.0) lambda = 1e-12;

  std::vector<double> c0(M, 1.0);
  for (std::size_t m = 0; m < M; ++m) {
    for (std::size_t n = 0; n < N; ++n) c0[m] += prob.kappa[n][m] * prob.base[n][m];
  }

  for (int it = 1; it <= opt.max_iter; ++it) {
    r.iterations = it;
    r.duals.mu2 = lambda * kLn2 / B;
    for (std::size_t m = 0; m < M; ++m) {
      double pi = std::numeric_limits<double>::infinity();
      for (std::size_t n = 0; n < N; ++n) {
        pi = std::min(pi, (prob.price[n] + r.duals.mu1[n]) / prob.kappa[n][m]);
      }
      r.duals.mu3[m] = std::max(0.0, pi - lambda / (1.0 + s));
    }
    for (int sweep = 0; sweep < 50; ++sweep) {
      auto next = kkt_update(r.duals, r.extra, prob);
      double change = 0.0;
      for (std::size_t n = 0; n < N; ++n) {
        for (std::size_t m = 0; m < M; ++m) {
          change = std::max(change, std::abs(next[n][m] - r.extra[n][m]));
        }
      }
      r.extra = std::move(next);
      if (change <= 1e-14) break;
    }

    double delivered = 0.0;
    std::vector<double> usage(N, 0.0);
    std::vector<double> active(N, 0.0);
    for (std::size_t m = 0; m < M; ++m) {
      double snr = c0[m];
      for (std::size_t n = 0; n < N; ++n) {
        snr += prob.kappa[n][m] * r.extra[n][m];
        const double p = prob.base[n][m] + r.extra[n][m];
        usage[n] += p;
        if (p > 0.0) active[n] += 1.0;
      }
      delivered += std::log2(snr);
    }
    delivered *= B * dt;
    for (double& u : usage) u *= dt;

    r.rate_residual = (prob.bits - delivered) / prob.bits;
    bool ok = std::abs(r.rate_residual) <= opt.tol;
    r.budget_residual = 0.0;
    for (std::size_t n = 0; n < N; ++n) {
      const double rel = (usage[n] - prob.energy_cap[n]) / prob.energy_cap[n];
      r.budget_residual = std::max(r.budget_residual, rel);
      if (rel > opt.tol) ok = false;
      if (r.duals.mu1[n] > 0.0 && std::abs(rel) > opt.tol) ok = false;
    }
    if (ok) {
      r.converged = true;
      break;
    }

    const double eta = 1.0 / std::sqrt(1.0 + it / 50.0);
    lambda *= std::exp(eta * (prob.bits - delivered) * kLn2 / (B * T));
    for (std::size_t n = 0; n < N; ++n) {
      const double k = prob.price[n] + r.duals.mu1[n];
      const double span = std::max(active[n], 1.0) * dt;
      r.duals.mu1[n] = std::max(
          0.0, r.duals.mu1[n] + eta * (usage[n] - prob.energy_cap[n]) * k * k / (lambda * span));
    }
  }

  r.cost = 0.0;
  for (std::size_t n = 0; n < N; ++n) {
    double e = 0.0;
    for (std::size_t m = 0; m < M; ++m) e += prob.base[n][m] + r.extra[n][m];
    r.cost += prob.price[n] * e * dt;
  }
  return r;
}

}  // namespace fograil::dynamic
