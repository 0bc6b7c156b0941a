#include <algorithm>
#include <cmath>
#include <sstream>

#include "fograil/dynamic_solver.hpp"
#include "fograil/errors.hpp"

namespace fograil::dynamic {

namespace {

// suffix[j] = step * sum_{m >= j} v[m]; suffix[M] = 0.
std::vector<double> suffix_sums(const std::vector<double>& v, double step) {
  std::vector<double> s(v.size() + 1, 0.0);
  double acc = 0.0;
  for (std::size_t m = v.size(); m-- > 0;) {
    acc += v[m];
    s[m] = acc * step;
  }
  return s;
}

// Index nearest to x when x is within 1e-7 of an integer.
double snap(double x) {
  const double r = std::round(x);
  return std::abs(x - r) < 1e-7 ? r : x;
}

std::size_t clamp_index(double x, std::size_t hi) {
  if (!(x > 0.0)) return 0;
  return std::min(hi, static_cast<std::size_t>(x));
}

bool nonincreasing(const std::vector<double>& v, std::size_t& bad) {
  double scale = 0.0;
  for (double x : v) scale = std::max(scale, std::abs(x));
  const double tol = 1e-12 * scale;
  for (std::size_t m = 1; m < v.size(); ++m) {
    if (v[m] > v[m - 1] + tol) {
      bad = m;
      return false;
    }
  }
  return true;
}

}  // namespace

ReducedCoefficients make_reduced(numerics::TimeGrid grid, std::vector<double> a0,
                                 std::vector<double> a2, double k1, double k2,
                                 double p1_avg, double p2_avg) {
  const std::size_t M = grid.size();
  if (a0.size() != M || a2.size() != M) throw DomainError("make_reduced: size mismatch");
  ReducedCoefficients rc{std::move(grid), std::move(a0), std::move(a2), {}, {}, k1, k2,
                         p1_avg, p2_avg, 0.0, 0.0};
  rc.a3.resize(M);
  rc.price.resize(M);
  for (std::size_t m = 0; m < M; ++m) {
    if (!(rc.a0[m] > 0.0) || !(rc.a2[m] > 0.0)) {
      throw DomainError("make_reduced: a0 and a2 must be positive");
    }
    rc.a3[m] = rc.a0[m] / rc.a2[m];
    rc.price[m] = k2 - k1 * rc.a2[m];
  }
  rc.A = suffix_sums(rc.a0, rc.grid.step())[0];
  rc.D = rc.A - rc.budget1();
  return rc;
}

ReducedCoefficients reduce(const ScenarioConfig& cfg, const SurrogateWeights& w,
                           const numerics::TimeGrid& grid) {
  if (cfg.num_rrh() != 2 || w.num_rrh() != 2) {
    throw DomainError("reduce: the closed form covers exactly two RRHs");
  }
  const auto gains = gain_table(cfg, grid);
  const double s = cfg.snr_floor();
  std::vector<double> a0(grid.size()), a2(grid.size());
  for (std::size_t m = 0; m < grid.size(); ++m) {
    a0[m] = s / gains[0][m];
    a2[m] = gains[1][m] / gains[0][m];
  }
  return make_reduced(grid, std::move(a0), std::move(a2), w.price[0], w.price[1],
                      cfg.p_avg[0], cfg.p_avg[1]);
}

MonotonicityReport verify_monotonicity(const ReducedCoefficients& rc) {
  MonotonicityReport r;
  std::size_t bad = 0;
  if (!nonincreasing(rc.price, bad)) {
    r.price_nonincreasing = false;
    r.price_violation = rc.grid[bad];
  }
  std::vector<double> neg(rc.a2);
  for (double& v : neg) v = -v;
  if (!nonincreasing(neg, bad)) {
    r.a2_nondecreasing = false;
    r.a2_violation = rc.grid[bad];
  }
  if (!nonincreasing(rc.a3, bad)) {
    r.a3_nonincreasing = false;
    r.a3_violation = rc.grid[bad];
  }
  return r;
}

MonotonicityReport verify_monotonicity(const ScenarioConfig& cfg, const SurrogateWeights& w,
                                       const numerics::TimeGrid& grid) {
  return verify_monotonicity(reduce(cfg, w, grid));
}

CriticalTimes critical_times(const ReducedCoefficients& rc) {
  CriticalTimes ct;
  const auto& g = rc.grid;
  const std::size_t M = g.size();
  const double dt = g.step();

  ct.j_price = M;
  for (std::size_t m = 0; m < M; ++m) {
    if (rc.price[m] <= 0.0) {
      ct.j_price = m;
      break;
    }
  }
  if (ct.j_price == 0) {
    ct.price_sign = PriceSign::NonPositiveEverywhere;
  } else if (ct.j_price == M) {
    ct.price_sign = PriceSign::PositiveEverywhere;
  } else {
    const std::size_t j = ct.j_price;
    const double t0 = g[j - 1], t1 = g[j];
    const double p0 = rc.price[j - 1], p1 = rc.price[j];
    auto lin = [&](double t) { return p0 + (p1 - p0) * (t - t0) / (t1 - t0); };
    try {
      ct.t_price = numerics::bisect(lin, t0, t1, 1e-10);
    } catch (const BracketError& e) {
      ct.diagnostics.emplace_back(std::string("t_price: ") + e.what());
    }
  }

  const auto s0 = suffix_sums(rc.a0, dt);
  const auto s3 = suffix_sums(rc.a3, dt);

  if (rc.D > 0.0) {
    if (rc.D > s0[0]) {
      ct.deficit_unreachable = true;
      ct.diagnostics.emplace_back("deficit D exceeds the integral of a0");
    } else {
      double t = g.t_start();
      try {
        t = numerics::bisect(
            [&](double x) { return numerics::tail_integral(rc.a0, g, x) - rc.D; },
            g.t_start(), g.t_end(), 1e-10);
        ct.t_deficit = t;
      } catch (const BracketError& e) {
        ct.diagnostics.emplace_back(std::string("t_deficit: ") + e.what());
      }
      std::size_t j = clamp_index(std::floor(snap((t - g.t_start()) / dt)), M);
      while (j < M && s0[j + 1] >= rc.D) ++j;
      while (j > 0 && s0[j] < rc.D) --j;
      ct.j_deficit = j;
    }
  }

  const double budget = rc.budget2();
  if (s3[0] > budget) {
    double t = g.t_end();
    try {
      t = numerics::bisect(
          [&](double x) { return numerics::tail_integral(rc.a3, g, x) - budget; },
          g.t_start(), g.t_end(), 1e-10);
      ct.t_budget = t;
    } catch (const BracketError& e) {
      ct.diagnostics.emplace_back(std::string("t_budget: ") + e.what());
    }
    std::size_t j = clamp_index(std::ceil(snap((t - g.t_start()) / dt)), M);
    while (j > 0 && s3[j - 1] <= budget) --j;
    while (j < M && s3[j] > budget) ++j;
    ct.j_budget = j;
  }
  return ct;
}

Feasibility check_feasibility(const ReducedCoefficients& rc, const CriticalTimes& ct) {
  Feasibility f;
  if (ct.deficit_unreachable) {
    f.feasible = false;
    f.reason = "RRH 1 deficit exceeds what full RRH-2 saturation can cover";
    return f;
  }
  if (ct.j_budget && ct.j_deficit && *ct.j_budget > *ct.j_deficit) {
    std::ostringstream os;
    os << "RRH 2 budget exhausted before it covers RRH 1's deficit (t_budget ";
    if (ct.t_budget) os << *ct.t_budget;
    os << " > t_deficit ";
    if (ct.t_deficit) os << *ct.t_deficit;
    os << ")";
    f.feasible = false;
    f.reason = os.str();
  }
  (void)rc;
  return f;
}

Feasibility check_feasibility(const ReducedCoefficients& rc) {
  return check_feasibility(rc, critical_times(rc));
}

std::vector<double> recover_p1(const ReducedCoefficients& rc, const std::vector<double>& p2) {
  std::vector<double> p1(p2.size());
  for (std::size_t m = 0; m < p2.size(); ++m) {
    double v = rc.a0[m] - rc.a2[m] * p2[m];
    if (v < 0.0) {
      if (v < -1e-9) {
        throw NumericsError("recover_p1: RRH 1 power " + std::to_string(v) +
                            " is negative beyond round-off");
      }
      v = 0.0;
    }
    p1[m] = v;
  }
  return p1;
}

namespace {

Regime1Case classify(const ReducedCoefficients& rc) {
  const bool budget_limited = suffix_sums(rc.a3, rc.grid.step())[0] > rc.budget2();
  const bool deficit = rc.D > 0.0;
  if (budget_limited) return deficit ? Regime1Case::Case4 : Regime1Case::Case3;
  return deficit ? Regime1Case::Case2 : Regime1Case::Case1;
}

std::string case_label(Regime1Case c) {
  return "regime1/case" + std::to_string(static_cast<int>(c));
}

void fill_modes(PowerTrajectory& p, const std::vector<double>& a3) {
  const std::size_t M = p.grid.size();
  std::vector<SegmentMode> m1(M), m2(M);
  for (std::size_t m = 0; m < M; ++m) {
    const double x = p.power[1][m];
    if (x == 0.0) {
      m2[m] = SegmentMode::Zero;
    } else if (std::abs(x - a3[m]) <= 1e-9 * std::max(1.0, a3[m])) {
      m2[m] = SegmentMode::Saturated;
    } else {
      m2[m] = SegmentMode::ClosedForm;
    }
    m1[m] = p.power[0][m] == 0.0 ? SegmentMode::Zero : SegmentMode::ClosedForm;
  }
  p.segments = {segments_from_modes(m1), segments_from_modes(m2)};
}

}  // namespace

Regime1Solution solve_reduced(const ReducedCoefficients& rc) {
  auto ct = critical_times(rc);
  const auto feas = check_feasibility(rc, ct);
  if (!feas.feasible) throw InfeasibleError(feas.reason);
  const std::size_t M = rc.grid.size();
  const std::size_t lo = ct.j_budget.value_or(0);
  const std::size_t hi = ct.j_deficit.value_or(M);
  const std::size_t j = std::clamp(ct.j_price, lo, hi);

  PowerTrajectory p(rc.grid, 2);
  for (std::size_t m = j; m < M; ++m) p.power[1][m] = rc.a3[m];
  p.power[0] = recover_p1(rc, p.power[1]);
  // Saturated samples leave RRH 1 with nothing to send.
  for (std::size_t m = j; m < M; ++m) p.power[0][m] = 0.0;
  const auto which = classify(rc);
  p.label = case_label(which);
  fill_modes(p, rc.a3);
  return Regime1Solution{std::move(p), which, false, j, std::move(ct)};
}

numerics::LpResult reduced_lp(const ReducedCoefficients& rc) {
  const std::size_t M = rc.grid.size();
  const double dt = rc.grid.step();
  numerics::LinearProgram lp;
  lp.objective.resize(M);
  lp.lower.assign(M, 0.0);
  lp.upper = rc.a3;
  numerics::LinearRow budget{std::vector<double>(M, dt), numerics::RowSense::LessEqual,
                             rc.budget2()};
  numerics::LinearRow deficit{std::vector<double>(M), numerics::RowSense::GreaterEqual, rc.D};
  for (std::size_t m = 0; m < M; ++m) {
    lp.objective[m] = rc.price[m] * dt;
    deficit.coeffs[m] = rc.a2[m] * dt;
  }
  lp.rows = {std::move(budget), std::move(deficit)};
  return numerics::solve_lp(lp);
}

Regime1Solution solve_regime1_detailed(const ScenarioConfig& cfg, const SurrogateWeights& w,
                                       const numerics::TimeGrid& grid) {
  const auto rc = reduce(cfg, w, grid);
  if (verify_monotonicity(rc).all()) return solve_reduced(rc);

  auto lp = reduced_lp(rc);
  if (lp.status != numerics::LpStatus::Optimal) {
    throw InfeasibleError("no RRH-2 profile meets both budgets on the grid");
  }
  PowerTrajectory p(grid, 2);
  p.power[1] = lp.values;
  p.power[0] = recover_p1(rc, p.power[1]);
  const auto which = classify(rc);
  p.label = "regime1/lp";
  fill_modes(p, rc.a3);
  return Regime1Solution{std::move(p), which, true, 0, critical_times(rc)};
}

PowerTrajectory solve_regime1(const ScenarioConfig& cfg, const SurrogateWeights& w,
                              const numerics::TimeGrid& grid) {
  if (cfg.delay_bits() < cfg.content_size) {
    throw DomainError("solve_regime1: content does not fit in the delay-limited regime");
  }
  return solve_regime1_detailed(cfg, w, grid).trajectory;
}

PowerTrajectory solve_single_rrh(const ScenarioConfig& cfg, const SurrogateWeights& w,
                                 const numerics::TimeGrid& grid) {
  if (cfg.num_rrh() != 1) throw DomainError("solve_single_rrh: needs exactly one RRH");
  (void)w;
  const auto gains = gain_table(cfg, grid);
  const double s = cfg.snr_floor();
  PowerTrajectory p(grid, 1);
  for (std::size_t m = 0; m < grid.size(); ++m) p.power[0][m] = s / gains[0][m];
  const double cap = grid.horizon() * cfg.p_avg[0];
  if (p.energy(0) > cap * (1.0 + 1e-12)) {
    throw InfeasibleError("single RRH needs more than its average power budget");
  }
  p.label = "regime1/single";
  p.segments = {{Segment{0, grid.size() - 1, SegmentMode::ClosedForm}}};
  return p;
}

double inner_cost(const std::vector<double>& price, const PowerTrajectory& p) {
  double c = 0.0;
  for (std::size_t n = 0; n < p.num_rrh(); ++n) c += price[n] * p.energy(n);
  return c;
}

PowerTrajectory solve_inner(const ScenarioConfig& cfg, const SurrogateWeights& w,
                            const numerics::TimeGrid& grid) {
  if (cfg.delay_bits() >= cfg.content_size) {
    if (cfg.num_rrh() == 1) return solve_single_rrh(cfg, w, grid);
    if (cfg.num_rrh() == 2) return solve_regime1(cfg, w, grid);
  }
  return solve_regime2(cfg, w, grid).trajectory;
}

}  // namespace fograil::dynamic
