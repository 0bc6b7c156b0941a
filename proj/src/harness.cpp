#include "fograil/harness.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>

#include "fograil/dynamic_solver.hpp"
#include "fograil/errors.hpp"
#include "fograil/invariant_solver.hpp"

namespace fograil::harness {

std::string to_string(SolverKind k) { return k == SolverKind::Dynamic ? "dynamic" : "invariant"; }

SolverKind parse_solver(const std::string& s) {
  std::string low(s);
  std::transform(low.begin(), low.end(), low.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (low == "dynamic") return SolverKind::Dynamic;
  if (low == "invariant") return SolverKind::Invariant;
  throw DomainError("unknown solver: " + s);
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

CachePlacement make_placement(const ScenarioConfig& cfg, Strategy strategy, std::uint64_t seed) {
  const auto pop = zipf(cfg.num_contents, cfg.zipf_eta);
  switch (strategy) {
    case Strategy::PopC: return place_popc(pop, cfg.storage_size, cfg.content_size);
    case Strategy::RndC: return place_rndc(pop, cfg.storage_size, cfg.content_size, seed);
    case Strategy::NonC: return place_nonc(cfg.num_rrh(), cfg.num_contents);
  }
  throw DomainError("unknown strategy");
}

SolveOutput solve_with(const ScenarioConfig& cfg, const CachePlacement& placement,
                       std::size_t content, SolverKind solver) {
  cfg.validate();
  const auto grid = make_grid(cfg);
  if (solver == SolverKind::Dynamic) {
    auto res = mm_solve(cfg, placement, content, grid, [&](const SurrogateWeights& w) {
      return dynamic::solve_inner(cfg, w, grid);
    });
    return SolveOutput{std::move(res.trajectory), std::move(res.report), placement};
  }
  auto sol = invariant::mm_solve_invariant(cfg, placement, content, grid);
  return SolveOutput{invariant::to_trajectory(sol, grid), sol.report, placement};
}

SolveOutput run_solve(const ScenarioConfig& cfg, const SolveOptions& opt) {
  cfg.validate();
  const auto placement = make_placement(cfg, opt.strategy, opt.seed);
  return solve_with(cfg, placement, cfg.requested_content - 1, opt.solver);
}

void write_trajectory_csv(std::ostream& out, const ScenarioConfig& cfg, const PowerTrajectory& p) {
  const std::size_t N = p.num_rrh();
  const auto c = rate_samples(cfg, p);
  out << "t";
  for (std::size_t n = 0; n < N; ++n) out << ",P" << n + 1;
  out << ",C_t";
  for (std::size_t n = 0; n < N; ++n) out << ",segment_mode_" << n + 1;
  out << '\n';
  for (std::size_t m = 0; m < p.grid.size(); ++m) {
    out << format_number(p.grid[m]);
    for (std::size_t n = 0; n < N; ++n) out << ',' << format_number(p.power[n][m]);
    out << ',' << format_number(c[m]);
    for (std::size_t n = 0; n < N; ++n) out << ',' << to_string(p.mode_at(n, m));
    out << '\n';
  }
}

ExpectedCost expected_cost(const ScenarioConfig& cfg, const CachePlacement& placement,
                           SolverKind solver) {
  const auto pop = zipf(cfg.num_contents, cfg.zipf_eta);
  std::map<std::vector<std::uint8_t>, SolveReport> memo;
  ExpectedCost e;
  for (std::size_t l = 0; l < pop.size(); ++l) {
    std::vector<std::uint8_t> pattern(placement.num_rrh());
    for (std::size_t n = 0; n < pattern.size(); ++n) pattern[n] = placement.cached(n, l);
    auto it = memo.find(pattern);
    if (it == memo.end()) {
      SolveReport r;
      try {
        r = solve_with(cfg, placement, l, solver).report;
      } catch (const InfeasibleError& ex) {
        r.status = "infeasible";
        r.reason = ex.what();
      }
      it = memo.emplace(pattern, r).first;
    }
    const auto& r = it->second;
    if (r.status == "infeasible") {
      e.feasible = false;
      continue;
    }
    e.cost_total += pop.p[l] * r.cost_total;
    e.cost_transmit += pop.p[l] * r.cost_transmit;
    e.cost_backhaul += pop.p[l] * r.cost_backhaul;
    e.iterations += pop.p[l] * r.iterations;
  }
  e.solves = memo.size();
  if (!e.feasible) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    e.cost_total = e.cost_transmit = e.cost_backhaul = e.iterations = nan;
  }
  return e;
}

std::vector<double> default_values(const std::string& param) {
  if (param == "tau_max") {
    std::vector<double> v(8);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = 0.5 + 1.5 * static_cast<double>(i) / 7.0;
    return v;
  }
  if (param == "eta") return {0.5, 1.0, 1.5, 2.0};
  if (param == "speed_kmh") return {100, 150, 200, 250, 300, 350};
  if (param == "snr_db") return {6, 8, 10, 12, 14};
  if (param == "strategy") return {0.0};
  throw DomainError("unknown sweep parameter: " + param);
}

ScenarioConfig sweep_point(const ScenarioConfig& base, const SweepSpec& spec, double value) {
  ScenarioConfig cfg = base;
  if (spec.param == "tau_max") {
    cfg.tau_max_s = value;
  } else if (spec.param == "eta") {
    cfg.zipf_eta = value;
  } else if (spec.param == "speed_kmh") {
    cfg.speed_kmh = value;
    if (!base.horizon_s) {
      const double vmax = *std::max_element(spec.values.begin(), spec.values.end()) / 3.6;
      double mid = 0.0;
      for (double x : base.rrh_x_m) mid += x;
      mid /= static_cast<double>(base.rrh_x_m.size());
      cfg.horizon_s = mid / vmax;
    }
  } else if (spec.param == "snr_db") {
    for (double& p : cfg.p_avg) p = std::pow(10.0, value / 10.0) * cfg.sigma2;
  } else if (spec.param != "strategy") {
    throw DomainError("unknown sweep parameter: " + spec.param);
  }
  return cfg;
}

namespace {

struct Job {
  std::size_t value_index;
  Strategy strategy;
  SolverKind solver;
};

SweepRow run_job(const ScenarioConfig& base, const SweepSpec& spec, const Job& job) {
  const double value = spec.values[job.value_index];
  const auto cfg = sweep_point(base, spec, value);
  SweepRow row{value, job.strategy, job.solver};
  const std::size_t trials = job.strategy == Strategy::RndC ? spec.rndc_trials : 1;
  std::vector<ExpectedCost> runs;
  for (std::size_t k = 0; k < trials; ++k) {
    // Same seeds at every sweep value, so RndC noise is common across the sweep.
    const auto pl = make_placement(cfg, job.strategy, spec.seed + k);
    runs.push_back(expected_cost(cfg, pl, job.solver));
  }
  double tot = 0.0, tx = 0.0, bh = 0.0, it = 0.0;
  for (const auto& r : runs) {
    if (!r.feasible) row.feasible = false;
    tot += r.cost_total;
    tx += r.cost_transmit;
    bh += r.cost_backhaul;
    it += r.iterations;
  }
  const double n = static_cast<double>(runs.size());
  row.cost_total = tot / n;
  row.cost_transmit = tx / n;
  row.cost_backhaul = bh / n;
  row.iterations = it / n;
  if (runs.size() > 1) {
    double ss = 0.0;
    for (const auto& r : runs) ss += (r.cost_total - row.cost_total) * (r.cost_total - row.cost_total);
    row.cost_total_std = std::sqrt(ss / (n - 1.0));
  }
  return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const ScenarioConfig& base, const SweepSpec& spec) {
  if (spec.values.empty()) throw DomainError("sweep needs at least one value");
  if (spec.rndc_trials < 1) throw DomainError("rndc_trials must be >= 1");
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < spec.values.size(); ++i) {
    for (auto st : spec.strategies) {
      for (auto so : spec.solvers) jobs.push_back({i, st, so});
    }
  }
  std::vector<SweepRow> rows(jobs.size());
  std::vector<std::string> errors(jobs.size());
  const auto n_jobs = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n_jobs; ++i) {
    try {
      rows[i] = run_job(base, spec, jobs[i]);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw SolverError("sweep point failed: " + e);
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::string& param,
                     const std::vector<SweepRow>& rows) {
  out << param
      << ",strategy,solver,cost_total,cost_transmit,cost_backhaul,iterations,cost_total_std\n";
  for (const auto& r : rows) {
    out << format_number(r.value) << ',' << to_string(r.strategy) << ',' << to_string(r.solver)
        << ',' << format_number(r.cost_total) << ',' << format_number(r.cost_transmit) << ','
        << format_number(r.cost_backhaul) << ',' << format_number(r.iterations) << ','
        << format_number(r.cost_total_std) << '\n';
  }
}

std::vector<ConvergenceRow> run_convergence(const ScenarioConfig& cfg, const SolveOptions& opt) {
  const auto out = run_solve(cfg, opt);
  std::vector<ConvergenceRow> rows;
  for (std::size_t i = 0; i < out.report.costs.size(); ++i) {
    rows.push_back({static_cast<int>(i + 1), out.report.costs[i]});
  }
  return rows;
}

void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows) {
  out << "iteration,cost\n";
  for (const auto& r : rows) out << r.iteration << ',' << format_number(r.cost) << '\n';
}

std::vector<TradeoffRow> run_tradeoff(const ScenarioConfig& cfg, const std::vector<double>& taus,
                                      const std::vector<double>& sizes, const SolveOptions& opt) {
  cfg.validate();
  const auto placement = make_placement(cfg, opt.strategy, opt.seed);
  std::vector<TradeoffRow> rows(taus.size() * sizes.size());
  std::vector<std::string> errors(rows.size());
  const auto n = static_cast<std::ptrdiff_t>(rows.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    auto& row = rows[i];
    ScenarioConfig c = cfg;
    c.tau_max_s = taus[static_cast<std::size_t>(i) / sizes.size()];
    c.content_size = sizes[static_cast<std::size_t>(i) % sizes.size()];
    row.tau_max = c.tau_max_s;
    row.content_size = c.content_size;
    try {
      row.regime = c.delay_bits() >= c.content_size ? 1 : 2;
      const auto out = solve_with(c, placement, c.requested_content - 1, opt.solver);
      row.cost_total = out.report.cost_total;
      row.cost_transmit = out.report.cost_transmit;
      row.cost_backhaul = out.report.cost_backhaul;
      row.iterations = out.report.iterations;
    } catch (const InfeasibleError&) {
      row.feasible = false;
      row.cost_total = row.cost_transmit = row.cost_backhaul =
          std::numeric_limits<double>::quiet_NaN();
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw SolverError("tradeoff point failed: " + e);
  }
  return rows;
}

void write_tradeoff_csv(std::ostream& out, const std::vector<TradeoffRow>& rows) {
  out << "tau_max,content_size,regime,feasible,cost_total,cost_transmit,cost_backhaul,iterations\n";
  for (const auto& r : rows) {
    out << format_number(r.tau_max) << ',' << format_number(r.content_size) << ',' << r.regime
        << ',' << (r.feasible ? 1 : 0) << ',' << format_number(r.cost_total) << ','
        << format_number(r.cost_transmit) << ',' << format_number(r.cost_backhaul) << ','
        << r.iterations << '\n';
  }
}

}  // namespace fograil::harness
