#include "fograil/surrogate.hpp"

#include <cmath>

#include "fograil/errors.hpp"

namespace fograil {

double smoothed_l0(double x, double theta) {
  if (!(theta > 0.0)) throw DomainError("smoothed_l0: theta must be positive");
  if (x < 0.0) throw DomainError("smoothed_l0: x must be nonnegative");
  return std::log1p(x / theta) / std::log1p(1.0 / theta);
}

SurrogateWeights backhaul_weights(const ScenarioConfig& cfg, const CachePlacement& placement,
                                  std::size_t content, const numerics::TimeGrid& grid) {
  if (placement.num_rrh() != cfg.num_rrh()) {
    throw DomainError("placement RRH count differs from scenario");
  }
  if (content >= placement.num_contents()) throw DomainError("content index out of range");
  SurrogateWeights w;
  w.theta = cfg.theta;
  w.c_smooth = 1.0 / std::log1p(1.0 / cfg.theta);
  const std::size_t N = cfg.num_rrh();
  w.backhaul_weight.resize(N);
  for (std::size_t n = 0; n < N; ++n) {
    const double uncached = placement.cached(n, content) ? 0.0 : 1.0;
    w.backhaul_weight[n] =
        uncached == 0.0 ? 0.0
                        : w.c_smooth * cfg.beta * backhaul_integral(cfg, n, grid);
  }
  w.price.assign(N, 1.0);
  w.expansion.assign(N, 0.0);
  return expand_at(std::move(w), std::vector<double>(N, 0.0));
}

SurrogateWeights expand_at(SurrogateWeights w, const std::vector<double>& energies) {
  if (energies.size() != w.backhaul_weight.size()) {
    throw DomainError("expand_at: one energy per RRH");
  }
  w.expansion = energies;
  w.price.resize(energies.size());
  for (std::size_t n = 0; n < energies.size(); ++n) {
    if (energies[n] < 0.0) throw DomainError("expansion energy must be nonnegative");
    w.price[n] = 1.0 + w.backhaul_weight[n] / (w.theta + energies[n]);
  }
  return w;
}

SurrogateWeights weights(const ScenarioConfig& cfg, const CachePlacement& placement,
                         std::size_t content, const PowerTrajectory& p0) {
  std::vector<double> e(p0.num_rrh());
  for (std::size_t n = 0; n < e.size(); ++n) {
    for (double v : p0.power[n]) {
      if (v < 0.0) throw DomainError("expansion trajectory must be nonnegative");
    }
    e[n] = p0.energy(n);
  }
  return expand_at(backhaul_weights(cfg, placement, content, p0.grid), e);
}

double smoothed_cost(const std::vector<double>& energies, const SurrogateWeights& w) {
  double c = 0.0;
  for (std::size_t n = 0; n < energies.size(); ++n) {
    c += energies[n] + w.backhaul_weight[n] * std::log1p(energies[n] / w.theta);
  }
  return c;
}

double smoothed_cost(const PowerTrajectory& p, const SurrogateWeights& w) {
  std::vector<double> e(p.num_rrh());
  for (std::size_t n = 0; n < e.size(); ++n) e[n] = p.energy(n);
  return smoothed_cost(e, w);
}

double surrogate_constant(const SurrogateWeights& w) {
  double c = 0.0;
  for (std::size_t n = 0; n < w.num_rrh(); ++n) {
    const double e0 = w.expansion[n];
    c += w.backhaul_weight[n] * (std::log1p(e0 / w.theta) - e0 / (w.theta + e0));
  }
  return c;
}

double surrogate_cost(const PowerTrajectory& p, const SurrogateWeights& w) {
  double c = surrogate_constant(w);
  for (std::size_t n = 0; n < p.num_rrh(); ++n) c += w.price[n] * p.energy(n);
  return c;
}

void to_json(nlohmann::json& j, const SolveReport& r) {
  j = nlohmann::json{{"status", r.status},
                     {"solver", r.solver},
                     {"label", r.label},
                     {"regime", r.regime},
                     {"cost_total", r.cost_total},
                     {"cost_transmit", r.cost_transmit},
                     {"cost_backhaul", r.cost_backhaul},
                     {"cost_smoothed", r.cost_smoothed},
                     {"iterations", r.iterations},
                     {"converged", r.converged},
                     {"costs", r.costs}};
  if (!r.reason.empty()) j["reason"] = r.reason;
}

MmResult mm_solve(const ScenarioConfig& cfg, const CachePlacement& placement,
                  std::size_t content, const numerics::TimeGrid& grid,
                  const InnerSolver& inner) {
  const auto base = backhaul_weights(cfg, placement, content, grid);
  std::vector<double> half(cfg.p_avg);
  for (double& v : half) v *= 0.5;
  auto p0 = PowerTrajectory::constant(grid, half);

  auto make = [&](const PowerTrajectory& x) {
    std::vector<double> e(x.num_rrh());
    for (std::size_t n = 0; n < e.size(); ++n) e[n] = x.energy(n);
    return expand_at(base, e);
  };
  SurrogateWeights last = make(p0);
  auto solve = [&](const SurrogateWeights& w) {
    last = w;
    return inner(w);
  };
  auto cost = [&](const PowerTrajectory& x) { return smoothed_cost(x, base); };
  auto prices = [](const SurrogateWeights& w) -> const std::vector<double>& { return w.price; };

  MmTrace trace;
  auto x = mm_loop(std::move(p0), make, solve, cost, prices, cfg.mm_tol, cfg.mm_max_iter,
                   trace);

  MmResult out{x, make(x), {}};
  out.weights = last;
  auto& r = out.report;
  const auto cb = total_cost(x, placement, content, cfg);
  r.cost_transmit = cb.transmit;
  r.cost_backhaul = cb.backhaul;
  r.cost_total = cb.total;
  r.cost_smoothed = cost(x);
  r.iterations = trace.iterations;
  r.converged = trace.converged;
  r.costs = trace.history;
  r.label = x.label;
  r.regime = cfg.delay_bits() >= cfg.content_size ? 1 : 2;
  r.status = trace.stalled ? "stalled" : (trace.converged ? "optimal" : "max_iter");
  return out;
}

}  // namespace fograil
