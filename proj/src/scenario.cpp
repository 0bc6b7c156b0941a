#include "fograil/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "fograil/errors.hpp"

namespace fograil {

double ScenarioConfig::horizon() const {
  if (horizon_s) return *horizon_s;
  const double x = rrh_x_m.empty() ? 0.0 : rrh_x_m.back();
  if (!(x > 0.0)) {
    throw DomainError("horizon_s must be given when the last RRH is not ahead of the origin");
  }
  return x / speed_mps();
}

double ScenarioConfig::snr_floor() const {
  return std::exp2(1.0 / (bandwidth_hz * tau_max_s)) - 1.0;
}

double ScenarioConfig::backhaul_rate_at(std::size_t n, double t) const {
  if (backhaul_table) {
    const auto& tab = *backhaul_table;
    const auto& ts = tab.times_s;
    const auto& rs = tab.rates.at(n);
    if (t <= ts.front()) return rs.front();
    if (t >= ts.back()) return rs.back();
    const auto it = std::upper_bound(ts.begin(), ts.end(), t);
    const auto k = static_cast<std::size_t>(it - ts.begin());
    const double w = (t - ts[k - 1]) / (ts[k] - ts[k - 1]);
    return rs[k - 1] + w * (rs[k] - rs[k - 1]);
  }
  if (backhaul_rate) return *backhaul_rate;
  return std::max(1.0 / tau_max_s, content_size / horizon());
}

kernels::Geometry ScenarioConfig::geometry() const {
  return {speed_mps(), road_offset_m, height_m, alpha, gain, sigma2};
}

void ScenarioConfig::validate() const {
  auto pos = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw DomainError(std::string(name) + " must be positive and finite");
    }
  };
  pos(height_m, "height_m");
  pos(spacing_m, "spacing_m");
  pos(road_offset_m, "road_offset_m");
  pos(alpha, "alpha");
  pos(gain, "gain");
  pos(speed_kmh, "speed_kmh");
  pos(sigma2, "sigma2");
  pos(content_size, "content_size");
  pos(bandwidth_hz, "bandwidth_hz");
  pos(tau_max_s, "tau_max_s");
  pos(theta, "theta");
  pos(horizon(), "horizon_s");
  pos(mm_tol, "mm_tol");
  if (!(beta >= 0.0)) throw DomainError("beta must be nonnegative");
  if (!(zipf_eta >= 0.0)) throw DomainError("zipf_eta must be nonnegative");
  if (rrh_x_m.empty()) throw DomainError("rrh_x_m must list at least one RRH");
  if (p_avg.size() != num_rrh()) throw DomainError("p_avg needs one entry per RRH");
  if (storage_size.size() != num_rrh()) {
    throw DomainError("storage_size needs one entry per RRH");
  }
  for (double p : p_avg) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw DomainError("p_avg must be >= 0");
  }
  for (double f : storage_size) {
    if (!(f >= 0.0)) throw DomainError("storage_size must be >= 0");
  }
  if (num_contents == 0) throw DomainError("num_contents must be >= 1");
  if (requested_content < 1 || requested_content > num_contents) {
    throw DomainError("requested_content must be in 1..num_contents");
  }
  if (grid_points < 2) throw DomainError("grid_points must be >= 2");
  if (mm_max_iter < 1) throw DomainError("mm_max_iter must be >= 1");
  const double r_min = 1.0 / tau_max_s;
  if (backhaul_table) {
    const auto& tab = *backhaul_table;
    if (tab.times_s.empty() || tab.rates.size() != num_rrh()) {
      throw DomainError("backhaul_rate table needs knots and one rate row per RRH");
    }
    for (std::size_t k = 1; k < tab.times_s.size(); ++k) {
      if (!(tab.times_s[k] > tab.times_s[k - 1])) {
        throw DomainError("backhaul_rate times must increase");
      }
    }
    for (const auto& row : tab.rates) {
      if (row.size() != tab.times_s.size()) {
        throw DomainError("backhaul_rate row length differs from knot count");
      }
      // Piecewise linear, so the knots carry the minimum.
      for (double r : row) {
        if (r < r_min * (1.0 - 1e-12)) {
          throw DomainError("backhaul rate below 1/tau_max");
        }
      }
    }
  } else if (backhaul_rate && *backhaul_rate < r_min * (1.0 - 1e-12)) {
    throw DomainError("backhaul rate below 1/tau_max");
  }
}

namespace {

std::vector<double> scalar_or_list(const nlohmann::json& v, std::size_t n,
                                   const char* name) {
  if (v.is_number()) return std::vector<double>(n, v.get<double>());
  if (v.is_array()) return v.get<std::vector<double>>();
  throw DomainError(std::string(name) + " must be a number or an array");
}

}  // namespace

void to_json(nlohmann::json& j, const ScenarioConfig& c) {
  j = nlohmann::json{{"height_m", c.height_m},
                     {"spacing_m", c.spacing_m},
                     {"road_offset_m", c.road_offset_m},
                     {"rrh_x_m", c.rrh_x_m},
                     {"alpha", c.alpha},
                     {"gain", c.gain},
                     {"speed_kmh", c.speed_kmh},
                     {"sigma2", c.sigma2},
                     {"beta", c.beta},
                     {"num_contents", c.num_contents},
                     {"content_size", c.content_size},
                     {"storage_size", c.storage_size},
                     {"zipf_eta", c.zipf_eta},
                     {"bandwidth_hz", c.bandwidth_hz},
                     {"tau_max_s", c.tau_max_s},
                     {"p_avg", c.p_avg},
                     {"theta", c.theta},
                     {"requested_content", c.requested_content},
                     {"grid_points", c.grid_points},
                     {"mm_tol", c.mm_tol},
                     {"mm_max_iter", c.mm_max_iter}};
  if (c.horizon_s) j["horizon_s"] = *c.horizon_s;
  if (c.backhaul_table) {
    j["backhaul_rate"] = {{"times_s", c.backhaul_table->times_s},
                          {"rates", c.backhaul_table->rates}};
  } else if (c.backhaul_rate) {
    j["backhaul_rate"] = *c.backhaul_rate;
  }
}

void from_json(const nlohmann::json& j, ScenarioConfig& c) {
  static const std::set<std::string> known{
      "height_m",  "spacing_m",    "road_offset_m", "rrh_x_m",      "alpha",
      "gain",      "speed_kmh",    "sigma2",        "beta",         "num_contents",
      "content_size", "storage_size", "zipf_eta",   "bandwidth_hz", "tau_max_s",
      "horizon_s", "p_avg",        "theta",         "backhaul_rate", "requested_content",
      "grid_points", "mm_tol",     "mm_max_iter"};
  if (!j.is_object()) throw DomainError("config must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) throw DomainError("unknown config key: " + key);
  }
  auto num = [&](const char* key, double& out) {
    if (j.contains(key)) out = j.at(key).get<double>();
  };
  num("height_m", c.height_m);
  num("spacing_m", c.spacing_m);
  num("road_offset_m", c.road_offset_m);
  if (j.contains("rrh_x_m")) c.rrh_x_m = j.at("rrh_x_m").get<std::vector<double>>();
  num("alpha", c.alpha);
  num("gain", c.gain);
  num("speed_kmh", c.speed_kmh);
  num("sigma2", c.sigma2);
  num("beta", c.beta);
  if (j.contains("num_contents")) c.num_contents = j.at("num_contents").get<std::size_t>();
  num("content_size", c.content_size);
  const std::size_t n = c.rrh_x_m.size();
  if (j.contains("storage_size")) {
    c.storage_size = scalar_or_list(j.at("storage_size"), n, "storage_size");
  } else {
    c.storage_size.resize(n, c.storage_size.empty() ? 0.0 : c.storage_size.front());
  }
  num("zipf_eta", c.zipf_eta);
  num("bandwidth_hz", c.bandwidth_hz);
  num("tau_max_s", c.tau_max_s);
  if (j.contains("horizon_s")) c.horizon_s = j.at("horizon_s").get<double>();
  if (j.contains("p_avg")) {
    c.p_avg = scalar_or_list(j.at("p_avg"), n, "p_avg");
  } else {
    c.p_avg.resize(n, c.p_avg.empty() ? 0.0 : c.p_avg.front());
  }
  num("theta", c.theta);
  if (j.contains("backhaul_rate")) {
    const auto& b = j.at("backhaul_rate");
    if (b.is_number()) {
      c.backhaul_rate = b.get<double>();
      c.backhaul_table.reset();
    } else if (b.is_object()) {
      BackhaulTable tab;
      tab.times_s = b.at("times_s").get<std::vector<double>>();
      tab.rates = b.at("rates").get<std::vector<std::vector<double>>>();
      c.backhaul_table = std::move(tab);
      c.backhaul_rate.reset();
    } else {
      throw DomainError("backhaul_rate must be a number or {times_s, rates}");
    }
  }
  if (j.contains("requested_content")) {
    c.requested_content = j.at("requested_content").get<std::size_t>();
  }
  if (j.contains("grid_points")) c.grid_points = j.at("grid_points").get<std::size_t>();
  num("mm_tol", c.mm_tol);
  if (j.contains("mm_max_iter")) c.mm_max_iter = j.at("mm_max_iter").get<int>();
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("config " + path + ": " + e.what());
  }
  ScenarioConfig cfg;
  try {
    cfg = j.get<ScenarioConfig>();
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("config " + path + ": " + e.what());
  }
  cfg.validate();
  return cfg;
}

numerics::TimeGrid make_grid(const ScenarioConfig& cfg) {
  return numerics::TimeGrid(0.0, cfg.horizon(), cfg.grid_points);
}

double distance(const ScenarioConfig& cfg, std::size_t n, double t) {
  const double T = cfg.horizon();
  if (n >= cfg.num_rrh()) throw DomainError("distance: RRH index out of range");
  if (!(t > 0.0) || t > T * (1.0 + 1e-12)) {
    throw DomainError("distance: t must lie in (0, T]");
  }
  const double dx = cfg.speed_mps() * t - cfg.rrh_x_m[n];
  return std::sqrt(dx * dx + cfg.road_offset_m * cfg.road_offset_m +
                   cfg.height_m * cfg.height_m);
}

double kappa(const ScenarioConfig& cfg, std::size_t n, double t) {
  return cfg.gain / (std::pow(distance(cfg, n, t), cfg.alpha) * cfg.sigma2);
}

double rate(const ScenarioConfig& cfg, std::span<const double> powers, double t) {
  if (powers.size() != cfg.num_rrh()) throw DomainError("rate: one power per RRH");
  double snr = 0.0;
  for (std::size_t n = 0; n < powers.size(); ++n) {
    if (powers[n] < 0.0) throw DomainError("rate: negative power");
    snr += kappa(cfg, n, t) * powers[n];
  }
  return cfg.bandwidth_hz * std::log2(1.0 + snr);
}

std::vector<std::vector<double>> gain_table(const ScenarioConfig& cfg,
                                            const numerics::TimeGrid& grid,
                                            kernels::Backend backend) {
  std::vector<std::vector<double>> out(cfg.num_rrh(), std::vector<double>(grid.size()));
  const auto geo = cfg.geometry();
  for (std::size_t n = 0; n < cfg.num_rrh(); ++n) {
    kernels::channel_gains(geo, cfg.rrh_x_m[n], grid.samples(), out[n], backend);
  }
  return out;
}

std::vector<double> rate_samples(const ScenarioConfig& cfg, const PowerTrajectory& p) {
  const auto gains = gain_table(cfg, p.grid);
  std::vector<double> c(p.grid.size());
  for (std::size_t m = 0; m < c.size(); ++m) {
    double snr = 0.0;
    for (std::size_t n = 0; n < p.num_rrh(); ++n) snr += gains[n][m] * p.power[n][m];
    c[m] = cfg.bandwidth_hz * std::log2(1.0 + snr);
  }
  return c;
}

double backhaul_integral(const ScenarioConfig& cfg, std::size_t n,
                         const numerics::TimeGrid& grid) {
  if (!cfg.backhaul_table) return cfg.backhaul_rate_at(n, grid.t_end()) * grid.horizon();
  return numerics::integrate([&](double t) { return cfg.backhaul_rate_at(n, t); }, grid);
}

double cost_transmit(const PowerTrajectory& p) {
  double total = 0.0;
  for (std::size_t n = 0; n < p.num_rrh(); ++n) total += p.energy(n);
  return total;
}

double cost_backhaul(const PowerTrajectory& p, const CachePlacement& placement,
                     std::size_t content, const ScenarioConfig& cfg) {
  if (content >= placement.num_contents()) {
    throw DomainError("cost_backhaul: content index out of range");
  }
  double total = 0.0;
  for (std::size_t n = 0; n < p.num_rrh(); ++n) {
    if (p.energy(n) <= kActivityEpsilon || placement.cached(n, content)) continue;
    total += cfg.beta * backhaul_integral(cfg, n, p.grid);
  }
  return total;
}

CostBreakdown total_cost(const PowerTrajectory& p, const CachePlacement& placement,
                         std::size_t content, const ScenarioConfig& cfg) {
  CostBreakdown c;
  c.transmit = cost_transmit(p);
  c.backhaul = cost_backhaul(p, placement, content, cfg);
  c.total = c.transmit + c.backhaul;
  return c;
}

}  // namespace fograil
