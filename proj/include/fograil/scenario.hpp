#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fograil/caching.hpp"
#include "fograil/kernels.hpp"
#include "fograil/numerics.hpp"
#include "fograil/trajectory.hpp"
#include "json.hpp"

namespace fograil {

/// Piecewise-linear backhaul rate per RRH, held flat outside the knots.
struct BackhaulTable {
  std::vector<double> times_s;
  std::vector<std::vector<double>> rates;  // rates[n][k]
};

struct ScenarioConfig {
  double height_m = 20.0;
  double spacing_m = 1000.0;
  double road_offset_m = 100.0;
  std::vector<double> rrh_x_m{-200.0, 800.0};
  double alpha = 0.8;
  double gain = 2.0;
  double speed_kmh = 200.0;
  double sigma2 = 1.0;
  double beta = 2.8;
  std::size_t num_contents = 15;
  double content_size = 1.0;  // Q, bits
  std::vector<double> storage_size{5.0, 5.0};
  double zipf_eta = 1.0;
  double bandwidth_hz = 5.0;
  double tau_max_s = 1.0;
  std::optional<double> horizon_s;  // default: last RRH abscissa / speed
  std::vector<double> p_avg{10.0, 10.0};
  double theta = 0.01;
  std::optional<double> backhaul_rate;  // constant; default max(1/tau, Q/T)
  std::optional<BackhaulTable> backhaul_table;
  std::size_t requested_content = 6;  // 1-based
  std::size_t grid_points = 2000;
  double mm_tol = 1e-6;
  int mm_max_iter = 20;

  std::size_t num_rrh() const { return rrh_x_m.size(); }
  double speed_mps() const { return speed_kmh / 3.6; }
  double horizon() const;
  /// SNR that delivers 1/tau_max bits per second: 2^(1/(B tau)) - 1.
  double snr_floor() const;
  /// Bits deliverable at the delay floor alone, T / tau_max.
  double delay_bits() const { return horizon() / tau_max_s; }
  double backhaul_rate_at(std::size_t n, double t) const;
  kernels::Geometry geometry() const;

  /// Throws DomainError on any violated invariant.
  void validate() const;
};

void to_json(nlohmann::json& j, const ScenarioConfig& cfg);
void from_json(const nlohmann::json& j, ScenarioConfig& cfg);
ScenarioConfig load_config(const std::string& path);

numerics::TimeGrid make_grid(const ScenarioConfig& cfg);

double distance(const ScenarioConfig& cfg, std::size_t n, double t);
double kappa(const ScenarioConfig& cfg, std::size_t n, double t);
/// B log2(1 + sum_n kappa_n(t) P_n).
double rate(const ScenarioConfig& cfg, std::span<const double> powers, double t);

/// kappa[n][m] on the grid samples.
std::vector<std::vector<double>> gain_table(
    const ScenarioConfig& cfg, const numerics::TimeGrid& grid,
    kernels::Backend backend = kernels::default_backend());

/// C(t_m) for a trajectory.
std::vector<double> rate_samples(const ScenarioConfig& cfg, const PowerTrajectory& p);

double backhaul_integral(const ScenarioConfig& cfg, std::size_t n,
                         const numerics::TimeGrid& grid);

/// Energy above which an RRH counts as active in the exact l0 count.
inline constexpr double kActivityEpsilon = 1e-9;

double cost_transmit(const PowerTrajectory& p);
/// content is 0-based.
double cost_backhaul(const PowerTrajectory& p, const CachePlacement& placement,
                     std::size_t content, const ScenarioConfig& cfg);

struct CostBreakdown {
  double transmit = 0.0;
  double backhaul = 0.0;
  double total = 0.0;
};

CostBreakdown total_cost(const PowerTrajectory& p, const CachePlacement& placement,
                         std::size_t content, const ScenarioConfig& cfg);

}  // namespace fograil
