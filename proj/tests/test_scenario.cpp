#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "fograil/errors.hpp"
#include "fograil/scenario.hpp"

using namespace fograil;

TEST_CASE("distance along the track") {
  ScenarioConfig cfg;
  CHECK(std::abs(distance(cfg, 0, 1e-12) - 224.4994) < 1e-4);
  const double t1 = 800.0 / cfg.speed_mps();
  CHECK(std::abs(distance(cfg, 1, t1) - 101.9804) < 1e-4);
  ScenarioConfig c2;
  c2.speed_kmh = 55.5556 * 3.6;
  c2.horizon_s = 14.4;
  CHECK(std::abs(distance(c2, 1, 14.4) - 101.98) < 0.01);
  CHECK_THROWS_AS(distance(cfg, 0, 0.0), DomainError);
  CHECK_THROWS_AS(distance(cfg, 0, cfg.horizon() + 1.0), DomainError);
}

TEST_CASE("distance symmetric and convex") {
  ScenarioConfig cfg;
  cfg.horizon_s = 20.0;
  const double tc = 800.0 / cfg.speed_mps();
  for (double dt : {0.5, 1.3, 4.0}) {
    CHECK(distance(cfg, 1, tc - dt) == doctest::Approx(distance(cfg, 1, tc + dt)).epsilon(1e-12));
  }
  const auto g = make_grid(cfg);
  const double h = g.step();
  for (std::size_t m = 1; m + 1 < g.size(); ++m) {
    const double d2 = distance(cfg, 1, g[m] - h) - 2 * distance(cfg, 1, g[m]) + distance(cfg, 1, g[m] + h);
    CHECK(d2 > 0.0);
  }
}

TEST_CASE("kappa") {
  ScenarioConfig cfg;
  const double t1 = 800.0 / cfg.speed_mps();
  CHECK(std::abs(kappa(cfg, 1, t1) - 0.04946) < 1e-4);
  ScenarioConfig flat = cfg;
  flat.alpha = 1e-300;
  CHECK(kappa(flat, 0, 3.0) == doctest::Approx(2.0));
  ScenarioConfig noisy = cfg;
  noisy.sigma2 = 2.0;
  CHECK(kappa(noisy, 0, 3.0) == doctest::Approx(kappa(cfg, 0, 3.0) / 2.0));
}

TEST_CASE("rate") {
  ScenarioConfig cfg;
  cfg.bandwidth_hz = 1.0;
  const double t = 5.0;
  const std::vector<double> zero{0.0, 0.0};
  CHECK(rate(cfg, zero, t) == 0.0);
  std::vector<double> p{1.0 / kappa(cfg, 0, t), 0.0};
  CHECK(rate(cfg, p, t) == doctest::Approx(1.0));
  cfg.bandwidth_hz = 2.0;
  p = {3.0 / kappa(cfg, 0, t), 0.0};
  CHECK(rate(cfg, p, t) == doctest::Approx(4.0));
  p = {-1.0, 0.0};
  CHECK_THROWS_AS(rate(cfg, p, t), DomainError);
  // Increasing and concave in each power.
  const double h = 0.1;
  for (double x : {0.5, 2.0, 8.0}) {
    const std::vector<double> a{x - h, 1.0}, b{x, 1.0}, c{x + h, 1.0};
    CHECK(rate(cfg, c, t) > rate(cfg, b, t));
    CHECK(rate(cfg, a, t) - 2 * rate(cfg, b, t) + rate(cfg, c, t) <= 0.0);
  }
}

TEST_CASE("costs") {
  ScenarioConfig cfg;
  cfg.horizon_s = 18.0;
  const auto g = make_grid(cfg);
  PowerTrajectory p(g, 2);
  const auto pl = place_nonc(2, 15);
  CHECK(cost_transmit(p) == 0.0);
  CHECK(cost_backhaul(p, pl, 3, cfg) == 0.0);
  p.power[0].assign(g.size(), 1.0);
  CHECK(cost_transmit(p) == doctest::Approx(18.0));
  cfg.backhaul_rate = 2.0;
  CHECK(cost_backhaul(p, pl, 3, cfg) == doctest::Approx(cfg.beta * 2.0 * 18.0));
  const auto cached = place_popc(zipf(15, 1.0), cfg.storage_size, 1.0);
  CHECK(cost_backhaul(p, cached, 0, cfg) == 0.0);
  CHECK(cost_backhaul(p, pl, 0, cfg) >= cost_backhaul(p, cached, 0, cfg));
  const auto tot = total_cost(p, pl, 3, cfg);
  CHECK(tot.total == tot.transmit + tot.backhaul);
  for (std::size_t m = 0; m < g.size(); ++m) p.power[1][m] = std::sin(g[m]) + 1.5;
  double manual = 0.0;
  for (std::size_t m = 0; m < g.size(); ++m) manual += (p.power[0][m] + p.power[1][m]) * g.step();
  CHECK(cost_transmit(p) == doctest::Approx(manual).epsilon(1e-12));
}

TEST_CASE("config defaults and JSON round trip") {
  ScenarioConfig cfg;
  CHECK(cfg.horizon() == doctest::Approx(14.4));
  CHECK_NOTHROW(cfg.validate());
  CHECK(cfg.backhaul_rate_at(0, 1.0) == doctest::Approx(1.0));
  nlohmann::json j = cfg;
  const auto back = j.get<ScenarioConfig>();
  CHECK(nlohmann::json(back) == j);
  nlohmann::json bad = {{"heigth_m", 3}};
  CHECK_THROWS_AS(bad.get<ScenarioConfig>(), DomainError);
  nlohmann::json tab = {{"backhaul_rate", {{"times_s", {0, 10}}, {"rates", {{1, 3}, {2, 2}}}}},
                        {"p_avg", 4}};
  const auto c2 = tab.get<ScenarioConfig>();
  CHECK(c2.backhaul_rate_at(0, 5.0) == doctest::Approx(2.0));
  CHECK(c2.p_avg == std::vector<double>{4.0, 4.0});
  ScenarioConfig slow = cfg;
  slow.backhaul_rate = 0.1;
  CHECK_THROWS_AS(slow.validate(), DomainError);
}

TEST_CASE("gain table matches kappa at each sample for both backends") {
  ScenarioConfig cfg;
  cfg.grid_points = 1000;
  const auto g = make_grid(cfg);
  const auto serial = gain_table(cfg, g, kernels::Backend::Serial);
  const auto par = gain_table(cfg, g, kernels::Backend::OpenMP);
  for (std::size_t n = 0; n < 2; ++n) {
    for (std::size_t m = 0; m < g.size(); m += 97) {
      CHECK(serial[n][m] == doctest::Approx(kappa(cfg, n, g[m])).epsilon(1e-14));
    }
    CHECK(serial[n] == par[n]);
  }
}

TEST_CASE("serial and OpenMP kernels agree bit for bit") {
  using kernels::Backend;
  const std::size_t M = 5000;
  std::vector<double> t(M);
  for (std::size_t m = 0; m < M; ++m) t[m] = 14.4 * static_cast<double>(m + 1) / M;
  const kernels::Geometry geo{55.5556, 100.0, 20.0, 0.8, 2.0, 1.0};
  std::vector<double> kap(2 * M), kap_omp(2 * M);
  for (auto [b, out] : {std::pair{Backend::Serial, &kap}, std::pair{Backend::OpenMP, &kap_omp}}) {
    kernels::channel_gains(geo, -200.0, t, std::span(*out).first(M), b);
    kernels::channel_gains(geo, 800.0, t, std::span(*out).last(M), b);
  }
  CHECK(kap == kap_omp);
  const std::vector<double> unit{1.0, 1.3};
  std::vector<double> pa(M), pb(M), sa(M), sb(M), ra(M), rb(M);
  std::vector<std::uint32_t> wa(M), wb(M);
  kernels::serving_prices(kap, 2, unit, pa, wa, Backend::Serial);
  kernels::serving_prices(kap, 2, unit, pb, wb, Backend::OpenMP);
  CHECK(pa == pb);
  CHECK(wa == wb);
  CHECK(wa.front() == 0);
  CHECK(wa.back() == 1);
  for (std::size_t m = 0; m < M; m += 250) {
    CHECK(pa[m] == std::min(1.0 / kap[m], 1.3 / kap[M + m]));
  }
  kernels::waterfill_snr(pa, 200.0, 0.15, sa, Backend::Serial);
  kernels::waterfill_snr(pa, 200.0, 0.15, sb, Backend::OpenMP);
  CHECK(sa == sb);
  for (std::size_t m = 0; m < M; ++m) CHECK(sa[m] == std::max(0.15, 200.0 / pa[m] - 1.0));
  kernels::log_rates(sa, 5.0, ra, Backend::Serial);
  kernels::log_rates(sa, 5.0, rb, Backend::OpenMP);
  CHECK(ra == rb);
  CHECK(ra[7] == doctest::Approx(5.0 * std::log2(1.0 + sa[7])));
}
