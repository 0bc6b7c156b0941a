#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "fograil/dynamic_solver.hpp"
#include "fograil/oracle.hpp"

using namespace fograil;

namespace {

SurrogateWeights priced(const ScenarioConfig& cfg, const numerics::TimeGrid& grid,
                        std::vector<double> price) {
  SurrogateWeights w;
  w.theta = cfg.theta;
  w.backhaul_weight.assign(price.size(), 0.0);
  w.expansion.assign(price.size(), 0.0);
  w.price = std::move(price);
  (void)grid;
  return w;
}

}  // namespace

TEST_CASE("regime-1 LP oracle agrees with the closed form") {
  for (double k2 : {0.8, 1.0, 1.5, 2.5}) {
    ScenarioConfig cfg;
    cfg.grid_points = 400;
    const auto grid = make_grid(cfg);
    const auto w = priced(cfg, grid, {1.0, k2});
    const auto rc = dynamic::reduce(cfg, w, grid);
    const auto ref = oracle::oracle_regime1_lp(rc);
    REQUIRE(ref.feasible);
    const auto sol = dynamic::solve_reduced(rc);
    CHECK(dynamic::inner_cost(w.price, sol.trajectory) == doctest::Approx(ref.cost).epsilon(1e-6));
  }
}

TEST_CASE("lattice oracle brackets the exact regime-2 solve") {
  ScenarioConfig cfg;
  cfg.grid_points = 30;
  cfg.content_size = 20.0;
  const auto grid = make_grid(cfg);
  const auto w = priced(cfg, grid, {1.0, 1.2});
  const auto prob = dynamic::make_regime2_problem(cfg, w, grid);
  const auto sol = dynamic::solve_regime2(prob);
  const double exact = dynamic::inner_cost(prob.price, sol.trajectory);
  const auto ref = oracle::oracle_regime2_grid(prob, 60);
  REQUIRE(ref.feasible);
  CHECK(exact <= ref.cost * (1 + 1e-9));
  CHECK(ref.cost - exact <= ref.slack + 1e-9);
  CHECK(ref.cost <= exact * 1.01);
}

TEST_CASE("vertex oracle for a single RRH") {
  ScenarioConfig cfg;
  cfg.rrh_x_m = {800.0};
  cfg.p_avg = {50.0};
  cfg.storage_size = {5.0};
  cfg.grid_points = 50;
  const auto grid = make_grid(cfg);
  const auto ref = oracle::oracle_invariant_vertices(cfg, {2.0}, grid);
  REQUIRE(ref.feasible);
  double kmin = 1e300;
  for (std::size_t m = 0; m < grid.size(); ++m) kmin = std::min(kmin, kappa(cfg, 0, grid[m]));
  CHECK(ref.constants[0] == doctest::Approx(cfg.snr_floor() / kmin));
  CHECK(ref.cost == doctest::Approx(2.0 * cfg.snr_floor() / kmin));
}
