#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "fograil/numerics.hpp"

using namespace fograil;
using namespace fograil::numerics;

TEST_CASE("time grid sampling") {
  TimeGrid g(0.0, 2.0, 4);
  CHECK(g.size() == 4);
  CHECK(g.step() == doctest::Approx(0.5));
  CHECK(g[0] == doctest::Approx(0.5));
  CHECK(g[3] == 2.0);
  CHECK_THROWS_AS(TimeGrid(0.0, 1.0, 1), NumericsError);
  CHECK_THROWS_AS(TimeGrid(1.0, 1.0, 10), NumericsError);
}

TEST_CASE("integrate: constant, linear, quadratic") {
  CHECK(std::abs(integrate([](double) { return 1.0; }, TimeGrid(0, 18, 1000)) - 18.0) < 1e-9);
  CHECK(std::abs(integrate([](double t) { return t; }, TimeGrid(0, 2, 1000)) - 2.0) < 1e-6);
  CHECK(std::abs(integrate([](double t) { return t * t; }, TimeGrid(0, 1, 1000)) - 1.0 / 3.0) <
        1e-6);
}

TEST_CASE("integrate is linear and rejects non-finite values") {
  TimeGrid g(0, 3, 500);
  auto f = [](double t) { return std::sin(t); };
  auto h = [](double t) { return std::exp(-t); };
  const double lhs = integrate([&](double t) { return 2.5 * f(t) - 0.75 * h(t); }, g);
  const double rhs = 2.5 * integrate(f, g) - 0.75 * integrate(h, g);
  CHECK(std::abs(lhs - rhs) < 1e-10);
  CHECK_THROWS_AS(integrate([](double t) { return 1.0 / (t - 1.5); }, TimeGrid(0, 3, 2)),
                  NumericsError);
}

TEST_CASE("sampled integrals") {
  TimeGrid g(0, 10, 10);
  std::vector<double> v(10, 1.0);
  CHECK(integrate_samples(v, g) == doctest::Approx(10.0));
  CHECK(tail_integral(v, g, 6.0) == doctest::Approx(4.0));
  CHECK(tail_integral(v, g, 6.5) == doctest::Approx(3.5));
  CHECK(tail_integral(v, g, 0.0) == doctest::Approx(10.0));
  CHECK(tail_integral(v, g, 10.0) == 0.0);
}

TEST_CASE("bisect roots and bracket errors") {
  CHECK(bisect([](double t) { return t - 1.0; }, 0, 2, 1e-10) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(bisect([](double t) { return t * t - 2.0; }, 0, 2, 1e-10) - std::sqrt(2.0)) < 1e-9);
  CHECK_THROWS_AS(bisect([](double) { return -1.0; }, 0, 1), BracketError);
  const double loose = bisect([](double t) { return std::cos(t); }, 0, 3, 1e-6);
  const double tight = bisect([](double t) { return std::cos(t); }, 0, 3, 1e-7);
  CHECK(std::abs(loose - tight) < 1e-6);
}

TEST_CASE("solve_lp small programs") {
  LinearProgram a{{1.0}, {{{1.0}, RowSense::GreaterEqual, 1.0}}, {0.0}, {2.0}};
  auto ra = solve_lp(a);
  REQUIRE(ra.status == LpStatus::Optimal);
  CHECK(ra.values[0] == doctest::Approx(1.0));
  CHECK(ra.objective == doctest::Approx(1.0));

  LinearProgram b{{-1.0, -1.0}, {{{1.0, 1.0}, RowSense::LessEqual, 1.0}}, {0.0, 0.0}, {1.0, 1.0}};
  auto rb = solve_lp(b);
  REQUIRE(rb.status == LpStatus::Optimal);
  CHECK(rb.objective == doctest::Approx(-1.0));
  CHECK(rb.values[0] + rb.values[1] == doctest::Approx(1.0));

  LinearProgram c{{1.0},
                  {{{1.0}, RowSense::GreaterEqual, 2.0}, {{1.0}, RowSense::LessEqual, 1.0}},
                  {0.0},
                  {kInf}};
  CHECK(solve_lp(c).status == LpStatus::Infeasible);

  LinearProgram d{{-1.0}, {{{1.0}, RowSense::GreaterEqual, 0.0}}, {0.0}, {kInf}};
  CHECK_THROWS_AS(solve_lp(d), UnboundedError);

  LinearProgram e{{1.0, 2.0}, {{{1.0, 1.0}, RowSense::Equal, 3.0}}, {0.0, 0.0}, {2.0, 5.0}};
  auto re = solve_lp(e);
  REQUIRE(re.status == LpStatus::Optimal);
  CHECK(re.values[0] == doctest::Approx(2.0));
  CHECK(re.objective == doctest::Approx(4.0));
}

TEST_CASE("solve_lp beats random feasible points") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int inst = 0; inst < 20; ++inst) {
    const std::size_t n = 6;
    LinearProgram lp;
    lp.objective.resize(n);
    lp.lower.assign(n, 0.0);
    lp.upper.assign(n, 1.0);
    for (auto& c : lp.objective) c = u(rng) * 2.0 - 1.0;
    for (int r = 0; r < 3; ++r) {
      LinearRow row;
      row.coeffs.resize(n);
      for (auto& c : row.coeffs) c = u(rng);
      row.sense = r == 0 ? RowSense::GreaterEqual : RowSense::LessEqual;
      row.rhs = r == 0 ? 0.5 : 2.0;
      lp.rows.push_back(row);
    }
    const auto res = solve_lp(lp);
    REQUIRE(res.status == LpStatus::Optimal);
    double check = 0.0;
    for (std::size_t j = 0; j < n; ++j) check += lp.objective[j] * res.values[j];
    CHECK(std::abs(check - res.objective) < 1e-8);
    for (const auto& row : lp.rows) {
      double lhs = 0.0;
      for (std::size_t j = 0; j < n; ++j) lhs += row.coeffs[j] * res.values[j];
      if (row.sense == RowSense::LessEqual) CHECK(lhs <= row.rhs + 1e-8);
      if (row.sense == RowSense::GreaterEqual) CHECK(lhs >= row.rhs - 1e-8);
    }
    int found = 0;
    for (int k = 0; found < 1000 && k < 200000; ++k) {
      std::vector<double> x(n);
      for (auto& v : x) v = u(rng);
      bool ok = true;
      for (const auto& row : lp.rows) {
        double lhs = 0.0;
        for (std::size_t j = 0; j < n; ++j) lhs += row.coeffs[j] * x[j];
        if (row.sense == RowSense::LessEqual && lhs > row.rhs) ok = false;
        if (row.sense == RowSense::GreaterEqual && lhs < row.rhs) ok = false;
      }
      if (!ok) continue;
      ++found;
      double obj = 0.0;
      for (std::size_t j = 0; j < n; ++j) obj += lp.objective[j] * x[j];
      CHECK(obj >= res.objective - 1e-9);
    }
    CHECK(found == 1000);
  }
}
