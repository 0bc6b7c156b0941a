#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "fograil/errors.hpp"

namespace fograil {

namespace numerics {

/// Uniform sampling of (t_start, t_end] at M right-hand points.
///
/// Sample m (0-based) sits at t_start + (m+1)*step and represents the cell
/// (t_start + m*step, t_start + (m+1)*step]. Every sampled integral in the
/// library uses the matching rule sum_m v[m]*step, which is also the
/// discretization the solvers optimize over.
class TimeGrid {
 public:
  TimeGrid(double t_start, double t_end, std::size_t m_points);

  double t_start() const { return t_start_; }
  double t_end() const { return t_end_; }
  double step() const { return step_; }
  double horizon() const { return t_end_ - t_start_; }
  std::size_t size() const { return samples_.size(); }
  std::span<const double> samples() const { return samples_; }
  double operator[](std::size_t m) const { return samples_[m]; }

  /// Left edge of the cell owning sample m.
  double cell_start(std::size_t m) const {
    return t_start_ + static_cast<double>(m) * step_;
  }

 private:
  double t_start_;
  double t_end_;
  double step_;
  std::vector<double> samples_;
};

/// Composite trapezoid over the M+1 nodes t_start, t_1, ..., t_M.
/// Throws NumericsError if f is non-finite at any node.
double integrate(const std::function<double(double)>& f, const TimeGrid& grid);

/// Right-endpoint rule on grid samples: sum_m values[m] * step.
double integrate_samples(std::span<const double> values, const TimeGrid& grid);

/// Integral of the sampled profile over [t, t_end], treating each sample as
/// constant on its cell. Continuous and nonincreasing in t for v >= 0.
double tail_integral(std::span<const double> values, const TimeGrid& grid,
                     double t);

/// Bisection root of a monotone function on [lo, hi].
/// Stops when |g| < tol or the bracket is narrower than tol.
double bisect(const std::function<double(double)>& g, double lo, double hi,
              double tol = 1e-10);

enum class RowSense { LessEqual, GreaterEqual, Equal };

struct LinearRow {
  std::vector<double> coeffs;
  RowSense sense = RowSense::LessEqual;
  double rhs = 0.0;
};

/// min c^T x  s.t.  rows, lower <= x <= upper (upper may be +inf).
struct LinearProgram {
  std::vector<double> objective;
  std::vector<LinearRow> rows;
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t num_vars() const { return objective.size(); }
  /// Throws NumericsError when dimensions or bounds are inconsistent.
  void validate() const;
};

enum class LpStatus { Optimal, Infeasible };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> values;
  double objective = std::numeric_limits<double>::quiet_NaN();
  std::size_t pivots = 0;
};

/// Dense two-phase bounded-variable simplex, Bland's rule.
/// Infeasible is reported through the status; unbounded throws.
LpResult solve_lp(const LinearProgram& lp);

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace numerics
}  // namespace fograil
