#include "fograil/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fograil::numerics {

TimeGrid::TimeGrid(double t_start, double t_end, std::size_t m_points)
    : t_start_(t_start), t_end_(t_end) {
  if (!(t_end > t_start) || !std::isfinite(t_start) || !std::isfinite(t_end)) {
    throw NumericsError("TimeGrid: need finite t_start < t_end");
  }
  if (m_points < 2) {
    throw NumericsError("TimeGrid: need at least 2 samples");
  }
  step_ = (t_end - t_start) / static_cast<double>(m_points);
  samples_.resize(m_points);
  for (std::size_t m = 0; m < m_points; ++m) {
    samples_[m] = t_start + static_cast<double>(m + 1) * step_;
  }
  samples_.back() = t_end;
}

double integrate(const std::function<double(double)>& f, const TimeGrid& grid) {
  const std::size_t m = grid.size();
  auto eval = [&](double t) {
    const double v = f(t);
    if (!std::isfinite(v)) {
      throw NumericsError("integrate: non-finite integrand at t=" +
                          std::to_string(t));
    }
    return v;
  };
  double acc = 0.5 * eval(grid.t_start());
  for (std::size_t i = 0; i + 1 < m; ++i) acc += eval(grid[i]);
  acc += 0.5 * eval(grid[m - 1]);
  return acc * grid.step();
}

double integrate_samples(std::span<const double> values, const TimeGrid& grid) {
  if (values.size() != grid.size()) {
    throw NumericsError("integrate_samples: size mismatch");
  }
  double acc = 0.0;
  for (double v : values) {
    if (!std::isfinite(v)) throw NumericsError("integrate_samples: non-finite sample");
    acc += v;
  }
  return acc * grid.step();
}

double tail_integral(std::span<const double> values, const TimeGrid& grid,
                     double t) {
  if (values.size() != grid.size()) {
    throw NumericsError("tail_integral: size mismatch");
  }
  const std::size_t m = grid.size();
  if (t >= grid.t_end()) return 0.0;
  double acc = 0.0;
  if (t <= grid.t_start()) {
    for (double v : values) acc += v;
    return acc * grid.step();
  }
  auto k = static_cast<std::size_t>((t - grid.t_start()) / grid.step());
  k = std::min(k, m - 1);
  for (std::size_t i = k + 1; i < m; ++i) acc += values[i];
  const double cell_end = grid.cell_start(k) + grid.step();
  return acc * grid.step() + values[k] * std::max(0.0, cell_end - t);
}

double bisect(const std::function<double(double)>& g, double lo, double hi,
              double tol) {
  if (!(tol > 0.0)) throw NumericsError("bisect: tol must be positive");
  if (lo > hi) std::swap(lo, hi);
  double glo = g(lo);
  const double ghi = g(hi);
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  if (!std::isfinite(glo) || !std::isfinite(ghi) ||
      std::signbit(glo) == std::signbit(ghi)) {
    throw BracketError("bisect: no sign change on [" + std::to_string(lo) +
                       ", " + std::to_string(hi) + "]");
  }
  for (int it = 0; it < 400 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if (std::signbit(gm) == std::signbit(glo)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

void LinearProgram::validate() const {
  const std::size_t n = objective.size();
  if (lower.size() != n || upper.size() != n) {
    throw NumericsError("LinearProgram: bound vectors must match variable count");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(lower[j])) {
      throw NumericsError("LinearProgram: lower bounds must be finite");
    }
    if (lower[j] > upper[j]) {
      throw NumericsError("LinearProgram: lower > upper for variable " +
                          std::to_string(j));
    }
  }
  for (const auto& row : rows) {
    if (row.coeffs.size() != n) {
      throw NumericsError("LinearProgram: row width differs from variable count");
    }
  }
}

namespace {

// Dense tableau over the shifted problem y = x - lower, 0 <= y <= ub.
class BoundedSimplex {
 public:
  explicit BoundedSimplex(const LinearProgram& lp) : n_(lp.num_vars()), m_(lp.rows.size()) {
    std::vector<double> rhs(m_);
    std::vector<int> slack_coef(m_, 0);
    std::size_t n_slack = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      const auto& row = lp.rows[i];
      double r = row.rhs;
      for (std::size_t j = 0; j < n_; ++j) r -= row.coeffs[j] * lp.lower[j];
      rhs[i] = r;
      if (row.sense != RowSense::Equal) {
        slack_coef[i] = row.sense == RowSense::LessEqual ? 1 : -1;
        ++n_slack;
      }
      rhs_scale_ = std::max(rhs_scale_, std::abs(r));
    }
    // Rows whose slack cannot start basic need an artificial.
    std::vector<bool> needs_art(m_, false);
    std::size_t n_art = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (slack_coef[i] == 0 || rhs[i] * slack_coef[i] < 0.0) {
        needs_art[i] = true;
        ++n_art;
      }
    }
    first_slack_ = n_;
    first_art_ = n_ + n_slack;
    cols_ = n_ + n_slack + n_art;
    tab_.assign(m_ * cols_, 0.0);
    ub_.assign(cols_, kInf);
    at_upper_.assign(cols_, false);
    is_basic_.assign(cols_, false);
    basis_.assign(m_, 0);
    xb_.assign(m_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) ub_[j] = lp.upper[j] - lp.lower[j];

    std::size_t s = first_slack_;
    std::size_t a = first_art_;
    for (std::size_t i = 0; i < m_; ++i) {
      const auto& row = lp.rows[i];
      double sign = 1.0;
      if (needs_art[i]) {
        sign = rhs[i] < 0.0 ? -1.0 : 1.0;
      } else {
        sign = static_cast<double>(slack_coef[i]);
      }
      double* r = &tab_[i * cols_];
      for (std::size_t j = 0; j < n_; ++j) r[j] = sign * row.coeffs[j];
      if (slack_coef[i] != 0) {
        r[s] = sign * slack_coef[i];
        if (!needs_art[i]) basis_[i] = s;
        ++s;
      }
      if (needs_art[i]) {
        r[a] = 1.0;
        basis_[i] = a;
        ++a;
      }
      xb_[i] = sign * rhs[i];
      is_basic_[basis_[i]] = true;
    }
    has_artificials_ = n_art > 0;
  }

  LpResult run(const LinearProgram& lp) {
    LpResult result;
    if (has_artificials_) {
      std::vector<double> cost(cols_, 0.0);
      for (std::size_t j = first_art_; j < cols_; ++j) cost[j] = 1.0;
      iterate(cost);
      double infeas = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        if (basis_[i] >= first_art_) infeas += xb_[i];
      }
      if (infeas > 1e-9 * (1.0 + rhs_scale_)) {
        result.status = LpStatus::Infeasible;
        result.pivots = pivots_;
        return result;
      }
      for (std::size_t j = first_art_; j < cols_; ++j) ub_[j] = 0.0;
    }
    std::vector<double> cost(cols_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) cost[j] = lp.objective[j];
    iterate(cost);

    result.status = LpStatus::Optimal;
    result.values.assign(n_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) {
      if (!is_basic_[j] && at_upper_[j]) result.values[j] = ub_[j];
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) result.values[basis_[i]] = xb_[i];
    }
    double obj = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
      double x = lp.lower[j] + result.values[j];
      x = std::clamp(x, lp.lower[j], lp.upper[j]);
      result.values[j] = x;
      obj += lp.objective[j] * x;
    }
    result.objective = obj;
    result.pivots = pivots_;
    return result;
  }

 private:
  void iterate(const std::vector<double>& cost) {
    double cscale = 1.0;
    for (double c : cost) cscale = std::max(cscale, std::abs(c));
    const double dtol = 1e-11 * cscale;
    constexpr double kPivotTol = 1e-11;

    std::vector<double> d(cost);
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      const double* r = &tab_[i * cols_];
      for (std::size_t j = 0; j < cols_; ++j) d[j] -= cb * r[j];
    }

    const std::size_t max_iter = 50 * (m_ + cols_) + 1000;
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (is_basic_[j] || ub_[j] <= 0.0) continue;
        if ((!at_upper_[j] && d[j] < -dtol) || (at_upper_[j] && d[j] > dtol)) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) return;

      const double dir = at_upper_[enter] ? -1.0 : 1.0;
      double theta = ub_[enter];
      std::size_t leave_row = m_;
      bool leave_to_upper = false;
      for (std::size_t i = 0; i < m_; ++i) {
        const double alpha = dir * tab_[i * cols_ + enter];
        double limit = kInf;
        bool to_upper = false;
        if (alpha > kPivotTol) {
          limit = std::max(0.0, xb_[i]) / alpha;
        } else if (alpha < -kPivotTol && std::isfinite(ub_[basis_[i]])) {
          limit = std::max(0.0, ub_[basis_[i]] - xb_[i]) / (-alpha);
          to_upper = true;
        } else {
          continue;
        }
        if (limit < theta ||
            (limit == theta && leave_row < m_ && basis_[i] < basis_[leave_row])) {
          theta = limit;
          leave_row = i;
          leave_to_upper = to_upper;
        }
      }
      if (!std::isfinite(theta)) {
        throw UnboundedError("solve_lp: objective unbounded below");
      }

      for (std::size_t i = 0; i < m_; ++i) {
        xb_[i] -= dir * theta * tab_[i * cols_ + enter];
      }
      if (leave_row == m_) {
        at_upper_[enter] = !at_upper_[enter];
        continue;
      }

      const double entering_value = at_upper_[enter] ? ub_[enter] - theta : theta;
      const std::size_t leaving = basis_[leave_row];
      is_basic_[leaving] = false;
      at_upper_[leaving] = leave_to_upper;
      is_basic_[enter] = true;
      at_upper_[enter] = false;
      basis_[leave_row] = enter;
      xb_[leave_row] = entering_value;
      pivot(leave_row, enter, d);
      ++pivots_;
    }
    throw NumericsError("solve_lp: iteration limit reached");
  }

  void pivot(std::size_t r, std::size_t c, std::vector<double>& d) {
    double* prow = &tab_[r * cols_];
    const double inv = 1.0 / prow[c];
    for (std::size_t j = 0; j < cols_; ++j) prow[j] *= inv;
    prow[c] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* row = &tab_[i * cols_];
      const double f = row[c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols_; ++j) row[j] -= f * prow[j];
      row[c] = 0.0;
    }
    const double f = d[c];
    if (f != 0.0) {
      for (std::size_t j = 0; j < cols_; ++j) d[j] -= f * prow[j];
      d[c] = 0.0;
    }
  }

  std::size_t n_;
  std::size_t m_;
  std::size_t cols_ = 0;
  std::size_t first_slack_ = 0;
  std::size_t first_art_ = 0;
  bool has_artificials_ = false;
  double rhs_scale_ = 0.0;
  std::size_t pivots_ = 0;
  std::vector<double> tab_;
  std::vector<double> ub_;
  std::vector<bool> at_upper_;
  std::vector<bool> is_basic_;
  std::vector<std::size_t> basis_;
  std::vector<double> xb_;
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  lp.validate();
  if (lp.num_vars() == 0) {
    throw NumericsError("solve_lp: empty program");
  }
  BoundedSimplex simplex(lp);
  return simplex.run(lp);
}

}  // namespace fograil::numerics
