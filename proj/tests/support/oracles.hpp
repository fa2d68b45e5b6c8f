#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library's numerics; only plain data types are shared.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "urllc/conic/program.hpp"

namespace oracle {

inline long double sinr_target(long double bits, long double symbols) {
  return std::pow(2.0L, bits / symbols) - 1.0L;
}

inline long double to_db(long double x) { return 10.0L * std::log10(x); }

// Sum_m h_m w_m written out, no Eigen products.
inline std::complex<double> dot_t(const Eigen::VectorXcd& h, const Eigen::VectorXcd& w) {
  std::complex<double> s = 0.0;
  for (Eigen::Index m = 0; m < h.size(); ++m) s += h[m] * w[m];
  return s;
}

// Product form of the weighted geometric-mean penalty.
inline double penalty(const std::vector<double>& t, const std::vector<int>& sizes, const std::vector<double>& beta) {
  double total = 0.0;
  std::size_t k = 0;
  for (std::size_t n = 0; n < sizes.size(); ++n) {
    long double prod = 1.0L;
    for (int i = 0; i < sizes[n]; ++i) prod *= t[k++];
    total += beta[n] * static_cast<double>(std::pow(prod, 1.0L / sizes[n]));
  }
  return total;
}

inline double eval(const urllc::conic::AffineExpr& e, const Eigen::VectorXd& x) {
  double s = e.constant;
  for (const auto& term : e.terms) s += term.coef * x[term.var];
  return s;
}

// Worst violation of every constraint of p at x.
inline double violation(const urllc::conic::ConicProgram& p, const Eigen::VectorXd& x) {
  double v = 0.0;
  for (const auto& e : p.equalities) v = std::max(v, std::abs(eval(e.expr, x)));
  for (int i : p.nonnegative) v = std::max(v, -x[i]);
  for (const auto& q : p.inequalities) v = std::max(v, -eval(q.expr, x));
  for (const auto& c : p.cones) {
    double ss = 0.0;
    for (const auto& t : c.tail) ss += eval(t, x) * eval(t, x);
    v = std::max(v, std::sqrt(ss) - eval(c.head, x));
  }
  return v;
}

// Grid search over the box [lo, hi]^n with zoom passes around the best
// feasible point. Returns +inf when no grid point is feasible.
inline double grid_minimum(const urllc::conic::ConicProgram& p, double lo, double hi, int points, double feas_tol,
                           int passes = 14, Eigen::VectorXd* argmin = nullptr) {
  const int n = p.num_vars;
  Eigen::VectorXd center = Eigen::VectorXd::Constant(n, 0.5 * (lo + hi));
  double half = 0.5 * (hi - lo);
  double best = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_x = center;
  for (int pass = 0; pass < passes; ++pass) {
    const double step = 2.0 * half / (points - 1);
    std::vector<int> idx(n, 0);
    for (;;) {
      Eigen::VectorXd x(n);
      for (int i = 0; i < n; ++i) x[i] = std::clamp(center[i] - half + step * idx[i], lo, hi);
      if (violation(p, x) <= feas_tol) {
        const double f = p.cost.dot(x);
        if (f < best) {
          best = f;
          best_x = x;
        }
      }
      int i = 0;
      while (i < n && ++idx[i] == points) idx[i++] = 0;
      if (i == n) break;
    }
    if (!std::isfinite(best)) break;
    center = best_x;
    half = std::max(half / 3.0, 3.0 * step);
  }
  if (argmin) *argmin = best_x;
  return best;
}

}  // namespace oracle
