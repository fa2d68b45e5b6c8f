#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "urllc/core/config.hpp"

namespace urllc::beamform {

// sum_n beta_n * (prod_{k in n} t_k)^{1/K_n}. Throws on negative slacks.
double penalty(const Eigen::VectorXd& t, const GroupLayout& layout, const std::vector<double>& beta);

// First-order expansion of the penalty at t_hat:
//   f(t) = penalty(t_hat) + sum_k coef_k (t_k - t_hat_k).
// Members with t_hat_k <= floor are frozen: the caller must hold them at
// t_hat_k, and they carry no gradient. On the remaining coordinates f is a
// tight upper bound of the (concave) penalty.
struct PenaltyLinearization {
  Eigen::VectorXd t_hat;
  Eigen::VectorXd coef;
  std::vector<bool> frozen;
  double value_at_hat = 0.0;

  int frozen_count() const;
  double eval(const Eigen::VectorXd& t) const;
};

PenaltyLinearization linearize_penalty(const Eigen::VectorXd& t_hat, const GroupLayout& layout,
                                       const std::vector<double>& beta, double floor);

// Tangent plane of a^2 + b^2 at (a_hat, b_hat) = (Re, Im) of h^T w_hat.
struct QuadraticLinearization {
  double a_hat = 0.0;
  double b_hat = 0.0;

  double eval(double a, double b) const { return 2.0 * (a_hat * a + b_hat * b) - (a_hat * a_hat + b_hat * b_hat); }
};

QuadraticLinearization linearize_quadratic(const Eigen::VectorXcd& h, const Eigen::VectorXcd& w_hat);

}  // namespace urllc::beamform
