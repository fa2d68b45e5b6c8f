#include "urllc/beamform/penalty.hpp"

#include <cmath>
#include <stdexcept>

#include "urllc/radio/channels.hpp"

namespace urllc::beamform {

namespace {

// Geometric mean through logs; exact zero when any factor is zero.
double geometric_mean(const Eigen::VectorXd& t, int offset, int size) {
  double log_sum = 0.0;
  for (int k = 0; k < size; ++k) {
    const double v = t[offset + k];
    if (v == 0.0) return 0.0;
    log_sum += std::log(v);
  }
  return std::exp(log_sum / size);
}

void check_sizes(const Eigen::VectorXd& t, const GroupLayout& layout, const std::vector<double>& beta) {
  if (t.size() != layout.num_users()) throw std::invalid_argument("penalty: slack count differs from layout");
  if (static_cast<int>(beta.size()) != layout.num_groups())
    throw std::invalid_argument("penalty: weight count differs from group count");
}

}  // namespace

double penalty(const Eigen::VectorXd& t, const GroupLayout& layout, const std::vector<double>& beta) {
  check_sizes(t, layout, beta);
  if ((t.array() < 0.0).any()) throw std::invalid_argument("penalty: negative slack");
  double sum = 0.0;
  for (int n = 0; n < layout.num_groups(); ++n) sum += beta[n] * geometric_mean(t, layout.offset(n), layout.size(n));
  return sum;
}

int PenaltyLinearization::frozen_count() const {
  int c = 0;
  for (bool f : frozen) c += f;
  return c;
}

double PenaltyLinearization::eval(const Eigen::VectorXd& t) const { return value_at_hat + coef.dot(t - t_hat); }

PenaltyLinearization linearize_penalty(const Eigen::VectorXd& t_hat, const GroupLayout& layout,
                                       const std::vector<double>& beta, double floor) {
  check_sizes(t_hat, layout, beta);
  if ((t_hat.array() < 0.0).any()) throw std::invalid_argument("linearize_penalty: negative slack");
  PenaltyLinearization lin;
  lin.t_hat = t_hat;
  lin.coef = Eigen::VectorXd::Zero(t_hat.size());
  lin.frozen.assign(t_hat.size(), false);
  for (int n = 0; n < layout.num_groups(); ++n) {
    const int off = layout.offset(n);
    const int size = layout.size(n);
    const double gm = geometric_mean(t_hat, off, size);
    lin.value_at_hat += beta[n] * gm;
    for (int k = off; k < off + size; ++k) {
      if (t_hat[k] <= floor) {
        lin.frozen[k] = true;
        continue;
      }
      // d/dt_k of beta (prod t)^{1/K} = beta/K * GM / t_k
      lin.coef[k] = beta[n] / size * gm / t_hat[k];
    }
  }
  return lin;
}

QuadraticLinearization linearize_quadratic(const Eigen::VectorXcd& h, const Eigen::VectorXcd& w_hat) {
  const auto r = radio::response(h, w_hat);
  return {r.real(), r.imag()};
}

}  // namespace urllc::beamform
