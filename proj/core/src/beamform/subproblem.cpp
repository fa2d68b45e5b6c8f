#include "urllc/beamform/subproblem.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace urllc::beamform {

using conic::AffineExpr;

std::vector<Eigen::VectorXcd> Subproblem::beams(const Eigen::VectorXd& x) const {
  std::vector<Eigen::VectorXcd> v(num_streams, Eigen::VectorXcd(num_antennas));
  for (int s = 0; s < num_streams; ++s)
    for (int m = 0; m < num_antennas; ++m) v[s][m] = {x[re(s, m)], x[im(s, m)]};
  return v;
}

Eigen::VectorXd Subproblem::slacks(const Eigen::VectorXd& x) const {
  Eigen::VectorXd t = t_fixed;
  for (std::size_t k = 0; k < slack_var.size(); ++k)
    if (slack_var[k] >= 0) t[static_cast<Eigen::Index>(k)] = x[slack_var[k]];
  return t;
}

Eigen::VectorXd Subproblem::pack(const std::vector<Eigen::VectorXcd>& v, const Eigen::VectorXd& t) const {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(program.num_vars);
  for (int s = 0; s < num_streams; ++s)
    for (int m = 0; m < num_antennas; ++m) {
      x[re(s, m)] = v[s][m].real();
      x[im(s, m)] = v[s][m].imag();
    }
  for (std::size_t k = 0; k < slack_var.size(); ++k)
    if (slack_var[k] >= 0) x[slack_var[k]] = t[static_cast<Eigen::Index>(k)];
  return x;
}

namespace {

// Adds scale * Re(h^T v_s) or scale * Im(h^T v_s) to e.
void add_response(AffineExpr& e, const Subproblem& sp, const Eigen::VectorXcd& h, int s, bool imag_part,
                  double scale) {
  for (int m = 0; m < sp.num_antennas; ++m) {
    const double hr = h[m].real(), hi = h[m].imag();
    if (!imag_part) {
      e.add(sp.re(s, m), scale * hr).add(sp.im(s, m), -scale * hi);
    } else {
      e.add(sp.re(s, m), scale * hi).add(sp.im(s, m), scale * hr);
    }
  }
}

}  // namespace

Subproblem build_subproblem(const NormalizedProblem& p, const std::vector<Eigen::VectorXcd>& v_hat,
                            const Eigen::VectorXd& t_hat, ScaMode mode, const PenaltyLinearization* lin) {
  const int k_users = p.num_users();
  if (static_cast<int>(v_hat.size()) != p.num_streams) throw std::invalid_argument("build_subproblem: stream count");
  if (t_hat.size() != k_users) throw std::invalid_argument("build_subproblem: slack count");
  if (mode == ScaMode::leader_penalty && (!lin || lin->coef.size() != k_users))
    throw std::invalid_argument("build_subproblem: penalty mode needs a linearization per user");
  for (const auto& v : v_hat)
    if (v.size() != p.num_antennas()) throw std::invalid_argument("build_subproblem: beam length");

  Subproblem sp;
  sp.num_streams = p.num_streams;
  sp.num_antennas = p.num_antennas();
  auto& prog = sp.program;
  prog.add_variables(2 * sp.num_streams * sp.num_antennas);

  sp.slack_var.assign(k_users, -1);
  sp.t_fixed = t_hat;
  for (int k = 0; k < k_users; ++k) {
    if (mode == ScaMode::leader_penalty && lin->frozen[k]) continue;
    const int j = prog.add_variables(1);
    sp.slack_var[k] = j;
    prog.cost[j] = 1.0 + (mode == ScaMode::leader_penalty ? lin->coef[k] : 0.0);
    prog.nonnegative.push_back(j);
  }

  for (int k = 0; k < k_users; ++k) {
    const double gamma = p.target[k];
    if (!(gamma > 0.0)) continue;  // every SINR meets a zero target
    const auto& h = p.channels[k];
    const int s = p.stream_of[k];
    const auto q = linearize_quadratic(h, v_hat[s]);

    // lhs = g / gamma + t, with g the tangent plane of |h^T v_s|^2
    AffineExpr lhs(-(q.a_hat * q.a_hat + q.b_hat * q.b_hat) / gamma);
    add_response(lhs, sp, h, s, false, 2.0 * q.a_hat / gamma);
    add_response(lhs, sp, h, s, true, 2.0 * q.b_hat / gamma);
    if (sp.slack_var[k] >= 0) lhs.add(sp.slack_var[k], 1.0);
    else lhs.constant += sp.t_fixed[k];

    const std::string label = "sinr user " + std::to_string(k);
    if (p.num_streams == 1) {
      AffineExpr e = lhs;
      e.constant -= 1.0;
      prog.inequalities.push_back({e, label});
      continue;
    }
    conic::SocConstraint c;
    c.label = label;
    c.head = lhs;
    for (int j = 0; j < p.num_streams; ++j) {
      if (j == s) continue;
      AffineExpr r, i;
      add_response(r, sp, h, j, false, 2.0);
      add_response(i, sp, h, j, true, 2.0);
      c.tail.push_back(r);
      c.tail.push_back(i);
    }
    AffineExpr last = lhs;
    last.constant -= 2.0;
    c.tail.push_back(last);
    prog.cones.push_back(std::move(c));
  }

  conic::SocConstraint power;
  power.label = "power";
  power.head = AffineExpr(1.0);
  for (int j = 0; j < 2 * sp.num_streams * sp.num_antennas; ++j) power.tail.push_back(AffineExpr().add(j, 1.0));
  prog.cones.push_back(std::move(power));
  return sp;
}

double max_violation(const conic::ConicProgram& p, const Eigen::VectorXd& x) {
  double v = 0.0;
  for (const auto& e : p.equalities) v = std::max(v, std::abs(e.expr.eval(x)));
  for (int j : p.nonnegative) v = std::max(v, -x[j]);
  for (const auto& e : p.inequalities) v = std::max(v, -e.expr.eval(x));
  for (const auto& c : p.cones) {
    double tail = 0.0;
    for (const auto& r : c.tail) {
      const double y = r.eval(x);
      tail += y * y;
    }
    v = std::max(v, std::sqrt(tail) - c.head.eval(x));
  }
  return v;
}

}  // namespace urllc::beamform
