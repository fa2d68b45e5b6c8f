#include "urllc/beamform/broadcast.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "urllc/conic/kkt.hpp"

namespace urllc::beamform {

using conic::AffineExpr;

BroadcastResult solve_broadcast(const radio::ChannelSet& ch, const std::vector<SinrTarget>& user_targets,
                                const SystemConfig& cfg) {
  const int k_users = ch.num_users();
  if (static_cast<int>(user_targets.size()) != k_users)
    throw std::invalid_argument("solve_broadcast: need one target per user");
  const int m_ant = k_users ? static_cast<int>(ch.downlink.front().size()) : 0;
  const double p_bs = cfg.bs_power_w();
  const int stride = 2 * m_ant + 1;  // beam of user k, then its slack
  auto re = [&](int k, int m) { return k * stride + 2 * m; };
  auto im = [&](int k, int m) { return k * stride + 2 * m + 1; };
  auto slack = [&](int k) { return k * stride + 2 * m_ant; };

  conic::ConicProgram prog;
  prog.add_variables(k_users * stride);
  for (int k = 0; k < k_users; ++k) {
    prog.cost[slack(k)] = 1.0;
    prog.nonnegative.push_back(slack(k));
  }

  // Re / Im of h^T v_i as affine expressions.
  auto response = [&](const Eigen::VectorXcd& h, int i, bool imag_part, double scale) {
    AffineExpr e;
    for (int m = 0; m < m_ant; ++m) {
      const double hr = h[m].real(), hi = h[m].imag();
      if (!imag_part) e.add(re(i, m), scale * hr).add(im(i, m), -scale * hi);
      else e.add(re(i, m), scale * hi).add(im(i, m), scale * hr);
    }
    return e;
  };

  for (int k = 0; k < k_users; ++k) {
    const Eigen::VectorXcd h = ch.downlink[k] * std::sqrt(p_bs / ch.interference_phase1[k]);
    const double gamma = user_targets[k].linear * (1.0 + cfg.sca.target_margin);
    const std::string label = "user " + std::to_string(k);
    prog.equalities.push_back({response(h, k, true, 1.0), "phase " + label});
    if (!(gamma > 0.0)) continue;
    conic::SocConstraint c;
    c.label = "sinr " + label;
    c.head = response(h, k, false, 1.0 / std::sqrt(gamma));
    c.head.add(slack(k), 1.0);
    for (int i = 0; i < k_users; ++i) {
      if (i == k) continue;
      c.tail.push_back(response(h, i, false, 1.0));
      c.tail.push_back(response(h, i, true, 1.0));
    }
    c.tail.push_back(AffineExpr(1.0));
    prog.cones.push_back(std::move(c));
  }

  conic::SocConstraint power;
  power.label = "power";
  power.head = AffineExpr(1.0);
  for (int k = 0; k < k_users; ++k)
    for (int m = 0; m < m_ant; ++m) {
      power.tail.push_back(AffineExpr().add(re(k, m), 1.0));
      power.tail.push_back(AffineExpr().add(im(k, m), 1.0));
    }
  prog.cones.push_back(std::move(power));

  conic::SolverOptions sopt;
  sopt.tol = cfg.sca.solver_tol;
  sopt.max_iter = cfg.sca.solver_max_iter;
  const auto sol = conic::solve(prog, sopt);

  BroadcastResult out;
  out.status = sol.status;
  out.ok = sol.status == conic::Status::optimal ||
           (sol.status == conic::Status::max_iter && sol.residuals.max() <= 1e-6);
  out.beams.variant = BeamVariant::per_user;
  out.slack = Eigen::VectorXd::Zero(k_users);
  if (!out.ok) {
    out.kkt = std::numeric_limits<double>::infinity();
    out.beams.beams.assign(k_users, Eigen::VectorXcd::Zero(m_ant));
    return out;
  }
  out.kkt = conic::check_kkt(prog, sol).max();

  std::vector<Eigen::VectorXcd> v(k_users, Eigen::VectorXcd(m_ant));
  double power_used = 0.0;
  for (int k = 0; k < k_users; ++k) {
    for (int m = 0; m < m_ant; ++m) v[k][m] = {sol.x[re(k, m)], sol.x[im(k, m)]};
    power_used += v[k].squaredNorm();
    out.slack[k] = sol.x[slack(k)];
  }
  const double scale = std::sqrt(p_bs) / std::max(1.0, std::sqrt(power_used));
  for (auto& b : v) out.beams.beams.push_back(b * scale);
  return out;
}

}  // namespace urllc::beamform
