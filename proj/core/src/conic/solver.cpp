#include "urllc/conic/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "detail.hpp"
#include "urllc/conic/kkt.hpp"

namespace urllc::conic {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
    case Status::max_iter: return "max_iter";
  }
  return "unknown";
}

double KktResiduals::max() const { return std::max({primal, dual, gap}); }

namespace {

using detail::StandardForm;
using Eigen::VectorXd;

double inf_norm(const VectorXd& v) { return v.size() ? v.lpNorm<Eigen::Infinity>() : 0.0; }

struct Iterate {
  VectorXd x, y, z, s;
  double tau = 1.0;
  double kappa = 1.0;
};

// Scaled copy of an iterate mapped back to the program's variables.
ConicSolution extract(const ConicProgram& prog, const StandardForm& sf, const VectorXd& x, const VectorXd& y,
                      const VectorXd& z, double scale) {
  ConicSolution sol;
  sol.x = x / scale;
  sol.equality_duals = y / scale;
  const auto nn = static_cast<int>(prog.nonnegative.size());
  const auto ni = static_cast<int>(prog.inequalities.size());
  sol.nonnegative_duals = z.head(nn) / scale;
  sol.inequality_duals = z.segment(nn, ni) / scale;
  for (int c = 0; c < sf.cones.num_cones(); ++c)
    sol.cone_duals.push_back(z.segment(sf.cones.start[c], sf.cones.dim[c]) / scale);
  sol.objective = prog.cost.dot(sol.x);
  return sol;
}

class Hsde {
 public:
  Hsde(const ConicProgram& prog, const SolverOptions& opt)
      : prog_(prog), opt_(opt), sf_(detail::compile(prog)), kkt_(sf_, opt.linear_algebra) {
    norm_b_ = inf_norm(sf_.b);
    norm_h_ = inf_norm(sf_.h);
    norm_c_ = inf_norm(sf_.c);
  }

  ConicSolution run() {
    if (!initialize()) return fail();
    const auto& k = sf_.cones;
    const double degree = k.degree() + 1.0;
    best_merit_ = std::numeric_limits<double>::infinity();
    int stalls = 0;

    for (int it = 0; it <= opt_.max_iter; ++it) {
      iterations_ = it;
      residuals();
      const double merit = optimality_merit();
      if (merit < best_merit_) {
        best_merit_ = merit;
        best_ = cur_;
      }
      if (merit <= opt_.tol) return finish(Status::optimal);
      if (const auto st = certificate(); st) return finish(*st);
      if (it == opt_.max_iter) break;

      if (!detail::nt_scaling(k, cur_.s, cur_.z, sc_)) break;
      if (!kkt_.factor(sc_)) break;

      const double mu = (cur_.s.dot(cur_.z) + cur_.tau * cur_.kappa) / degree;

      // Direction toward -c, b, h shared by both solves.
      VectorXd x1, y1, z1;
      kkt_.solve(-sf_.c, sf_.b, sf_.h, x1, y1, z1);
      const double denom_base = sf_.c.dot(x1) + sf_.b.dot(y1) + sf_.h.dot(z1);

      // Affine-scaling direction.
      Direction aff;
      const VectorXd lam_sq = detail::jordan_product(k, sc_.lambda, sc_.lambda);
      newton(1.0, -lam_sq, -cur_.tau * cur_.kappa, x1, y1, z1, denom_base, aff);
      const double alpha_aff = step_length(aff);
      const double sigma = std::clamp(std::pow(1.0 - alpha_aff, 3), 1e-4, 1.0);

      // Combined predictor-corrector direction.
      const VectorXd corr =
          detail::jordan_product(k, detail::apply_w_inv(k, sc_, aff.s), detail::apply_w(k, sc_, aff.z));
      const VectorXd rc = sigma * mu * detail::identity(k) - lam_sq - corr;
      const double rkappa = sigma * mu - cur_.tau * cur_.kappa - aff.tau * aff.kappa;
      Direction dir;
      newton(1.0 - sigma, rc, rkappa, x1, y1, z1, denom_base, dir);
      const double alpha = std::min(1.0, 0.99 * step_length(dir));
      if (!std::isfinite(alpha)) break;

      cur_.x += alpha * dir.x;
      cur_.y += alpha * dir.y;
      cur_.z += alpha * dir.z;
      cur_.s += alpha * dir.s;
      cur_.tau += alpha * dir.tau;
      cur_.kappa += alpha * dir.kappa;

      stalls = alpha < 1e-8 ? stalls + 1 : 0;
      if (stalls >= 3) break;
    }
    cur_ = best_;
    residuals();
    return finish(Status::max_iter);
  }

 private:
  struct Direction {
    VectorXd x, y, z, s;
    double tau = 0.0;
    double kappa = 0.0;
  };

  bool initialize() {
    const auto& k = sf_.cones;
    const auto id = detail::identity_scaling(k);
    if (!kkt_.factor(id)) return false;
    VectorXd x, y, z;
    kkt_.solve(VectorXd::Zero(sf_.n), sf_.b, sf_.h, x, y, z);
    cur_.x = x;
    cur_.s = -z;
    shift_into_cone(cur_.s);
    kkt_.solve(-sf_.c, VectorXd::Zero(sf_.p), VectorXd::Zero(k.rows), x, y, z);
    cur_.y = y;
    cur_.z = z;
    shift_into_cone(cur_.z);
    cur_.tau = 1.0;
    cur_.kappa = 1.0;
    best_ = cur_;
    return cur_.x.allFinite() && cur_.s.allFinite() && cur_.z.allFinite();
  }

  void shift_into_cone(VectorXd& u) const {
    const double alpha = -detail::min_eig(sf_.cones, u);
    if (alpha >= -1e-8) u += (1.0 + std::max(alpha, 0.0)) * detail::identity(sf_.cones);
  }

  void residuals() {
    rx_ = sf_.A.transpose() * cur_.y + sf_.G.transpose() * cur_.z + sf_.c * cur_.tau;
    ry_ = sf_.A * cur_.x - sf_.b * cur_.tau;
    rz_ = cur_.s + sf_.G * cur_.x - sf_.h * cur_.tau;
    cx_ = sf_.c.dot(cur_.x);
    by_hz_ = sf_.b.dot(cur_.y) + sf_.h.dot(cur_.z);
    rtau_ = cur_.kappa + cx_ + by_hz_;
  }

  // Normalized KKT residual of the current iterate divided by tau.
  double optimality_merit() const {
    const double t = cur_.tau;
    if (!(t > 0.0)) return std::numeric_limits<double>::infinity();
    const double pobj = cx_ / t;
    const double pres = std::max(inf_norm(ry_) / (1.0 + norm_b_), inf_norm(rz_) / (1.0 + norm_h_)) / t;
    const double dres = inf_norm(rx_) / t / (1.0 + norm_c_);
    const double gap = std::abs(cx_ + by_hz_) / t / (1.0 + std::abs(pobj));
    const double comp = std::abs(cur_.s.dot(cur_.z)) / (t * t) / (1.0 + std::abs(pobj));
    return std::max({pres, dres, gap, comp});
  }

  std::optional<Status> certificate() const {
    if (cur_.tau >= cur_.kappa) return std::nullopt;
    if (by_hz_ < 0.0) {
      const VectorXd r = sf_.A.transpose() * cur_.y + sf_.G.transpose() * cur_.z;
      if (inf_norm(r) <= opt_.tol * -by_hz_) return Status::infeasible;
    }
    if (cx_ < 0.0) {
      const double r =
          std::max(inf_norm(VectorXd(sf_.A * cur_.x)), inf_norm(VectorXd(sf_.G * cur_.x + cur_.s)));
      if (r <= opt_.tol * -cx_) return Status::unbounded;
    }
    return std::nullopt;
  }

  // Newton direction for target complementarity rc (cone part) and rkappa.
  void newton(double eta, const VectorXd& rc, double rkappa, const VectorXd& x1, const VectorXd& y1,
              const VectorXd& z1, double denom_base, Direction& d) const {
    const auto& k = sf_.cones;
    const VectorXd w_lrc = detail::apply_w(k, sc_, detail::jordan_divide(k, sc_.lambda, rc));
    VectorXd x2, y2, z2;
    kkt_.solve(-eta * rx_, -eta * ry_, -eta * rz_ - w_lrc, x2, y2, z2);
    const double tau = cur_.tau;
    const double num = eta * rtau_ + rkappa / tau + sf_.c.dot(x2) + sf_.b.dot(y2) + sf_.h.dot(z2);
    const double den = cur_.kappa / tau - denom_base;
    d.tau = num / den;
    d.x = x2 + d.tau * x1;
    d.y = y2 + d.tau * y1;
    d.z = z2 + d.tau * z1;
    d.s = w_lrc - detail::apply_w2(k, sc_, d.z);
    d.kappa = (rkappa - cur_.kappa * d.tau) / tau;
  }

  double step_length(const Direction& d) const {
    const auto& k = sf_.cones;
    double a = std::min(detail::max_step(k, cur_.s, d.s), detail::max_step(k, cur_.z, d.z));
    if (d.tau < 0.0) a = std::min(a, -cur_.tau / d.tau);
    if (d.kappa < 0.0) a = std::min(a, -cur_.kappa / d.kappa);
    return std::min(a, 1.0);
  }

  ConicSolution finish(Status st) {
    ConicSolution sol;
    if (st == Status::infeasible) {
      sol = extract(prog_, sf_, VectorXd::Zero(sf_.n), cur_.y, cur_.z, -by_hz_);
      sol.x.setConstant(std::numeric_limits<double>::quiet_NaN());
      sol.objective = std::numeric_limits<double>::infinity();
    } else if (st == Status::unbounded) {
      sol = extract(prog_, sf_, cur_.x, VectorXd::Zero(sf_.p), VectorXd::Zero(sf_.cones.rows), -cx_);
      sol.objective = -std::numeric_limits<double>::infinity();
    } else {
      sol = extract(prog_, sf_, cur_.x, cur_.y, cur_.z, cur_.tau);
      sol.residuals = check_kkt(prog_, sol).summary();
    }
    sol.status = st;
    sol.iterations = iterations_;
    return sol;
  }

  ConicSolution fail() {
    ConicSolution sol = extract(prog_, sf_, VectorXd::Zero(sf_.n), VectorXd::Zero(sf_.p),
                                VectorXd::Zero(sf_.cones.rows), 1.0);
    sol.status = Status::max_iter;
    sol.residuals = check_kkt(prog_, sol).summary();
    return sol;
  }

  const ConicProgram& prog_;
  SolverOptions opt_;
  StandardForm sf_;
  detail::KktSystem kkt_;
  detail::Scaling sc_;
  Iterate cur_, best_;
  double best_merit_ = 0.0;
  int iterations_ = 0;
  double norm_b_ = 0.0, norm_h_ = 0.0, norm_c_ = 0.0;
  VectorXd rx_, ry_, rz_;
  double cx_ = 0.0, by_hz_ = 0.0, rtau_ = 0.0;
};

}  // namespace

ConicSolution solve(const ConicProgram& p, const SolverOptions& options) {
  Hsde hsde(p, options);
  return hsde.run();
}

}  // namespace urllc::conic
