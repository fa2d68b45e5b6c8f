#include "urllc/conic/kkt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace urllc::conic {

double KktReport::max() const {
  return std::max({primal_equality, primal_cone, stationarity, dual_cone, complementarity, gap});
}

KktResiduals KktReport::summary() const {
  return {std::max(primal_equality, primal_cone), std::max(stationarity, dual_cone), std::max(complementarity, gap)};
}

namespace {

double soc_violation(double head, double tail_norm) { return std::max(0.0, tail_norm - head); }

void check_sizes(const ConicProgram& p, const ConicSolution& s) {
  bool ok = s.x.size() == p.num_vars && p.cost.size() == p.num_vars &&
            s.equality_duals.size() == static_cast<Eigen::Index>(p.equalities.size()) &&
            s.nonnegative_duals.size() == static_cast<Eigen::Index>(p.nonnegative.size()) &&
            s.inequality_duals.size() == static_cast<Eigen::Index>(p.inequalities.size()) &&
            s.cone_duals.size() == p.cones.size();
  for (std::size_t c = 0; ok && c < p.cones.size(); ++c)
    ok = s.cone_duals[c].size() == static_cast<Eigen::Index>(p.cones[c].tail.size() + 1);
  if (!ok) throw std::invalid_argument("check_kkt: solution does not match the program's dimensions");
}

}  // namespace

KktReport check_kkt(const ConicProgram& p, const ConicSolution& s) {
  check_sizes(p, s);
  KktReport r;
  const Eigen::VectorXd& x = s.x;
  Eigen::VectorXd grad = p.cost;
  double dual_obj = 0.0;
  double comp = 0.0;

  double eq_res = 0.0, eq_scale = 0.0;
  for (std::size_t i = 0; i < p.equalities.size(); ++i) {
    const auto& e = p.equalities[i].expr;
    const double y = s.equality_duals[static_cast<Eigen::Index>(i)];
    eq_res = std::max(eq_res, std::abs(e.eval(x)));
    eq_scale = std::max(eq_scale, std::abs(e.constant));
    for (const auto& t : e.terms) grad[t.var] += y * t.coef;
    dual_obj += y * e.constant;
  }
  r.primal_equality = eq_res / (1.0 + eq_scale);

  double cone_viol = 0.0, cone_scale = 0.0, dual_viol = 0.0;
  for (std::size_t i = 0; i < p.nonnegative.size(); ++i) {
    const int j = p.nonnegative[i];
    const double z = s.nonnegative_duals[static_cast<Eigen::Index>(i)];
    cone_viol = std::max(cone_viol, -x[j]);
    dual_viol = std::max(dual_viol, -z);
    grad[j] -= z;
    comp += z * x[j];
  }
  for (std::size_t i = 0; i < p.inequalities.size(); ++i) {
    const auto& e = p.inequalities[i].expr;
    const double z = s.inequality_duals[static_cast<Eigen::Index>(i)];
    const double v = e.eval(x);
    cone_viol = std::max(cone_viol, -v);
    cone_scale = std::max(cone_scale, std::abs(e.constant));
    dual_viol = std::max(dual_viol, -z);
    for (const auto& t : e.terms) grad[t.var] -= z * t.coef;
    dual_obj -= z * e.constant;
    comp += z * v;
  }
  for (std::size_t c = 0; c < p.cones.size(); ++c) {
    const auto& cone = p.cones[c];
    const Eigen::VectorXd& z = s.cone_duals[c];
    const auto d = static_cast<Eigen::Index>(cone.tail.size());
    Eigen::VectorXd v(d + 1);
    auto row = [&](Eigen::Index k) -> const AffineExpr& { return k == 0 ? cone.head : cone.tail[k - 1]; };
    for (Eigen::Index k = 0; k <= d; ++k) {
      const auto& e = row(k);
      v[k] = e.eval(x);
      cone_scale = std::max(cone_scale, std::abs(e.constant));
      for (const auto& t : e.terms) grad[t.var] -= z[k] * t.coef;
      dual_obj -= z[k] * e.constant;
    }
    cone_viol = std::max(cone_viol, soc_violation(v[0], v.tail(d).norm()));
    dual_viol = std::max(dual_viol, soc_violation(z[0], z.tail(d).norm()));
    comp += z.dot(v);
  }
  cone_viol = std::max(cone_viol, 0.0);
  dual_viol = std::max(dual_viol, 0.0);

  const double cnorm = p.cost.size() ? p.cost.lpNorm<Eigen::Infinity>() : 0.0;
  const double pobj = p.cost.dot(x);
  r.primal_cone = cone_viol / (1.0 + cone_scale);
  r.stationarity = (grad.size() ? grad.lpNorm<Eigen::Infinity>() : 0.0) / (1.0 + cnorm);
  r.dual_cone = dual_viol / (1.0 + cnorm);
  r.complementarity = std::abs(comp) / (1.0 + std::abs(pobj));
  r.gap = std::abs(pobj - dual_obj) / (1.0 + std::abs(pobj));
  return r;
}

}  // namespace urllc::conic
