#include <cmath>
#include <limits>
#include <stdexcept>

#include "detail.hpp"

namespace urllc::conic::detail {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

void push_row(Triplets& trip, int row, const AffineExpr& e, double sign) {
  for (const auto& t : e.terms) trip.emplace_back(row, t.var, sign * t.coef);
}

// (a - |b|)(a + |b|) without the cancellation of a^2 - |b|^2.
double hyperbolic(double a, double b_norm) { return (a - b_norm) * (a + b_norm); }

}  // namespace

StandardForm compile(const ConicProgram& prog) {
  if (auto errors = prog.structural_errors(); !errors.empty())
    throw std::invalid_argument("conic program: " + errors.front());

  StandardForm sf;
  sf.n = prog.num_vars;
  sf.p = static_cast<int>(prog.equalities.size());
  sf.c = prog.cost;

  Triplets a_trip;
  sf.b.resize(sf.p);
  for (int i = 0; i < sf.p; ++i) {
    push_row(a_trip, i, prog.equalities[i].expr, 1.0);
    sf.b[i] = -prog.equalities[i].expr.constant;
  }
  sf.A.resize(sf.p, sf.n);
  sf.A.setFromTriplets(a_trip.begin(), a_trip.end());

  auto& k = sf.cones;
  k.lp = static_cast<int>(prog.nonnegative.size() + prog.inequalities.size());
  int rows = k.lp;
  for (const auto& cone : prog.cones) {
    k.start.push_back(rows);
    k.dim.push_back(static_cast<int>(cone.tail.size()) + 1);
    rows += k.dim.back();
  }
  k.rows = rows;

  // Constraint expr(x) in K becomes h - Gx = expr(x): G row = -coef, h = constant.
  Triplets g_trip;
  sf.h = Eigen::VectorXd::Zero(rows);
  int row = 0;
  for (int j : prog.nonnegative) g_trip.emplace_back(row++, j, -1.0);
  for (const auto& ineq : prog.inequalities) {
    push_row(g_trip, row, ineq.expr, -1.0);
    sf.h[row++] = ineq.expr.constant;
  }
  for (const auto& cone : prog.cones) {
    push_row(g_trip, row, cone.head, -1.0);
    sf.h[row++] = cone.head.constant;
    for (const auto& e : cone.tail) {
      push_row(g_trip, row, e, -1.0);
      sf.h[row++] = e.constant;
    }
  }
  sf.G.resize(rows, sf.n);
  sf.G.setFromTriplets(g_trip.begin(), g_trip.end());
  sf.A.makeCompressed();
  sf.G.makeCompressed();
  return sf;
}

double min_eig(const ConeLayout& k, const Eigen::VectorXd& u) {
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i < k.lp; ++i) m = std::min(m, u[i]);
  for (int c = 0; c < k.num_cones(); ++c) {
    const int s = k.start[c];
    const int d = k.dim[c];
    m = std::min(m, u[s] - u.segment(s + 1, d - 1).norm());
  }
  return m;
}

double cone_violation(const ConeLayout& k, const Eigen::VectorXd& u) {
  return std::max(0.0, -min_eig(k, u));
}

double max_step(const ConeLayout& k, const Eigen::VectorXd& u, const Eigen::VectorXd& du) {
  const double inf = std::numeric_limits<double>::infinity();
  double alpha = inf;
  for (int i = 0; i < k.lp; ++i)
    if (du[i] < 0.0) alpha = std::min(alpha, -u[i] / du[i]);

  for (int c = 0; c < k.num_cones(); ++c) {
    const int s = k.start[c];
    const int d = k.dim[c];
    const double u0 = u[s];
    const double du0 = du[s];
    const auto u1 = u.segment(s + 1, d - 1);
    const auto du1 = du.segment(s + 1, d - 1);

    double block = inf;
    if (du0 < 0.0) block = -u0 / du0;

    const double qa = hyperbolic(du0, du1.norm());
    const double qb = 2.0 * (u0 * du0 - u1.dot(du1));
    const double qc = hyperbolic(u0, u1.norm());
    // First positive root of qa a^2 + qb a + qc, with qc > 0.
    double root = inf;
    if (qa == 0.0) {
      if (qb < 0.0) root = -qc / qb;
    } else {
      const double disc = qb * qb - 4.0 * qa * qc;
      if (disc >= 0.0) {
        const double q = -0.5 * (qb + std::copysign(std::sqrt(disc), qb));
        const double r1 = q / qa;
        const double r2 = q != 0.0 ? qc / q : inf;
        for (double r : {r1, r2})
          if (r > 0.0) root = std::min(root, r);
      }
    }
    alpha = std::min({alpha, block, root});
  }
  return alpha;
}

Eigen::VectorXd identity(const ConeLayout& k) {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(k.rows);
  e.head(k.lp).setOnes();
  for (int s : k.start) e[s] = 1.0;
  return e;
}

Eigen::VectorXd jordan_product(const ConeLayout& k, const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  Eigen::VectorXd out(k.rows);
  out.head(k.lp) = u.head(k.lp).cwiseProduct(v.head(k.lp));
  for (int c = 0; c < k.num_cones(); ++c) {
    const int s = k.start[c];
    const int d = k.dim[c];
    out[s] = u.segment(s, d).dot(v.segment(s, d));
    out.segment(s + 1, d - 1) = u[s] * v.segment(s + 1, d - 1) + v[s] * u.segment(s + 1, d - 1);
  }
  return out;
}

Eigen::VectorXd jordan_divide(const ConeLayout& k, const Eigen::VectorXd& lambda, const Eigen::VectorXd& v) {
  Eigen::VectorXd out(k.rows);
  out.head(k.lp) = v.head(k.lp).cwiseQuotient(lambda.head(k.lp));
  for (int c = 0; c < k.num_cones(); ++c) {
    const int s = k.start[c];
    const int d = k.dim[c];
    const double l0 = lambda[s];
    const auto l1 = lambda.segment(s + 1, d - 1);
    const auto v1 = v.segment(s + 1, d - 1);
    const double x0 = (l0 * v[s] - l1.dot(v1)) / hyperbolic(l0, l1.norm());
    out[s] = x0;
    out.segment(s + 1, d - 1) = (v1 - x0 * l1) / l0;
  }
  return out;
}

Scaling identity_scaling(const ConeLayout& k) {
  Scaling sc;
  sc.lp_w = Eigen::VectorXd::Ones(k.lp);
  for (int c = 0; c < k.num_cones(); ++c) {
    sc.eta.push_back(1.0);
    Eigen::VectorXd w = Eigen::VectorXd::Zero(k.dim[c]);
    w[0] = 1.0;
    sc.w.push_back(std::move(w));
  }
  sc.lambda = identity(k);
  return sc;
}

bool nt_scaling(const ConeLayout& k, const Eigen::VectorXd& s, const Eigen::VectorXd& z, Scaling& out) {
  out.lp_w.resize(k.lp);
  out.lambda.resize(k.rows);
  for (int i = 0; i < k.lp; ++i) {
    if (!(s[i] > 0.0) || !(z[i] > 0.0)) return false;
    out.lp_w[i] = std::sqrt(s[i] / z[i]);
    out.lambda[i] = std::sqrt(s[i] * z[i]);
  }
  out.eta.resize(k.num_cones());
  out.w.resize(k.num_cones());
  for (int c = 0; c < k.num_cones(); ++c) {
    const int st = k.start[c];
    const int d = k.dim[c];
    const auto sb = s.segment(st, d);
    const auto zb = z.segment(st, d);
    const double s_res = hyperbolic(sb[0], sb.tail(d - 1).norm());
    const double z_res = hyperbolic(zb[0], zb.tail(d - 1).norm());
    if (!(s_res > 0.0) || !(z_res > 0.0) || !(sb[0] > 0.0) || !(zb[0] > 0.0)) return false;
    const double s_norm = std::sqrt(s_res);
    const double z_norm = std::sqrt(z_res);
    const Eigen::VectorXd sn = sb / s_norm;
    const Eigen::VectorXd zn = zb / z_norm;
    const double gamma = std::sqrt(0.5 * (1.0 + sn.dot(zn)));
    Eigen::VectorXd w(d);
    w[0] = (sn[0] + zn[0]) / (2.0 * gamma);
    w.tail(d - 1) = (sn.tail(d - 1) - zn.tail(d - 1)) / (2.0 * gamma);
    out.w[c] = std::move(w);
    out.eta[c] = std::sqrt(s_norm / z_norm);
  }
  // lambda = W z, computed after the scalings are in place.
  Eigen::VectorXd lam = apply_w(k, out, z);
  out.lambda = std::move(lam);
  return true;
}

namespace {

// W / eta applied to one block: [a v0 + q'v1; v0 q + v1 + (q'v1)/(1+a) q].
void hyperbolic_apply(const Eigen::VectorXd& w, double eta, bool inverse, Eigen::Ref<const Eigen::VectorXd> v,
                      Eigen::Ref<Eigen::VectorXd> out) {
  const int d = static_cast<int>(w.size());
  const double a = w[0];
  const auto q = w.tail(d - 1);
  const double sign = inverse ? -1.0 : 1.0;
  const double qv = q.dot(v.tail(d - 1));
  const double scale = inverse ? 1.0 / eta : eta;
  const double head = a * v[0] + sign * qv;
  out.tail(d - 1) = scale * (v.tail(d - 1) + (sign * v[0] + qv / (1.0 + a)) * q);
  out[0] = scale * head;
}

}  // namespace

Eigen::VectorXd apply_w(const ConeLayout& k, const Scaling& sc, const Eigen::VectorXd& v) {
  Eigen::VectorXd out(k.rows);
  out.head(k.lp) = sc.lp_w.cwiseProduct(v.head(k.lp));
  for (int c = 0; c < k.num_cones(); ++c)
    hyperbolic_apply(sc.w[c], sc.eta[c], false, v.segment(k.start[c], k.dim[c]), out.segment(k.start[c], k.dim[c]));
  return out;
}

Eigen::VectorXd apply_w_inv(const ConeLayout& k, const Scaling& sc, const Eigen::VectorXd& v) {
  Eigen::VectorXd out(k.rows);
  out.head(k.lp) = v.head(k.lp).cwiseQuotient(sc.lp_w);
  for (int c = 0; c < k.num_cones(); ++c)
    hyperbolic_apply(sc.w[c], sc.eta[c], true, v.segment(k.start[c], k.dim[c]), out.segment(k.start[c], k.dim[c]));
  return out;
}

Eigen::VectorXd apply_w2(const ConeLayout& k, const Scaling& sc, const Eigen::VectorXd& v) {
  Eigen::VectorXd out(k.rows);
  out.head(k.lp) = sc.lp_w.cwiseAbs2().cwiseProduct(v.head(k.lp));
  for (int c = 0; c < k.num_cones(); ++c) {
    const int s = k.start[c];
    const int d = k.dim[c];
    const auto& w = sc.w[c];
    const auto vb = v.segment(s, d);
    const double e2 = sc.eta[c] * sc.eta[c];
    // eta^2 (2 w w' - J) v
    auto ob = out.segment(s, d);
    ob = (2.0 * w.dot(vb)) * w;
    ob[0] -= vb[0];
    ob.tail(d - 1) += vb.tail(d - 1);
    ob *= e2;
  }
  return out;
}

Eigen::VectorXd apply_w_inv2(const ConeLayout& k, const Scaling& sc, const Eigen::VectorXd& v) {
  Eigen::VectorXd out(k.rows);
  out.head(k.lp) = v.head(k.lp).cwiseQuotient(sc.lp_w.cwiseAbs2());
  for (int c = 0; c < k.num_cones(); ++c) {
    const int s = k.start[c];
    const int d = k.dim[c];
    Eigen::VectorXd jw = sc.w[c];
    jw.tail(d - 1) *= -1.0;
    const auto vb = v.segment(s, d);
    // (2 Jw (Jw)' - J) v / eta^2
    auto ob = out.segment(s, d);
    ob = (2.0 * jw.dot(vb)) * jw;
    ob[0] -= vb[0];
    ob.tail(d - 1) += vb.tail(d - 1);
    ob /= sc.eta[c] * sc.eta[c];
  }
  return out;
}

}  // namespace urllc::conic::detail
