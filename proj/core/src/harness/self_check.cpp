#include "urllc/harness/self_check.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "urllc/beamform/penalty.hpp"
#include "urllc/beamform/sca.hpp"
#include "urllc/conic/kkt.hpp"
#include "urllc/conic/solver.hpp"
#include "urllc/core/rng.hpp"
#include "urllc/core/units.hpp"
#include "urllc/protocol/targets.hpp"
#include "urllc/radio/channels.hpp"

namespace urllc::harness {

namespace {

using conic::AffineExpr;
using conic::ConicProgram;

std::string residual_detail(const conic::ConicSolution& s) {
  std::ostringstream o;
  o << "status " << conic::to_string(s.status) << ", primal " << s.residuals.primal << ", dual "
    << s.residuals.dual << ", gap " << s.residuals.gap;
  return o.str();
}

CheckResult target_check(const char* name, double bits, double symbols, double lo_db, double hi_db) {
  const double db = min_sinr_target(bits, symbols).db();
  std::ostringstream o;
  o << bits << " bits over " << symbols << " symbols -> " << db << " dB";
  return {name, db >= lo_db && db <= hi_db, o.str()};
}

// min ||w|| s.t. Re(h^T w) >= sqrt(gamma): ||w|| = sqrt(gamma) / ||h||.
CheckResult min_norm_check(const SelfCheckOptions& opt, Rng& rng) {
  const int m = 4;
  Eigen::VectorXcd h(m);
  for (auto& x : h) x = complex_gaussian(rng);
  const double gamma = 3.0;

  ConicProgram p;
  const int t = p.add_variables(1);
  const int w = p.add_variables(2 * m);
  p.cost[t] = 1.0;
  conic::SocConstraint power;
  power.head = AffineExpr().add(t, 1.0);
  for (int i = 0; i < 2 * m; ++i) power.tail.push_back(AffineExpr().add(w + i, 1.0));
  p.cones.push_back(power);
  AffineExpr signal(-std::sqrt(gamma));
  for (int i = 0; i < m; ++i) signal.add(w + 2 * i, h[i].real()).add(w + 2 * i + 1, -h[i].imag());
  p.inequalities.push_back({signal, "signal"});

  conic::SolverOptions so;
  so.tol = std::min(1e-9, opt.tol);
  const auto sol = conic::solve(p, so);
  const double expect = std::sqrt(gamma) / h.norm();
  const double err = std::abs(sol.objective - expect);
  const bool ok = sol.status == conic::Status::optimal && err <= opt.tol && sol.residuals.max() <= opt.tol;
  std::ostringstream o;
  o << "objective error " << err << "; " << residual_detail(sol);
  return {"solver: minimum-norm beam", ok, o.str()};
}

CheckResult certificate_check() {
  ConicProgram infeasible;
  const int x = infeasible.add_variables(1);
  infeasible.cost[x] = 1.0;
  infeasible.inequalities.push_back({AffineExpr(-1.0).add(x, 1.0), "x >= 1"});
  infeasible.inequalities.push_back({AffineExpr().add(x, -1.0), "x <= 0"});

  ConicProgram unbounded;
  const int y = unbounded.add_variables(1);
  unbounded.cost[y] = 1.0;
  unbounded.inequalities.push_back({AffineExpr(1.0).add(y, -1.0), "y <= 1"});

  const auto a = conic::solve(infeasible);
  const auto b = conic::solve(unbounded);
  std::ostringstream o;
  o << "infeasible -> " << conic::to_string(a.status) << ", unbounded -> " << conic::to_string(b.status);
  return {"solver: certificates", a.status == conic::Status::infeasible && b.status == conic::Status::unbounded,
          o.str()};
}

// min c'x over the box |x_i| <= 1 intersected with a disc, against a grid
// search refined around its best point.
CheckResult grid_check(const SelfCheckOptions& opt, Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  std::string worst_detail = "none";
  bool ok = true;
  for (int trial = 0; trial < opt.random_programs; ++trial) {
    const Eigen::Vector2d c(u(rng), u(rng));
    const Eigen::Vector2d a(0.8 * u(rng), 0.8 * u(rng));
    const double r = 0.3 + 0.5 * (u(rng) + 1.0) / 2.0;

    ConicProgram p;
    p.add_variables(2);
    p.cost = c;
    for (int i = 0; i < 2; ++i) {
      p.inequalities.push_back({AffineExpr(1.0).add(i, -1.0), "upper"});
      p.inequalities.push_back({AffineExpr(1.0).add(i, 1.0), "lower"});
    }
    conic::SocConstraint disc;
    disc.head = AffineExpr(r);
    disc.tail = {AffineExpr(-a[0]).add(0, 1.0), AffineExpr(-a[1]).add(1, 1.0)};
    p.cones.push_back(disc);
    const auto sol = conic::solve(p);

    auto feasible = [&](const Eigen::Vector2d& x) {
      return std::abs(x[0]) <= 1.0 && std::abs(x[1]) <= 1.0 && (x - a).norm() <= r;
    };
    Eigen::Vector2d best = a;
    double step = 0.01;
    Eigen::Vector2d lo(-1.0, -1.0);
    int span = 200;
    for (int pass = 0; pass < 3; ++pass) {
      for (int i = 0; i <= span; ++i)
        for (int j = 0; j <= span; ++j) {
          const Eigen::Vector2d x = lo + step * Eigen::Vector2d(i, j);
          if (feasible(x) && c.dot(x) < c.dot(best)) best = x;
        }
      lo = best - Eigen::Vector2d::Constant(10.0 * step);
      step /= 10.0;
      span = 200;
    }
    const double err = std::abs(sol.objective - c.dot(best));
    if (sol.status != conic::Status::optimal || err > 1e-3) ok = false;
    if (err > worst || sol.status != conic::Status::optimal) {
      worst = std::max(worst, err);
      std::ostringstream o;
      o << "program " << trial << ": gap to grid " << err << "; " << residual_detail(sol);
      worst_detail = o.str();
    }
  }
  return {"solver: grid search", ok, worst_detail};
}

CheckResult penalty_check(Rng& rng) {
  const GroupLayout layout({3, 2});
  const std::vector<double> beta{8.0, 4.0};
  std::uniform_real_distribution<double> u(0.01, 2.0);
  bool ok = true;
  double worst_gap = 0.0;
  for (int i = 0; i < 1000 && ok; ++i) {
    Eigen::VectorXd t_hat(5), t(5);
    for (int k = 0; k < 5; ++k) {
      t_hat[k] = u(rng);
      t[k] = u(rng);
    }
    const auto lin = beamform::linearize_penalty(t_hat, layout, beta, 1e-8);
    const double gap = lin.eval(t) - beamform::penalty(t, layout, beta);
    worst_gap = std::min(worst_gap, gap);
    ok = gap >= -1e-12 && std::abs(lin.eval(t_hat) - beamform::penalty(t_hat, layout, beta)) <= 1e-12;
    Eigen::VectorXd z = t;
    z[1] = 0.0;
    z[4] = 0.0;
    ok = ok && beamform::penalty(z, layout, beta) == 0.0 && beamform::penalty(t, layout, beta) > 0.0;
  }
  std::ostringstream o;
  o << "most negative upper-bound gap " << worst_gap;
  return {"penalty: zero set and tangent bound", ok, o.str()};
}

CheckResult sca_check(const SystemConfig& cfg, const SelfCheckOptions& opt, std::uint64_t trial) {
  const auto real = radio::make_realization(cfg, trial);
  const auto r = beamform::run_sca(real.channels, protocol::phase1_targets(cfg), cfg,
                                   beamform::ScaMode::leader_penalty, trial);
  std::ostringstream o;
  bool ok = !r.trace.failed && r.trace.monotone(1e-6);
  double worst_violation = 0.0, last_kkt = std::numeric_limits<double>::infinity(), worst_power = 0.0;
  for (const auto& it : r.trace.iterations) {
    worst_violation = std::max(worst_violation, it.incumbent_violation);
    if (it.accepted) {
      last_kkt = it.kkt;
      worst_power = std::max(worst_power, it.power);
    }
  }
  ok = ok && worst_violation <= 1e-9 && last_kkt <= opt.tol && worst_power <= 1.0 + 1e-12 &&
       (r.slack.array() >= 0.0).all();
  o << "trial " << trial << ": " << r.trace.iterations.size() << " iterations, final kkt " << last_kkt
    << ", incumbent violation " << worst_violation << ", objective " << r.trace.initial_objective << " -> "
    << (r.trace.iterations.empty() ? r.trace.initial_objective : r.trace.objectives().back());
  return {"sca: monotone, feasible, stationary", ok, o.str()};
}

}  // namespace

std::vector<CheckResult> run_self_checks(const SystemConfig& cfg, const SelfCheckOptions& opt) {
  Rng rng = make_stream(opt.seed, 0, Stream::restarts);
  std::vector<CheckResult> out;
  out.push_back(target_check("target: 576 bits / 75 symbols", 576, 75, 23.09, 23.11));
  out.push_back(target_check("target: 1056 bits / 75 symbols", 1056, 75, 42.0, 42.8));
  out.push_back(min_norm_check(opt, rng));
  out.push_back(certificate_check());
  out.push_back(grid_check(opt, rng));
  out.push_back(penalty_check(rng));
  for (int i = 0; i < opt.sca_realizations; ++i) out.push_back(sca_check(cfg, opt, static_cast<std::uint64_t>(i)));
  return out;
}

}  // namespace urllc::harness
