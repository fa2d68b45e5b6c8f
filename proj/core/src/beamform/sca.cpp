#include "urllc/beamform/sca.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "urllc/beamform/initialization.hpp"
#include "urllc/conic/kkt.hpp"

namespace urllc::beamform {

std::vector<double> ScaTrace::objectives() const {
  std::vector<double> out;
  for (const auto& it : iterations) out.push_back(it.objective);
  return out;
}

bool ScaTrace::monotone(double slack) const {
  double prev = initial_objective;
  for (const auto& it : iterations) {
    if (!it.accepted) continue;
    if (it.objective > prev + slack) return false;
    prev = it.objective;
  }
  return true;
}

namespace {

struct Objective {
  const GroupLayout& layout;
  const std::vector<double>& beta;
  ScaMode mode;

  double operator()(const Eigen::VectorXd& t) const {
    return t.sum() + (mode == ScaMode::leader_penalty ? penalty(t, layout, beta) : 0.0);
  }
};

std::vector<double> group_min(const Eigen::VectorXd& t, const GroupLayout& layout) {
  std::vector<double> out(layout.num_groups());
  for (int n = 0; n < layout.num_groups(); ++n) out[n] = t.segment(layout.offset(n), layout.size(n)).minCoeff();
  return out;
}

// Slacks within the floor count as met: the optimizer's target carries a
// margin well above the floor, so the true SINR clears the true target.
Eigen::VectorXd snapped_slack(const NormalizedProblem& p, const std::vector<Eigen::VectorXcd>& v, double floor) {
  Eigen::VectorXd t = exact_slack(p, v);
  for (auto& x : t)
    if (x <= floor) x = 0.0;
  return t;
}

bool usable(const conic::ConicSolution& s) {
  if (s.status == conic::Status::optimal) return true;
  return s.status == conic::Status::max_iter && s.residuals.max() <= 1e-6;
}

}  // namespace

ScaResult run_sca_from(const NormalizedProblem& p, const std::vector<Eigen::VectorXcd>& start,
                       const SystemConfig& cfg, ScaMode mode, BeamVariant variant) {
  const GroupLayout layout = cfg.layout();
  const auto& opt = cfg.sca;
  const Objective objective{layout, cfg.penalty_weights, mode};

  std::vector<Eigen::VectorXcd> v = start;
  Eigen::VectorXd t = snapped_slack(p, v, opt.slack_floor);
  double f = objective(t);

  ScaResult res;
  res.trace.initial_objective = f;
  conic::SolverOptions sopt;
  sopt.tol = opt.solver_tol;
  sopt.max_iter = opt.solver_max_iter;

  for (int it = 0; it < opt.max_iters; ++it) {
    if (f == 0.0) {
      res.trace.converged = true;
      break;
    }
    PenaltyLinearization lin;
    if (mode == ScaMode::leader_penalty)
      lin = linearize_penalty(t, layout, cfg.penalty_weights, opt.slack_floor);
    const Subproblem sp = build_subproblem(p, v, t, mode, mode == ScaMode::leader_penalty ? &lin : nullptr);

    ScaIteration rec;
    rec.frozen = mode == ScaMode::leader_penalty ? lin.frozen_count() : 0;
    rec.incumbent_violation = max_violation(sp.program, sp.pack(v, t));
    const auto sol = conic::solve(sp.program, sopt);
    rec.status = sol.status;
    rec.solver_iterations = sol.iterations;
    if (!usable(sol)) {
      rec.accepted = false;
      rec.objective = f;
      rec.kkt = std::numeric_limits<double>::infinity();
      res.trace.iterations.push_back(rec);
      if (it == 0) res.trace.failed = true;
      break;
    }
    rec.kkt = conic::check_kkt(sp.program, sol).max();

    auto v_new = sp.beams(sol.x);
    double power = 0.0;
    for (const auto& b : v_new) power += b.squaredNorm();
    if (power > 1.0) {
      // Interior-point tolerance can overshoot the budget by ~tol.
      const double s = 1.0 / std::sqrt(power);
      for (auto& b : v_new) b *= s;
      power = 1.0;
    }
    const Eigen::VectorXd t_sol = sp.slacks(sol.x);
    rec.surrogate = t_sol.sum() + (mode == ScaMode::leader_penalty ? lin.eval(t_sol) : 0.0);

    const Eigen::VectorXd t_new = snapped_slack(p, v_new, opt.slack_floor);
    const double f_new = objective(t_new);
    rec.objective = f_new;
    rec.power = power;
    rec.group_min_slack = group_min(t_new, layout);

    if (!(f_new <= f)) {
      // Solver noise only: the incumbent is feasible for the subproblem, so
      // an exact solve cannot do worse. Keep the incumbent and stop.
      rec.accepted = false;
      res.trace.iterations.push_back(rec);
      res.trace.converged = true;
      break;
    }
    res.trace.iterations.push_back(rec);
    const double change = f - f_new;
    v = std::move(v_new);
    t = t_new;
    f = f_new;
    if (change <= opt.rel_tol * std::abs(f + change) || f == 0.0) {
      res.trace.converged = true;
      break;
    }
  }

  res.beams = to_physical(p, v, variant);
  res.slack = t;
  return res;
}

namespace {

ScaResult run_with_restarts(const NormalizedProblem& p, const SystemConfig& cfg, ScaMode mode, BeamVariant variant,
                            std::uint64_t trial) {
  Rng rng = make_stream(cfg.seed, trial, Stream::restarts);
  ScaResult res;
  const auto zf = zero_forcing_init(p);
  int attempt = 0;
  for (; attempt <= cfg.sca.max_restarts; ++attempt) {
    std::vector<Eigen::VectorXcd> start;
    std::string name;
    if (attempt == 0 && zf) {
      start = *zf;
      name = "zero-forcing";
    } else if (attempt <= 1) {
      start = mrt_median_init(p);
      name = "mrt-median";
    } else {
      start = random_init(p, rng);
      name = "random";
    }
    res = run_sca_from(p, start, cfg, mode, variant);
    res.trace.init = name;
    if (!res.trace.failed) break;
  }
  res.trace.restarts = std::min(attempt, cfg.sca.max_restarts);
  return res;
}

}  // namespace

ScaResult run_sca(const radio::ChannelSet& ch, const std::vector<SinrTarget>& group_targets, const SystemConfig& cfg,
                  ScaMode mode, std::uint64_t trial) {
  const auto p = make_problem(ch, cfg, group_targets, BeamVariant::per_group);
  return run_with_restarts(p, cfg, mode, BeamVariant::per_group, trial);
}

ScaResult run_sca_single_beam(const radio::ChannelSet& ch, SinrTarget target, const SystemConfig& cfg,
                              bool with_leader_penalty, std::uint64_t trial) {
  const auto p = make_problem(ch, cfg, {target}, BeamVariant::single);
  return run_with_restarts(p, cfg, with_leader_penalty ? ScaMode::leader_penalty : ScaMode::l1_only,
                           BeamVariant::single, trial);
}

void write_trace_csv(std::ostream& out, const ScaTrace& trace) {
  const std::size_t groups = trace.iterations.empty() ? 0 : trace.iterations.front().group_min_slack.size();
  out << "iteration,objective,surrogate,status,solver_iterations,kkt,frozen,accepted";
  for (std::size_t n = 0; n < groups; ++n) out << ",min_slack_g" << n;
  out << '\n';
  out << "0," << trace.initial_objective << ",,,,,,";
  for (std::size_t n = 0; n < groups; ++n) out << ',';
  out << '\n';
  for (std::size_t i = 0; i < trace.iterations.size(); ++i) {
    const auto& it = trace.iterations[i];
    out << i + 1 << ',' << it.objective << ',' << it.surrogate << ',' << conic::to_string(it.status) << ','
        << it.solver_iterations << ',' << it.kkt << ',' << it.frozen << ',' << (it.accepted ? 1 : 0);
    for (std::size_t n = 0; n < groups; ++n)
      out << ',' << (n < it.group_min_slack.size() ? it.group_min_slack[n] : 0.0);
    out << '\n';
  }
}

}  // namespace urllc::beamform
