#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "urllc/beamform/problem.hpp"
#include "urllc/beamform/subproblem.hpp"
#include "urllc/conic/solver.hpp"
#include "urllc/core/config.hpp"
#include "urllc/core/units.hpp"
#include "urllc/radio/channels.hpp"

namespace urllc::beamform {

struct ScaIteration {
  double objective = 0.0;    // l1 + penalty at the exact slacks of the new point
  double surrogate = 0.0;    // subproblem objective at its solution
  double incumbent_violation = 0.0;  // of (v_hat, t_hat) in this subproblem
  double kkt = 0.0;          // check_kkt max of the subproblem solution
  double power = 0.0;        // ||v||^2 of the new point
  conic::Status status = conic::Status::optimal;
  int solver_iterations = 0;
  int frozen = 0;
  bool accepted = true;      // false when the step did not improve and was dropped
  std::vector<double> group_min_slack;
};

struct ScaTrace {
  double initial_objective = 0.0;
  std::vector<ScaIteration> iterations;
  bool converged = false;
  bool failed = false;  // no usable subproblem solution after all restarts
  int restarts = 0;
  std::string init;     // name of the initialization that produced the result

  std::vector<double> objectives() const;
  // Objective never rises by more than `slack` between accepted iterations.
  bool monotone(double slack) const;
};

struct ScaResult {
  BeamformerSet beams;
  Eigen::VectorXd slack;  // exact slacks at the returned beams
  ScaTrace trace;
};

// Per-group multicast beams (one stream per group). `mode` selects whether
// the group penalty is added to the l1 objective.
ScaResult run_sca(const radio::ChannelSet& ch, const std::vector<SinrTarget>& group_targets,
                  const SystemConfig& cfg, ScaMode mode, std::uint64_t trial = 0);

// One beam for the whole cell against a common target; the penalty still
// acts per group when requested.
ScaResult run_sca_single_beam(const radio::ChannelSet& ch, SinrTarget target, const SystemConfig& cfg,
                              bool with_leader_penalty, std::uint64_t trial = 0);

// Iterates on an already normalized problem from the given start.
ScaResult run_sca_from(const NormalizedProblem& p, const std::vector<Eigen::VectorXcd>& start,
                       const SystemConfig& cfg, ScaMode mode, BeamVariant variant);

// iteration,objective,surrogate,status,solver_iterations,kkt,frozen,accepted,min_slack_g0,...
void write_trace_csv(std::ostream& out, const ScaTrace& trace);

}  // namespace urllc::beamform
