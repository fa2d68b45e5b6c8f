#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "urllc/beamform/penalty.hpp"
#include "urllc/beamform/problem.hpp"
#include "urllc/conic/program.hpp"

namespace urllc::beamform {

enum class ScaMode {
  leader_penalty,  // l1 plus the linearized group penalty
  l1_only,
};

// Convex restriction around (v_hat, t_hat): |h^T v_s|^2 is replaced by its
// tangent plane, so every feasible point of the subproblem satisfies the
// original constraint. The interference bound sum |.|^2 <= y uses
// ||[2x; y - 1]|| <= y + 1.
struct Subproblem {
  conic::ConicProgram program;
  int num_streams = 0;
  int num_antennas = 0;
  std::vector<int> slack_var;  // -1 when the slack is frozen to t_hat
  Eigen::VectorXd t_fixed;     // value used for frozen slacks

  // Variable index of Re / Im of antenna m in stream s.
  int re(int s, int m) const { return 2 * (s * num_antennas + m); }
  int im(int s, int m) const { return 2 * (s * num_antennas + m) + 1; }

  std::vector<Eigen::VectorXcd> beams(const Eigen::VectorXd& x) const;
  Eigen::VectorXd slacks(const Eigen::VectorXd& x) const;
  // Packs an incumbent into the variable vector.
  Eigen::VectorXd pack(const std::vector<Eigen::VectorXcd>& v, const Eigen::VectorXd& t) const;
};

// `lin` is required for leader_penalty and ignored for l1_only.
Subproblem build_subproblem(const NormalizedProblem& p, const std::vector<Eigen::VectorXcd>& v_hat,
                            const Eigen::VectorXd& t_hat, ScaMode mode, const PenaltyLinearization* lin);

// Largest violation of any constraint of the program at x (0 when feasible).
double max_violation(const conic::ConicProgram& p, const Eigen::VectorXd& x);

}  // namespace urllc::beamform
