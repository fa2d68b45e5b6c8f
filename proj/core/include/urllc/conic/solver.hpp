#pragma once

#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "urllc/conic/program.hpp"

namespace urllc::conic {

enum class Status { optimal, infeasible, unbounded, max_iter };

std::string_view to_string(Status s);

struct KktResiduals {
  double primal = 0.0;
  double dual = 0.0;
  double gap = 0.0;

  double max() const;
};

struct ConicSolution {
  Status status = Status::max_iter;
  Eigen::VectorXd x;
  // Multipliers in the convention cost + sum_eq y_i grad(eq_i) - sum z_j grad(con_j) = 0
  // with every z in the dual cone.
  Eigen::VectorXd equality_duals;
  Eigen::VectorXd nonnegative_duals;
  Eigen::VectorXd inequality_duals;
  std::vector<Eigen::VectorXd> cone_duals;  // head first
  double objective = 0.0;
  KktResiduals residuals;
  int iterations = 0;
};

enum class LinearAlgebra {
  automatic,
  dense,     // Cholesky of the full normal matrix
  low_rank,  // sparse factor plus a low-rank correction for the cone heads
};

struct SolverOptions {
  double tol = 1e-7;
  int max_iter = 100;
  LinearAlgebra linear_algebra = LinearAlgebra::automatic;
};

// Homogeneous self-dual interior-point method with Nesterov-Todd scaling and
// Mehrotra correction. Throws std::invalid_argument on a malformed program.
ConicSolution solve(const ConicProgram& p, const SolverOptions& options = {});

}  // namespace urllc::conic
