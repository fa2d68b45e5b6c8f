#pragma once

#include "urllc/conic/program.hpp"
#include "urllc/conic/solver.hpp"

namespace urllc::conic {

// Residuals recomputed from the program and the solution vectors alone.
// Each entry is normalized as noted; max() is what solve() compares to tol.
struct KktReport {
  double primal_equality = 0.0;  // |eq(x)|_inf / (1 + |eq constants|_inf)
  double primal_cone = 0.0;      // worst cone violation / (1 + |cone constants|_inf)
  double stationarity = 0.0;     // |c + A'y - sum z grad|_inf / (1 + |c|_inf)
  double dual_cone = 0.0;        // worst dual-cone violation / (1 + |c|_inf)
  double complementarity = 0.0;  // |sum z . con(x)| / (1 + |c'x|)
  double gap = 0.0;              // |primal - dual objective| / (1 + |c'x|)

  double max() const;
  KktResiduals summary() const;
};

KktReport check_kkt(const ConicProgram& p, const ConicSolution& s);

}  // namespace urllc::conic
