#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "urllc/core/config.hpp"

namespace urllc::harness {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SelfCheckOptions {
  // Bound on solver residuals and on analytic mismatches.
  double tol = 1e-6;
  int random_programs = 20;
  int sca_realizations = 3;
  std::uint64_t seed = 7;
};

// Target arithmetic, conic solver against closed forms and grid search,
// penalty bounds, and SCA invariants on a few realizations of cfg.
std::vector<CheckResult> run_self_checks(const SystemConfig& cfg, const SelfCheckOptions& opt = {});

}  // namespace urllc::harness
