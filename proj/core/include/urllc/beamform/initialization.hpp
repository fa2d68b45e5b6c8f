#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "urllc/beamform/problem.hpp"
#include "urllc/core/rng.hpp"

namespace urllc::beamform {

// Zero-forcing start that hands every stream one likely leader. One member
// per stream is picked by coordinate ascent on the common SINR that ZF
// toward the picked members can reach, then power is split so that all
// picked members sit at the same fraction of their target. Empty when there
// are more streams than antennas or the picked channels are rank deficient.
std::optional<std::vector<Eigen::VectorXcd>> zero_forcing_init(const NormalizedProblem& p, int passes = 3);

// MRT toward the member with the median channel norm of each stream, equal
// power per stream, full budget.
std::vector<Eigen::VectorXcd> mrt_median_init(const NormalizedProblem& p);

// Random isotropic directions at equal power.
std::vector<Eigen::VectorXcd> random_init(const NormalizedProblem& p, Rng& rng);

}  // namespace urllc::beamform
