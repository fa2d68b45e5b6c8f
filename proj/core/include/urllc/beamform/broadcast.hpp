#pragma once

#include <vector>

#include <Eigen/Dense>

#include "urllc/beamform/problem.hpp"
#include "urllc/conic/solver.hpp"
#include "urllc/core/config.hpp"
#include "urllc/core/units.hpp"
#include "urllc/radio/channels.hpp"

namespace urllc::beamform {

struct BroadcastResult {
  BeamformerSet beams;     // one beam per user
  Eigen::VectorXd slack;   // solver slacks, normalized units
  conic::Status status = conic::Status::optimal;
  double kkt = 0.0;
  bool ok = false;
};

// Unicast beams with an l1 slack objective. Each user's own beam is rotated
// so that h_k^T w_k is real, which makes the SINR constraint a plain
// second-order cone:
//   Re(h_k^T v_k) / sqrt(target_k) + t_k >= || [h_k^T v_i (i != k); 1] ||.
BroadcastResult solve_broadcast(const radio::ChannelSet& ch, const std::vector<SinrTarget>& user_targets,
                                const SystemConfig& cfg);

}  // namespace urllc::beamform
