#pragma once

#include <vector>

#include <Eigen/Dense>

#include "urllc/conic/program.hpp"
#include "urllc/core/config.hpp"
#include "urllc/core/units.hpp"
#include "urllc/radio/channels.hpp"

namespace urllc::beamform {

enum class BeamVariant { per_group, single, per_user };

struct BeamformerSet {
  BeamVariant variant = BeamVariant::per_group;
  std::vector<Eigen::VectorXcd> beams;  // watts^(1/2)

  double total_power() const;
};

// Multi-stream downlink in normalized units: channels scaled by
// sqrt(P_BS / I_k), beams by 1/sqrt(P_BS), so the power budget is ||v|| <= 1
// and user k's SINR is |h_k^T v_s|^2 / (sum_{j != s} |h_k^T v_j|^2 + 1).
struct NormalizedProblem {
  std::vector<Eigen::VectorXcd> channels;
  std::vector<int> stream_of;  // stream decoded by each user
  int num_streams = 0;
  Eigen::VectorXd target;  // per user, linear, margin included
  double bs_power_w = 0.0;

  int num_users() const { return static_cast<int>(channels.size()); }
  int num_antennas() const { return channels.empty() ? 0 : static_cast<int>(channels.front().size()); }
};

// Per-group streams (stream = group) or one common stream for the whole cell.
NormalizedProblem make_problem(const radio::ChannelSet& ch, const SystemConfig& cfg,
                               const std::vector<SinrTarget>& group_targets, BeamVariant variant);

// Exact quantities in normalized units.
Eigen::VectorXd normalized_sinr(const NormalizedProblem& p, const std::vector<Eigen::VectorXcd>& v);
// Smallest slack satisfying the unlinearized constraint:
//   max(0, sum_{j != s} |h^T v_j|^2 + 1 - |h^T v_s|^2 / target).
Eigen::VectorXd exact_slack(const NormalizedProblem& p, const std::vector<Eigen::VectorXcd>& v);

BeamformerSet to_physical(const NormalizedProblem& p, const std::vector<Eigen::VectorXcd>& v, BeamVariant variant);

}  // namespace urllc::beamform
