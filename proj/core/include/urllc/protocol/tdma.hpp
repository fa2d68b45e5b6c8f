#pragma once

#include <vector>

#include <Eigen/Dense>

#include "urllc/core/config.hpp"
#include "urllc/protocol/evaluation.hpp"
#include "urllc/radio/channels.hpp"

namespace urllc::protocol {

struct TdmaPlan {
  Eigen::VectorXd power;      // minimum MRT power per user, watts
  std::vector<bool> admitted;
  bool feasible = false;      // every user fits in the power budget
};

// p_k = target_k * I_k / ||h_k||^2. When the sum exceeds P_BS, users are
// admitted in increasing order of p_k until the budget binds.
TdmaPlan plan_tdma(const radio::ChannelSet& ch, const SystemConfig& cfg);

// URLLC only when every user is admitted; success_count counts admitted users.
PhaseOutcome evaluate_tdma(const radio::ChannelSet& ch, const SystemConfig& cfg);

}  // namespace urllc::protocol
