#include "urllc/protocol/tdma.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "urllc/protocol/targets.hpp"

namespace urllc::protocol {

TdmaPlan plan_tdma(const radio::ChannelSet& ch, const SystemConfig& cfg) {
  const int k_users = ch.num_users();
  const auto targets = tdma_targets(cfg);
  TdmaPlan plan;
  plan.power.resize(k_users);
  for (int k = 0; k < k_users; ++k)
    plan.power[k] = targets[k].linear * ch.interference_phase1[k] / ch.downlink[k].squaredNorm();

  std::vector<int> order(k_users);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return plan.power[a] < plan.power[b]; });
  plan.admitted.assign(k_users, false);
  const double budget = cfg.bs_power_w();
  double used = 0.0;
  int admitted = 0;
  for (int k : order) {
    if (used + plan.power[k] > budget) break;
    used += plan.power[k];
    plan.admitted[k] = true;
    ++admitted;
  }
  plan.feasible = admitted == k_users;
  return plan;
}

PhaseOutcome evaluate_tdma(const radio::ChannelSet& ch, const SystemConfig& cfg) {
  const TdmaPlan plan = plan_tdma(ch, cfg);
  const GroupLayout layout = cfg.layout();
  PhaseOutcome o = summarize(plan.admitted, std::vector<bool>(ch.num_users(), false), layout);
  const auto targets = tdma_targets(cfg);
  o.sinr1.resize(ch.num_users());
  // Each admitted user sits exactly at its target; the rest get nothing.
  for (int k = 0; k < ch.num_users(); ++k) o.sinr1[k] = plan.admitted[k] ? targets[k].linear : 0.0;
  o.sinr2 = Eigen::VectorXd::Constant(ch.num_users(), std::numeric_limits<double>::quiet_NaN());
  return o;
}

}  // namespace urllc::protocol
