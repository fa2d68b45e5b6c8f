#include "urllc/protocol/targets.hpp"

#include <stdexcept>

namespace urllc::protocol {

std::vector<SinrTarget> phase1_targets(const SystemConfig& cfg) {
  std::vector<SinrTarget> out;
  for (int n = 0; n < cfg.num_groups; ++n) out.push_back(min_sinr_target(cfg.group_bits(n), cfg.phase1_symbols()));
  return out;
}

std::vector<SinrTarget> phase2_targets(const SystemConfig& cfg, const std::vector<bool>& leader,
                                       RelayStrategy strategy) {
  const GroupLayout layout = cfg.layout();
  if (static_cast<int>(leader.size()) != layout.num_users())
    throw std::invalid_argument("phase2_targets: leader flags differ from user count");
  std::vector<SinrTarget> out;
  for (int n = 0; n < layout.num_groups(); ++n) {
    double bits = 0.0;
    for (int k = layout.offset(n); k < layout.offset(n) + layout.size(n); ++k)
      if (strategy == RelayStrategy::full || !leader[k]) bits += cfg.bits_per_user[k];
    out.push_back(min_sinr_target(bits, cfg.phase2_symbols()));
  }
  return out;
}

SinrTarget common_phase1_target(const SystemConfig& cfg) {
  return min_sinr_target(cfg.total_bits(), cfg.phase1_symbols());
}

SinrTarget common_phase2_target(const SystemConfig& cfg, const std::vector<bool>& leader) {
  if (leader.size() != cfg.bits_per_user.size())
    throw std::invalid_argument("common_phase2_target: leader flags differ from user count");
  double bits = 0.0;
  for (std::size_t k = 0; k < leader.size(); ++k)
    if (!leader[k]) bits += cfg.bits_per_user[k];
  return min_sinr_target(bits, cfg.phase2_symbols());
}

std::vector<SinrTarget> one_phase_targets(const SystemConfig& cfg) {
  std::vector<SinrTarget> out;
  for (int n = 0; n < cfg.num_groups; ++n) out.push_back(min_sinr_target(cfg.group_bits(n), cfg.frame_symbols()));
  return out;
}

std::vector<SinrTarget> broadcast_targets(const SystemConfig& cfg) {
  std::vector<SinrTarget> out;
  for (double bits : cfg.bits_per_user) out.push_back(min_sinr_target(bits, cfg.frame_symbols()));
  return out;
}

std::vector<SinrTarget> tdma_targets(const SystemConfig& cfg) {
  const double slot = cfg.frame_symbols() / static_cast<double>(cfg.bits_per_user.size());
  std::vector<SinrTarget> out;
  for (double bits : cfg.bits_per_user) out.push_back(min_sinr_target(bits, slot));
  return out;
}

}  // namespace urllc::protocol
