#include "urllc/protocol/evaluation.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace urllc::protocol {

using radio::response;

int PhaseOutcome::groups_with_leader() const {
  int c = 0;
  for (int l : leaders_per_group) c += l > 0;
  return c;
}

Eigen::VectorXd phase1_sinr(const radio::ChannelSet& ch, const beamform::BeamformerSet& beams,
                            const GroupLayout& layout) {
  const int k_users = ch.num_users();
  Eigen::VectorXd sinr(k_users);
  for (int k = 0; k < k_users; ++k) {
    int own = 0;
    switch (beams.variant) {
      case beamform::BeamVariant::per_group: own = layout.group_of(k); break;
      case beamform::BeamVariant::single: own = 0; break;
      case beamform::BeamVariant::per_user: own = k; break;
    }
    double sig = 0.0, intf = 0.0;
    for (int j = 0; j < static_cast<int>(beams.beams.size()); ++j) {
      const double g = std::norm(response(ch.downlink[k], beams.beams[j]));
      if (j == own) sig = g;
      else intf += g;
    }
    sinr[k] = sig / (intf + ch.interference_phase1[k]);
  }
  return sinr;
}

std::vector<bool> phase1_indicators(const Eigen::VectorXd& sinr, const std::vector<SinrTarget>& targets,
                                    const GroupLayout& layout) {
  std::vector<bool> out(sinr.size());
  for (int k = 0; k < sinr.size(); ++k) out[k] = sinr[k] >= targets[layout.group_of(k)].linear;
  return out;
}

Eigen::VectorXd phase2_sinr_coherent(const radio::ChannelSet& ch, const std::vector<bool>& leader,
                                     const SystemConfig& cfg) {
  const GroupLayout layout = cfg.layout();
  const double amp = std::sqrt(cfg.user_power_w());
  const int k_users = ch.num_users();
  Eigen::VectorXd sinr = Eigen::VectorXd::Constant(k_users, std::numeric_limits<double>::quiet_NaN());
  for (int k = 0; k < k_users; ++k) {
    if (leader[k]) continue;
    const int n = layout.group_of(k);
    double sig = 0.0, intf = 0.0;
    for (int j = 0; j < layout.num_groups(); ++j) {
      std::complex<double> sum = 0.0;
      for (int i = layout.offset(j); i < layout.offset(j) + layout.size(j); ++i)
        if (leader[i] && i != k) sum += ch.d2d(k, i) * amp;
      if (j == n) sig = std::norm(sum);
      else intf += std::norm(sum);
    }
    sinr[k] = sig / (intf + ch.interference_phase2[k]);
  }
  return sinr;
}

Eigen::VectorXd phase2_sinr_selection(const radio::ChannelSet& ch, const std::vector<bool>& leader,
                                      const SystemConfig& cfg) {
  const double p = cfg.user_power_w();
  const int k_users = ch.num_users();
  Eigen::VectorXd sinr = Eigen::VectorXd::Constant(k_users, std::numeric_limits<double>::quiet_NaN());
  for (int k = 0; k < k_users; ++k) {
    if (leader[k]) continue;
    double best = 0.0;
    for (int i = 0; i < k_users; ++i)
      if (leader[i] && i != k) best = std::max(best, p * std::norm(ch.d2d(k, i)) / ch.interference_phase2[k]);
    sinr[k] = best;
  }
  return sinr;
}

PhaseOutcome summarize(std::vector<bool> leader, std::vector<bool> relayed, const GroupLayout& layout) {
  PhaseOutcome o;
  o.leader = std::move(leader);
  o.relayed = std::move(relayed);
  o.leaders_per_group.assign(layout.num_groups(), 0);
  for (int k = 0; k < layout.num_users(); ++k) {
    if (o.leader[k]) ++o.leaders_per_group[layout.group_of(k)];
    o.success_count += o.leader[k] || o.relayed[k];
  }
  o.urllc = o.success_count == layout.num_users();
  return o;
}

PhaseOutcome evaluate_two_phase(const radio::ChannelSet& ch, const beamform::BeamformerSet& beams,
                                const SystemConfig& cfg, Phase2Mode mode, RelayStrategy strategy) {
  const GroupLayout layout = cfg.layout();
  const int k_users = ch.num_users();
  const Eigen::VectorXd sinr1 = phase1_sinr(ch, beams, layout);

  std::vector<SinrTarget> t1 = mode == Phase2Mode::coherent
                                   ? phase1_targets(cfg)
                                   : std::vector<SinrTarget>(layout.num_groups(), common_phase1_target(cfg));
  std::vector<bool> leader = phase1_indicators(sinr1, t1, layout);

  Eigen::VectorXd sinr2;
  std::vector<SinrTarget> t2;
  if (mode == Phase2Mode::coherent) {
    sinr2 = phase2_sinr_coherent(ch, leader, cfg);
    t2 = phase2_targets(cfg, leader, strategy);
  } else {
    sinr2 = phase2_sinr_selection(ch, leader, cfg);
    t2.assign(layout.num_groups(), common_phase2_target(cfg, leader));
  }
  std::vector<bool> relayed(k_users, false);
  for (int k = 0; k < k_users; ++k)
    relayed[k] = !leader[k] && sinr2[k] >= t2[layout.group_of(k)].linear;

  PhaseOutcome o = summarize(std::move(leader), std::move(relayed), layout);
  o.sinr1 = sinr1;
  o.sinr2 = sinr2;
  return o;
}

PhaseOutcome evaluate_one_phase(const radio::ChannelSet& ch, const beamform::BeamformerSet& beams,
                                const std::vector<SinrTarget>& user_targets, const SystemConfig& cfg) {
  const GroupLayout layout = cfg.layout();
  const int k_users = ch.num_users();
  if (static_cast<int>(user_targets.size()) != k_users)
    throw std::invalid_argument("evaluate_one_phase: need one target per user");
  const Eigen::VectorXd sinr1 = phase1_sinr(ch, beams, layout);
  std::vector<bool> ok(k_users);
  for (int k = 0; k < k_users; ++k) ok[k] = sinr1[k] >= user_targets[k].linear;
  PhaseOutcome o = summarize(std::move(ok), std::vector<bool>(k_users, false), layout);
  o.sinr1 = sinr1;
  o.sinr2 = Eigen::VectorXd::Constant(k_users, std::numeric_limits<double>::quiet_NaN());
  return o;
}

void write_csv_header(std::ostream& out, int num_groups) {
  out << "trial,scheme,success_count,urllc";
  for (int n = 0; n < num_groups; ++n) out << ",leaders_g" << n;
  out << '\n';
}

void write_csv_row(std::ostream& out, std::uint64_t trial, std::string_view scheme, const PhaseOutcome& o) {
  out << trial << ',' << scheme << ',' << o.success_count << ',' << (o.urllc ? 1 : 0);
  for (int l : o.leaders_per_group) out << ',' << l;
  out << '\n';
}

}  // namespace urllc::protocol
