#include "urllc/beamform/problem.hpp"

#include <cmath>
#include <stdexcept>

namespace urllc::beamform {

double BeamformerSet::total_power() const {
  double p = 0.0;
  for (const auto& w : beams) p += w.squaredNorm();
  return p;
}

NormalizedProblem make_problem(const radio::ChannelSet& ch, const SystemConfig& cfg,
                               const std::vector<SinrTarget>& group_targets, BeamVariant variant) {
  const GroupLayout layout = cfg.layout();
  const int k_users = ch.num_users();
  if (k_users != layout.num_users()) throw std::invalid_argument("make_problem: channel count differs from layout");
  if (group_targets.size() != 1 && static_cast<int>(group_targets.size()) != layout.num_groups())
    throw std::invalid_argument("make_problem: need one target or one per group");
  if (variant == BeamVariant::per_user) throw std::invalid_argument("make_problem: per-user beams use solve_broadcast");

  NormalizedProblem p;
  p.bs_power_w = cfg.bs_power_w();
  p.num_streams = variant == BeamVariant::per_group ? layout.num_groups() : 1;
  p.channels.resize(k_users);
  p.stream_of.resize(k_users);
  p.target.resize(k_users);
  for (int k = 0; k < k_users; ++k) {
    const int n = layout.group_of(k);
    p.channels[k] = ch.downlink[k] * std::sqrt(p.bs_power_w / ch.interference_phase1[k]);
    p.stream_of[k] = variant == BeamVariant::per_group ? n : 0;
    const double gamma = group_targets.size() == 1 ? group_targets[0].linear : group_targets[n].linear;
    p.target[k] = gamma * (1.0 + cfg.sca.target_margin);
  }
  return p;
}

namespace {

// Signal and interference power per user, normalized units.
void powers(const NormalizedProblem& p, const std::vector<Eigen::VectorXcd>& v, Eigen::VectorXd& sig,
            Eigen::VectorXd& intf) {
  const int k_users = p.num_users();
  sig.resize(k_users);
  intf.resize(k_users);
  for (int k = 0; k < k_users; ++k) {
    double s = 0.0, in = 0.0;
    for (int j = 0; j < p.num_streams; ++j) {
      const double g = std::norm(radio::response(p.channels[k], v[j]));
      if (j == p.stream_of[k]) s = g;
      else in += g;
    }
    sig[k] = s;
    intf[k] = in;
  }
}

}  // namespace

Eigen::VectorXd normalized_sinr(const NormalizedProblem& p, const std::vector<Eigen::VectorXcd>& v) {
  Eigen::VectorXd sig, intf;
  powers(p, v, sig, intf);
  return sig.array() / (intf.array() + 1.0);
}

Eigen::VectorXd exact_slack(const NormalizedProblem& p, const std::vector<Eigen::VectorXcd>& v) {
  Eigen::VectorXd sig, intf;
  powers(p, v, sig, intf);
  Eigen::VectorXd t(p.num_users());
  for (int k = 0; k < p.num_users(); ++k)
    t[k] = p.target[k] > 0.0 ? std::max(0.0, intf[k] + 1.0 - sig[k] / p.target[k]) : 0.0;
  return t;
}

BeamformerSet to_physical(const NormalizedProblem& p, const std::vector<Eigen::VectorXcd>& v, BeamVariant variant) {
  BeamformerSet out;
  out.variant = variant;
  const double scale = std::sqrt(p.bs_power_w);
  for (const auto& b : v) out.beams.push_back(b * scale);
  return out;
}

}  // namespace urllc::beamform
