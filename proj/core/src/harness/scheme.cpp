#include "urllc/harness/scheme.hpp"

#include <array>

#include "urllc/beamform/broadcast.hpp"
#include "urllc/beamform/sca.hpp"
#include "urllc/protocol/tdma.hpp"

namespace urllc::harness {

namespace {

constexpr std::array<std::pair<SchemeId, std::string_view>, 7> kNames{{
    {SchemeId::proposed, "proposed"},
    {SchemeId::no_leader_selection, "b1"},
    {SchemeId::occupy_cow, "b2"},
    {SchemeId::occupy_cow_leaders, "b3"},
    {SchemeId::broadcast, "b4"},
    {SchemeId::tdma, "b5"},
    {SchemeId::one_phase_multicast, "b6"},
}};

protocol::PhaseOutcome outage(const SystemConfig& cfg) {
  const int k = cfg.num_users();
  return protocol::summarize(std::vector<bool>(k, false), std::vector<bool>(k, false), cfg.layout());
}

void record_sca(TrialOutcome& out, const beamform::ScaResult& r) {
  out.solver_failed = r.trace.failed;
  out.restarts = r.trace.restarts;
  out.sca_iterations = static_cast<int>(r.trace.iterations.size());
}

}  // namespace

std::string_view scheme_name(SchemeId s) {
  for (const auto& [id, name] : kNames)
    if (id == s) return name;
  return "unknown";
}

std::optional<SchemeId> parse_scheme(std::string_view name) {
  for (const auto& [id, n] : kNames)
    if (n == name) return id;
  return std::nullopt;
}

std::vector<SchemeId> all_schemes() {
  std::vector<SchemeId> out;
  for (const auto& entry : kNames) out.push_back(entry.first);
  return out;
}

TrialOutcome run_scheme(const radio::ChannelSet& ch, const SystemConfig& cfg, SchemeId scheme,
                        std::uint64_t trial, protocol::RelayStrategy strategy) {
  using beamform::ScaMode;
  using protocol::Phase2Mode;

  TrialOutcome out;
  out.trial = trial;
  out.scheme = scheme;
  out.channel_digest = radio::digest(ch);

  switch (scheme) {
    case SchemeId::proposed:
    case SchemeId::no_leader_selection: {
      const auto mode = scheme == SchemeId::proposed ? ScaMode::leader_penalty : ScaMode::l1_only;
      const auto r = beamform::run_sca(ch, protocol::phase1_targets(cfg), cfg, mode, trial);
      record_sca(out, r);
      if (!out.solver_failed)
        out.outcome = protocol::evaluate_two_phase(ch, r.beams, cfg, Phase2Mode::coherent, strategy);
      break;
    }
    case SchemeId::occupy_cow:
    case SchemeId::occupy_cow_leaders: {
      const bool penalty = scheme == SchemeId::occupy_cow_leaders;
      const auto r = beamform::run_sca_single_beam(ch, protocol::common_phase1_target(cfg), cfg, penalty, trial);
      record_sca(out, r);
      if (!out.solver_failed)
        out.outcome = protocol::evaluate_two_phase(ch, r.beams, cfg, Phase2Mode::selection, strategy);
      break;
    }
    case SchemeId::broadcast: {
      const auto targets = protocol::broadcast_targets(cfg);
      const auto r = beamform::solve_broadcast(ch, targets, cfg);
      out.solver_failed = !r.ok;
      if (r.ok) out.outcome = protocol::evaluate_one_phase(ch, r.beams, targets, cfg);
      break;
    }
    case SchemeId::tdma:
      out.outcome = protocol::evaluate_tdma(ch, cfg);
      break;
    case SchemeId::one_phase_multicast: {
      const auto group_targets = protocol::one_phase_targets(cfg);
      const auto r = beamform::run_sca(ch, group_targets, cfg, ScaMode::l1_only, trial);
      record_sca(out, r);
      if (!out.solver_failed) {
        const GroupLayout layout = cfg.layout();
        std::vector<SinrTarget> per_user(layout.num_users());
        for (int k = 0; k < layout.num_users(); ++k) per_user[k] = group_targets[layout.group_of(k)];
        out.outcome = protocol::evaluate_one_phase(ch, r.beams, per_user, cfg);
      }
      break;
    }
  }
  if (out.solver_failed) out.outcome = outage(cfg);
  return out;
}

TrialOutcome run_trial(const SystemConfig& cfg, SchemeId scheme, std::uint64_t trial,
                       protocol::RelayStrategy strategy) {
  const auto real = radio::make_realization(cfg, trial);
  return run_scheme(real.channels, cfg, scheme, trial, strategy);
}

}  // namespace urllc::harness
