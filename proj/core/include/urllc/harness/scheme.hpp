#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "urllc/core/config.hpp"
#include "urllc/protocol/evaluation.hpp"
#include "urllc/protocol/targets.hpp"
#include "urllc/radio/channels.hpp"

namespace urllc::harness {

enum class SchemeId {
  proposed,               // leader-selection multicast, coherent relaying
  no_leader_selection,    // l1 slacks only, coherent relaying
  occupy_cow,             // one cell-wide beam, selection relaying
  occupy_cow_leaders,     // as above with the group penalty
  broadcast,              // unicast beams over the whole frame
  tdma,                   // one user per slot, MRT
  one_phase_multicast,    // per-group multicast over the whole frame
};

// Short names used on the command line and in output files: proposed, b1 ... b6.
std::string_view scheme_name(SchemeId s);
std::optional<SchemeId> parse_scheme(std::string_view name);
std::vector<SchemeId> all_schemes();

struct TrialOutcome {
  std::uint64_t trial = 0;
  SchemeId scheme = SchemeId::proposed;
  std::uint64_t channel_digest = 0;
  protocol::PhaseOutcome outcome;
  // The optimizer returned nothing usable; the trial counts as an outage.
  bool solver_failed = false;
  int restarts = 0;
  int sca_iterations = 0;
};

// Runs one scheme on an existing realization.
TrialOutcome run_scheme(const radio::ChannelSet& ch, const SystemConfig& cfg, SchemeId scheme,
                        std::uint64_t trial, protocol::RelayStrategy strategy = protocol::RelayStrategy::full);

// Draws realization `trial` of cfg.seed and runs the scheme on it.
TrialOutcome run_trial(const SystemConfig& cfg, SchemeId scheme, std::uint64_t trial,
                       protocol::RelayStrategy strategy = protocol::RelayStrategy::full);

}  // namespace urllc::harness
