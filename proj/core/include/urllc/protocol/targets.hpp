#pragma once

#include <vector>

#include "urllc/core/config.hpp"
#include "urllc/core/units.hpp"

namespace urllc::protocol {

// What a Phase-II relay forwards: the whole group packet, or only the
// messages of the group members that failed in Phase I.
enum class RelayStrategy { full, residual };

// Group packet over the Phase-I symbols.
std::vector<SinrTarget> phase1_targets(const SystemConfig& cfg);

// Per group, over the Phase-II symbols. `leader` is per user.
std::vector<SinrTarget> phase2_targets(const SystemConfig& cfg, const std::vector<bool>& leader,
                                       RelayStrategy strategy);

// Single-group multicast of every user's message (Occupy CoW).
SinrTarget common_phase1_target(const SystemConfig& cfg);
// Messages of all Phase-I failures in the cell over the Phase-II symbols.
SinrTarget common_phase2_target(const SystemConfig& cfg, const std::vector<bool>& leader);

// Group packet over the whole frame (one-phase multicast).
std::vector<SinrTarget> one_phase_targets(const SystemConfig& cfg);

// Each user's own message over the whole frame (unicast broadcasting).
std::vector<SinrTarget> broadcast_targets(const SystemConfig& cfg);

// Each user's message in a 1/K share of the frame (TDMA).
std::vector<SinrTarget> tdma_targets(const SystemConfig& cfg);

}  // namespace urllc::protocol
