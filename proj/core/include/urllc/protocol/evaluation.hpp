#pragma once

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "urllc/beamform/problem.hpp"
#include "urllc/core/config.hpp"
#include "urllc/protocol/targets.hpp"
#include "urllc/radio/channels.hpp"

namespace urllc::protocol {

struct PhaseOutcome {
  std::vector<bool> leader;  // Phase-I success
  std::vector<bool> relayed; // Phase-II success (Phase-I failures only)
  Eigen::VectorXd sinr1;
  Eigen::VectorXd sinr2;     // NaN where not evaluated
  std::vector<int> leaders_per_group;
  int success_count = 0;
  bool urllc = false;

  int groups_with_leader() const;
};

// Exact downlink SINR for every user. Per-group beams: user decodes its group's
// beam, the others interfere. Single beam: no intra-cell interference.
// Per-user beams: user decodes its own beam.
Eigen::VectorXd phase1_sinr(const radio::ChannelSet& ch, const beamform::BeamformerSet& beams,
                            const GroupLayout& layout);

// sinr >= target (closed boundary). Targets are per group.
std::vector<bool> phase1_indicators(const Eigen::VectorXd& sinr, const std::vector<SinrTarget>& targets,
                                    const GroupLayout& layout);

// Same-group leaders add as phasors at full power; other groups' leader sums
// interfere. NaN for leaders.
Eigen::VectorXd phase2_sinr_coherent(const radio::ChannelSet& ch, const std::vector<bool>& leader,
                                     const SystemConfig& cfg);

// Best single leader link anywhere in the cell. NaN for leaders.
Eigen::VectorXd phase2_sinr_selection(const radio::ChannelSet& ch, const std::vector<bool>& leader,
                                      const SystemConfig& cfg);

enum class Phase2Mode {
  coherent,   // per-group beams, group packets
  selection,  // one cell-wide beam and message (Occupy CoW)
};

PhaseOutcome evaluate_two_phase(const radio::ChannelSet& ch, const beamform::BeamformerSet& beams,
                                const SystemConfig& cfg, Phase2Mode mode, RelayStrategy strategy);

// Downlink only, whole frame: success iff Phase-I SINR meets the user's target.
PhaseOutcome evaluate_one_phase(const radio::ChannelSet& ch, const beamform::BeamformerSet& beams,
                                const std::vector<SinrTarget>& user_targets, const SystemConfig& cfg);

// Builds the counting fields from per-user success flags.
PhaseOutcome summarize(std::vector<bool> leader, std::vector<bool> relayed, const GroupLayout& layout);

// trial,scheme,success_count,urllc,leaders_g0,...
void write_csv_header(std::ostream& out, int num_groups);
void write_csv_row(std::ostream& out, std::uint64_t trial, std::string_view scheme, const PhaseOutcome& o);

}  // namespace urllc::protocol
