#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "urllc/core/config.hpp"
#include "urllc/harness/campaign.hpp"

namespace urllc::harness {

struct Interval {
  double low = 0.0;
  double high = 1.0;
};

// Wilson score interval for a binomial proportion; z = 1.96 gives 95%.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054);

inline constexpr const char* kSummarySchema = "urllc-summary/1";

struct RunInfo {
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  protocol::RelayStrategy strategy = protocol::RelayStrategy::full;
};

// {"schema", "seed", "trials", "bits_per_user", "phase2_strategy",
//  "schemes": {name: {trials, successes, outages, failures, restarts,
//  probability, ci_low, ci_high, mean_success, mean_groups_with_leader}}}
std::string summary_json(const ReliabilityReport& report, const RunInfo& info);
// Same, with one entry per message size under "sweep".
std::string sweep_json(const std::vector<ReliabilityReport>& reports, const RunInfo& info);

// Per-trial rows in the protocol CSV layout, trial-major.
void write_trial_csv(std::ostream& out, const ReliabilityReport& report, int num_groups);

// D,scheme,probability,ci_low,ci_high
void write_plot_csv(std::ostream& out, const std::vector<ReliabilityReport>& reports);

// Human-readable table: reliability and mean successes per scheme.
void print_summary(std::ostream& out, const ReliabilityReport& report);

std::string_view to_string(protocol::RelayStrategy s);

}  // namespace urllc::harness
