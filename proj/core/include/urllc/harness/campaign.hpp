#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "urllc/core/config.hpp"
#include "urllc/harness/scheme.hpp"
#include "urllc/protocol/targets.hpp"

namespace urllc::harness {

struct CampaignOptions {
  std::vector<SchemeId> schemes = all_schemes();
  std::uint64_t trials = 300;
  // 0 uses std::thread::hardware_concurrency().
  unsigned workers = 0;
  protocol::RelayStrategy strategy = protocol::RelayStrategy::full;
  // Called from worker threads after each finished trial (all schemes, all D).
  std::function<void(std::uint64_t done, std::uint64_t total)> progress;
};

struct SchemeSummary {
  SchemeId scheme = SchemeId::proposed;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;  // every user decoded
  std::uint64_t outages = 0;    // solved, but some user missed
  std::uint64_t failures = 0;   // optimizer gave up; also an outage for the probability
  std::uint64_t restarts = 0;
  double probability = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double mean_success = 0.0;
  double mean_groups_with_leader = 0.0;
};

struct ReliabilityReport {
  double bits_per_user = 0.0;  // first user's message size
  std::vector<SchemeSummary> schemes;
  // Trial-major, scheme-minor, in the order of CampaignOptions::schemes.
  std::vector<TrialOutcome> outcomes;

  const SchemeSummary& summary(SchemeId s) const;
  std::vector<TrialOutcome> outcomes_of(SchemeId s) const;
};

// Trials 0 .. trials-1 of cfg.seed. Throws std::invalid_argument when
// trials is 0 or the scheme list is empty.
ReliabilityReport run_campaign(const SystemConfig& cfg, const CampaignOptions& opt);

// One report per message size (uniform over users). Every D sees the same
// realizations since channels do not depend on the message size.
std::vector<ReliabilityReport> sweep_message_size(const SystemConfig& cfg, const std::vector<double>& d_bits,
                                                  const CampaignOptions& opt);

// Aggregates outcomes in the given order; the order fixes the float sums.
SchemeSummary summarize_outcomes(SchemeId scheme, const std::vector<TrialOutcome>& outcomes);

}  // namespace urllc::harness
