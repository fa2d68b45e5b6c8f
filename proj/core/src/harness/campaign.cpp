#include "urllc/harness/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "urllc/harness/report.hpp"
#include "urllc/radio/channels.hpp"

namespace urllc::harness {

const SchemeSummary& ReliabilityReport::summary(SchemeId s) const {
  for (const auto& x : schemes)
    if (x.scheme == s) return x;
  throw std::out_of_range("scheme not in report");
}

std::vector<TrialOutcome> ReliabilityReport::outcomes_of(SchemeId s) const {
  std::vector<TrialOutcome> out;
  for (const auto& o : outcomes)
    if (o.scheme == s) out.push_back(o);
  return out;
}

SchemeSummary summarize_outcomes(SchemeId scheme, const std::vector<TrialOutcome>& outcomes) {
  SchemeSummary s;
  s.scheme = scheme;
  double success_sum = 0.0, groups_sum = 0.0;
  for (const auto& o : outcomes) {
    if (o.scheme != scheme) continue;
    ++s.trials;
    s.restarts += static_cast<std::uint64_t>(o.restarts);
    if (o.solver_failed) ++s.failures;
    else if (o.outcome.urllc) ++s.successes;
    else ++s.outages;
    success_sum += o.outcome.success_count;
    groups_sum += o.outcome.groups_with_leader();
  }
  if (s.trials > 0) {
    const double n = static_cast<double>(s.trials);
    s.probability = static_cast<double>(s.successes) / n;
    s.mean_success = success_sum / n;
    s.mean_groups_with_leader = groups_sum / n;
    const auto ci = wilson_interval(s.successes, s.trials);
    s.ci_low = ci.low;
    s.ci_high = ci.high;
  }
  return s;
}

namespace {

void check(std::size_t num_configs, const CampaignOptions& opt) {
  if (opt.trials == 0) throw std::invalid_argument("trials must be at least 1");
  if (opt.schemes.empty()) throw std::invalid_argument("no schemes selected");
  if (num_configs == 0) throw std::invalid_argument("no message sizes given");
}

unsigned worker_count(const CampaignOptions& opt) {
  unsigned w = opt.workers ? opt.workers : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::uint64_t>(w, opt.trials));
}

// Work item = one trial: draw the realization once, then every D and scheme.
// Results land in fixed slots so the aggregation order never depends on
// scheduling.
// The configs differ only in message sizes; channels come from cfgs[0].
std::vector<ReliabilityReport> execute(const std::vector<SystemConfig>& cfgs, const CampaignOptions& opt) {
  check(cfgs.size(), opt);

  const std::size_t per_trial = opt.schemes.size();
  std::vector<std::vector<TrialOutcome>> slots(cfgs.size(),
                                               std::vector<TrialOutcome>(opt.trials * per_trial));
  std::atomic<std::uint64_t> next{0}, done{0};
  std::exception_ptr error;
  std::mutex error_mu;

  auto worker = [&] {
    for (;;) {
      const std::uint64_t t = next.fetch_add(1);
      if (t >= opt.trials) return;
      try {
        const auto real = radio::make_realization(cfgs.front(), t);
        for (std::size_t d = 0; d < cfgs.size(); ++d)
          for (std::size_t s = 0; s < per_trial; ++s)
            slots[d][t * per_trial + s] = run_scheme(real.channels, cfgs[d], opt.schemes[s], t, opt.strategy);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
        next = opt.trials;
        return;
      }
      const auto finished = done.fetch_add(1) + 1;
      if (opt.progress) opt.progress(finished, opt.trials);
    }
  };

  const unsigned workers = worker_count(opt);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);

  std::vector<ReliabilityReport> reports(cfgs.size());
  for (std::size_t d = 0; d < cfgs.size(); ++d) {
    auto& r = reports[d];
    r.bits_per_user = cfgs[d].bits_per_user.empty() ? 0.0 : cfgs[d].bits_per_user.front();
    r.outcomes = std::move(slots[d]);
    for (const auto s : opt.schemes) r.schemes.push_back(summarize_outcomes(s, r.outcomes));
  }
  return reports;
}

}  // namespace

ReliabilityReport run_campaign(const SystemConfig& cfg, const CampaignOptions& opt) {
  return std::move(execute({cfg}, opt).front());
}

std::vector<ReliabilityReport> sweep_message_size(const SystemConfig& cfg, const std::vector<double>& d_bits,
                                                  const CampaignOptions& opt) {
  std::vector<SystemConfig> cfgs(d_bits.size(), cfg);
  for (std::size_t d = 0; d < d_bits.size(); ++d) cfgs[d].set_uniform_bits(d_bits[d]);
  return execute(cfgs, opt);
}

}  // namespace urllc::harness
