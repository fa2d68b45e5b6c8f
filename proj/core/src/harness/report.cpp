#include "urllc/harness/report.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace urllc::harness {

using nlohmann::ordered_json;

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::string_view to_string(protocol::RelayStrategy s) {
  return s == protocol::RelayStrategy::full ? "full" : "residual";
}

namespace {

ordered_json schemes_json(const ReliabilityReport& r) {
  ordered_json out = ordered_json::object();
  for (const auto& s : r.schemes) {
    out[std::string(scheme_name(s.scheme))] = {
        {"trials", s.trials},
        {"successes", s.successes},
        {"outages", s.outages},
        {"failures", s.failures},
        {"restarts", s.restarts},
        {"probability", s.probability},
        {"ci_low", s.ci_low},
        {"ci_high", s.ci_high},
        {"mean_success", s.mean_success},
        {"mean_groups_with_leader", s.mean_groups_with_leader},
    };
  }
  return out;
}

ordered_json header(const RunInfo& info) {
  return {{"schema", kSummarySchema},
          {"seed", info.seed},
          {"trials", info.trials},
          {"phase2_strategy", std::string(to_string(info.strategy))}};
}

}  // namespace

std::string summary_json(const ReliabilityReport& report, const RunInfo& info) {
  ordered_json j = header(info);
  j["bits_per_user"] = report.bits_per_user;
  j["schemes"] = schemes_json(report);
  return j.dump(2) + "\n";
}

std::string sweep_json(const std::vector<ReliabilityReport>& reports, const RunInfo& info) {
  ordered_json j = header(info);
  ordered_json sweep = ordered_json::array();
  for (const auto& r : reports) sweep.push_back({{"bits_per_user", r.bits_per_user}, {"schemes", schemes_json(r)}});
  j["sweep"] = std::move(sweep);
  return j.dump(2) + "\n";
}

void write_trial_csv(std::ostream& out, const ReliabilityReport& report, int num_groups) {
  protocol::write_csv_header(out, num_groups);
  for (const auto& o : report.outcomes) protocol::write_csv_row(out, o.trial, scheme_name(o.scheme), o.outcome);
}

void write_plot_csv(std::ostream& out, const std::vector<ReliabilityReport>& reports) {
  out << "D,scheme,probability,ci_low,ci_high\n";
  const auto old_precision = out.precision(10);
  for (const auto& r : reports)
    for (const auto& s : r.schemes)
      out << r.bits_per_user << ',' << scheme_name(s.scheme) << ',' << s.probability << ',' << s.ci_low << ','
          << s.ci_high << '\n';
  out.precision(old_precision);
}

void print_summary(std::ostream& out, const ReliabilityReport& report) {
  const auto flags = out.flags();
  out << "D = " << report.bits_per_user << " bits\n";
  out << std::left << std::setw(10) << "scheme" << std::right << std::setw(8) << "trials" << std::setw(12)
      << "P(urllc)" << std::setw(20) << "95% interval" << std::setw(14) << "mean success" << std::setw(14)
      << "groups w/ ldr" << std::setw(10) << "failures" << '\n';
  out << std::fixed;
  for (const auto& s : report.schemes) {
    std::ostringstream ci;
    ci << std::fixed << std::setprecision(4) << '[' << s.ci_low << ", " << s.ci_high << ']';
    out << std::left << std::setw(10) << scheme_name(s.scheme) << std::right << std::setw(8) << s.trials
        << std::setw(11) << std::setprecision(2) << 100.0 * s.probability << '%' << std::setw(20) << ci.str()
        << std::setw(14) << std::setprecision(3) << s.mean_success << std::setw(14) << s.mean_groups_with_leader
        << std::setw(10) << s.failures << '\n';
  }
  out.flags(flags);
}

}  // namespace urllc::harness
