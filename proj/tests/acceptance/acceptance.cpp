// End-to-end acceptance run: one PASS/FAIL line per criterion, exit 1 if any
// criterion fails. The default of 300 trials per scheme and message size
// takes about 40 minutes on one core; --trials trades confidence for time.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "oracles.hpp"
#include "programs.hpp"
#include "urllc/beamform/penalty.hpp"
#include "urllc/beamform/sca.hpp"
#include "urllc/conic/solver.hpp"
#include "urllc/core/config.hpp"
#include "urllc/core/units.hpp"
#include "urllc/harness/campaign.hpp"
#include "urllc/harness/report.hpp"
#include "urllc/protocol/targets.hpp"
#include "urllc/radio/channels.hpp"

using namespace urllc;
using harness::SchemeId;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [miss] " << what << ";";
    } else {
      detail << " " << what << ";";
    }
  }
};

int failures = 0;

void report(int id, const std::string& title, Verdict& v) {
  std::cout << "criterion " << id << ": " << (v.pass ? "PASS" : "FAIL") << "  " << title << " --" << v.detail.str()
            << std::endl;
  failures += !v.pass;
}

std::string fmt(double x, int prec = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, x);
  return buf;
}

std::string sci(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

std::string name(SchemeId s) { return std::string(harness::scheme_name(s)); }

std::uint64_t at_least(double fraction, std::uint64_t trials) {
  return static_cast<std::uint64_t>(std::ceil(fraction * static_cast<double>(trials) - 1e-9));
}

const std::vector<double> kSweep{12, 14, 16, 18, 20, 22, 24, 26, 28};

// Largest D such that every D' <= D on the grid saw no outage; -inf if none.
double largest_outage_free(const std::vector<harness::ReliabilityReport>& reports, SchemeId s) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& r : reports) {
    const auto& sum = r.summary(s);
    if (sum.successes != sum.trials) break;
    best = r.bits_per_user;
  }
  return best;
}

std::string d_label(double d) { return std::isfinite(d) ? fmt(d, 0) : std::string("none"); }

void targets_criterion() {
  Verdict v;
  const double a = min_sinr_target(576, 75).db();
  const double b = min_sinr_target(1056, 75).db();
  v.require(std::abs(a - 23.10) <= 0.01, "576 bits/75 symbols = " + fmt(a, 4) + " dB (23.10 +- 0.01)");
  v.require(b >= 42.0 && b <= 42.8, "1056 bits/75 symbols = " + fmt(b, 4) + " dB in [42.0, 42.8]");
  report(1, "SINR-target analytics", v);
}

void table_criteria(const harness::ReliabilityReport& r, std::uint64_t trials, int groups) {
  const auto& prop = r.summary(SchemeId::proposed);
  {
    Verdict v;
    v.require(prop.successes >= at_least(0.99, trials),
              "proposed " + std::to_string(prop.successes) + "/" + std::to_string(trials) + " >= 99%");
    for (auto s : {SchemeId::no_leader_selection, SchemeId::occupy_cow, SchemeId::occupy_cow_leaders, SchemeId::tdma,
                   SchemeId::one_phase_multicast}) {
      const auto& x = r.summary(s);
      v.require(x.successes == 0, name(s) + " " + std::to_string(x.successes) + "/" + std::to_string(trials) + " == 0");
    }
    const auto& b4 = r.summary(SchemeId::broadcast);
    v.require(b4.probability >= 0.04 && b4.probability <= 0.20,
              "b4 " + fmt(100.0 * b4.probability, 2) + "% in [4%, 20%]");
    report(2, "reliability ordering at D=22", v);
  }
  {
    Verdict v;
    auto mean = [&](SchemeId s) { return r.summary(s).mean_success; };
    v.require(std::abs(mean(SchemeId::proposed) - 48.0) <= 0.1, "proposed " + fmt(mean(SchemeId::proposed)) + " (48.0 +- 0.1)");
    v.require(std::abs(mean(SchemeId::no_leader_selection) - 32.2) <= 3.0,
              "b1 " + fmt(mean(SchemeId::no_leader_selection)) + " (32.2 +- 3)");
    v.require(std::abs(mean(SchemeId::broadcast) - 45.1) <= 2.0, "b4 " + fmt(mean(SchemeId::broadcast)) + " (45.1 +- 2)");
    v.require(mean(SchemeId::occupy_cow) == 0.0, "b2 " + fmt(mean(SchemeId::occupy_cow)) + " (== 0)");
    v.require(mean(SchemeId::occupy_cow_leaders) == 0.0, "b3 " + fmt(mean(SchemeId::occupy_cow_leaders)) + " (== 0)");
    v.require(std::abs(mean(SchemeId::one_phase_multicast) - 11.5) <= 3.0,
              "b6 " + fmt(mean(SchemeId::one_phase_multicast)) + " (11.5 +- 3)");
    v.require(mean(SchemeId::tdma) <= 0.2, "b5 " + fmt(mean(SchemeId::tdma)) + " (<= 0.2)");
    report(3, "mean successful users at D=22", v);
  }
  {
    Verdict v;
    std::uint64_t all_led = 0;
    for (const auto& o : r.outcomes_of(SchemeId::proposed)) all_led += o.outcome.groups_with_leader() == groups;
    v.require(all_led >= at_least(0.99, trials),
              "proposed: every group led in " + std::to_string(all_led) + "/" + std::to_string(trials) + " (>= 99%)");
    const double b1 = r.summary(SchemeId::no_leader_selection).mean_groups_with_leader;
    v.require(b1 >= 3.0 && b1 <= 5.5, "b1 mean groups with a leader " + fmt(b1, 2) + " in [3, 5.5]");
    report(4, "leader fairness", v);
  }
}

void trend_criterion(const std::vector<harness::ReliabilityReport>& sweep, std::uint64_t trials) {
  Verdict v;
  const std::vector<SchemeId> lower{SchemeId::occupy_cow, SchemeId::occupy_cow_leaders, SchemeId::tdma,
                                    SchemeId::one_phase_multicast};
  bool ordered = true;
  std::ostringstream curve;
  for (const auto& r : sweep) {
    const double p = r.summary(SchemeId::proposed).probability;
    const double b4 = r.summary(SchemeId::broadcast).probability;
    double rest = 0.0;
    for (auto s : lower) rest = std::max(rest, r.summary(s).probability);
    ordered = ordered && p >= b4 && b4 >= rest;
    curve << " D=" << r.bits_per_user << ":" << fmt(p) << "/" << fmt(b4) << "/" << fmt(rest);
  }
  v.require(ordered, "proposed >= b4 >= max(b2,b3,b5,b6) at every D (proposed/b4/rest:" + curve.str() + ")");
  std::ostringstream through24;
  bool clean = true;
  for (const auto& r : sweep) {
    if (r.bits_per_user > 24) continue;
    const auto& s = r.summary(SchemeId::proposed);
    clean = clean && s.successes == s.trials;
    through24 << " D=" << r.bits_per_user << ":" << s.trials - s.successes;
  }
  v.require(clean, "proposed outage-free through D=24 (outages" + through24.str() + ")");
  const auto& at28 = sweep.back().summary(SchemeId::proposed);
  v.require(at28.successes < at28.trials,
            "proposed outage at D=28: " + std::to_string(at28.trials - at28.successes) + "/" + std::to_string(trials));
  report(5, "reliability versus message size", v);
}

void topology_criterion(const std::vector<harness::ReliabilityReport>& near,
                        const std::vector<harness::ReliabilityReport>& far) {
  Verdict v;
  const double d_near = largest_outage_free(near, SchemeId::proposed);
  const double d_far = largest_outage_free(far, SchemeId::proposed);
  std::ostringstream curve;
  for (const auto& r : far) curve << " D=" << r.bits_per_user << ":" << fmt(r.summary(SchemeId::proposed).probability);
  v.require(d_far <= 18.0 && std::isfinite(d_far), "outer annulus largest outage-free D = " + d_label(d_far) +
                                                      " (<= 18; reliability" + curve.str() + ")");
  v.require(d_far < d_near, "strictly below the inner annulus (" + d_label(d_near) + ")");
  report(6, "topology sensitivity", v);
}

void sca_criterion(int realizations) {
  Verdict v;
  SystemConfig cfg;
  cfg.seed = 20261017;
  const auto targets = protocol::phase1_targets(cfg);
  const GroupLayout layout = cfg.layout();
  int monotone = 0, feasible = 0, kkt_ok = 0, failed = 0;
  double worst_rise = 0.0, worst_kkt = 0.0, worst_violation = 0.0;
  for (int trial = 0; trial < realizations; ++trial) {
    const auto real = radio::make_realization(cfg, static_cast<std::uint64_t>(trial));
    const auto& ch = real.channels;
    const auto res = beamform::run_sca(ch, targets, cfg, beamform::ScaMode::leader_penalty, trial);
    if (res.trace.failed) {
      ++failed;
      continue;
    }
    monotone += res.trace.monotone(1e-6);
    double prev = res.trace.initial_objective, last_kkt = 0.0, violation = 0.0;
    for (const auto& it : res.trace.iterations) {
      violation = std::max({violation, it.incumbent_violation, it.power - 1.0});
      if (!it.accepted) continue;
      worst_rise = std::max(worst_rise, it.objective - prev);
      prev = it.objective;
      last_kkt = it.kkt;
    }
    // The returned point against the unlinearized constraints, recomputed
    // from the physical beams: |h^T w_s|^2 / gamma + t I >= sum_j |h^T w_j|^2 + I.
    const double p_bs = cfg.bs_power_w();
    double power = 0.0;
    for (const auto& w : res.beams.beams) power += w.squaredNorm();
    violation = std::max(violation, power / p_bs - 1.0);
    for (int k = 0; k < layout.num_users(); ++k) {
      const int s = layout.group_of(k);
      const double i1 = ch.interference_phase1[k];
      double interf = i1;
      for (int j = 0; j < layout.num_groups(); ++j)
        if (j != s) interf += std::norm(oracle::dot_t(ch.downlink[k], res.beams.beams[j]));
      const double lhs = std::norm(oracle::dot_t(ch.downlink[k], res.beams.beams[s])) / targets[s].linear +
                         res.slack[k] * i1;
      violation = std::max(violation, (interf - lhs) / i1);
      violation = std::max(violation, -res.slack[k]);
    }
    worst_violation = std::max(worst_violation, violation);
    feasible += violation <= 1e-9;
    worst_kkt = std::max(worst_kkt, last_kkt);
    kkt_ok += last_kkt <= 1e-6;
  }
  const std::string of = "/" + std::to_string(realizations);
  v.require(failed == 0, "solver failures " + std::to_string(failed));
  v.require(monotone == realizations, "monotone within 1e-6: " + std::to_string(monotone) + of +
                                          " (largest rise " + sci(worst_rise) + ")");
  v.require(feasible == realizations, "iterates feasible: " + std::to_string(feasible) + of + " (worst " +
                                          sci(worst_violation) + ")");
  v.require(kkt_ok == realizations,
            "final KKT <= 1e-6: " + std::to_string(kkt_ok) + of + " (worst " + sci(worst_kkt) + ")");
  report(7, "SCA monotonicity and feasibility", v);
}

void penalty_criterion() {
  Verdict v;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  // Exhaustive zero test on 1 + 2 + 3 users over {0, 0.5, 2}.
  const std::vector<int> sizes{1, 2, 3};
  const GroupLayout layout(sizes);
  const std::vector<double> beta{2.0, 4.0, 8.0};
  int mismatches = 0, cases = 0;
  for (int code = 0; code < 729; ++code) {
    Eigen::VectorXd t(6);
    int c = code;
    for (int i = 0; i < 6; ++i, c /= 3) t[i] = c % 3 == 0 ? 0.0 : (c % 3 == 1 ? 0.5 : 2.0);
    bool all_groups_zero = true;
    for (int n = 0; n < 3; ++n) all_groups_zero = all_groups_zero && t.segment(layout.offset(n), sizes[n]).minCoeff() == 0.0;
    mismatches += (beamform::penalty(t, layout, beta) == 0.0) != all_groups_zero;
    ++cases;
  }
  v.require(mismatches == 0, "zero iff every group has a zero slack: " + std::to_string(cases - mismatches) + "/" +
                                 std::to_string(cases));

  const std::vector<int> big{1, 3, 8, 8};
  const GroupLayout big_layout(big);
  std::vector<double> big_beta;
  for (int k : big) big_beta.push_back(std::pow(2.0, k));
  int upper = 0, exact = 0;
  for (int draw = 0; draw < 10000; ++draw) {
    Eigen::VectorXd t_hat(20), t(20);
    for (int i = 0; i < 20; ++i) {
      t_hat[i] = std::pow(10.0, -8.0 + 10.0 * u(rng));
      t[i] = std::pow(10.0, -8.0 + 10.0 * u(rng));
    }
    const auto lin = beamform::linearize_penalty(t_hat, big_layout, big_beta, 1e-9);
    const double f = oracle::penalty({t.data(), t.data() + 20}, big, big_beta);
    const double f_hat = oracle::penalty({t_hat.data(), t_hat.data() + 20}, big, big_beta);
    upper += lin.eval(t) >= f - 1e-12 * std::max(1.0, f);
    exact += std::abs(lin.eval(t_hat) - f_hat) <= 1e-12 * std::max(1.0, f_hat);
  }
  v.require(upper == 10000, "f(t; t_hat) >= penalty(t): " + std::to_string(upper) + "/10000");
  v.require(exact == 10000, "f(t_hat; t_hat) = penalty(t_hat) to 1e-12: " + std::to_string(exact) + "/10000");

  std::normal_distribution<double> g(0.0, 1.0);
  int below = 0, tangent = 0;
  for (int draw = 0; draw < 10000; ++draw) {
    const int m = 1 + draw % 8;
    Eigen::VectorXcd h(m), w(m);
    for (int i = 0; i < m; ++i) {
      h[i] = {g(rng), g(rng)};
      w[i] = {g(rng), g(rng)};
    }
    const auto q = beamform::linearize_quadratic(h, w);
    const double a = 3.0 * g(rng), b = 3.0 * g(rng);
    below += q.eval(a, b) <= a * a + b * b + 1e-12 * std::max(1.0, a * a + b * b);
    const auto r = oracle::dot_t(h, w);
    tangent += std::abs(q.eval(r.real(), r.imag()) - std::norm(r)) <= 1e-12 * std::max(1.0, std::norm(r));
  }
  v.require(below == 10000, "g(a, b) <= a^2 + b^2: " + std::to_string(below) + "/10000");
  v.require(tangent == 10000, "g exact at the expansion point to 1e-12: " + std::to_string(tangent) + "/10000");
  report(8, "penalty and linearization properties", v);
}

void solver_criterion(const std::string& reference_path) {
  Verdict v;
  std::mt19937_64 rng(9);
  // Grid search is brute force and only tractable in a few dimensions; the
  // larger programs are compared against an independent solver's optimum.
  int grid_ok = 0, grid_total = 0;
  double worst_grid = 0.0, worst_above = -INFINITY;
  for (int i = 0; i < 70; ++i) {
    const int n = 1 + i % 5;
    const auto p = testprog::random_small(rng, n);
    const auto s = conic::solve(p);
    static const int points[] = {0, 101, 101, 41, 25, 15};
    static const int passes[] = {0, 14, 14, 14, 20, 26};
    const double grid = oracle::grid_minimum(p, -1.0, 1.0, points[n], 1e-12, passes[n]);
    const double gap = s.status == conic::Status::optimal ? std::abs(s.objective - grid) : INFINITY;
    worst_grid = std::max(worst_grid, gap);
    worst_above = std::max(worst_above, s.objective - grid);
    grid_ok += gap <= 1e-3;
    ++grid_total;
  }
  int ref_ok = 0, ref_total = 0;
  double worst_ref = 0.0;
  try {
    for (const auto& r : testprog::load_references(reference_path)) {
      const auto s = conic::solve(r.program);
      const double gap = s.status == conic::Status::optimal ? std::abs(s.objective - r.objective) : INFINITY;
      worst_ref = std::max(worst_ref, gap);
      ref_ok += gap <= 1e-3;
      ++ref_total;
    }
  } catch (const std::exception& e) {
    v.require(false, e.what());
  }
  v.require(grid_total + ref_total == 100 && grid_ok + ref_ok == 100,
            "random programs within 1e-3: " + std::to_string(grid_ok) + "/" + std::to_string(grid_total) +
                " against grid search (1-5 variables, worst " + sci(worst_grid) + ", solver above grid by at most " +
                sci(worst_above) + "), " +
                std::to_string(ref_ok) + "/" + std::to_string(ref_total) +
                " against reference optima (4-10 variables, worst " + sci(worst_ref) + ")");

  // min ||w|| subject to a'w >= 1 has optimum 1 / ||a||.
  int analytic_ok = 0;
  double worst_analytic = 0.0;
  std::normal_distribution<double> g(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    Eigen::VectorXd a(1 + i % 8);
    for (auto& x : a) x = g(rng);
    const auto s = conic::solve(testprog::min_norm(a));
    const double err = std::abs(s.objective - 1.0 / a.norm());
    worst_analytic = std::max(worst_analytic, err);
    analytic_ok += s.status == conic::Status::optimal && err <= 1e-6;
  }
  v.require(analytic_ok == 20, "minimum-norm closed form to 1e-6: " + std::to_string(analytic_ok) + "/20 (worst " +
                                   sci(worst_analytic) + ")");
  report(9, "solver against independent oracles", v);
}

void determinism_criterion() {
  Verdict v;
  SystemConfig cfg;
  harness::CampaignOptions opt;
  opt.trials = 3;
  opt.workers = 1;
  const harness::RunInfo info{cfg.seed, opt.trials, opt.strategy};
  auto csv = [&](const harness::ReliabilityReport& r) {
    std::ostringstream out;
    harness::write_trial_csv(out, r, cfg.num_groups);
    return out.str();
  };
  const auto first = harness::run_campaign(cfg, opt);
  const auto second = harness::run_campaign(cfg, opt);
  v.require(csv(first) == csv(second), "per-trial CSV byte-identical across two single-worker runs");
  bool same_json = harness::summary_json(first, info) == harness::summary_json(second, info);
  for (unsigned workers : {2u, 3u}) {
    opt.workers = workers;
    const auto other = harness::run_campaign(cfg, opt);
    same_json = same_json && harness::summary_json(other, info) == harness::summary_json(first, info);
  }
  v.require(same_json, "summary JSON identical under 1, 2 and 3 workers");
  report(10, "determinism", v);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance run for the relay simulator"};
  std::uint64_t trials = 300;
  unsigned workers = 0;
  int realizations = 200;
  std::string references = URLLC_TEST_DATA_DIR "/reference_programs.txt";
  std::vector<int> only;
  app.add_option("--trials", trials, "Trials per scheme and message size")->check(CLI::PositiveNumber);
  app.add_option("--workers", workers, "Worker threads (0: all cores)");
  app.add_option("--realizations", realizations, "Realizations for the SCA property suite")->check(CLI::PositiveNumber);
  app.add_option("--references", references, "Reference program file");
  app.add_option("--only", only, "Run only these criteria")->delimiter(',')->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  const std::set<int> wanted(only.begin(), only.end());
  auto want = [&](int id) { return wanted.empty() || wanted.count(id) > 0; };
  const auto start = std::chrono::steady_clock::now();
  auto log = [&](const std::string& what) {
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cerr << "[" << fmt(s, 0) << " s] " << what << std::endl;
  };

  if (want(1)) targets_criterion();
  if (want(8)) penalty_criterion();
  if (want(9)) solver_criterion(references);
  if (want(10)) determinism_criterion();
  if (want(7)) {
    log("SCA property suite");
    sca_criterion(realizations);
  }

  SystemConfig cfg;
  harness::CampaignOptions opt;
  opt.trials = trials;
  opt.workers = workers;
  if (want(2) || want(3) || want(4)) {
    log("all schemes at D=22");
    const auto r = harness::run_campaign(cfg, opt);
    table_criteria(r, trials, cfg.num_groups);
  }
  std::vector<harness::ReliabilityReport> near;
  if (want(5) || want(6)) {
    log("message-size sweep");
    opt.schemes = {SchemeId::proposed, SchemeId::occupy_cow, SchemeId::occupy_cow_leaders, SchemeId::broadcast,
                   SchemeId::tdma, SchemeId::one_phase_multicast};
    if (!want(5)) opt.schemes = {SchemeId::proposed};
    near = harness::sweep_message_size(cfg, kSweep, opt);
    if (want(5)) trend_criterion(near, trials);
  }
  if (want(6)) {
    log("outer-annulus sweep");
    SystemConfig far_cfg = cfg;
    far_cfg.donut_inner_m = 350.0;
    far_cfg.donut_outer_m = 450.0;
    opt.schemes = {SchemeId::proposed};
    topology_criterion(near, harness::sweep_message_size(far_cfg, kSweep, opt));
  }
  log("done");
  std::cout << (failures == 0 ? "acceptance: all criteria passed" : "acceptance: " + std::to_string(failures) +
                                                                        " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
