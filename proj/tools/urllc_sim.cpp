// Command-line front end: run, sweep, validate, dump-realization.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "urllc/core/config.hpp"
#include "urllc/harness/campaign.hpp"
#include "urllc/harness/report.hpp"
#include "urllc/harness/self_check.hpp"
#include "urllc/radio/realization_io.hpp"

namespace fs = std::filesystem;
using namespace urllc;

namespace {

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
};

struct CampaignFlags {
  std::vector<std::string> schemes;
  std::uint64_t trials = 300;
  std::vector<double> d_bits;
  std::string out_dir = ".";
  unsigned workers = 0;
  std::string strategy = "full";
  bool progress = false;
};

int fail(const std::string& msg) {
  std::cerr << "error: " << msg << '\n';
  return 2;
}

// Config from file (or defaults) with the seed override applied.
std::optional<SystemConfig> load(const Common& c) {
  SystemConfig cfg;
  try {
    if (!c.config.empty()) {
      if (!fs::exists(c.config)) {
        std::cerr << "error: config file not found: " << c.config << "\n"
                  << "usage: urllc-sim <run|sweep|validate|dump-realization> --config <file> ...\n";
        return std::nullopt;
      }
      cfg = load_config(c.config);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return std::nullopt;
  }
  if (c.seed) cfg.seed = *c.seed;
  const auto violations = validate_config(cfg);
  if (!violations.empty()) {
    std::cerr << "error: invalid config\n";
    for (const auto& v : violations) std::cerr << "  " << v.field << ": " << v.message << '\n';
    return std::nullopt;
  }
  return cfg;
}

std::optional<harness::CampaignOptions> campaign_options(const CampaignFlags& f) {
  harness::CampaignOptions opt;
  if (f.trials == 0) {
    std::cerr << "error: --trials must be at least 1\n";
    return std::nullopt;
  }
  opt.trials = f.trials;
  opt.workers = f.workers;
  if (!f.schemes.empty()) {
    opt.schemes.clear();
    for (const auto& name : f.schemes) {
      const auto id = harness::parse_scheme(name);
      if (!id) {
        std::cerr << "error: unknown --scheme '" << name << "' (expected proposed, b1 ... b6)\n";
        return std::nullopt;
      }
      opt.schemes.push_back(*id);
    }
  }
  opt.strategy = f.strategy == "residual" ? protocol::RelayStrategy::residual : protocol::RelayStrategy::full;
  if (f.progress) {
    opt.progress = [](std::uint64_t done, std::uint64_t total) {
      if (done == total || done % std::max<std::uint64_t>(1, total / 20) == 0)
        std::cerr << "  " << done << '/' << total << " trials\n";
    };
  }
  return opt;
}

std::string d_label(double d) {
  std::ostringstream o;
  o << d;
  return o.str();
}

bool write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "error: cannot write " << path << '\n';
    return false;
  }
  return true;
}

bool prepare_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    std::cerr << "error: cannot create --out-dir " << dir << '\n';
    return false;
  }
  return true;
}

int cmd_run(const Common& c, const CampaignFlags& f) {
  auto cfg = load(c);
  if (!cfg) return 2;
  auto opt = campaign_options(f);
  if (!opt) return 2;
  if (f.d_bits.size() > 1) return fail("run takes a single --d-bits value; use sweep for a list");
  if (f.d_bits.size() == 1) cfg->set_uniform_bits(f.d_bits.front());
  if (!prepare_dir(f.out_dir)) return 2;

  const auto report = harness::run_campaign(*cfg, *opt);
  std::ostringstream csv;
  harness::write_trial_csv(csv, report, cfg->num_groups);
  const harness::RunInfo info{cfg->seed, opt->trials, opt->strategy};
  if (!write_file(fs::path(f.out_dir) / "trials.csv", csv.str())) return 2;
  if (!write_file(fs::path(f.out_dir) / "summary.json", harness::summary_json(report, info))) return 2;
  harness::print_summary(std::cout, report);
  return 0;
}

int cmd_sweep(const Common& c, const CampaignFlags& f) {
  auto cfg = load(c);
  if (!cfg) return 2;
  auto opt = campaign_options(f);
  if (!opt) return 2;
  if (f.d_bits.empty()) return fail("--d-bits needs at least one value");
  if (!prepare_dir(f.out_dir)) return 2;

  const auto reports = harness::sweep_message_size(*cfg, f.d_bits, *opt);
  const harness::RunInfo info{cfg->seed, opt->trials, opt->strategy};
  for (const auto& r : reports) {
    const std::string d = d_label(r.bits_per_user);
    std::ostringstream csv;
    harness::write_trial_csv(csv, r, cfg->num_groups);
    if (!write_file(fs::path(f.out_dir) / ("trials_D" + d + ".csv"), csv.str())) return 2;
    if (!write_file(fs::path(f.out_dir) / ("summary_D" + d + ".json"), harness::summary_json(r, info))) return 2;
    harness::print_summary(std::cout, r);
    std::cout << '\n';
  }
  std::ostringstream plot;
  harness::write_plot_csv(plot, reports);
  if (!write_file(fs::path(f.out_dir) / "plot.csv", plot.str())) return 2;
  if (!write_file(fs::path(f.out_dir) / "sweep.json", harness::sweep_json(reports, info))) return 2;
  return 0;
}

int cmd_validate(const Common& c, double tol, int realizations) {
  auto cfg = load(c);
  if (!cfg) return 2;
  harness::SelfCheckOptions opt;
  opt.tol = tol;
  opt.sca_realizations = realizations;
  bool all = true;
  for (const auto& r : harness::run_self_checks(*cfg, opt)) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    all = all && r.passed;
  }
  return all ? 0 : 1;
}

int cmd_dump(const Common& c, std::uint64_t trial, const std::string& out) {
  auto cfg = load(c);
  if (!cfg) return 2;
  const auto real = radio::make_realization(*cfg, trial);
  if (out.empty() || out == "-") {
    radio::write_realization(std::cout, real);
    return 0;
  }
  std::ofstream file(out, std::ios::binary);
  radio::write_realization(file, real);
  if (!file) return fail("cannot write " + out);
  std::cerr << "digest " << std::hex << radio::digest(real.channels) << std::dec << '\n';
  return 0;
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("--config", c.config, "key = value config file (defaults when omitted)");
  app->add_option("--seed", c.seed, "override the config seed");
}

void add_campaign(CLI::App* app, CampaignFlags& f, bool sweep) {
  app->add_option("--scheme", f.schemes, "proposed, b1 ... b6 (repeatable; default all)");
  app->add_option("--trials", f.trials, "channel realizations per scheme")->capture_default_str();
  auto* d = app->add_option("--d-bits", f.d_bits, sweep ? "message sizes, comma separated" : "message size in bits")
                ->delimiter(',');
  if (sweep) d->required();
  app->add_option("--out-dir", f.out_dir, "output directory")->capture_default_str();
  app->add_option("--workers", f.workers, "worker threads (0 = all cores)")->capture_default_str();
  app->add_option("--phase2-strategy", f.strategy, "what leaders relay")
      ->check(CLI::IsMember({"full", "residual"}))
      ->capture_default_str();
  app->add_flag("--progress", f.progress, "print progress to stderr");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-phase D2D relay URLLC simulator"};
  app.require_subcommand(1);

  Common common;
  CampaignFlags run_flags, sweep_flags;
  double tol = 1e-6;
  int realizations = 3;
  std::uint64_t trial = 0;
  std::string out;

  auto* run = app.add_subcommand("run", "Monte Carlo campaign at one message size");
  add_common(run, common);
  add_campaign(run, run_flags, false);

  auto* sweep = app.add_subcommand("sweep", "Campaign per message size plus plot data");
  add_common(sweep, common);
  add_campaign(sweep, sweep_flags, true);

  auto* validate = app.add_subcommand("validate", "Solver and optimizer self-checks");
  add_common(validate, common);
  validate->add_option("--tol", tol, "residual and closed-form tolerance")->capture_default_str();
  validate->add_option("--realizations", realizations, "SCA runs checked")->capture_default_str();

  auto* dump = app.add_subcommand("dump-realization", "Write one channel realization as text");
  add_common(dump, common);
  dump->add_option("--trial", trial, "trial index")->capture_default_str();
  dump->add_option("--out", out, "output file (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(common, run_flags);
    if (sweep->parsed()) return cmd_sweep(common, sweep_flags);
    if (validate->parsed()) return cmd_validate(common, tol, realizations);
    if (dump->parsed()) return cmd_dump(common, trial, out);
  } catch (const std::exception& e) {
    return fail(e.what());
  }
  return 1;
}
