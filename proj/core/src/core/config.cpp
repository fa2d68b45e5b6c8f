#include "urllc/core/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

#include "urllc/core/units.hpp"

namespace urllc {

GroupLayout::GroupLayout(std::vector<int> sizes) : sizes_(std::move(sizes)) {
  offsets_.reserve(sizes_.size());
  for (std::size_t n = 0; n < sizes_.size(); ++n) {
    offsets_.push_back(num_users_);
    for (int k = 0; k < sizes_[n]; ++k) group_of_.push_back(static_cast<int>(n));
    num_users_ += std::max(sizes_[n], 0);
  }
}

int SystemConfig::num_users() const {
  return std::accumulate(group_sizes.begin(), group_sizes.end(), 0);
}

double SystemConfig::bs_power_w() const { return dbm_to_watts(bs_power_dbm); }
double SystemConfig::user_power_w() const { return dbm_to_watts(user_power_dbm); }
double SystemConfig::noise_power_w() const {
  return dbm_to_watts(noise_psd_dbm_hz + 10.0 * std::log10(bandwidth_hz));
}

double SystemConfig::group_bits(int group) const {
  const GroupLayout groups = layout();
  double bits = 0.0;
  for (int k = 0; k < groups.size(group); ++k) bits += bits_per_user.at(groups.offset(group) + k);
  return bits;
}

double SystemConfig::total_bits() const {
  return std::accumulate(bits_per_user.begin(), bits_per_user.end(), 0.0);
}

void SystemConfig::set_uniform_bits(double bits) {
  bits_per_user.assign(static_cast<std::size_t>(num_users()), bits);
}

void SystemConfig::set_groups(int groups, int users_per_group) {
  const double bits = bits_per_user.empty() ? 0.0 : bits_per_user.front();
  num_groups = groups;
  group_sizes.assign(static_cast<std::size_t>(groups), users_per_group);
  penalty_weights = default_penalty_weights(group_sizes);
  set_uniform_bits(bits);
}

std::vector<double> default_penalty_weights(const std::vector<int>& group_sizes) {
  std::vector<double> beta;
  beta.reserve(group_sizes.size());
  for (int k : group_sizes) beta.push_back(std::exp2(static_cast<double>(k)));
  return beta;
}

std::vector<ConfigViolation> validate_config(const SystemConfig& cfg) {
  std::vector<ConfigViolation> out;
  auto fail = [&](std::string field, std::string message) {
    out.push_back({std::move(field), std::move(message)});
  };

  if (cfg.num_antennas < 1) fail("num_antennas", "must be at least 1");
  if (cfg.num_groups < 1) fail("num_groups", "must be at least 1");
  if (static_cast<int>(cfg.group_sizes.size()) != cfg.num_groups)
    fail("group_sizes", "needs exactly num_groups entries");
  for (int k : cfg.group_sizes)
    if (k < 1) fail("group_sizes", "every group needs at least one user");
  if (static_cast<int>(cfg.bits_per_user.size()) != cfg.num_users())
    fail("bits_per_user", "needs one entry per user (sum of group_sizes)");
  for (double d : cfg.bits_per_user)
    if (!(d >= 0.0) || !std::isfinite(d)) fail("bits_per_user", "message sizes must be finite and >= 0");

  if (!(cfg.bandwidth_hz > 0.0) || !std::isfinite(cfg.bandwidth_hz)) fail("bandwidth_hz", "must be positive");
  if (!(cfg.latency_s > 0.0)) fail("latency_s", "must be positive");
  if (!(cfg.phase1_s > 0.0)) fail("phase1_s", "phase 1 duration must be positive");
  if (!(cfg.phase2_s > 0.0)) fail("phase2_s", "phase 2 duration must be positive");
  if (std::abs(cfg.phase1_s + cfg.phase2_s - cfg.latency_s) > 1e-12 * std::abs(cfg.latency_s))
    fail("phase1_s", "phase1_s + phase2_s must equal latency_s");

  if (!std::isfinite(cfg.bs_power_dbm)) fail("bs_power_dbm", "must be finite");
  if (!std::isfinite(cfg.user_power_dbm)) fail("user_power_dbm", "must be finite");
  if (!std::isfinite(cfg.noise_psd_dbm_hz)) fail("noise_psd_dbm_hz", "must be finite");

  if (!(cfg.cell_radius_m > 0.0)) fail("cell_radius_m", "must be positive");
  if (!(cfg.group_radius_m > 0.0)) fail("group_radius_m", "must be positive");
  if (!(cfg.donut_inner_m >= 0.0)) fail("donut_inner_m", "must be nonnegative");
  if (!(cfg.donut_inner_m < cfg.donut_outer_m)) fail("donut_inner_m", "must be below donut_outer_m");
  if (!(cfg.donut_outer_m <= cfg.cell_radius_m)) fail("donut_outer_m", "must not exceed cell_radius_m");
  if (!(cfg.rician_factor >= 0.0)) fail("rician_factor", "must be nonnegative");

  if (static_cast<int>(cfg.penalty_weights.size()) != cfg.num_groups)
    fail("penalty_weights", "needs exactly num_groups entries");
  for (double b : cfg.penalty_weights)
    if (!(b > 0.0) || !std::isfinite(b)) fail("penalty_weights", "weights must be positive");

  if (cfg.num_neighbor_cells < 0 || cfg.num_neighbor_cells > 6)
    fail("num_neighbor_cells", "must be in [0, 6]");

  if (cfg.sca.max_iters < 1) fail("sca_max_iters", "must be at least 1");
  if (!(cfg.sca.rel_tol > 0.0)) fail("sca_rel_tol", "must be positive");
  if (!(cfg.sca.slack_floor > 0.0)) fail("sca_slack_floor", "must be positive");
  if (!(cfg.sca.target_margin >= 0.0)) fail("sca_target_margin", "must be nonnegative");
  if (cfg.sca.max_restarts < 0) fail("sca_max_restarts", "must be nonnegative");
  if (!(cfg.sca.solver_tol > 0.0)) fail("sca_solver_tol", "must be positive");
  if (cfg.sca.solver_max_iter < 1) fail("sca_solver_max_iter", "must be at least 1");
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> items;
  while (true) {
    const auto comma = s.find(',');
    items.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return items;
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty())
    throw ConfigError("config key '" + std::string(key) + "': cannot parse '" + std::string(text) + "'");
  return value;
}

template <class T>
std::vector<T> parse_list(std::string_view key, std::string_view text) {
  std::vector<T> out;
  for (auto item : split_list(text)) out.push_back(parse_number<T>(key, item));
  return out;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

template <class T>
std::string join(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    if constexpr (std::is_floating_point_v<T>) out += format_double(values[i]);
    else out += std::to_string(values[i]);
  }
  return out;
}

}  // namespace

SystemConfig parse_config(std::string_view text) {
  std::map<std::string, std::string, std::less<>> entries;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
    if (!entries.emplace(key, value).second) throw ConfigError("config key '" + key + "' given twice");
  }

  SystemConfig cfg;
  auto take = [&](std::string_view key) -> std::optional<std::string> {
    auto it = entries.find(key);
    if (it == entries.end()) return std::nullopt;
    std::string v = it->second;
    entries.erase(it);
    return v;
  };
  auto scalar = [&]<class T>(std::string_view key, T& field) {
    if (auto v = take(key)) field = parse_number<T>(key, *v);
  };

  scalar("num_antennas", cfg.num_antennas);
  const bool groups_given = entries.contains("num_groups");
  scalar("num_groups", cfg.num_groups);
  if (auto v = take("group_sizes")) {
    cfg.group_sizes = parse_list<int>("group_sizes", *v);
    if (!groups_given) cfg.num_groups = static_cast<int>(cfg.group_sizes.size());
  } else if (groups_given && cfg.num_groups > 0) {
    cfg.group_sizes.assign(static_cast<std::size_t>(cfg.num_groups), 8);
  }
  scalar("bandwidth_hz", cfg.bandwidth_hz);
  scalar("latency_s", cfg.latency_s);
  scalar("phase1_s", cfg.phase1_s);
  scalar("phase2_s", cfg.phase2_s);
  scalar("bs_power_dbm", cfg.bs_power_dbm);
  scalar("user_power_dbm", cfg.user_power_dbm);
  scalar("noise_psd_dbm_hz", cfg.noise_psd_dbm_hz);
  scalar("cell_radius_m", cfg.cell_radius_m);
  scalar("group_radius_m", cfg.group_radius_m);
  scalar("donut_inner_m", cfg.donut_inner_m);
  scalar("donut_outer_m", cfg.donut_outer_m);
  scalar("rician_factor", cfg.rician_factor);
  scalar("num_neighbor_cells", cfg.num_neighbor_cells);
  scalar("sca_max_iters", cfg.sca.max_iters);
  scalar("sca_rel_tol", cfg.sca.rel_tol);
  scalar("sca_slack_floor", cfg.sca.slack_floor);
  scalar("sca_target_margin", cfg.sca.target_margin);
  scalar("sca_max_restarts", cfg.sca.max_restarts);
  scalar("sca_solver_tol", cfg.sca.solver_tol);
  scalar("sca_solver_max_iter", cfg.sca.solver_max_iter);
  scalar("seed", cfg.seed);

  const auto users = static_cast<std::size_t>(std::max(cfg.num_users(), 0));
  if (auto v = take("bits_per_user")) {
    auto bits = parse_list<double>("bits_per_user", *v);
    if (bits.size() == 1) bits.assign(users, bits.front());
    cfg.bits_per_user = std::move(bits);
  } else {
    cfg.bits_per_user.assign(users, cfg.bits_per_user.empty() ? 22.0 : cfg.bits_per_user.front());
  }

  const auto weights = take("penalty_weights");
  if (!weights || *weights == "auto") {
    cfg.penalty_weights = default_penalty_weights(cfg.group_sizes);
  } else {
    auto beta = parse_list<double>("penalty_weights", *weights);
    if (beta.size() == 1) beta.assign(cfg.group_sizes.size(), beta.front());
    cfg.penalty_weights = std::move(beta);
  }

  if (!entries.empty()) throw ConfigError("unknown config key '" + entries.begin()->first + "'");
  return cfg;
}

SystemConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string format_config(const SystemConfig& cfg) {
  std::ostringstream out;
  auto line = [&](std::string_view key, const std::string& value) { out << key << " = " << value << '\n'; };
  line("num_antennas", std::to_string(cfg.num_antennas));
  line("num_groups", std::to_string(cfg.num_groups));
  line("group_sizes", join(cfg.group_sizes));
  line("bandwidth_hz", format_double(cfg.bandwidth_hz));
  line("latency_s", format_double(cfg.latency_s));
  line("phase1_s", format_double(cfg.phase1_s));
  line("phase2_s", format_double(cfg.phase2_s));
  line("bs_power_dbm", format_double(cfg.bs_power_dbm));
  line("user_power_dbm", format_double(cfg.user_power_dbm));
  line("noise_psd_dbm_hz", format_double(cfg.noise_psd_dbm_hz));
  line("bits_per_user", join(cfg.bits_per_user));
  line("cell_radius_m", format_double(cfg.cell_radius_m));
  line("group_radius_m", format_double(cfg.group_radius_m));
  line("donut_inner_m", format_double(cfg.donut_inner_m));
  line("donut_outer_m", format_double(cfg.donut_outer_m));
  line("rician_factor", format_double(cfg.rician_factor));
  line("penalty_weights", join(cfg.penalty_weights));
  line("num_neighbor_cells", std::to_string(cfg.num_neighbor_cells));
  line("sca_max_iters", std::to_string(cfg.sca.max_iters));
  line("sca_rel_tol", format_double(cfg.sca.rel_tol));
  line("sca_slack_floor", format_double(cfg.sca.slack_floor));
  line("sca_target_margin", format_double(cfg.sca.target_margin));
  line("sca_max_restarts", std::to_string(cfg.sca.max_restarts));
  line("sca_solver_tol", format_double(cfg.sca.solver_tol));
  line("sca_solver_max_iter", std::to_string(cfg.sca.solver_max_iter));
  line("seed", std::to_string(cfg.seed));
  return out.str();
}

}  // namespace urllc
