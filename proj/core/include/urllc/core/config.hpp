#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace urllc {

// Flat user indexing: users of group 0 first, then group 1, and so on.
class GroupLayout {
 public:
  GroupLayout() = default;
  explicit GroupLayout(std::vector<int> sizes);

  int num_groups() const { return static_cast<int>(sizes_.size()); }
  int num_users() const { return num_users_; }
  int size(int group) const { return sizes_[group]; }
  int offset(int group) const { return offsets_[group]; }
  int group_of(int user) const { return group_of_[user]; }
  const std::vector<int>& sizes() const { return sizes_; }

 private:
  std::vector<int> sizes_;
  std::vector<int> offsets_;
  std::vector<int> group_of_;
  int num_users_ = 0;
};

struct ScaOptions {
  int max_iters = 30;
  double rel_tol = 1e-4;
  // Slacks at or below this are frozen instead of linearized (see beamform).
  double slack_floor = 1e-8;
  // Relative headroom added to every target inside the optimizer so that a
  // zero slack survives interior-point tolerance as a true SINR >= target.
  double target_margin = 1e-6;
  int max_restarts = 2;
  double solver_tol = 1e-9;
  int solver_max_iter = 100;
};

struct SystemConfig {
  int num_antennas = 8;
  int num_groups = 6;
  std::vector<int> group_sizes = std::vector<int>(6, 8);
  double bandwidth_hz = 1e5;
  double latency_s = 1e-3;
  double phase1_s = 7.5e-4;
  double phase2_s = 2.5e-4;
  double bs_power_dbm = 43.0;
  double user_power_dbm = 23.0;
  double noise_psd_dbm_hz = -169.0;
  std::vector<double> bits_per_user = std::vector<double>(48, 22.0);
  double cell_radius_m = 500.0;
  double group_radius_m = 20.0;
  double donut_inner_m = 250.0;
  double donut_outer_m = 350.0;
  double rician_factor = 4.0;
  std::vector<double> penalty_weights = std::vector<double>(6, 256.0);
  // Interfering neighbor cells on the first tier (0 gives a noise-only cell).
  int num_neighbor_cells = 6;
  ScaOptions sca;
  std::uint64_t seed = 1;

  GroupLayout layout() const { return GroupLayout(group_sizes); }
  int num_users() const;

  double bs_power_w() const;
  double user_power_w() const;
  double noise_power_w() const;

  double phase1_symbols() const { return phase1_s * bandwidth_hz; }
  double phase2_symbols() const { return phase2_s * bandwidth_hz; }
  double frame_symbols() const { return latency_s * bandwidth_hz; }

  double group_bits(int group) const;
  double total_bits() const;

  void set_uniform_bits(double bits);
  // Resizes groups, message sizes and penalty weights together.
  void set_groups(int groups, int users_per_group);
};

// 2^{K_n} per group.
std::vector<double> default_penalty_weights(const std::vector<int>& group_sizes);

struct ConfigViolation {
  std::string field;
  std::string message;
};

std::vector<ConfigViolation> validate_config(const SystemConfig& cfg);

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// key = value lines, '#' comments. Lists are comma separated; a single value
// for bits_per_user or penalty_weights is broadcast, and penalty_weights may
// be "auto". Unknown or repeated keys throw ConfigError.
SystemConfig parse_config(std::string_view text);
SystemConfig load_config(const std::filesystem::path& path);
std::string format_config(const SystemConfig& cfg);

}  // namespace urllc
