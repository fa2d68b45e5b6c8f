#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "urllc/core/config.hpp"
#include "urllc/core/rng.hpp"
#include "urllc/radio/topology.hpp"

namespace urllc::radio {

// h^T w without conjugation, the received amplitude of beam w at channel h.
inline std::complex<double> response(const Eigen::VectorXcd& h, const Eigen::VectorXcd& w) {
  return (h.transpose() * w).value();
}

double macro_path_gain_db(double d_km);
// Same-group (indoor) link; distance in km like the macro model.
double d2d_path_gain_db(double d_km);

// One realization for the reference cell. Users are flat-indexed.
struct ChannelSet {
  std::vector<Eigen::VectorXcd> downlink;  // BS -> user, M entries each
  Eigen::MatrixXcd d2d;                    // (receiver, transmitter), zero diagonal
  Eigen::VectorXd interference_phase1;     // watts, noise included
  Eigen::VectorXd interference_phase2;     // watts, noise included

  int num_users() const { return static_cast<int>(downlink.size()); }
};

// Fills downlink and d2d; interference fields are set to the noise floor.
ChannelSet sample_channels(const Topology& topo, const SystemConfig& cfg, Rng& rng);

std::pair<Eigen::VectorXd, Eigen::VectorXd> sample_interference(const Topology& topo, const SystemConfig& cfg,
                                                                Rng& rng);

struct Realization {
  Topology topology;
  ChannelSet channels;
};

// Deterministic in (cfg.seed, trial) and the geometry fields of cfg only, so
// every scheme and every message size sees the same draw.
Realization make_realization(const SystemConfig& cfg, std::uint64_t trial);

// FNV-1a over the raw bytes of every channel coefficient and interference power.
std::uint64_t digest(const ChannelSet& ch);

}  // namespace urllc::radio
