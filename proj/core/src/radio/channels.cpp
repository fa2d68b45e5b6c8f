#include "urllc/radio/channels.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace urllc::radio {

double macro_path_gain_db(double d_km) {
  if (!(d_km > 0.0)) throw std::invalid_argument("macro_path_gain_db: distance must be positive");
  return -128.1 - 36.7 * std::log10(d_km);
}

double d2d_path_gain_db(double d_km) {
  if (!(d_km > 0.0)) throw std::invalid_argument("d2d_path_gain_db: distance must be positive");
  return -76.8 - 18.7 * std::log10(d_km);
}

namespace {

double amplitude(double gain_db) { return std::pow(10.0, gain_db / 20.0); }

// Coincident users would give an infinite gain; a millimetre floor is far
// below anything the continuous sampler produces in practice.
double km_between(Point a, Point b) { return std::max(distance(a, b), 1e-3) / 1000.0; }

}  // namespace

ChannelSet sample_channels(const Topology& topo, const SystemConfig& cfg, Rng& rng) {
  const GroupLayout groups = cfg.layout();
  const int users = groups.num_users();
  const auto& pos = topo.user_positions.at(0);
  const Point bs = topo.bs_positions.at(0);

  ChannelSet ch;
  ch.downlink.reserve(users);
  for (int k = 0; k < users; ++k) {
    const double eta = amplitude(macro_path_gain_db(km_between(pos[k], bs)));
    Eigen::VectorXcd h(cfg.num_antennas);
    for (int m = 0; m < cfg.num_antennas; ++m) h[m] = eta * complex_gaussian(rng);
    ch.downlink.push_back(std::move(h));
  }

  const double los = std::sqrt(cfg.rician_factor / (cfg.rician_factor + 1.0));
  const double scatter = std::sqrt(1.0 / (cfg.rician_factor + 1.0));
  ch.d2d = Eigen::MatrixXcd::Zero(users, users);
  for (int k = 0; k < users; ++k) {
    for (int i = 0; i < users; ++i) {
      if (i == k) continue;
      const double d = km_between(pos[k], pos[i]);
      if (groups.group_of(k) == groups.group_of(i)) {
        const double eta = amplitude(d2d_path_gain_db(d));
        ch.d2d(k, i) = eta * (los + scatter * complex_gaussian(rng));
      } else {
        ch.d2d(k, i) = amplitude(macro_path_gain_db(d)) * complex_gaussian(rng);
      }
    }
  }

  const double noise = cfg.noise_power_w();
  ch.interference_phase1 = Eigen::VectorXd::Constant(users, noise);
  ch.interference_phase2 = Eigen::VectorXd::Constant(users, noise);
  return ch;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> sample_interference(const Topology& topo, const SystemConfig& cfg,
                                                                Rng& rng) {
  const GroupLayout groups = cfg.layout();
  const int users = groups.num_users();
  const int antennas = cfg.num_antennas;
  const double noise = cfg.noise_power_w();
  const double beam_power = cfg.bs_power_w() / groups.num_groups();
  const double user_power = cfg.user_power_w();
  const auto& pos = topo.user_positions.at(0);

  Eigen::VectorXd phase1 = Eigen::VectorXd::Constant(users, noise);
  Eigen::VectorXd phase2 = Eigen::VectorXd::Constant(users, noise);

  for (int cell = 1; cell <= cfg.num_neighbor_cells; ++cell) {
    // Phase I: N isotropic unit beams, power split evenly.
    std::vector<Eigen::VectorXcd> beams;
    for (int n = 0; n < groups.num_groups(); ++n) {
      Eigen::VectorXcd w(antennas);
      for (int m = 0; m < antennas; ++m) w[m] = complex_gaussian(rng);
      beams.push_back(w.normalized() * std::sqrt(beam_power));
    }
    for (int k = 0; k < users; ++k) {
      const double eta = amplitude(macro_path_gain_db(km_between(pos[k], topo.bs_positions[cell])));
      Eigen::VectorXcd h(antennas);
      for (int m = 0; m < antennas; ++m) h[m] = eta * complex_gaussian(rng);
      for (const auto& w : beams) phase1[k] += std::norm(response(h, w));
    }

    // Phase II: one uniformly chosen relay per neighbor group at full power.
    const auto& cell_users = topo.user_positions.at(cell);
    for (int n = 0; n < groups.num_groups(); ++n) {
      std::uniform_int_distribution<int> pick(0, groups.size(n) - 1);
      const Point relay = cell_users[groups.offset(n) + pick(rng)];
      for (int k = 0; k < users; ++k) {
        const double eta = amplitude(macro_path_gain_db(km_between(pos[k], relay)));
        phase2[k] += user_power * std::norm(eta * complex_gaussian(rng));
      }
    }
  }
  return {std::move(phase1), std::move(phase2)};
}

Realization make_realization(const SystemConfig& cfg, std::uint64_t trial) {
  Rng topo_rng = make_stream(cfg.seed, trial, Stream::topology);
  Rng channel_rng = make_stream(cfg.seed, trial, Stream::channels);
  Rng interference_rng = make_stream(cfg.seed, trial, Stream::interference);

  Realization r;
  r.topology = generate_topology(cfg, topo_rng);
  r.channels = sample_channels(r.topology, cfg, channel_rng);
  auto [i1, i2] = sample_interference(r.topology, cfg, interference_rng);
  r.channels.interference_phase1 = std::move(i1);
  r.channels.interference_phase2 = std::move(i2);
  return r;
}

namespace {

struct Fnv1a {
  std::uint64_t state = 0xcbf29ce484222325ULL;
  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      state ^= p[i];
      state *= 0x100000001b3ULL;
    }
  }
  void value(double v) { bytes(&v, sizeof v); }
};

}  // namespace

std::uint64_t digest(const ChannelSet& ch) {
  Fnv1a h;
  for (const auto& v : ch.downlink)
    for (const auto& c : v) {
      h.value(c.real());
      h.value(c.imag());
    }
  for (Eigen::Index j = 0; j < ch.d2d.cols(); ++j)
    for (Eigen::Index i = 0; i < ch.d2d.rows(); ++i) {
      h.value(ch.d2d(i, j).real());
      h.value(ch.d2d(i, j).imag());
    }
  for (double v : ch.interference_phase1) h.value(v);
  for (double v : ch.interference_phase2) h.value(v);
  return h.state;
}

}  // namespace urllc::radio
