#include "urllc/radio/topology.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace urllc::radio {

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

namespace {

Point polar(Point origin, double radius, double angle) {
  return {origin.x + radius * std::cos(angle), origin.y + radius * std::sin(angle)};
}

}  // namespace

Topology generate_topology(const SystemConfig& cfg, Rng& rng) {
  if (!(cfg.donut_inner_m < cfg.donut_outer_m))
    throw std::invalid_argument("generate_topology: donut_inner_m must be below donut_outer_m");
  if (!(cfg.donut_outer_m <= cfg.cell_radius_m))
    throw std::invalid_argument("generate_topology: donut_outer_m exceeds the cell radius");

  const double two_pi = 2.0 * std::numbers::pi;
  const double site_distance = 2.0 * cfg.cell_radius_m * std::cos(std::numbers::pi / 6.0);
  const GroupLayout groups = cfg.layout();

  Topology topo;
  topo.bs_positions.push_back({0.0, 0.0});
  for (int i = 0; i < kNumCells - 1; ++i)
    topo.bs_positions.push_back(polar({0.0, 0.0}, site_distance, std::numbers::pi / 6.0 + i * two_pi / 6.0));

  const double r_in2 = cfg.donut_inner_m * cfg.donut_inner_m;
  const double r_out2 = cfg.donut_outer_m * cfg.donut_outer_m;
  for (int cell = 0; cell < kNumCells; ++cell) {
    const Point bs = topo.bs_positions[cell];
    std::vector<Point> centers;
    std::vector<Point> users;
    for (int n = 0; n < groups.num_groups(); ++n) {
      // Area-uniform over the annulus.
      const double radius = std::sqrt(r_in2 + uniform01(rng) * (r_out2 - r_in2));
      const Point center = polar(bs, radius, two_pi * uniform01(rng));
      centers.push_back(center);
      for (int k = 0; k < groups.size(n); ++k) {
        const double r = cfg.group_radius_m * std::sqrt(uniform01(rng));
        users.push_back(polar(center, r, two_pi * uniform01(rng)));
      }
    }
    topo.group_centers.push_back(std::move(centers));
    topo.user_positions.push_back(std::move(users));
  }
  return topo;
}

}  // namespace urllc::radio
