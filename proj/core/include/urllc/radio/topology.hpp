#pragma once

#include <vector>

#include "urllc/core/config.hpp"
#include "urllc/core/rng.hpp"

namespace urllc::radio {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(Point a, Point b);

// Seven-cell layout. Cell 0 is the reference cell; cells 1..6 sit on the
// first hexagonal tier at inter-site distance 2 R cos(30 deg).
struct Topology {
  std::vector<Point> bs_positions;
  std::vector<std::vector<Point>> group_centers;   // [cell][group]
  std::vector<std::vector<Point>> user_positions;  // [cell][flat user]
};

inline constexpr int kNumCells = 7;

Topology generate_topology(const SystemConfig& cfg, Rng& rng);

}  // namespace urllc::radio
