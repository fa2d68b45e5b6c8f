#include "urllc/beamform/initialization.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Cholesky>

namespace urllc::beamform {

namespace {

std::vector<std::vector<int>> members_by_stream(const NormalizedProblem& p) {
  std::vector<std::vector<int>> m(p.num_streams);
  for (int k = 0; k < p.num_users(); ++k) m[p.stream_of[k]].push_back(k);
  return m;
}

struct ZfPoint {
  double common = 0.0;  // SINR / target reached by every picked member
  Eigen::MatrixXcd directions;
  Eigen::VectorXd power;
};

// Unit ZF directions toward the picked users and the max-min power split.
bool zero_forcing(const NormalizedProblem& p, const std::vector<int>& pick, ZfPoint& out) {
  const int l = static_cast<int>(pick.size());
  const int m = p.num_antennas();
  Eigen::MatrixXcd hs(l, m);
  for (int i = 0; i < l; ++i) hs.row(i) = p.channels[pick[i]].transpose();
  const Eigen::MatrixXcd gram = hs * hs.adjoint();
  Eigen::LLT<Eigen::MatrixXcd> llt(gram);
  if (llt.info() != Eigen::Success) return false;
  Eigen::MatrixXcd dir = hs.adjoint() * llt.solve(Eigen::MatrixXcd::Identity(l, l));
  Eigen::VectorXd need(l);
  for (int i = 0; i < l; ++i) {
    const double norm = dir.col(i).norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) return false;
    dir.col(i) /= norm;
    const double gain = std::norm(radio::response(p.channels[pick[i]], dir.col(i)));
    if (!(gain > 0.0)) return false;
    need[i] = std::max(p.target[pick[i]], 1e-300) / gain;
  }
  out.common = 1.0 / need.sum();
  out.directions = dir;
  out.power = need / need.sum();
  return true;
}

}  // namespace

std::optional<std::vector<Eigen::VectorXcd>> zero_forcing_init(const NormalizedProblem& p, int passes) {
  if (p.num_streams > p.num_antennas() || p.num_streams == 0) return std::nullopt;
  const auto members = members_by_stream(p);
  std::vector<int> pick(p.num_streams);
  for (int s = 0; s < p.num_streams; ++s) {
    if (members[s].empty()) return std::nullopt;
    pick[s] = *std::max_element(members[s].begin(), members[s].end(), [&](int a, int b) {
      return p.channels[a].squaredNorm() < p.channels[b].squaredNorm();
    });
  }
  ZfPoint best;
  if (!zero_forcing(p, pick, best)) best.common = -1.0;
  for (int pass = 0; pass < passes; ++pass) {
    bool changed = false;
    for (int s = 0; s < p.num_streams; ++s) {
      for (int k : members[s]) {
        if (k == pick[s]) continue;
        auto trial = pick;
        trial[s] = k;
        ZfPoint z;
        if (zero_forcing(p, trial, z) && z.common > best.common) {
          best = z;
          pick = trial;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  if (best.common <= 0.0) return std::nullopt;
  std::vector<Eigen::VectorXcd> v(p.num_streams);
  for (int s = 0; s < p.num_streams; ++s) v[s] = best.directions.col(s) * std::sqrt(best.power[s]);
  return v;
}

std::vector<Eigen::VectorXcd> mrt_median_init(const NormalizedProblem& p) {
  const auto members = members_by_stream(p);
  const double scale = 1.0 / std::sqrt(static_cast<double>(p.num_streams));
  std::vector<Eigen::VectorXcd> v(p.num_streams, Eigen::VectorXcd::Zero(p.num_antennas()));
  for (int s = 0; s < p.num_streams; ++s) {
    auto idx = members[s];
    if (idx.empty()) continue;
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
      return p.channels[a].squaredNorm() < p.channels[b].squaredNorm();
    });
    const auto& h = p.channels[idx[idx.size() / 2]];
    const double norm = h.norm();
    if (norm > 0.0) v[s] = h.conjugate() / norm * scale;
  }
  return v;
}

std::vector<Eigen::VectorXcd> random_init(const NormalizedProblem& p, Rng& rng) {
  const double scale = 1.0 / std::sqrt(static_cast<double>(p.num_streams));
  std::vector<Eigen::VectorXcd> v(p.num_streams, Eigen::VectorXcd(p.num_antennas()));
  for (auto& b : v) {
    for (int m = 0; m < b.size(); ++m) b[m] = complex_gaussian(rng);
    b *= scale / b.norm();
  }
  return v;
}

}  // namespace urllc::beamform
