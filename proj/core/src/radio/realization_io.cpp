#include "urllc/radio/realization_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace urllc::radio {

namespace {

std::string num(double v) {
  char buf[40];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  void expect(const std::string& word) {
    const std::string got = token();
    if (got != word) throw std::runtime_error("realization dump: expected '" + word + "', got '" + got + "'");
  }
  std::string token() {
    std::string t;
    if (!(in_ >> t)) throw std::runtime_error("realization dump: unexpected end of input");
    return t;
  }
  double real() {
    const std::string t = token();
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size())
      throw std::runtime_error("realization dump: bad number '" + t + "'");
    return v;
  }
  int integer() { return static_cast<int>(real()); }

 private:
  std::istream& in_;
};

}  // namespace

void write_realization(std::ostream& out, const Realization& r) {
  const auto& topo = r.topology;
  const auto& ch = r.channels;
  const int users = ch.num_users();
  const int antennas = users > 0 ? static_cast<int>(ch.downlink[0].size()) : 0;
  const int cells = static_cast<int>(topo.bs_positions.size());
  const int groups = cells > 0 ? static_cast<int>(topo.group_centers[0].size()) : 0;
  const int cell_users = cells > 0 ? static_cast<int>(topo.user_positions[0].size()) : 0;

  out << "urllc-realization " << kRealizationFormatVersion << '\n';
  out << "cells " << cells << " groups " << groups << " cell_users " << cell_users << " users " << users
      << " antennas " << antennas << '\n';
  for (const auto& p : topo.bs_positions) out << "bs " << num(p.x) << ' ' << num(p.y) << '\n';
  for (const auto& cell : topo.group_centers)
    for (const auto& p : cell) out << "center " << num(p.x) << ' ' << num(p.y) << '\n';
  for (const auto& cell : topo.user_positions)
    for (const auto& p : cell) out << "user " << num(p.x) << ' ' << num(p.y) << '\n';
  for (const auto& h : ch.downlink) {
    out << "downlink";
    for (const auto& c : h) out << ' ' << num(c.real()) << ' ' << num(c.imag());
    out << '\n';
  }
  for (int k = 0; k < users; ++k) {
    out << "d2d";
    for (int i = 0; i < users; ++i) out << ' ' << num(ch.d2d(k, i).real()) << ' ' << num(ch.d2d(k, i).imag());
    out << '\n';
  }
  for (int k = 0; k < users; ++k)
    out << "interference " << num(ch.interference_phase1[k]) << ' ' << num(ch.interference_phase2[k]) << '\n';
  out << "end\n";
}

Realization read_realization(std::istream& in) {
  Reader rd(in);
  rd.expect("urllc-realization");
  const int version = rd.integer();
  if (version != kRealizationFormatVersion)
    throw std::runtime_error("realization dump: unsupported version " + std::to_string(version));
  rd.expect("cells");
  const int cells = rd.integer();
  rd.expect("groups");
  const int groups = rd.integer();
  rd.expect("cell_users");
  const int cell_users = rd.integer();
  rd.expect("users");
  const int users = rd.integer();
  rd.expect("antennas");
  const int antennas = rd.integer();

  Realization r;
  auto point = [&](const char* tag) {
    rd.expect(tag);
    const double x = rd.real();
    return Point{x, rd.real()};
  };
  for (int c = 0; c < cells; ++c) r.topology.bs_positions.push_back(point("bs"));
  r.topology.group_centers.assign(cells, {});
  for (int c = 0; c < cells; ++c)
    for (int n = 0; n < groups; ++n) r.topology.group_centers[c].push_back(point("center"));
  r.topology.user_positions.assign(cells, {});
  for (int c = 0; c < cells; ++c)
    for (int k = 0; k < cell_users; ++k) r.topology.user_positions[c].push_back(point("user"));

  auto complex_value = [&] {
    const double re = rd.real();
    return std::complex<double>(re, rd.real());
  };
  auto& ch = r.channels;
  for (int k = 0; k < users; ++k) {
    rd.expect("downlink");
    Eigen::VectorXcd h(antennas);
    for (int m = 0; m < antennas; ++m) h[m] = complex_value();
    ch.downlink.push_back(std::move(h));
  }
  ch.d2d = Eigen::MatrixXcd::Zero(users, users);
  for (int k = 0; k < users; ++k) {
    rd.expect("d2d");
    for (int i = 0; i < users; ++i) ch.d2d(k, i) = complex_value();
  }
  ch.interference_phase1.resize(users);
  ch.interference_phase2.resize(users);
  for (int k = 0; k < users; ++k) {
    rd.expect("interference");
    ch.interference_phase1[k] = rd.real();
    ch.interference_phase2[k] = rd.real();
  }
  rd.expect("end");
  return r;
}

}  // namespace urllc::radio
