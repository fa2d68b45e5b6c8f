#pragma once

// Program generators and fixture loading shared by the solver tests.

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "urllc/conic/program.hpp"

namespace testprog {

using namespace urllc::conic;

// min ||w|| s.t. a'w >= 1, as min t s.t. ||w|| <= t.
inline ConicProgram min_norm(const Eigen::VectorXd& a) {
  ConicProgram p;
  const int t = p.add_variables(1);
  const int w = p.add_variables(static_cast<int>(a.size()));
  p.cost[t] = 1.0;
  SocConstraint c;
  c.head = AffineExpr().add(t, 1.0);
  for (int i = 0; i < a.size(); ++i) c.tail.push_back(AffineExpr().add(w + i, 1.0));
  p.cones.push_back(c);
  AffineExpr lin(-1.0);
  for (int i = 0; i < a.size(); ++i) lin.add(w + i, a[i]);
  p.inequalities.push_back({lin, "a'w >= 1"});
  return p;
}

// Box |x_i| <= 1, a disc or ball around a random interior point, and a few
// random cuts through a strictly feasible point.
inline ConicProgram random_small(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ConicProgram p;
  p.add_variables(n);
  Eigen::VectorXd x0(n);
  for (int i = 0; i < n; ++i) {
    p.cost[i] = u(rng);
    x0[i] = 0.6 * u(rng);
    p.inequalities.push_back({AffineExpr(1.0).add(i, -1.0), "upper"});
    p.inequalities.push_back({AffineExpr(1.0).add(i, 1.0), "lower"});
  }
  SocConstraint ball;
  Eigen::VectorXd center(n);
  for (int i = 0; i < n; ++i) center[i] = x0[i] + 0.2 * u(rng);
  ball.head = AffineExpr((x0 - center).norm() + 0.2 + 0.5 * std::abs(u(rng)));
  for (int i = 0; i < n; ++i) ball.tail.push_back(AffineExpr(-center[i]).add(i, 1.0));
  p.cones.push_back(ball);
  const int cuts = static_cast<int>(std::abs(u(rng)) * 3);
  for (int j = 0; j < cuts; ++j) {
    AffineExpr e;
    double at_x0 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double a = u(rng);
      e.add(i, a);
      at_x0 += a * x0[i];
    }
    e.constant = -at_x0 + 0.05 + 0.3 * std::abs(u(rng));
    p.inequalities.push_back({e, "cut"});
  }
  return p;
}

struct Reference {
  ConicProgram program;
  double objective = 0.0;
};

inline std::vector<double> numbers(std::istringstream& in) {
  std::vector<double> v;
  double x;
  while (in >> x) v.push_back(x);
  return v;
}

inline AffineExpr affine(const std::vector<double>& v, int n) {
  AffineExpr e(v.at(n));
  for (int i = 0; i < n; ++i)
    if (v[i] != 0.0) e.add(i, v[i]);
  return e;
}

// Programs written by make_reference_programs.py with their optimal values.
inline std::vector<Reference> load_references(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<Reference> out;
  std::string line;
  int n = 0, soc_rows = 0, soc_seen = 0;
  SocConstraint soc;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "program") {
      out.emplace_back();
      ls >> n >> out.back().objective;
      out.back().program.add_variables(n);
    } else if (tag == "c") {
      const auto v = numbers(ls);
      for (int i = 0; i < n; ++i) out.back().program.cost[i] = v.at(i);
    } else if (tag == "lp") {
      out.back().program.inequalities.push_back({affine(numbers(ls), n), "lp"});
    } else if (tag == "eq") {
      out.back().program.equalities.push_back({affine(numbers(ls), n), "eq"});
    } else if (tag == "soc") {
      ls >> soc_rows;
      soc = SocConstraint{};
      soc_seen = 0;
    } else if (tag == "row") {
      const auto e = affine(numbers(ls), n);
      if (soc_seen++ == 0) soc.head = e;
      else soc.tail.push_back(e);
      if (soc_seen == soc_rows) out.back().program.cones.push_back(soc);
    }
  }
  return out;
}


}  // namespace testprog
