#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "doctest.h"
#include "oracles.hpp"
#include "programs.hpp"
#include "urllc/conic/kkt.hpp"
#include "urllc/conic/program.hpp"
#include "urllc/conic/solver.hpp"

using namespace urllc::conic;

using namespace testprog;

namespace {

std::vector<Reference> load_references() {
  return testprog::load_references(std::string(URLLC_TEST_DATA_DIR) + "/reference_programs.txt");
}

}  // namespace

TEST_SUITE("conic") {

TEST_CASE("tight linear bound") {
  ConicProgram p;
  const int t = p.add_variables(1);
  p.cost[t] = 1.0;
  p.inequalities.push_back({AffineExpr(-1.0).add(t, 1.0), "t >= 1"});
  p.nonnegative.push_back(t);
  const auto s = solve(p);
  CHECK(s.status == Status::optimal);
  CHECK(s.x[t] == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(check_kkt(p, s).max() <= 1e-7);
}

TEST_CASE("minimum norm closed form") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd a(1 + trial % 6);
    for (auto& v : a) v = g(rng);
    const auto p = min_norm(a);
    SolverOptions o;
    o.tol = 1e-10;
    const auto s = solve(p, o);
    REQUIRE(s.status == Status::optimal);
    CHECK(std::abs(s.objective - 1.0 / a.norm()) <= 1e-6);
    const Eigen::VectorXd w = s.x.tail(a.size());
    CHECK((w - a / a.squaredNorm()).norm() <= 1e-6);
  }
}

TEST_CASE("closed form satisfies the optimality conditions") {
  Eigen::VectorXd a(3);
  a << 0.3, -1.2, 2.0;
  const auto p = min_norm(a);
  ConicSolution s;
  s.status = Status::optimal;
  s.x.resize(4);
  s.x << 1.0 / a.norm(), a / a.squaredNorm();
  const double lambda = 1.0 / a.norm();
  s.inequality_duals = Eigen::VectorXd::Constant(1, lambda);
  Eigen::VectorXd z(4);
  z << 1.0, -lambda * a;
  s.cone_duals = {z};
  s.nonnegative_duals.resize(0);
  s.equality_duals.resize(0);
  s.objective = s.x[0];
  CHECK(check_kkt(p, s).max() <= 1e-9);
}

TEST_CASE("perturbed solution is detected") {
  Eigen::VectorXd a(4);
  a << 1.0, 2.0, -0.5, 0.25;
  const auto p = min_norm(a);
  SolverOptions o;
  o.tol = 1e-9;
  const auto s = solve(p, o);
  REQUIRE(s.status == Status::optimal);
  CHECK(check_kkt(p, s).max() <= o.tol);
  for (int i = 0; i < p.num_vars; ++i) {
    auto bad = s;
    bad.x[i] += 1e3 * o.tol;
    CHECK(check_kkt(p, bad).max() > o.tol);
  }
}

TEST_CASE("check_kkt rejects mismatched dimensions") {
  const auto p = min_norm(Eigen::VectorXd::Ones(2));
  ConicSolution s;
  s.x = Eigen::VectorXd::Zero(2);
  CHECK_THROWS_AS(check_kkt(p, s), std::invalid_argument);
}

TEST_CASE("infeasible and unbounded certificates") {
  ConicProgram p;
  const int t = p.add_variables(1);
  p.cost[t] = 1.0;
  p.inequalities.push_back({AffineExpr(-1.0).add(t, 1.0), "t >= 1"});
  p.inequalities.push_back({AffineExpr().add(t, -1.0), "t <= 0"});
  CHECK(solve(p).status == Status::infeasible);

  ConicProgram q;
  const int x = q.add_variables(2);
  q.cost << 1.0, 0.0;
  SocConstraint c;  // bounds x1 only, so x0 can run to -inf
  c.head = AffineExpr(1.0);
  c.tail = {AffineExpr().add(x + 1, 1.0)};
  q.cones.push_back(c);
  CHECK(solve(q).status == Status::unbounded);
}

TEST_CASE("malformed programs throw") {
  ConicProgram p;
  p.add_variables(2);
  p.inequalities.push_back({AffineExpr().add(5, 1.0), "out of range"});
  CHECK_FALSE(p.structural_errors().empty());
  CHECK_THROWS_AS(solve(p), std::invalid_argument);
}

TEST_CASE("argmin invariant under objective scaling") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    auto p = random_small(rng, 3);
    SolverOptions o;
    o.tol = 1e-9;
    const auto a = solve(p, o);
    p.cost *= 37.0;
    const auto b = solve(p, o);
    REQUIRE(a.status == Status::optimal);
    REQUIRE(b.status == Status::optimal);
    CHECK((a.x - b.x).norm() <= 1e-5);
    CHECK(b.objective == doctest::Approx(37.0 * a.objective).epsilon(1e-7));
  }
}

TEST_CASE("grid search agreement on small programs") {
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 3;
    const auto p = random_small(rng, n);
    const auto s = solve(p);
    REQUIRE(s.status == Status::optimal);
    const double grid = oracle::grid_minimum(p, -1.0, 1.0, n == 3 ? 41 : 101, 1e-12);
    REQUIRE(std::isfinite(grid));
    worst = std::max(worst, std::abs(s.objective - grid));
    CHECK(std::abs(s.objective - grid) <= 1e-3);
    CHECK(oracle::violation(p, s.x) <= 1e-6);
  }
  MESSAGE("worst gap to grid: " << worst);
}

TEST_CASE("reference programs up to ten variables") {
  const auto refs = load_references();
  REQUIRE(refs.size() == 30);
  for (const auto& r : refs) {
    for (auto mode : {LinearAlgebra::dense, LinearAlgebra::low_rank}) {
      SolverOptions o;
      o.linear_algebra = mode;
      const auto s = solve(r.program, o);
      REQUIRE(s.status == Status::optimal);
      CHECK(s.objective == doctest::Approx(r.objective).epsilon(1e-5));
      CHECK(oracle::violation(r.program, s.x) <= 1e-6);
    }
  }
}

TEST_CASE("dense and low-rank factorizations agree") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = random_small(rng, 3 + trial % 4);
    SolverOptions a, b;
    a.linear_algebra = LinearAlgebra::dense;
    b.linear_algebra = LinearAlgebra::low_rank;
    const auto sa = solve(p, a), sb = solve(p, b);
    REQUIRE(sa.status == Status::optimal);
    REQUIRE(sb.status == Status::optimal);
    CHECK(sa.objective == doctest::Approx(sb.objective).epsilon(1e-6));
  }
}

TEST_CASE("solve is deterministic") {
  std::mt19937_64 rng(5);
  const auto p = random_small(rng, 3);
  const auto a = solve(p), b = solve(p);
  CHECK(a.x == b.x);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("triplet dump") {
  ConicProgram p;
  p.add_variables(2);
  p.cost << 1.0, 0.0;
  p.equalities.push_back({AffineExpr(-1.0).add(0, 1.0).add(1, 1.0), "sum"});
  SocConstraint c;
  c.head = AffineExpr(2.0);
  c.tail = {AffineExpr().add(0, 1.0), AffineExpr().add(1, 1.0)};
  p.cones.push_back(c);
  std::ostringstream out;
  write_triplets(out, p);
  const std::string s = out.str();
  CHECK(s.rfind("conic-program 1\nvars 2\n", 0) == 0);
  CHECK(s.find("c 0 1") != std::string::npos);
  CHECK(s.find("eq-rhs 0 -1") != std::string::npos);
  CHECK(s.find("soc-dim 0 3") != std::string::npos);
}

}
