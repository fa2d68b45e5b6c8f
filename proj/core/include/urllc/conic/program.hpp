#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace urllc::conic {

struct Term {
  int var = 0;
  double coef = 0.0;
};

// sum coef * x[var] + constant. Repeated variables are summed.
struct AffineExpr {
  std::vector<Term> terms;
  double constant = 0.0;

  AffineExpr() = default;
  explicit AffineExpr(double c) : constant(c) {}

  AffineExpr& add(int var, double coef) {
    terms.push_back({var, coef});
    return *this;
  }
  double eval(const Eigen::VectorXd& x) const;
};

// expr == 0
struct Equality {
  AffineExpr expr;
  std::string label;
};

// expr >= 0
struct Inequality {
  AffineExpr expr;
  std::string label;
};

// || tail || <= head
struct SocConstraint {
  AffineExpr head;
  std::vector<AffineExpr> tail;
  std::string label;
};

// minimize cost^T x subject to the listed constraints.
struct ConicProgram {
  int num_vars = 0;
  Eigen::VectorXd cost;
  std::vector<Equality> equalities;
  std::vector<int> nonnegative;  // x[i] >= 0
  std::vector<Inequality> inequalities;
  std::vector<SocConstraint> cones;

  // Appends `count` variables with zero cost; returns the first index.
  int add_variables(int count);

  double objective(const Eigen::VectorXd& x) const { return cost.dot(x); }

  // Empty when every index is in range and the cost has num_vars entries.
  std::vector<std::string> structural_errors() const;
};

// Sparse triplet dump for cross-checking with external solvers.
//   conic-program 1
//   vars <n>
//   c <j> <value>                       (nonzero cost entries)
//   eq <row> <j> <value> / eq-rhs <row> <constant>
//   lp <row> <j> <value> / lp-rhs <row> <constant>       (expr >= 0)
//   soc <cone> <row> <j> <value> / soc-rhs <cone> <row> <constant>
//   soc-dim <cone> <dim>                 (row 0 is the head)
void write_triplets(std::ostream& out, const ConicProgram& p);

}  // namespace urllc::conic
