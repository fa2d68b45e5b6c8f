#pragma once

// Internal to the conic solver: standard form, cone algebra, KKT solves.

#include <memory>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "urllc/conic/program.hpp"
#include "urllc/conic/solver.hpp"

namespace urllc::conic::detail {

using SparseRows = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// Cone K = R_+^lp x Q^{dim_0} x Q^{dim_1} ... laid out row by row.
struct ConeLayout {
  int lp = 0;
  std::vector<int> start;
  std::vector<int> dim;
  int rows = 0;

  int num_cones() const { return static_cast<int>(dim.size()); }
  int degree() const { return lp + num_cones(); }
};

// min c'x  s.t.  Ax = b,  h - Gx in K.
struct StandardForm {
  int n = 0;
  int p = 0;
  ConeLayout cones;
  Eigen::VectorXd c, b, h;
  SparseRows A, G;
};

StandardForm compile(const ConicProgram& prog);

// Cone algebra. Vectors span all cone rows.
double min_eig(const ConeLayout& k, const Eigen::VectorXd& u);
// Max step a in [0, inf) with u + a du in K (u assumed interior).
double max_step(const ConeLayout& k, const Eigen::VectorXd& u, const Eigen::VectorXd& du);
Eigen::VectorXd identity(const ConeLayout& k);
Eigen::VectorXd jordan_product(const ConeLayout& k, const Eigen::VectorXd& u, const Eigen::VectorXd& v);
// Solves lambda o x = v for x.
Eigen::VectorXd jordan_divide(const ConeLayout& k, const Eigen::VectorXd& lambda, const Eigen::VectorXd& v);
// Cone violation: max(0, -min_eig) per block, worst block.
double cone_violation(const ConeLayout& k, const Eigen::VectorXd& u);

// Nesterov-Todd scaling W with W z = W^{-1} s = lambda.
struct Scaling {
  Eigen::VectorXd lp_w;            // LP: sqrt(s/z)
  std::vector<double> eta;         // SOC: scale factor
  std::vector<Eigen::VectorXd> w;  // SOC: unit hyperbolic vector (w'Jw = 1)
  Eigen::VectorXd lambda;
};

Scaling identity_scaling(const ConeLayout& k);
// Returns false if s or z left the interior.
bool nt_scaling(const ConeLayout& k, const Eigen::VectorXd& s, const Eigen::VectorXd& z, Scaling& out);

Eigen::VectorXd apply_w(const ConeLayout& k, const Scaling& sc, const Eigen::VectorXd& v);
Eigen::VectorXd apply_w_inv(const ConeLayout& k, const Scaling& sc, const Eigen::VectorXd& v);
Eigen::VectorXd apply_w2(const ConeLayout& k, const Scaling& sc, const Eigen::VectorXd& v);
Eigen::VectorXd apply_w_inv2(const ConeLayout& k, const Scaling& sc, const Eigen::VectorXd& v);

// Solves [0 A' G'; A 0 0; G 0 -W^2] [dx; dy; dz] = [r1; r2; r3]
// by reduction to the normal matrix H = G' W^-2 G.
class KktSystem {
 public:
  KktSystem(const StandardForm& sf, LinearAlgebra mode);
  ~KktSystem();
  KktSystem(const KktSystem&) = delete;
  KktSystem& operator=(const KktSystem&) = delete;

  bool factor(const Scaling& sc);
  void solve(const Eigen::VectorXd& r1, const Eigen::VectorXd& r2, const Eigen::VectorXd& r3, Eigen::VectorXd& dx,
             Eigen::VectorXd& dy, Eigen::VectorXd& dz) const;

  bool uses_low_rank() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace urllc::conic::detail
