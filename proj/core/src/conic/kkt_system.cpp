#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <Eigen/SparseCholesky>

#include "detail.hpp"

namespace urllc::conic::detail {

// H = G' W^-2 G splits per cone into a part that keeps the sparsity of G
// and two rank-one terms per SOC. With W^-2 = (I + 2 Jw (Jw)' - 2 e0 e0') / eta^2,
//   G_c' W_c^-2 G_c = (G_c' G_c + 2 q q' - 2 g0 g0') / eta^2,  q = G_c' J w.
// Keeping the head row inside the sparse part matters: variables that only
// appear in cone heads would otherwise leave the sparse factor singular.
// Dense mode adds everything into one matrix; low-rank mode factors the
// sparse part and applies the rank-one terms through a Woodbury update.
struct KktSystem::Impl {
  const StandardForm& sf;
  bool low_rank = false;

  struct Row {
    std::vector<int> idx;
    std::vector<double> val;
    std::vector<int> slot;  // low-rank mode: value positions of (idx[b], idx[a]), a <= b
  };
  std::vector<Row> rows;   // every row of G
  std::vector<int> heads;  // cones whose head row is not constant

  const Scaling* scaling = nullptr;

  // Dense mode.
  Eigen::MatrixXd h_dense;
  Eigen::LLT<Eigen::MatrixXd, Eigen::Lower> h_llt;

  // Low-rank mode.
  Eigen::SparseMatrix<double> s_sparse;  // lower triangle
  std::vector<int> diag_slot;
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>, Eigen::Lower, Eigen::AMDOrdering<int>> s_llt;
  bool analyzed = false;
  Eigen::MatrixXd u;      // n x r
  Eigen::MatrixXd s_inv_u;
  Eigen::PartialPivLU<Eigen::MatrixXd> m_lu;

  // Equalities.
  Eigen::MatrixXd h_inv_at;  // n x p
  Eigen::LLT<Eigen::MatrixXd> schur_llt;

  explicit Impl(const StandardForm& f) : sf(f) {}

  void build_rows() {
    rows.resize(sf.cones.rows);
    for (int r = 0; r < sf.G.outerSize(); ++r)
      for (SparseRows::InnerIterator it(sf.G, r); it; ++it) {
        rows[r].idx.push_back(static_cast<int>(it.col()));
        rows[r].val.push_back(it.value());
      }
    for (int c = 0; c < sf.cones.num_cones(); ++c)
      if (!rows[sf.cones.start[c]].idx.empty()) heads.push_back(c);
  }

  int rank() const { return sf.cones.num_cones() + static_cast<int>(heads.size()); }

  // Weight of row r in the sparse part.
  double sparse_weight(int r, const Scaling& sc, const std::vector<int>& cone_of_row) const {
    if (r < sf.cones.lp) return 1.0 / (sc.lp_w[r] * sc.lp_w[r]);
    const int c = cone_of_row[r - sf.cones.lp];
    return 1.0 / (sc.eta[c] * sc.eta[c]);
  }

  std::vector<int> cone_of_row;

  void build_sparse_pattern() {
    const int n = sf.n;
    std::vector<Eigen::Triplet<double>> trip;
    for (int j = 0; j < n; ++j) trip.emplace_back(j, j, 1.0);
    for (int r = 0; r < sf.cones.rows; ++r) {
      const auto& idx = rows[r].idx;
      for (std::size_t b = 0; b < idx.size(); ++b)
        for (std::size_t a = 0; a <= b; ++a) trip.emplace_back(std::max(idx[a], idx[b]), std::min(idx[a], idx[b]), 1.0);
    }
    s_sparse.resize(n, n);
    s_sparse.setFromTriplets(trip.begin(), trip.end());
    s_sparse.makeCompressed();

    auto slot_of = [&](int row, int col) {
      const int* inner = s_sparse.innerIndexPtr();
      const int begin = s_sparse.outerIndexPtr()[col];
      const int end = s_sparse.outerIndexPtr()[col + 1];
      return static_cast<int>(std::lower_bound(inner + begin, inner + end, row) - inner);
    };
    diag_slot.resize(n);
    for (int j = 0; j < n; ++j) diag_slot[j] = slot_of(j, j);
    for (int r = 0; r < sf.cones.rows; ++r) {
      auto& row = rows[r];
      row.slot.clear();
      for (std::size_t b = 0; b < row.idx.size(); ++b)
        for (std::size_t a = 0; a <= b; ++a)
          row.slot.push_back(slot_of(std::max(row.idx[a], row.idx[b]), std::min(row.idx[a], row.idx[b])));
    }
  }

  // Columns of U and their signed weights.
  void build_low_rank(const Scaling& sc, Eigen::MatrixXd& cols, Eigen::VectorXd& weight) const {
    const int n = sf.n;
    cols.setZero(n, rank());
    weight.resize(rank());
    int k = 0;
    for (int c = 0; c < sf.cones.num_cones(); ++c) {
      const int s = sf.cones.start[c];
      const int d = sf.cones.dim[c];
      const double inv_e2 = 1.0 / (sc.eta[c] * sc.eta[c]);
      // q = G_c' J w
      for (int r = 0; r < d; ++r) {
        const double jw = r == 0 ? sc.w[c][0] : -sc.w[c][r];
        const auto& row = rows[s + r];
        for (std::size_t t = 0; t < row.idx.size(); ++t) cols(row.idx[t], k) += row.val[t] * jw;
      }
      weight[k++] = 2.0 * inv_e2;
    }
    for (int c : heads) {
      const auto& row = rows[sf.cones.start[c]];
      for (std::size_t t = 0; t < row.idx.size(); ++t) cols(row.idx[t], k) += row.val[t];
      weight[k++] = -2.0 / (sc.eta[c] * sc.eta[c]);
    }
  }

  // Diagonal shift proportional to each pivot. Entries of H span many orders
  // of magnitude near the cone boundary, and a shift tied to the largest one
  // would swamp the small ones.
  static Eigen::VectorXd regularization(const Eigen::VectorXd& diag, double eps) {
    const double floor = 1e-8 * std::max(1.0, diag.cwiseAbs().maxCoeff());
    return eps * diag.cwiseAbs().cwiseMax(floor);
  }

  bool factor_dense(const Scaling& sc) {
    const int n = sf.n;
    h_dense.setZero(n, n);
    for (int r = 0; r < sf.cones.rows; ++r) {
      const double wgt = sparse_weight(r, sc, cone_of_row);
      if (wgt == 0.0) continue;
      const auto& row = rows[r];
      for (std::size_t b = 0; b < row.idx.size(); ++b) {
        const double vb = wgt * row.val[b];
        for (std::size_t a = 0; a <= b; ++a) {
          const int i = std::max(row.idx[a], row.idx[b]);
          const int j = std::min(row.idx[a], row.idx[b]);
          h_dense(i, j) += vb * row.val[a];
        }
      }
    }
    Eigen::MatrixXd cols;
    Eigen::VectorXd weight;
    build_low_rank(sc, cols, weight);
    const int r = static_cast<int>(weight.size());
    Eigen::MatrixXd pos(n, r), neg(n, r);
    int np = 0, nn = 0;
    for (int k = 0; k < r; ++k) {
      if (weight[k] > 0.0) pos.col(np++) = std::sqrt(weight[k]) * cols.col(k);
      else neg.col(nn++) = std::sqrt(-weight[k]) * cols.col(k);
    }
    if (np) h_dense.selfadjointView<Eigen::Lower>().rankUpdate(pos.leftCols(np), 1.0);
    if (nn) h_dense.selfadjointView<Eigen::Lower>().rankUpdate(neg.leftCols(nn), -1.0);

    const Eigen::VectorXd diag = h_dense.diagonal();
    for (double eps = 1e-13; eps < 1e-2; eps *= 100.0) {
      Eigen::MatrixXd reg = h_dense;
      reg.diagonal() += regularization(diag, eps);
      h_llt.compute(reg);
      if (h_llt.info() == Eigen::Success) return true;
    }
    return false;
  }

  bool factor_low_rank(const Scaling& sc) {
    const int n = sf.n;
    double* val = s_sparse.valuePtr();
    std::fill(val, val + s_sparse.nonZeros(), 0.0);
    for (int r = 0; r < sf.cones.rows; ++r) {
      const double wgt = sparse_weight(r, sc, cone_of_row);
      if (wgt == 0.0) continue;
      const auto& row = rows[r];
      std::size_t t = 0;
      for (std::size_t b = 0; b < row.idx.size(); ++b) {
        const double vb = wgt * row.val[b];
        for (std::size_t a = 0; a <= b; ++a) val[row.slot[t++]] += vb * row.val[a];
      }
    }
    Eigen::VectorXd diag(n);
    for (int j = 0; j < n; ++j) diag[j] = val[diag_slot[j]];
    const Eigen::VectorXd reg = regularization(diag, 1e-12);
    for (int j = 0; j < n; ++j) val[diag_slot[j]] += reg[j];

    if (!analyzed) {
      s_llt.analyzePattern(s_sparse);
      analyzed = true;
    }
    s_llt.factorize(s_sparse);
    if (s_llt.info() != Eigen::Success) return false;

    Eigen::VectorXd weight;
    build_low_rank(sc, u, weight);
    s_inv_u = s_llt.solve(u);
    Eigen::MatrixXd m = u.transpose() * s_inv_u;
    for (int k = 0; k < weight.size(); ++k) m(k, k) += 1.0 / weight[k];
    m_lu.compute(m);
    return true;
  }

  Eigen::VectorXd solve_h(const Eigen::VectorXd& r) const {
    if (!low_rank) return h_llt.solve(r);
    Eigen::VectorXd y = s_llt.solve(r);
    if (u.cols() > 0) y -= s_inv_u * m_lu.solve(u.transpose() * y);
    return y;
  }

  bool factor_equalities() {
    if (sf.p == 0) return true;
    const Eigen::MatrixXd at = Eigen::MatrixXd(sf.A.transpose());
    h_inv_at.resize(sf.n, sf.p);
    for (int i = 0; i < sf.p; ++i) h_inv_at.col(i) = solve_h(at.col(i));
    Eigen::MatrixXd schur = sf.A * h_inv_at;
    schur = 0.5 * (schur + schur.transpose()).eval();
    const double scale = std::max(1.0, schur.diagonal().cwiseAbs().maxCoeff());
    double delta = 1e-13 * scale;
    for (int attempt = 0; attempt < 8; ++attempt) {
      Eigen::MatrixXd reg = schur;
      reg.diagonal().array() += delta;
      schur_llt.compute(reg);
      if (schur_llt.info() == Eigen::Success) return true;
      delta *= 100.0;
    }
    return false;
  }

  void reduced_solve(const Eigen::VectorXd& r1, const Eigen::VectorXd& r2, const Eigen::VectorXd& r3,
                     Eigen::VectorXd& dx, Eigen::VectorXd& dy, Eigen::VectorXd& dz) const {
    const auto& k = sf.cones;
    const Eigen::VectorXd r1t = r1 + sf.G.transpose() * apply_w_inv2(k, *scaling, r3);
    if (sf.p > 0) {
      const Eigen::VectorXd h_inv_r = solve_h(r1t);
      dy = schur_llt.solve(sf.A * h_inv_r - r2);
      dx = h_inv_r - h_inv_at * dy;
    } else {
      dy.resize(0);
      dx = solve_h(r1t);
    }
    dz = apply_w_inv2(k, *scaling, sf.G * dx - r3);
  }
};

KktSystem::KktSystem(const StandardForm& sf, LinearAlgebra mode) : impl_(std::make_unique<Impl>(sf)) {
  impl_->build_rows();
  impl_->cone_of_row.resize(sf.cones.rows - sf.cones.lp);
  for (int c = 0; c < sf.cones.num_cones(); ++c)
    for (int r = 0; r < sf.cones.dim[c]; ++r) impl_->cone_of_row[sf.cones.start[c] + r - sf.cones.lp] = c;

  switch (mode) {
    case LinearAlgebra::dense: impl_->low_rank = false; break;
    case LinearAlgebra::low_rank: impl_->low_rank = true; break;
    case LinearAlgebra::automatic: impl_->low_rank = sf.n >= 300 && 2 * impl_->rank() < sf.n; break;
  }
  if (impl_->low_rank) impl_->build_sparse_pattern();
}

KktSystem::~KktSystem() = default;

bool KktSystem::uses_low_rank() const { return impl_->low_rank; }

bool KktSystem::factor(const Scaling& sc) {
  impl_->scaling = &sc;
  const bool ok = impl_->low_rank ? impl_->factor_low_rank(sc) : impl_->factor_dense(sc);
  return ok && impl_->factor_equalities();
}

void KktSystem::solve(const Eigen::VectorXd& r1, const Eigen::VectorXd& r2, const Eigen::VectorXd& r3,
                      Eigen::VectorXd& dx, Eigen::VectorXd& dy, Eigen::VectorXd& dz) const {
  const auto& sf = impl_->sf;
  const auto& k = sf.cones;
  impl_->reduced_solve(r1, r2, r3, dx, dy, dz);

  // Iterative refinement against the unregularized system.
  const double rhs_norm =
      1.0 + std::max({r1.lpNorm<Eigen::Infinity>(), r2.size() ? r2.lpNorm<Eigen::Infinity>() : 0.0,
                      r3.lpNorm<Eigen::Infinity>()});
  auto residual = [&](Eigen::VectorXd& e1, Eigen::VectorXd& e2, Eigen::VectorXd& e3) {
    e1 = r1 - sf.A.transpose() * dy - sf.G.transpose() * dz;
    e2 = r2 - sf.A * dx;
    e3 = r3 - (sf.G * dx - apply_w2(k, *impl_->scaling, dz));
    return std::max({e1.lpNorm<Eigen::Infinity>(), e2.size() ? e2.lpNorm<Eigen::Infinity>() : 0.0,
                     e3.lpNorm<Eigen::Infinity>()});
  };
  Eigen::VectorXd e1, e2, e3, cx, cy, cz;
  double err = residual(e1, e2, e3);
  for (int it = 0; it < 6 && err > 1e-14 * rhs_norm; ++it) {
    impl_->reduced_solve(e1, e2, e3, cx, cy, cz);
    const Eigen::VectorXd px = dx, py = dy, pz = dz;
    dx += cx;
    dy += cy;
    dz += cz;
    const double next = residual(e1, e2, e3);
    if (!(next < err)) {
      dx = px;
      dy = py;
      dz = pz;
      break;
    }
    err = next;
  }
}

}  // namespace urllc::conic::detail
