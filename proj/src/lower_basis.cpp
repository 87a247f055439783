#include "qflag/lower_basis.hpp"

#include <Eigen/Eigenvalues>

#include <stdexcept>

namespace qflag {

namespace {

bool is_class1(const Weight& w) {
  if (w.size() < 3) return false;
  for (size_t k = 1; k + 1 < w.size(); ++k)
    if (w[k] != 0) return false;
  return w.front() == -w.back() && w.front() >= 0;
}

bool below_top_all_zero(const GTPattern& p) {
  for (size_t r = 1; r < p.rows.size(); ++r)
    for (int v : p.rows[r])
      if (v != 0) return false;
  return true;
}

}  // namespace

BasisChange build_lower_basis(const Irrep& rep, const QContext& ctx) {
  const int n = rep.n;
  Weight dual(n);
  for (int j = 0; j < n; ++j) dual[j] = -rep.highest[n - 1 - j];
  Irrep src = gt_irrep(dual, ctx);
  // Twisted action: generator i of the source acts as generator n - i of rep.
  std::vector<Sparse> target_F(n - 1);
  for (int i = 0; i < n - 1; ++i) target_F[i] = rep.F[n - 2 - i];
  VectorXd src_hw = VectorXd::Unit(src.dim(), highest_weight_index(src));
  VectorXd tgt_hw = VectorXd::Unit(rep.dim(), highest_weight_index(rep));
  MatrixXd U = intertwiner_from_hw(src, target_F, src_hw, tgt_hw);

  BasisChange bc;
  bc.lower_labels = src.labels;
  bc.upper_to_lower = U.transpose();
  bc.phase_convention = "highest-weight vectors identified";
  if (is_class1(rep.highest) && !rep.labels.empty()) {
    const int m = rep.highest.front();
    // Fix the global sign so that the invariant-vector coefficient on the upper tableau
    // with zero middle rows is (-1)^m times a positive number (A > 0).
    int inv = lower_invariant_index(bc);
    std::vector<int> zeros(n - 2, 0);
    GTPattern p0 = class1_zero_weight_pattern(m, zeros);
    int col = -1;
    for (size_t a = 0; a < rep.labels.size(); ++a)
      if (rep.labels[a] == p0) col = static_cast<int>(a);
    double v = bc.upper_to_lower(inv, col);
    if ((m % 2 == 0 ? v : -v) < 0) bc.upper_to_lower *= -1.0;
    bc.phase_convention = "invariant-vector coefficient sign = (-1)^{|m|} (A > 0)";
  }
  return bc;
}

int lower_invariant_index(const BasisChange& bc) {
  for (size_t r = 0; r < bc.lower_labels.size(); ++r)
    if (below_top_all_zero(bc.lower_labels[r])) return static_cast<int>(r);
  return -1;
}

wide wide_qnum(double a, const wide& q) { return qnum(wide(a), q); }

MatrixXd to_double(const WideMatrix& m) {
  MatrixXd out(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out(r, c) = static_cast<double>(m(r, c));
  return out;
}

Class1Blocks class1_lower_blocks(int m, const wide& q) {
  if (m < 1) throw std::invalid_argument("class1_lower_blocks: need m >= 1");
  const Weight top{m, 0, -m};
  Class1Blocks out;
  out.m = m;
  out.zero_upper = patterns_of_weight(top, {0, 0, 0});
  out.alpha1_upper = patterns_of_weight(top, {1, -1, 0});
  auto a2 = patterns_of_weight(top, {0, 1, -1});
  auto a12 = patterns_of_weight(top, {1, 0, -1});

  out.e1 = gt_weight_block<wide>(out.zero_upper, out.alpha1_upper, 1, q);
  WideMatrix e2_zero = gt_weight_block<wide>(out.zero_upper, a2, 2, q);
  WideMatrix e2_alpha1 = gt_weight_block<wide>(out.alpha1_upper, a12, 2, q);

  // Lower vectors are the F_2 E_2 eigenvectors; eigenvalues increase with the
  // lower middle-row label, so ascending order enumerates k.
  Eigen::SelfAdjointEigenSolver<WideMatrix> es0(WideMatrix(e2_zero.transpose() * e2_zero));
  Eigen::SelfAdjointEigenSolver<WideMatrix> es1(WideMatrix(e2_alpha1.transpose() * e2_alpha1));
  WideMatrix U0 = es0.eigenvectors(), U1 = es1.eigenvectors();

  if ((m % 2 == 0 ? U0(0, 0) : wide(-U0(0, 0))) < 0) U0.col(0) *= wide(-1);
  // <lower (k+1, -k) | E_1 | lower (k, -k)> > 0 and <lower (k+1, -k) | E_1 | lower (k+1, -k-1)> > 0
  for (int k = 0; k < m; ++k) {
    wide a = U1.col(k).dot(out.e1 * U0.col(k));
    if (a < 0) U1.col(k) *= wide(-1);
    wide b = U1.col(k).dot(out.e1 * U0.col(k + 1));
    if (b < 0) U0.col(k + 1) *= wide(-1);
  }
  out.zero_lower = U0;
  out.alpha1_lower = U1;
  return out;
}

}  // namespace qflag
