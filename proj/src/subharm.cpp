#include "qflag/subharm.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>

#include "qflag/lower_basis.hpp"

namespace qflag {

MatrixXd IsotypicalDecomposition::projection(const Weight& highest) const {
  MatrixXd P = MatrixXd::Zero(dim, dim);
  for (const auto& c : components)
    if (c.highest == highest) P += c.isometry * c.isometry.transpose();
  return P;
}

namespace {

std::map<Weight, std::vector<int>> group_by_weight(const std::vector<Weight>& weights) {
  std::map<Weight, std::vector<int>> out;
  for (size_t a = 0; a < weights.size(); ++a) out[weights[a]].push_back(static_cast<int>(a));
  return out;
}

}  // namespace

std::vector<std::pair<Weight, MatrixXd>> highest_weight_vectors(const OperatorSet& ops,
                                                                const std::vector<int>& roots,
                                                                double null_threshold) {
  const int dim = static_cast<int>(ops.weights.size());
  std::vector<std::pair<Weight, MatrixXd>> out;
  for (const auto& [w, idx] : group_by_weight(ops.weights)) {
    const int d = static_cast<int>(idx.size());
    MatrixXd stacked(dim * roots.size(), d);
    for (size_t r = 0; r < roots.size(); ++r)
      for (int c = 0; c < d; ++c)
        stacked.block(r * dim, c, dim, 1) = ops.E[roots[r] - 1] * VectorXd::Unit(dim, idx[c]);
    Eigen::BDCSVD<MatrixXd> svd(stacked, Eigen::ComputeFullV);
    const VectorXd& sv = svd.singularValues();
    const double top = std::max(sv.size() ? sv(0) : 0.0, 1.0);
    std::vector<int> kernel;
    for (int r = 0; r < d; ++r)
      if (r >= sv.size() || sv(r) <= null_threshold * top) kernel.push_back(r);
    if (kernel.empty()) continue;
    MatrixXd K = MatrixXd::Zero(dim, kernel.size());
    for (size_t r = 0; r < kernel.size(); ++r)
      for (int c = 0; c < d; ++c) K(idx[c], r) = svd.matrixV()(c, kernel[r]);
    out.emplace_back(w, K);
  }
  return out;
}

IsotypicalDecomposition decompose(const OperatorSet& ops, const SubgroupSpec& sub,
                                  const DecomposeOptions& opt) {
  IsotypicalDecomposition dec;
  dec.subgroup = sub;
  dec.dim = static_cast<int>(ops.weights.size());
  int total = 0;
  for (const auto& [w, K] : highest_weight_vectors(ops, sub.roots, opt.null_threshold)) {
    for (int r = 0; r < K.cols(); ++r) {
      std::vector<VectorXd> basis{K.col(r)};
      std::vector<VectorXd> frontier{K.col(r)};
      while (!frontier.empty()) {
        std::vector<VectorXd> grown;
        for (const VectorXd& v : frontier)
          for (int i : sub.roots) {
            VectorXd u = ops.F[i - 1] * v;
            const double scale = u.norm();
            if (scale == 0.0) continue;
            for (const VectorXd& b : basis) u -= b.dot(u) * b;
            if (u.norm() <= opt.null_threshold * std::max(scale, 1.0)) continue;
            u.normalize();
            basis.push_back(u);
            grown.push_back(u);
          }
        frontier = std::move(grown);
      }
      MatrixXd iso(dec.dim, basis.size());
      for (size_t c = 0; c < basis.size(); ++c) iso.col(c) = basis[c];
      total += static_cast<int>(basis.size());
      dec.components.push_back({w, iso});
    }
  }
  if (total != dec.dim) throw std::runtime_error("decompose: components do not exhaust the space");
  return dec;
}

IsotypicalDecomposition decompose(const Irrep& rep, const SubgroupSpec& sub,
                                  const DecomposeOptions& opt) {
  return decompose(operators_of(rep), sub, opt);
}

namespace {

std::shared_mutex loader_mutex;
IrrepLoader& loader_slot() {
  static IrrepLoader loader;
  return loader;
}

}  // namespace

void set_irrep_loader(IrrepLoader loader) {
  std::unique_lock lock(loader_mutex);
  loader_slot() = std::move(loader);
}

std::shared_ptr<const Irrep> shared_gt_irrep(const Weight& lambda, const QContext& ctx) {
  static std::shared_mutex mutex;
  static std::map<std::pair<Weight, double>, std::shared_ptr<const Irrep>> cache;
  const auto key = std::make_pair(lambda, ctx.q);
  {
    std::shared_lock lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  std::shared_ptr<const Irrep> built;
  {
    std::shared_lock lock(loader_mutex);
    if (loader_slot()) built = loader_slot()(lambda, ctx);
  }
  if (!built) built = std::make_shared<const Irrep>(gt_irrep(lambda, ctx));
  std::unique_lock lock(mutex);
  auto [it, inserted] = cache.emplace(key, built);
  return it->second;
}

std::vector<TensorComponent> tensor_decompose(const Irrep& rep1, const Irrep& rep2,
                                              const QContext& ctx, int dim_cap) {
  if (rep1.dim() * rep2.dim() > dim_cap) throw std::length_error("tensor_decompose: dimension cap exceeded");
  OperatorSet ops = tensor_operators(rep1, rep2);
  std::vector<int> all;
  for (int i = 1; i < rep1.n; ++i) all.push_back(i);
  std::vector<TensorComponent> out;
  int total = 0;
  for (const auto& [w, K] : highest_weight_vectors(ops, all)) {
    auto target = shared_gt_irrep(w, ctx);
    VectorXd src_hw = VectorXd::Unit(target->dim(), highest_weight_index(*target));
    for (int r = 0; r < K.cols(); ++r) {
      out.push_back({w, intertwiner_from_hw(*target, ops.F, src_hw, K.col(r))});
      total += target->dim();
    }
  }
  if (total != rep1.dim() * rep2.dim())
    throw std::runtime_error("tensor_decompose: dimension bookkeeping failed");
  return out;
}

std::vector<double> invariant_vector_numeric(int m, int n, double q) {
  Weight top(n, 0);
  top.front() = m;
  top.back() = -m;
  const wide wq(q);
  auto zero = patterns_of_weight(top, Weight(n, 0));
  WideMatrix stack(0, zero.size());
  for (int k = 2; k <= n - 1; ++k) {
    auto tgt = patterns_of_weight(top, simple_root(n, k));
    WideMatrix blk = gt_weight_block<wide>(zero, tgt, k, wq);
    WideMatrix grown(stack.rows() + blk.rows(), zero.size());
    grown << stack, blk;
    stack = grown;
  }
  Eigen::FullPivLU<WideMatrix> lu(stack);
  WideMatrix ker = lu.kernel();
  if (ker.cols() != 1) throw std::runtime_error("invariant_vector_numeric: kernel is not one-dimensional");
  WideVector v = ker.col(0);
  v /= v.norm();
  std::vector<int> zeros(n - 2, 0);
  GTPattern p0 = class1_zero_weight_pattern(m, zeros);
  for (size_t a = 0; a < zero.size(); ++a)
    if (zero[a] == p0 && ((m % 2 == 0) ? v(a) < 0 : v(a) > 0)) v = -v;
  std::vector<double> out(zero.size());
  for (size_t a = 0; a < zero.size(); ++a) out[a] = static_cast<double>(v(a));
  return out;
}

std::vector<OrthotypicalityRow> orthotypicality_scan(int n, const std::vector<int>& tau_row,
                                                     const std::vector<int>& m_values,
                                                     const QContext& ctx) {
  if (static_cast<int>(tau_row.size()) != n - 1)
    throw std::invalid_argument("orthotypicality_scan: tau row must have length n-1");
  const bool class_form = [&] {
    for (int j = 1; j + 1 < n - 1; ++j)
      if (tau_row[j] != 0) return false;
    return n - 1 >= 2 && tau_row.front() == -tau_row.back() && tau_row.front() >= 0;
  }();
  std::vector<OrthotypicalityRow> rows;
  for (int m : m_values) {
    OrthotypicalityRow row;
    row.m = m;
    Weight top(n, 0);
    top.front() = m;
    top.back() = -m;
    auto zero = patterns_of_weight(top, Weight(n, 0));
    std::vector<double> v = invariant_vector_numeric(m, n, ctx.q);
    double s = 0.0;
    for (size_t a = 0; a < zero.size(); ++a)
      if (zero[a].rows[1] == tau_row) s += v[a] * v[a];
    row.norm = std::sqrt(s);
    double f = 0.0;
    if (class_form)
      for (const auto& [mm, c] : invariant_vector_coefficients(m, n, ctx))
        if (mm.back() == tau_row.front()) f += c * c;
    row.formula = std::sqrt(f);
    const int t = class_form ? tau_row.front() : 0;
    row.bound = std::pow(qnum(2.0 * t + n - 2, ctx), 0.5 * (n - 2)) /
                (std::sqrt(qfact(n - 2, ctx)) * qbinom(m + n - 2, n - 2, ctx));
    rows.push_back(row);
  }
  return rows;
}

double fit_decay_exponent(const std::vector<int>& m, const std::vector<double>& values, double q) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (size_t k = 0; k < m.size(); ++k) {
    if (!(values[k] > 0)) continue;
    double x = m[k], y = std::log(values[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  if (cnt < 2) return 0.0;
  double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  return slope / std::log(q);
}

}  // namespace qflag
