#include "qflag/flagblocks.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "qflag/phase_ops.hpp"
#include "qflag/subharm.hpp"

namespace qflag {

Weight normalized(const Weight& lambda) {
  Weight out = lambda;
  const int last = lambda.back();
  for (int& v : out) v -= last;
  return out;
}

bool same_class(const Weight& a, const Weight& b) {
  if (a.size() != b.size()) return false;
  const int d = a[0] - b[0];
  for (size_t k = 1; k < a.size(); ++k)
    if (a[k] - b[k] != d) return false;
  return true;
}

int shell_of(const Weight& lambda) { return lambda.front() - lambda.back(); }

std::vector<Weight> dominant_shell(int n, int L) {
  std::vector<Weight> out;
  Weight cur(n, 0);
  auto rec = [&](auto&& self, int pos, int upper) -> void {
    if (pos == n - 1) {
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= upper; ++v) {
      cur[pos] = v;
      self(self, pos + 1, v);
    }
  };
  for (int top = 0; top <= L; ++top) {
    cur[0] = top;
    if (n == 1) {
      out.push_back(cur);
      continue;
    }
    if (n == 2) {
      out.push_back(cur);
      continue;
    }
    rec(rec, 1, top);
  }
  std::stable_sort(out.begin(), out.end(), [](const Weight& x, const Weight& y) {
    return shell_of(x) < shell_of(y);
  });
  return out;
}

int TruncatedSpace::find(const Weight& sigma) const {
  const Weight key = normalized(sigma);
  for (size_t b = 0; b < blocks.size(); ++b)
    if (blocks[b].sigma == key) return static_cast<int>(b);
  return -1;
}

VectorXd TruncatedSpace::metric() const {
  VectorXd out(dim);
  for (const auto& b : blocks)
    for (int a = 0; a < b.bra_dim(); ++a)
      for (size_t p = 0; p < b.kets.size(); ++p) out(b.index(a, static_cast<int>(p))) = b.bra_metric(a);
  return out;
}

std::vector<int> TruncatedSpace::indices_up_to(int max_shell) const {
  return indices_where([&](const Weight& s) { return shell_of(s) <= max_shell; });
}

TruncatedSpace make_space(int n, const Weight& mu, int shell, const QContext& ctx, bool bra_leg) {
  TruncatedSpace sp;
  sp.n = n;
  sp.mu = mu;
  sp.shell = shell;
  sp.bra_leg = bra_leg;
  for (const Weight& sigma : dominant_shell(n, shell)) {
    auto rep = shared_gt_irrep(sigma, ctx);
    HarmonicBlock b;
    for (int a = 0; a < rep->dim(); ++a)
      if (same_class(rep->weights[a], mu)) b.kets.push_back(a);
    if (b.kets.empty()) continue;
    b.sigma = sigma;
    b.rep = rep;
    b.offset = sp.dim;
    b.qdim = quantum_dimension(*rep);
    if (bra_leg) {
      b.bra_metric.resize(rep->dim());
      for (int a = 0; a < rep->dim(); ++a)
        b.bra_metric(a) = std::pow(ctx.q, 2.0 * kBraMetricSign * rho_pairing(rep->weights[a])) / b.qdim;
    } else {
      b.bra_metric = VectorXd::Ones(1);
    }
    sp.dim += b.size();
    sp.blocks.push_back(std::move(b));
  }
  return sp;
}

namespace {

using TensorKey = std::tuple<Weight, Weight, double>;

const std::vector<TensorComponent>& cached_tensor(const Weight& first, const Weight& second,
                                                  const QContext& ctx) {
  static std::mutex mutex;
  static std::map<TensorKey, std::vector<TensorComponent>> cache;
  TensorKey key{normalized(first), normalized(second), ctx.q};
  {
    std::lock_guard lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto a = shared_gt_irrep(std::get<0>(key), ctx);
  auto b = shared_gt_irrep(std::get<1>(key), ctx);
  auto comps = tensor_decompose(*a, *b, ctx);
  for (auto& c : comps) c.highest = normalized(c.highest);
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(comps)).first->second;
}

MatrixXd dense(const Sparse& s) { return MatrixXd(s); }

Weight dual_of(const Weight& tau) {
  Weight d(tau.rbegin(), tau.rend());
  for (int& v : d) v = -v;
  return normalized(d);
}

void accumulate(Element& out, const Weight& tau, const MatrixXd& c) {
  for (auto& e : out)
    if (e.tau == tau) {
      e.c += c;
      return;
    }
  out.push_back({tau, c});
}

}  // namespace

MatrixCoefficient unit_coefficient(const Weight& tau, int a, int b, const QContext& ctx) {
  auto rep = shared_gt_irrep(normalized(tau), ctx);
  MatrixCoefficient f{normalized(tau), MatrixXd::Zero(rep->dim(), rep->dim())};
  f.c(a, b) = 1.0;
  return f;
}

Element one(int n) { return {{Weight(n, 0), MatrixXd::Ones(1, 1)}}; }

Element product(const Element& f, const Element& g, const QContext& ctx) {
  Element out;
  for (const auto& x : f)
    for (const auto& y : g) {
      const MatrixXd joint = kron(y.c.sparseView(), x.c.sparseView()).toDense();
      for (const auto& comp : cached_tensor(y.tau, x.tau, ctx)) {
        MatrixXd c = comp.isometry.transpose() * joint * comp.isometry;
        if (c.cwiseAbs().maxCoeff() > 1e-14 * std::max(1.0, joint.cwiseAbs().maxCoeff()))
          accumulate(out, comp.highest, c);
      }
    }
  return out;
}

MatrixCoefficient antipode(const MatrixCoefficient& f, const QContext& ctx) {
  auto rep = shared_gt_irrep(f.tau, ctx);
  const Weight dual = dual_of(f.tau);
  auto drep = shared_gt_irrep(dual, ctx);
  // On the dual basis S^{-1}-transposed generators are rescaled to E -> -F, F -> -E.
  std::vector<Sparse> twisted_F;
  for (const Sparse& e : rep->E) twisted_F.push_back(-e);
  const Weight lowest(f.tau.rbegin(), f.tau.rend());
  const int low = rep->indices(lowest).front();
  const MatrixXd T = intertwiner_from_hw(*drep, twisted_F,
                                         VectorXd::Unit(drep->dim(), highest_weight_index(*drep)),
                                         VectorXd::Unit(rep->dim(), low));
  VectorXd d(rep->dim());
  for (int a = 0; a < rep->dim(); ++a) d(a) = std::pow(ctx.q, rho_pairing(rep->weights[a]));
  MatrixXd inner = d.asDiagonal() * f.c.transpose() * d.cwiseInverse().asDiagonal();
  return {dual, T.transpose() * inner * T};
}

Element antipode(const Element& f, const QContext& ctx) {
  Element out;
  for (const auto& x : f) {
    auto s = antipode(x, ctx);
    accumulate(out, s.tau, s.c);
  }
  return out;
}

MatrixCoefficient twist_ket(const MatrixCoefficient& f, double t, const QContext& ctx) {
  auto rep = shared_gt_irrep(f.tau, ctx);
  MatrixCoefficient out = f;
  for (int b = 0; b < rep->dim(); ++b)
    out.c.col(b) *= std::pow(ctx.q, 0.5 * t * rho_pairing(rep->weights[b]));
  return out;
}

double evaluate(const MatrixCoefficient& f, char generator, int i, const QContext& ctx) {
  auto rep = shared_gt_irrep(f.tau, ctx);
  MatrixXd X;
  switch (generator) {
    case 'E': X = dense(rep->E[i - 1]); break;
    case 'F': X = dense(rep->F[i - 1]); break;
    case 'K': X = rep->k_diag_root(i).asDiagonal(); break;
    default: throw std::invalid_argument("evaluate: unknown generator");
  }
  return f.c.cwiseProduct(X).sum();
}

namespace {

// Ket-leg map between matching blocks of two spaces.
template <class BlockMap>
Sparse ket_leg_op(const TruncatedSpace& src, const TruncatedSpace& tgt, BlockMap&& block_map) {
  std::vector<Eigen::Triplet<double>> trip;
  for (const auto& sb : src.blocks) {
    const int t = tgt.find(sb.sigma);
    if (t < 0) continue;
    const auto& tb = tgt.blocks[t];
    MatrixXd m = block_map(sb, tb);  // rows: tb.kets, cols: sb.kets
    for (int a = 0; a < sb.bra_dim(); ++a)
      for (size_t p = 0; p < sb.kets.size(); ++p)
        for (size_t r = 0; r < tb.kets.size(); ++r)
          if (m(r, p) != 0.0)
            trip.emplace_back(tb.index(a, static_cast<int>(r)), sb.index(a, static_cast<int>(p)), m(r, p));
  }
  Sparse out(tgt.dim, src.dim);
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

MatrixXd restrict(const MatrixXd& X, const std::vector<int>& rows, const std::vector<int>& cols) {
  MatrixXd out(rows.size(), cols.size());
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < cols.size(); ++c) out(r, c) = X(rows[r], cols[c]);
  return out;
}

}  // namespace

Sparse right_action_op(char generator, int i, const TruncatedSpace& src, const TruncatedSpace& tgt) {
  return ket_leg_op(src, tgt, [&](const HarmonicBlock& sb, const HarmonicBlock& tb) {
    MatrixXd X;
    if (generator == 'E') X = dense(sb.rep->E[i - 1]);
    else if (generator == 'F') X = dense(sb.rep->F[i - 1]);
    else if (generator == 'K') X = sb.rep->k_diag_root(i).asDiagonal();
    else throw std::invalid_argument("right_action_op: unknown generator");
    return restrict(X, tb.kets, sb.kets);
  });
}

Sparse right_phase_op(char generator, int i, const TruncatedSpace& src, const TruncatedSpace& tgt) {
  return ket_leg_op(src, tgt, [&](const HarmonicBlock& sb, const HarmonicBlock& tb) {
    const MatrixXd X = dense(generator == 'E' ? sb.rep->E[i - 1] : sb.rep->F[i - 1]);
    return phase(restrict(X, tb.kets, sb.kets));
  });
}

namespace {

// Shared assembly for left (coefficient on the right tensor leg) and right multiplication.
BlockOperator multiply_into(const Element& f, const TruncatedSpace& src, const TruncatedSpace& tgt,
                            const QContext& ctx, bool left) {
  if (!src.bra_leg || !tgt.bra_leg)
    throw std::invalid_argument("multiplication needs the bra leg");
  BlockOperator out;
  std::vector<Eigen::Triplet<double>> trip;
  for (const auto& x : f) {
    const int dt = static_cast<int>(x.c.rows());
    for (const auto& sb : src.blocks) {
      const int ds = sb.rep->dim();
      const auto& comps = left ? cached_tensor(sb.sigma, x.tau, ctx) : cached_tensor(x.tau, sb.sigma, ctx);
      for (const auto& comp : comps) {
        const int t = tgt.find(comp.highest);
        if (t < 0) {
          if (shell_of(comp.highest) > tgt.shell &&
              std::find(out.truncated_sources.begin(), out.truncated_sources.end(), sb.sigma) ==
                  out.truncated_sources.end())
            out.truncated_sources.push_back(sb.sigma);
          continue;
        }
        const auto& tb = tgt.blocks[t];
        const MatrixXd& W = comp.isometry;
        // slice(x): the d' x dt matrix pairing the source basis vector x with the coefficient leg
        auto slice = [&](int s) -> MatrixXd {
          if (left) return W.middleRows(s * dt, dt).transpose();
          MatrixXd m(W.cols(), dt);
          for (int r = 0; r < dt; ++r) m.col(r) = W.row(r * ds + s).transpose();
          return m;
        };
        std::vector<MatrixXd> ket_side(sb.kets.size());
        for (size_t p = 0; p < sb.kets.size(); ++p) {
          MatrixXd s = slice(sb.kets[p]);
          MatrixXd rows(tb.kets.size(), dt);
          for (size_t r = 0; r < tb.kets.size(); ++r) rows.row(r) = s.row(tb.kets[r]);
          ket_side[p] = rows.transpose();  // dt x |tgt kets|
        }
        for (int a = 0; a < ds; ++a) {
          const MatrixXd bra = slice(a) * x.c;  // d' x dt
          for (size_t p = 0; p < sb.kets.size(); ++p) {
            const MatrixXd blk = bra * ket_side[p];  // d' x |tgt kets|
            const int col = sb.index(a, static_cast<int>(p));
            for (int ap = 0; ap < tb.bra_dim(); ++ap)
              for (size_t r = 0; r < tb.kets.size(); ++r)
                if (blk(ap, r) != 0.0) trip.emplace_back(tb.index(ap, static_cast<int>(r)), col, blk(ap, r));
          }
        }
      }
    }
  }
  out.matrix.resize(tgt.dim, src.dim);
  out.matrix.setFromTriplets(trip.begin(), trip.end());
  out.matrix.prune(0.0);
  return out;
}

void merge_truncated(std::vector<Weight>& into, const std::vector<Weight>& from) {
  for (const auto& w : from)
    if (std::find(into.begin(), into.end(), w) == into.end()) into.push_back(w);
}

Weight ket_weight(const MatrixCoefficient& f, const QContext& ctx) {
  auto rep = shared_gt_irrep(f.tau, ctx);
  for (int b = 0; b < rep->dim(); ++b)
    if (f.c.col(b).cwiseAbs().maxCoeff() > 0) return rep->weights[b];
  throw std::invalid_argument("ket_weight: zero coefficient");
}

Weight bundle_shift(const Element& f, const QContext& ctx) {
  if (f.empty()) throw std::invalid_argument("bundle_shift: empty element");
  return ket_weight(f.front(), ctx);
}

}  // namespace

BlockOperator mult_operator(const Element& f, const TruncatedSpace& src, const TruncatedSpace& tgt,
                            const QContext& ctx) {
  return multiply_into(f, src, tgt, ctx, true);
}

BlockOperator right_mult_operator(const Element& h, const TruncatedSpace& src,
                                  const TruncatedSpace& tgt, const QContext& ctx) {
  return multiply_into(h, src, tgt, ctx, false);
}

BlockOperator yd_action(const Element& a, const TruncatedSpace& src, const QContext& ctx,
                        const YDOptions& opt) {
  BlockOperator out{Sparse(src.dim, src.dim), {}};
  std::map<Weight, TruncatedSpace> middles;
  for (const auto& x : a) {
    auto rep = shared_gt_irrep(x.tau, ctx);
    const int d = rep->dim();
    for (int b = 0; b < d; ++b) {
      if (x.c.col(b).cwiseAbs().maxCoeff() == 0.0) continue;
      for (int k = 0; k < d; ++k) {
        MatrixCoefficient first{x.tau, MatrixXd::Zero(d, d)};
        first.c.col(k) = x.c.col(b);
        MatrixCoefficient second = twist_ket(antipode(unit_coefficient(x.tau, k, b, ctx), ctx), opt.k_power, ctx);
        const Weight mid_mu = normalized(src.mu - rep->weights[k]);
        auto it = middles.find(mid_mu);
        if (it == middles.end())
          it = middles.emplace(mid_mu, make_space(src.n, mid_mu, src.shell, ctx)).first;
        auto R = right_mult_operator({second}, src, it->second, ctx);
        auto M = mult_operator({first}, it->second, src, ctx);
        out.matrix += M.matrix * R.matrix;
        merge_truncated(out.truncated_sources, R.truncated_sources);
      }
    }
  }
  return out;
}

double metric_norm(const MatrixXd& op, const VectorXd& src_metric, const VectorXd& tgt_metric) {
  if (op.size() == 0) return 0.0;
  MatrixXd w = tgt_metric.cwiseSqrt().asDiagonal() * op * src_metric.cwiseSqrt().cwiseInverse().asDiagonal();
  Eigen::BDCSVD<MatrixXd> svd(w);
  return svd.singularValues()(0);
}

namespace {

MatrixXd columns(const Sparse& X, const std::vector<int>& cols) {
  MatrixXd out(X.rows(), cols.size());
  for (size_t c = 0; c < cols.size(); ++c) out.col(c) = X.col(cols[c]);
  return out;
}

VectorXd entries(const VectorXd& v, const std::vector<int>& idx) {
  VectorXd out(idx.size());
  for (size_t k = 0; k < idx.size(); ++k) out(k) = v(idx[k]);
  return out;
}

}  // namespace

double yd_unitarity_defect(const Weight& tau, int n, const Weight& mu, int L, const QContext& ctx,
                           const YDOptions& opt) {
  const TruncatedSpace sp = make_space(n, mu, L, ctx);
  const auto inner = sp.indices_up_to(L - 2);
  if (inner.empty()) return 0.0;
  const VectorXd w = sp.metric();
  const VectorXd wi = entries(w, inner);
  const int d = shared_gt_irrep(normalized(tau), ctx)->dim();
  std::vector<std::vector<MatrixXd>> A(d, std::vector<MatrixXd>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      MatrixXd pi = columns(yd_action({unit_coefficient(tau, i, j, ctx)}, sp, ctx, opt).matrix, inner);
      A[i][j] = w.cwiseSqrt().asDiagonal() * pi * wi.cwiseSqrt().cwiseInverse().asDiagonal();
    }
  double worst = 0.0;
  const int m = static_cast<int>(inner.size());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      MatrixXd s = MatrixXd::Zero(m, m);
      for (int k = 0; k < d; ++k) s += A[k][i].transpose() * A[k][j];
      if (i == j) s -= MatrixXd::Identity(m, m);
      Eigen::BDCSVD<MatrixXd> svd(s);
      worst = std::max(worst, svd.singularValues()(0));
    }
  return worst;
}

YDTiebreak yd_tiebreak(int n, const Weight& mu, int L, const QContext& ctx) {
  Weight fundamental(n, 0);
  fundamental[0] = 1;
  YDTiebreak out;
  out.candidates = {{"K^2_rho", 2.0, 0.0}, {"K_rho", 1.0, 0.0}, {"K_{4rho}", 4.0, 0.0},
                    {"K_{-4rho}", -4.0, 0.0}};
  const TwistCandidate* best = nullptr;
  for (auto& c : out.candidates) {
    c.defect = yd_unitarity_defect(fundamental, n, mu, L, ctx, {c.k_power});
    if (!best || c.defect < best->defect) best = &c;
  }
  out.chosen_power = best->k_power;
  out.note = best->label + " twist is unitary";
  return out;
}

double yd_covariance_residual(const Weight& tau, int i, int j, const Element& f, const Weight& mu,
                              int L, const QContext& ctx) {
  const Weight nu = bundle_shift(f, ctx);
  const TruncatedSpace src = make_space(static_cast<int>(mu.size()), mu, L, ctx);
  const TruncatedSpace tgt = make_space(src.n, normalized(mu + nu), L, ctx);
  const int d = shared_gt_irrep(normalized(tau), ctx)->dim();
  Sparse lhs = yd_action({unit_coefficient(tau, i, j, ctx)}, tgt, ctx).matrix *
               mult_operator(f, src, tgt, ctx).matrix;
  Sparse rhs(tgt.dim, src.dim);
  for (int l = 0; l < d; ++l) {
    Sparse pi = yd_action({unit_coefficient(tau, l, j, ctx)}, src, ctx).matrix;
    Element g;
    for (int k = 0; k < d; ++k) {
      Element s = antipode(Element{unit_coefficient(tau, k, l, ctx)}, ctx);
      Element term = product(product({unit_coefficient(tau, i, k, ctx)}, f, ctx), s, ctx);
      for (auto& t : term) accumulate(g, t.tau, t.c);
    }
    if (g.empty()) continue;
    rhs += Sparse(mult_operator(g, src, tgt, ctx).matrix * pi);
  }
  const auto inner = src.indices_up_to(L - 3);
  if (inner.empty()) return 0.0;
  return metric_norm(columns(lhs - rhs, inner), entries(src.metric(), inner), tgt.metric());
}

double intertwining_residual(int i, const Weight& tau, int L, const QContext& ctx) {
  const int n = static_cast<int>(tau.size());
  Weight rho(n);
  for (int k = 0; k < n; ++k) rho[k] = n - 1 - k;  // rho up to a multiple of (1, ..., 1)
  const TruncatedSpace src = make_space(n, normalized(rho - simple_root(n, i)), L, ctx);
  const TruncatedSpace tgt = make_space(n, normalized(rho), L, ctx);
  const Sparse P = right_phase_op('E', i, src, tgt);
  const auto inner = src.indices_up_to(L - 2);
  if (inner.empty()) return 0.0;
  const VectorXd ws = entries(src.metric(), inner), wt = tgt.metric();
  const int d = shared_gt_irrep(normalized(tau), ctx)->dim();
  double worst = 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      Element u{unit_coefficient(tau, a, b, ctx)};
      Sparse diff = Sparse(yd_action(u, tgt, ctx).matrix * P) - Sparse(P * yd_action(u, src, ctx).matrix);
      worst = std::max(worst, metric_norm(columns(diff, inner), ws, wt));
    }
  return worst;
}

namespace {

// Level l - |h| of each eigenvector of F_i E_i on the ket space of a block.
std::vector<std::pair<int, VectorXd>> string_levels(const HarmonicBlock& b, int i, const QContext& ctx) {
  const MatrixXd FE = dense(b.rep->F[i - 1]) * dense(b.rep->E[i - 1]);
  const MatrixXd K = restrict(FE, b.kets, b.kets);
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(K);
  const double h = 0.5 * root_pairing(b.rep->weights[b.kets.front()], i);
  std::vector<std::pair<int, VectorXd>> out;
  for (int e = 0; e < K.rows(); ++e) {
    // F E = [l - h][l + h + 1] on the spin-l string
    int level = 0;
    const double v = es.eigenvalues()(e);
    while (true) {
      const double l = std::abs(h) + level;
      const double fe = qnum(l - h, ctx) * qnum(l + h + 1, ctx);
      if (fe >= v - 1e-8 * std::max(1.0, v)) break;
      ++level;
    }
    out.emplace_back(level, es.eigenvectors().col(e));
  }
  return out;
}

DefectTable compressions(const Sparse& op, const TruncatedSpace& src, const TruncatedSpace& tgt,
                         int max_shell, int i, const QContext& ctx) {
  DefectTable table;
  const VectorXd ws = src.metric(), wt = tgt.metric();
  for (const auto& b : src.blocks) {
    if (shell_of(b.sigma) > max_shell) continue;
    std::vector<int> idx(b.size());
    for (int r = 0; r < b.size(); ++r) idx[r] = b.offset + r;
    const MatrixXd blk = columns(op, idx);
    table.blocks.push_back({b.sigma, shell_of(b.sigma), -1, metric_norm(blk, entries(ws, idx), wt)});
    std::map<int, std::vector<VectorXd>> by_level;
    for (auto& [level, v] : string_levels(b, i, ctx)) by_level[level].push_back(v);
    const int nk = static_cast<int>(b.kets.size());
    for (const auto& [level, vecs] : by_level) {
      // orthonormal (in the metric) source columns: bra e_a / sqrt(w_a) times ket eigenvector
      MatrixXd cols = MatrixXd::Zero(op.rows(), b.bra_dim() * vecs.size());
      for (size_t e = 0; e < vecs.size(); ++e)
        for (int a = 0; a < b.bra_dim(); ++a)
          for (int p = 0; p < nk; ++p)
            cols.col(e * b.bra_dim() + a) += vecs[e](p) * blk.col(b.index(a, p) - b.offset) / std::sqrt(b.bra_metric(a));
      table.strings.push_back({b.sigma, shell_of(b.sigma), level,
                               metric_norm(cols, VectorXd::Ones(cols.cols()), wt)});
    }
  }
  return table;
}

}  // namespace

DefectTable commutator_defects(int i, const Element& f, int n, const Weight& mu, int L,
                               const QContext& ctx) {
  const Weight nu = bundle_shift(f, ctx);
  const Weight alpha = simple_root(n, i);
  const TruncatedSpace s0 = make_space(n, normalized(mu), L, ctx);
  const TruncatedSpace s1 = make_space(n, normalized(mu + alpha), L, ctx);
  const TruncatedSpace s2 = make_space(n, normalized(mu + nu), L, ctx);
  const TruncatedSpace s3 = make_space(n, normalized(mu + nu + alpha), L, ctx);
  const Sparse c = Sparse(right_phase_op('E', i, s2, s3) * mult_operator(f, s0, s2, ctx).matrix) -
                   Sparse(mult_operator(f, s1, s3, ctx).matrix * right_phase_op('E', i, s0, s1));
  return compressions(c, s0, s3, L - 1, i, ctx);
}

DefectTable equivariance_defects(int i, const Element& a, int n, const Weight& mu, int L,
                                 const QContext& ctx) {
  const TruncatedSpace s0 = make_space(n, normalized(mu), L, ctx);
  const TruncatedSpace s1 = make_space(n, normalized(mu + simple_root(n, i)), L, ctx);
  const Sparse P = right_phase_op('E', i, s0, s1);
  const Sparse d = Sparse(yd_action(a, s1, ctx).matrix * P) - Sparse(P * yd_action(a, s0, ctx).matrix);
  return compressions(d, s0, s1, L - 2, i, ctx);
}

std::vector<double> tail_maxima(const std::vector<DefectRow>& rows, int s_max) {
  std::vector<double> out;
  for (int s = 0; s <= s_max; ++s) {
    double worst = 0.0;
    for (const auto& r : rows) {
      const int a = r.sigma[0] - r.sigma[1], b = r.sigma[1] - r.sigma[2];
      if (std::min(a, b) >= s) worst = std::max(worst, r.defect);
    }
    out.push_back(worst);
  }
  return out;
}

std::vector<double> level_tail_maxima(const std::vector<DefectRow>& rows, int s_max) {
  std::vector<double> out;
  for (int s = 0; s <= s_max; ++s) {
    double worst = 0.0;
    for (const auto& r : rows)
      if (r.level >= s) worst = std::max(worst, r.defect);
    out.push_back(worst);
  }
  return out;
}

bool decays(const std::vector<double>& tail, double ratio, double slack) {
  if (tail.empty()) return false;
  for (size_t k = 1; k < tail.size(); ++k)
    if (tail[k] > tail[k - 1] + slack) return false;
  return tail.back() < ratio * tail.front();
}

}  // namespace qflag
