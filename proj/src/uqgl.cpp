#include "qflag/uqgl.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qflag/wide.hpp"

namespace qflag {

int GTPattern::row_sum(int k) const {
  if (k == 0) return 0;
  const auto& r = rows[rank() - k];
  return std::accumulate(r.begin(), r.end(), 0);
}

Weight GTPattern::weight() const {
  Weight w(rank());
  for (int k = 1; k <= rank(); ++k) w[k - 1] = row_sum(k) - row_sum(k - 1);
  return w;
}

bool GTPattern::interlaces() const {
  for (int k = 1; k < rank(); ++k)
    for (int j = 1; j <= k; ++j)
      if (entry(k + 1, j) < entry(k, j) || entry(k, j) < entry(k + 1, j + 1)) return false;
  return true;
}

void Irrep::index_weights() {
  weight_ids_.clear();
  distinct_.clear();
  members_.clear();
  id_of_.assign(weights.size(), -1);
  pos_of_.assign(weights.size(), -1);
  for (int a = 0; a < dim(); ++a) {
    auto [it, inserted] = weight_ids_.emplace(weights[a], static_cast<int>(distinct_.size()));
    if (inserted) {
      distinct_.push_back(weights[a]);
      members_.emplace_back();
    }
    id_of_[a] = it->second;
    pos_of_[a] = static_cast<int>(members_[it->second].size());
    members_[it->second].push_back(a);
  }
}

const std::vector<int>& Irrep::indices(const Weight& w) const {
  static const std::vector<int> empty;
  auto it = weight_ids_.find(w);
  return it == weight_ids_.end() ? empty : members_[it->second];
}

MatrixXd Irrep::block(const Sparse& X, const Weight& from, const Weight& to) const {
  const auto& src = indices(from);
  const auto& dst = indices(to);
  MatrixXd out = MatrixXd::Zero(dst.size(), src.size());
  if (src.empty() || dst.empty()) return out;
  const int target_id = weight_ids_.at(to);
  for (size_t c = 0; c < src.size(); ++c)
    for (Sparse::InnerIterator it(X, src[c]); it; ++it)
      if (id_of_[it.row()] == target_id) out(pos_of_[it.row()], c) = it.value();
  return out;
}

VectorXd Irrep::k_diag(const std::vector<double>& lambda) const {
  VectorXd d(dim());
  for (int a = 0; a < dim(); ++a) {
    double e = 0;
    for (int k = 0; k < n; ++k) e += lambda[k] * weights[a][k];
    d(a) = std::pow(q, 0.5 * e);
  }
  return d;
}

VectorXd Irrep::k_diag_root(int i) const {
  std::vector<double> a(n, 0.0);
  a[i - 1] = 1;
  a[i] = -1;
  return k_diag(a);
}

Sparse kron(const Sparse& a, const Sparse& b) {
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(static_cast<size_t>(a.nonZeros()) * b.nonZeros());
  for (int ca = 0; ca < a.outerSize(); ++ca)
    for (Sparse::InnerIterator ia(a, ca); ia; ++ia)
      for (int cb = 0; cb < b.outerSize(); ++cb)
        for (Sparse::InnerIterator ib(b, cb); ib; ++ib)
          t.emplace_back(ia.row() * b.rows() + ib.row(), ca * b.cols() + cb,
                         ia.value() * ib.value());
  Sparse out(a.rows() * b.rows(), a.cols() * b.cols());
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

Sparse diagonal_sparse(const VectorXd& d) {
  Sparse out(d.size(), d.size());
  std::vector<Eigen::Triplet<double>> t;
  for (int k = 0; k < d.size(); ++k) t.emplace_back(k, k, d(k));
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

namespace {

struct WeightSpace {
  Weight w;
  int dim = 0;
  // f[i]: F_{i+1} block from weight w + alpha_{i+1} into w (dim x dim(w+alpha)).
  std::map<int, WideMatrix> f;
};

}  // namespace

Irrep build_irrep(const Weight& lambda, const QContext& ctx, const BuildOptions& opt) {
  if (!is_dominant(lambda)) throw std::invalid_argument("build_irrep: weight not dominant");
  const int n = static_cast<int>(lambda.size());
  const wide q(ctx.q);

  std::vector<WeightSpace> spaces;
  std::map<Weight, int> where;
  spaces.push_back({lambda, 1, {}});
  where[lambda] = 0;
  int total = 1;

  std::vector<Weight> level{lambda};
  while (!level.empty()) {
    std::vector<Weight> next;
    for (const Weight& w : level)
      for (int i = 1; i < n; ++i) {
        Weight v = w - simple_root(n, i);
        if (!where.count(v) && std::find(next.begin(), next.end(), v) == next.end())
          next.push_back(v);
      }
    std::sort(next.begin(), next.end(), std::greater<Weight>());
    std::vector<Weight> built;
    for (const Weight& nu : next) {
      // Candidates F_i b for basis vectors b of nu + alpha_i.
      std::vector<std::pair<int, int>> cand;  // (i, dim of nu+alpha_i) per generator block
      std::vector<int> offset;
      int ncand = 0;
      for (int i = 0; i < n - 1; ++i) {
        auto it = where.find(nu + simple_root(n, i + 1));
        int d = it == where.end() ? 0 : spaces[it->second].dim;
        cand.emplace_back(i, d);
        offset.push_back(ncand);
        ncand += d;
      }
      if (ncand == 0) continue;
      // E_j on nu + alpha_i, as a dense map into nu + alpha_i + alpha_j.
      auto e_on = [&](const Weight& w, int j) -> WideMatrix {
        auto src = where.find(w);
        auto dst = where.find(w + simple_root(n, j + 1));
        if (src == where.end() || dst == where.end()) return WideMatrix();
        const auto& fs = spaces[src->second].f;
        auto f = fs.find(j);
        if (f == fs.end()) return WideMatrix();
        return f->second.transpose();
      };
      WideMatrix gram = WideMatrix::Zero(ncand, ncand);
      wide scale(0);
      for (int i = 0; i < n - 1; ++i) {
        if (cand[i].second == 0) continue;
        Weight wi = nu + simple_root(n, i + 1);
        for (int j = 0; j < n - 1; ++j) {
          if (cand[j].second == 0) continue;
          Weight wj = nu + simple_root(n, j + 1);
          // <F_i b, F_j c> = delta_ij [(alpha_i, nu + alpha_i)] <b, c> + <E_j b, E_i c>
          WideMatrix ej = e_on(wi, j), ei = e_on(wj, i);
          auto blk = gram.block(offset[i], offset[j], cand[i].second, cand[j].second);
          if (ej.size() && ei.size()) blk += ej.transpose() * ei;
          if (i == j) {
            const wide c = qnum(wide(root_pairing(wi, i + 1)), q);
            blk.diagonal().array() += c;
            scale = std::max(scale, wide(abs(c)));
          }
        }
      }
      scale = std::max(scale, wide(gram.cwiseAbs().maxCoeff()));
      Eigen::SelfAdjointEigenSolver<WideMatrix> es(wide(0.5) * (gram + gram.transpose()));
      const WideVector& ev = es.eigenvalues();
      const wide keep = wide(opt.null_threshold) * scale;
      std::vector<int> kept;
      for (int r = ncand - 1; r >= 0; --r) {
        if (ev(r) > keep) {
          kept.push_back(r);
        } else if (abs(ev(r)) > wide(1e-3) * keep) {
          std::ostringstream os;
          os << "build_irrep: ambiguous Gram eigenvalue " << static_cast<double>(ev(r)) << " (scale " << static_cast<double>(scale)
             << ") at weight " << to_string(nu);
          throw std::runtime_error(os.str());
        }
      }
      if (kept.empty()) continue;
      const int d = static_cast<int>(kept.size());
      total += d;
      if (total > opt.dim_cap) throw std::length_error("build_irrep: dimension cap exceeded");
      WeightSpace ws{nu, d, {}};
      for (int i = 0; i < n - 1; ++i) {
        if (cand[i].second == 0) continue;
        WideMatrix fi(d, cand[i].second);
        for (int r = 0; r < d; ++r) {
          WideVector u = es.eigenvectors().col(kept[r]);
          // deterministic sign: first significant coordinate positive
          int lead = 0;
          while (lead < ncand - 1 && abs(u(lead)) < wide(1e-8)) ++lead;
          const wide s = u(lead) < 0 ? wide(-1) : wide(1);
          fi.row(r) = s * sqrt(ev(kept[r])) *
                      u.segment(offset[i], cand[i].second).transpose();
        }
        ws.f[i] = fi;
      }
      where[nu] = static_cast<int>(spaces.size());
      spaces.push_back(std::move(ws));
      built.push_back(nu);
    }
    level = built;
  }

  Irrep rep;
  rep.n = n;
  rep.highest = lambda;
  rep.q = ctx.q;
  rep.construction = "gram";
  std::vector<int> start(spaces.size());
  for (size_t s = 0; s < spaces.size(); ++s) {
    start[s] = rep.dim();
    for (int k = 0; k < spaces[s].dim; ++k) rep.weights.push_back(spaces[s].w);
  }
  const int dim = rep.dim();
  for (int i = 0; i < n - 1; ++i) {
    std::vector<Eigen::Triplet<double>> t;
    for (size_t s = 0; s < spaces.size(); ++s) {
      auto f = spaces[s].f.find(i);
      if (f == spaces[s].f.end()) continue;
      int src = where.at(spaces[s].w + simple_root(n, i + 1));
      for (int r = 0; r < f->second.rows(); ++r)
        for (int c = 0; c < f->second.cols(); ++c)
          if (f->second(r, c) != 0) t.emplace_back(start[s] + r, start[src] + c, static_cast<double>(f->second(r, c)));
    }
    Sparse Fi(dim, dim);
    Fi.setFromTriplets(t.begin(), t.end());
    rep.F.push_back(Fi);
    rep.E.push_back(Sparse(Fi.transpose()));
  }
  rep.index_weights();
  return rep;
}

double quantum_dimension(const Irrep& rep) {
  const Weight r2 = rho_doubled(rep.n);
  double s = 0.0;
  for (const Weight& w : rep.weights) s += std::pow(rep.q, pairing(r2, w));
  return s;
}

VectorXd element_K_lambda(const Irrep& rep, const std::vector<double>& lambda) {
  return rep.k_diag(lambda);
}

RelationReport relation_residuals(const Irrep& rep) {
  RelationReport out;
  auto note = [&](const std::string& name, double v) {
    out.entries.emplace_back(name, v);
    out.max_residual = std::max(out.max_residual, v);
  };
  const int n = rep.n;
  const double q = rep.q;
  const double two = qnum<double>(2, q);
  for (int i = 0; i < n - 1; ++i) {
    note("unitarity F" + std::to_string(i + 1), (rep.F[i] - Sparse(rep.E[i].transpose())).norm());
    for (int j = 0; j < n - 1; ++j) {
      Sparse c = rep.E[i] * rep.F[j] - rep.F[j] * rep.E[i];
      if (i == j) {
        VectorXd d(rep.dim());
        for (int a = 0; a < rep.dim(); ++a) d(a) = qnum<double>(root_pairing(rep.weights[a], i + 1), q);
        c -= diagonal_sparse(d);
      }
      note("[E" + std::to_string(i + 1) + ",F" + std::to_string(j + 1) + "]", c.norm());
      if (j <= i) continue;
      if (j == i + 1) {
        for (int pass = 0; pass < 2; ++pass) {
          const auto& X = pass == 0 ? rep.E : rep.F;
          const char* tag = pass == 0 ? "E" : "F";
          for (auto [a, b] : {std::pair{i, j}, std::pair{j, i}}) {
            Sparse s = X[a] * X[a] * X[b] - two * (X[a] * X[b] * X[a]) + X[b] * X[a] * X[a];
            note(std::string("serre ") + tag + std::to_string(a + 1) + tag + std::to_string(b + 1),
                 s.norm());
          }
        }
      } else {
        note("[E" + std::to_string(i + 1) + ",E" + std::to_string(j + 1) + "]",
             Sparse(rep.E[i] * rep.E[j] - rep.E[j] * rep.E[i]).norm());
        note("[F" + std::to_string(i + 1) + ",F" + std::to_string(j + 1) + "]",
             Sparse(rep.F[i] * rep.F[j] - rep.F[j] * rep.F[i]).norm());
      }
    }
    // G_k E_i G_k^{-1} = q^{(alpha_i)_k / 2} E_i for every k.
    double g = 0.0;
    Weight a = simple_root(n, i + 1);
    for (int k = 0; k < n; ++k)
      for (int c = 0; c < rep.E[i].outerSize(); ++c)
        for (Sparse::InnerIterator it(rep.E[i], c); it; ++it) {
          double lhs = it.value() * std::pow(q, 0.5 * (rep.weights[it.row()][k] - rep.weights[c][k]));
          double rhs = it.value() * std::pow(q, 0.5 * a[k]);
          g += (lhs - rhs) * (lhs - rhs);
        }
    note("G-commutation E" + std::to_string(i + 1), std::sqrt(g));
  }
  return out;
}

OperatorSet operators_of(const Irrep& rep) { return {rep.E, rep.F, rep.weights}; }

OperatorSet tensor_operators(const Irrep& a, const Irrep& b) {
  OperatorSet out;
  for (int i = 0; i < a.n - 1; ++i) {
    Sparse ka = diagonal_sparse(a.k_diag_root(i + 1));
    Sparse kai = diagonal_sparse(a.k_diag_root(i + 1).cwiseInverse());
    Sparse kb = diagonal_sparse(b.k_diag_root(i + 1));
    out.E.push_back(kron(a.E[i], kb) + kron(kai, b.E[i]));
    out.F.push_back(kron(a.F[i], kb) + kron(kai, b.F[i]));
  }
  for (int x = 0; x < a.dim(); ++x)
    for (int y = 0; y < b.dim(); ++y) out.weights.push_back(a.weights[x] + b.weights[y]);
  return out;
}

int highest_weight_index(const Irrep& rep) {
  const auto& idx = rep.indices(rep.highest);
  if (idx.size() != 1) throw std::logic_error("highest_weight_index: highest weight space not 1-dim");
  return idx.front();
}

MatrixXd intertwiner_from_hw(const Irrep& src, const std::vector<Sparse>& target_F,
                             const VectorXd& src_hw, const VectorXd& tgt_hw) {
  const int n = src.n;
  const int tdim = static_cast<int>(tgt_hw.size());
  // Images of F-words in both spaces, grouped by source weight. Each weight keeps a
  // bounded, well-spread family of words (greedy by residual norm) and the map is
  // fitted by least squares over that family.
  struct Words {
    std::vector<VectorXd> p, q;
  };
  std::map<Weight, Words> words;
  words[src.highest].p.push_back(src_hw);
  words[src.highest].q.push_back(tgt_hw);
  std::vector<Weight> level{src.highest};
  while (!level.empty()) {
    std::vector<Weight> next;
    std::map<Weight, Words> cand;
    for (const Weight& w : level) {
      const Words& parent = words[w];
      for (int i = 0; i < n - 1; ++i) {
        Weight v = w - simple_root(n, i + 1);
        if (src.indices(v).empty()) continue;
        if (std::find(next.begin(), next.end(), v) == next.end()) next.push_back(v);
        for (size_t r = 0; r < parent.p.size(); ++r) {
          cand[v].p.push_back(src.F[i] * parent.p[r]);
          cand[v].q.push_back(target_F[i] * parent.q[r]);
        }
      }
    }
    for (const Weight& v : next) {
      const int need = static_cast<int>(src.indices(v).size());
      Words& c = cand[v];
      // normalize words so that every column carries comparable weight
      for (size_t r = 0; r < c.p.size(); ++r) {
        double s = c.p[r].norm();
        if (s > 0) {
          c.p[r] /= s;
          c.q[r] /= s;
        }
      }
      // greedy selection of up to 2*need well-conditioned words
      std::vector<int> pick;
      MatrixXd basis(src.dim(), 0);
      std::vector<bool> used(c.p.size(), false);
      const int limit = std::min<int>(static_cast<int>(c.p.size()), 2 * need);
      while (static_cast<int>(pick.size()) < limit) {
        int best = -1;
        double best_norm = -1.0;
        for (size_t r = 0; r < c.p.size(); ++r) {
          if (used[r]) continue;
          VectorXd res = c.p[r];
          if (basis.cols() && basis.cols() < need) res -= basis * (basis.transpose() * res);
          double nr = basis.cols() >= need ? 1.0 : res.norm();
          if (nr > best_norm) {
            best_norm = nr;
            best = static_cast<int>(r);
          }
        }
        if (best < 0 || (basis.cols() < need && best_norm < 1e-10)) break;
        used[best] = true;
        pick.push_back(best);
        if (basis.cols() < need) {
          VectorXd res = c.p[best];
          if (basis.cols()) res -= basis * (basis.transpose() * res);
          basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
          basis.col(basis.cols() - 1) = res / res.norm();
        }
      }
      if (basis.cols() < need)
        throw std::runtime_error("intertwiner_from_hw: weight space not spanned at " + to_string(v));
      Words& keep = words[v];
      for (int r : pick) {
        keep.p.push_back(c.p[r]);
        keep.q.push_back(c.q[r]);
      }
    }
    level = next;
  }
  MatrixXd U = MatrixXd::Zero(tdim, src.dim());
  for (const auto& [w, c] : words) {
    const auto& idx = src.indices(w);
    const int d = static_cast<int>(idx.size());
    const int cols = static_cast<int>(c.p.size());
    MatrixXd P(d, cols), Q(tdim, cols);
    for (int r = 0; r < cols; ++r) {
      for (int k = 0; k < d; ++k) P(k, r) = c.p[r](idx[k]);
      Q.col(r) = c.q[r];
    }
    // least squares for U_w P = Q:  P^T U_w^T = Q^T
    MatrixXd Uw = P.transpose().colPivHouseholderQr().solve(Q.transpose()).transpose();
    for (int k = 0; k < d; ++k) U.col(idx[k]) = Uw.col(k);
  }
  return U;
}

}  // namespace qflag
