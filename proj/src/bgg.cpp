#include "qflag/bgg.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "qflag/qcalc.hpp"
#include "qflag/subharm.hpp"

namespace qflag {

namespace {

int coordinate_sum(const Weight& w) { return std::accumulate(w.begin(), w.end(), 0); }

double op_norm(const MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<MatrixXd> svd(m);
  return svd.singularValues()(0);
}

int dim_at(const Irrep& rep, const Weight& sl3) {
  auto w = lift(rep, sl3);
  return (w && rep.has_weight(*w)) ? static_cast<int>(rep.indices(*w).size()) : 0;
}

Weight shifted(const Weight& sl3, const Word& word) {
  Weight cur = sl3;
  for (const auto& [g, i] : word) cur = g == 'E' ? cur + simple_root(3, i) : cur - simple_root(3, i);
  return cur;
}

// Product of the generator blocks (exact) or of their phases along a word.
MatrixXd word_matrix(const Irrep& rep, const Weight& source, const Word& word, bool phases) {
  const int ds = dim_at(rep, source);
  const int dt = dim_at(rep, shifted(source, word));
  if (ds == 0 || dt == 0) return MatrixXd::Zero(dt, ds);
  const Weight start = *lift(rep, source);
  if (phases) return phase_word(rep, start, word);
  Weight cur = start;
  MatrixXd M = MatrixXd::Identity(ds, ds);
  for (const auto& [g, i] : word) {
    WeightBlockOp op = block_op(rep, g, i, cur);
    M = op.matrix * M;
    cur = op.target;
  }
  return M;
}

BGGDiagram build_diagram() {
  BGGDiagram d;
  const Weight a1 = simple_root(3, 1), a2 = simple_root(3, 2);
  d.vertices = {Weight{0, 0, 0}, a1, a2, scaled(a1, 2) + a2, a1 + scaled(a2, 2), scaled(a1 + a2, 2)};
  d.length = {0, 1, 1, 2, 2, 3};
  auto arrow = [&](int from, int to, std::string label, double sign, Word w, std::vector<int> supp) {
    d.arrows.push_back({from, to, std::move(label), {{sign, std::move(w)}}, std::move(supp)});
  };
  arrow(0, 1, "ph(E1)", 1, {{'E', 1}}, {1});
  arrow(0, 2, "ph(E2)", 1, {{'E', 2}}, {2});
  arrow(1, 4, "ph(E2)^2", 1, {{'E', 2}, {'E', 2}}, {2});
  arrow(1, 3, "-A1", -1, {{'F', 1}, {'E', 2}, {'E', 1}, {'E', 1}}, {1, 2});
  arrow(2, 3, "ph(E1)^2", 1, {{'E', 1}, {'E', 1}}, {1});
  arrow(2, 4, "-A2", -1, {{'F', 2}, {'E', 1}, {'E', 2}, {'E', 2}}, {1, 2});
  arrow(3, 5, "ph(E2)", 1, {{'E', 2}}, {2});
  arrow(4, 5, "ph(E1)", 1, {{'E', 1}}, {1});

  for (int s = 0; s < 6; ++s)
    for (int t = 0; t < 6; ++t) {
      if (d.length[t] != d.length[s] + 2) continue;
      BGGSquare sq{s, t, {}};
      for (const auto& x : d.arrows)
        for (const auto& y : d.arrows)
          if (x.from == s && x.to == y.from && y.to == t)
            for (const auto& tx : x.terms)
              for (const auto& ty : y.terms) {
                Word w = tx.word;
                w.insert(w.end(), ty.word.begin(), ty.word.end());
                sq.terms.push_back({tx.sign * ty.sign, w});
              }
      if (!sq.terms.empty()) d.squares.push_back(std::move(sq));
    }
  return d;
}

struct RankInfo {
  int rank = 0;
  bool flagged = false;
};

RankInfo numerical_rank(const MatrixXd& m) {
  RankInfo out;
  if (m.size() == 0) return out;
  Eigen::JacobiSVD<MatrixXd> svd(m);
  const VectorXd& s = svd.singularValues();
  const double cut = kRankThreshold * std::max(s(0), 1.0);
  for (int r = 0; r < s.size(); ++r) {
    if (s(r) > cut) ++out.rank;
    if (s(r) > cut / 10 && s(r) < cut * 10) out.flagged = true;
  }
  return out;
}

// Differentials d_k : C^k -> C^{k+1} with the given arrow matrices.
CohomologyReport cohomology_of(int a, int b, const Irrep& rep,
                               const std::function<MatrixXd(const BGGArrow&)>& arrow_matrix) {
  const BGGDiagram& diag = bgg_diagram();
  CohomologyReport out;
  out.a = a;
  out.b = b;
  std::vector<std::vector<int>> offsets(4);
  for (int k = 0; k < 4; ++k) {
    int total = 0;
    for (int v : diag.degree(k)) {
      offsets[k].push_back(total);
      total += dim_at(rep, diag.vertices[v]);
    }
    out.chain_dims.push_back(total);
  }
  std::vector<MatrixXd> d;
  for (int k = 0; k < 3; ++k) {
    MatrixXd m = MatrixXd::Zero(out.chain_dims[k + 1], out.chain_dims[k]);
    const auto src = diag.degree(k), tgt = diag.degree(k + 1);
    for (const auto& arr : diag.arrows) {
      auto si = std::find(src.begin(), src.end(), arr.from);
      auto ti = std::find(tgt.begin(), tgt.end(), arr.to);
      if (si == src.end() || ti == tgt.end()) continue;
      MatrixXd blk = arrow_matrix(arr);
      if (blk.size() == 0) continue;
      m.block(offsets[k + 1][ti - tgt.begin()], offsets[k][si - src.begin()], blk.rows(), blk.cols()) = blk;
    }
    RankInfo r = numerical_rank(m);
    out.ranks.push_back(r.rank);
    out.flagged = out.flagged || r.flagged;
    d.push_back(std::move(m));
  }
  for (int k = 0; k < 2; ++k)
    if (d[k + 1].size() && d[k].size()) out.complex_defect = std::max(out.complex_defect, op_norm(d[k + 1] * d[k]));
  for (int k = 0; k < 4; ++k) {
    const int kernel = out.chain_dims[k] - (k < 3 ? out.ranks[k] : 0);
    const int image = k > 0 ? out.ranks[k - 1] : 0;
    out.kernel_dims.push_back(kernel);
    out.cohomology.push_back(kernel - image);
  }
  return out;
}

}  // namespace

std::vector<int> BGGDiagram::degree(int k) const {
  std::vector<int> out;
  for (size_t v = 0; v < vertices.size(); ++v)
    if (length[v] == k) out.push_back(static_cast<int>(v));
  return out;
}

const BGGDiagram& bgg_diagram() {
  static const BGGDiagram diagram = build_diagram();
  return diagram;
}

std::vector<SignedWord> unsigned_terms(const BGGSquare& sq) {
  std::vector<SignedWord> out;
  for (size_t t = 0; t < sq.terms.size(); ++t) out.push_back({t == 0 ? 1.0 : -1.0, sq.terms[t].word});
  return out;
}

std::optional<Weight> lift(const Irrep& rep, const Weight& sl3) {
  const int gap = coordinate_sum(rep.highest) - coordinate_sum(sl3);
  if (gap % 3 != 0) return std::nullopt;
  Weight w = sl3;
  for (int& x : w) x += gap / 3;
  return w;
}

MatrixXd phase_combination(const Irrep& rep, const Weight& source, const std::vector<SignedWord>& terms) {
  MatrixXd sum = terms.front().sign * word_matrix(rep, source, terms.front().word, true);
  for (size_t t = 1; t < terms.size(); ++t) sum += terms[t].sign * word_matrix(rep, source, terms[t].word, true);
  return sum;
}

std::vector<BlockResidual> hexagon_check(int L, const QContext& ctx, const Weight& start) {
  const Word left{{'E', 1}, {'E', 2}, {'E', 2}, {'E', 1}};
  const Word right{{'E', 2}, {'E', 1}, {'E', 1}, {'E', 2}};
  std::vector<BlockResidual> out;
  for (int a = 0; a <= L; ++a)
    for (int b = 0; a + b <= L; ++b) {
      auto rep = shared_gt_irrep(sl3_weight(a, b), ctx);
      MatrixXd diff = phase_combination(*rep, start, {{1.0, left}, {-1.0, right}});
      out.push_back({a, b, op_norm(diff)});
    }
  return out;
}

MatrixXd string_level_basis(const Irrep& rep, int i, const Weight& mu, int min_level) {
  const double h = 0.5 * root_pairing(mu, i);
  std::vector<VectorXd> cols;
  for (const auto& s : sl2_string_decomposition(rep, i, mu))
    if (s.at_source.size() && s.spin - std::fabs(h) >= min_level - 1e-9) cols.push_back(s.at_source);
  MatrixXd out(rep.indices(mu).size(), cols.size());
  for (size_t c = 0; c < cols.size(); ++c) out.col(c) = cols[c];
  return out;
}

std::vector<SquareDefect> normalized_defects(int L, const QContext& ctx, int levels) {
  const BGGDiagram& diag = bgg_diagram();
  std::vector<SquareDefect> out;
  for (int a = 0; a <= L; ++a)
    for (int b = 0; a + b <= L; ++b) {
      auto rep = shared_gt_irrep(sl3_weight(a, b), ctx);
      for (size_t s = 0; s < diag.squares.size(); ++s) {
        const BGGSquare& sq = diag.squares[s];
        const Weight& from = diag.vertices[sq.source];
        const Weight& to = diag.vertices[sq.sink];
        SquareDefect row;
        row.a = a;
        row.b = b;
        row.square = static_cast<int>(s) + 1;
        MatrixXd D = phase_combination(*rep, from, sq.terms);
        row.signed_defect = op_norm(D);
        row.unsigned_defect = op_norm(phase_combination(*rep, from, unsigned_terms(sq)));
        for (int l = 0; l < levels; ++l) {
          double v = 0.0;
          if (D.size()) {
            const Weight src = *lift(*rep, from), tgt = *lift(*rep, to);
            for (int i = 1; i <= 2; ++i) {
              MatrixXd pt = string_level_basis(*rep, i, tgt, l);
              MatrixXd ps = string_level_basis(*rep, 3 - i, src, l);
              if (pt.cols() && ps.cols()) v = std::max(v, op_norm(pt.transpose() * D * ps));
            }
          }
          row.level_defects.push_back(v);
        }
        out.push_back(std::move(row));
      }
    }
  return out;
}

std::vector<double> square_tail(const std::vector<SquareDefect>& rows, int square, int s_max) {
  std::vector<double> out(s_max + 1, 0.0);
  for (const auto& r : rows)
    if (r.square == square)
      for (int s = 0; s <= std::min(s_max, std::min(r.a, r.b)); ++s) out[s] = std::max(out[s], r.signed_defect);
  return out;
}

std::vector<double> square_level_tail(const std::vector<SquareDefect>& rows, int square, int s_max) {
  std::vector<double> out(s_max + 1, 0.0);
  for (const auto& r : rows)
    if (r.square == square)
      for (int s = 0; s <= s_max && s < static_cast<int>(r.level_defects.size()); ++s)
        out[s] = std::max(out[s], r.level_defects[s]);
  return out;
}

std::vector<SymmetryRankRow> almost_symmetry_rank(int i, int shift, const Weight& mu, int L,
                                                  const QContext& ctx) {
  std::vector<SymmetryRankRow> out;
  for (int a = 0; a <= L; ++a)
    for (int b = 0; a + b <= L; ++b) {
      auto rep = shared_gt_irrep(sl3_weight(a, b), ctx);
      SymmetryRankRow row{a, b};
      auto w = lift(*rep, mu);
      if (w && rep->has_weight(*w)) {
        AlmostSymmetry s = almost_symmetry(*rep, i, *w, shift);
        row.rank = s.numerical_rank;
        row.census = s.census;
        row.residual = s.residual;
      }
      out.push_back(row);
    }
  return out;
}

long euler_characteristic(const Weight& sigma, const Weight& base) {
  const auto mult = freudenthal_multiplicities(sigma);
  const BGGDiagram& diag = bgg_diagram();
  long chi = 0;
  for (size_t v = 0; v < diag.vertices.size(); ++v) {
    const Weight w = base + diag.vertices[v];
    const int gap = coordinate_sum(sigma) - coordinate_sum(w);
    if (gap % 3 != 0) continue;
    Weight lifted = w;
    for (int& x : lifted) x += gap / 3;
    auto it = mult.find(lifted);
    if (it != mult.end()) chi += (diag.parity(static_cast<int>(v)) ? -1 : 1) * it->second;
  }
  return chi;
}

CohomologyReport per_block_cohomology(int a, int b, const QContext& ctx) {
  auto rep = shared_gt_irrep(sl3_weight(a, b), ctx);
  const double two = qnum(2.0, ctx);
  return cohomology_of(a, b, *rep, [&](const BGGArrow& arr) -> MatrixXd {
    const Weight& from = bgg_diagram().vertices[arr.from];
    if (arr.support.size() == 2) {
      // Serre-adjusted diagonal: -([2] E_i E_j - E_j E_i), i the first raising generator
      const int i = arr.label == "-A1" ? 1 : 2, j = 3 - i;
      return -(two * word_matrix(*rep, from, {{'E', j}, {'E', i}}, false) -
               word_matrix(*rep, from, {{'E', i}, {'E', j}}, false));
    }
    return word_matrix(*rep, from, arr.terms.front().word, false);
  });
}

CohomologyReport normalized_cohomology(int a, int b, const QContext& ctx) {
  auto rep = shared_gt_irrep(sl3_weight(a, b), ctx);
  return cohomology_of(a, b, *rep, [&](const BGGArrow& arr) {
    return phase_combination(*rep, bgg_diagram().vertices[arr.from], arr.terms);
  });
}

}  // namespace qflag
