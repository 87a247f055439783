#include "qflag/gtbasis.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace qflag {

std::vector<GTPattern> enumerate_patterns(const Weight& lambda) {
  if (!is_dominant(lambda)) throw std::invalid_argument("enumerate_patterns: weight not dominant");
  const int n = static_cast<int>(lambda.size());
  std::vector<GTPattern> out;
  GTPattern cur;
  cur.rows.push_back(lambda);
  // Row r (length n-1-depth) interlaces the row above it; entries vary in increasing order.
  std::function<void(int)> fill = [&](int depth) {
    if (depth == n - 1) {
      out.push_back(cur);
      return;
    }
    const std::vector<int> above = cur.rows[depth];
    const int len = static_cast<int>(above.size()) - 1;
    std::vector<int> row(len);
    std::function<void(int)> pick = [&](int j) {
      if (j == len) {
        cur.rows.push_back(row);
        fill(depth + 1);
        cur.rows.pop_back();
        return;
      }
      for (int v = above[j + 1]; v <= above[j]; ++v) {
        row[j] = v;
        pick(j + 1);
      }
    };
    pick(0);
  };
  fill(0);
  return out;
}

std::vector<GTPattern> patterns_of_weight(const Weight& lambda, const Weight& mu) {
  std::vector<GTPattern> out;
  for (auto& p : enumerate_patterns(lambda))
    if (p.weight() == mu) out.push_back(std::move(p));
  return out;
}

std::optional<GTPattern> raised(const GTPattern& p, int k, int i) {
  const int n = p.rank();
  if (k < 1 || k >= n || i < 0 || i >= k) return std::nullopt;
  const int v = p.entry(k, i + 1) + 1;
  if (v > p.entry(k + 1, i + 1)) return std::nullopt;
  if (k > 1 && i >= 1 && v > p.entry(k - 1, i)) return std::nullopt;
  GTPattern t = p;
  t.entry(k, i + 1) = v;
  return t;
}

Irrep gt_irrep(const Weight& lambda, const QContext& ctx) {
  Irrep rep;
  rep.n = static_cast<int>(lambda.size());
  rep.highest = lambda;
  rep.q = ctx.q;
  rep.construction = "gelfand-tsetlin";
  rep.labels = enumerate_patterns(lambda);
  std::map<GTPattern, int> where;
  for (size_t a = 0; a < rep.labels.size(); ++a) {
    where[rep.labels[a]] = static_cast<int>(a);
    rep.weights.push_back(rep.labels[a].weight());
  }
  const int dim = rep.dim();
  for (int k = 1; k < rep.n; ++k) {
    std::vector<Eigen::Triplet<double>> t;
    for (int a = 0; a < dim; ++a)
      for (int i = 0; i < k; ++i) {
        auto r = raised(rep.labels[a], k, i);
        if (!r) continue;
        double c = gt_raise_coefficient<double>(rep.labels[a], k, i, ctx.q);
        if (c != 0.0) t.emplace_back(where.at(*r), a, c);
      }
    Sparse Ek(dim, dim);
    Ek.setFromTriplets(t.begin(), t.end());
    rep.E.push_back(Ek);
    rep.F.push_back(Sparse(Ek.transpose()));
  }
  rep.index_weights();
  return rep;
}

namespace {

Weight class1_weight(int m, int n) {
  Weight w(n, 0);
  w.front() = m;
  w.back() = -m;
  return w;
}

}  // namespace

Irrep class1_generator_matrices(int m, int n, const QContext& ctx) {
  if (m < 0 || n < 2) throw std::invalid_argument("class1_generator_matrices: need m >= 0, n >= 2");
  return gt_irrep(class1_weight(m, n), ctx);
}

std::vector<PrintedTerm> class1_printed_raise(const GTPattern& p, int k, const QContext& ctx) {
  const int n = p.rank();
  if (k < 2 || k > n) throw std::out_of_range("class1_printed_raise: need 2 <= k <= n");
  auto first = [&](int r) { return p.entry(r, 1); };
  auto last = [&](int r) { return p.entry(r, r); };
  auto b = [&](int a) { return qnum(static_cast<double>(a), ctx); };
  auto root = [&](double num, double den) {
    if (den == 0.0) throw std::domain_error("class1_printed_raise: vanishing denominator");
    double v = num / den;
    if (v < -1e-12 * std::fabs(num / den)) throw std::domain_error("class1_printed_raise: negative radicand");
    return std::sqrt(std::max(v, 0.0));
  };
  const int mk = first(k), mkp = last(k);
  const int m1 = first(k - 1), m1p = last(k - 1);
  // m_{k-2}, m'_{k-2}: row k-2 (row 0 does not exist, so k = 2 is undefined).
  if (k - 2 < 1) throw std::domain_error("class1_printed_raise: E_1 is outside the formula's range");
  const int m2 = first(k - 2), m2p = last(k - 2);

  std::vector<PrintedTerm> out(2);
  {
    double num = b(mk - m1) * b(m1 - mkp + k - 1) * b(m1 - m2 + 1) * b(m1 - m2p + k - 2);
    double den = b(m1 - m1p + k - 1) * b(m1 - m1p + k - 2);
    GTPattern t = p;
    t.entry(k - 1, 1) += 1;
    out[0] = {t, t.interlaces(), root(num, den)};
  }
  {
    double num = b(mk - m1p + k - 2) * b(m1p - mkp + 1) * b(m2 - m1p + k - 3) * b(m2p - m1p);
    double den = b(m1 - m1p + k - 2) * b(m1 - m1p + k - 3);
    GTPattern t = p;
    t.entry(k - 1, k - 1) += 1;
    out[1] = {t, t.interlaces(), root(num, den)};
  }
  return out;
}

GTPattern class1_zero_weight_pattern(int m, const std::vector<int>& middle) {
  const int n = static_cast<int>(middle.size()) + 2;
  GTPattern p;
  p.rows.push_back(class1_weight(m, n));
  // middle = (m_2, ..., m_{n-1}); rows from n-1 down to 2
  for (int r = n - 1; r >= 2; --r) {
    std::vector<int> row(r, 0);
    row.front() = middle[r - 2];
    row.back() = -middle[r - 2];
    p.rows.push_back(row);
  }
  p.rows.push_back({0});
  return p;
}

double invariant_vector_constant(int m, int n, const QContext& ctx) {
  return 1.0 / (std::sqrt(qfact(n - 2, ctx)) * qbinom(m + n - 2, n - 2, ctx));
}

std::vector<std::pair<std::vector<int>, double>> invariant_vector_coefficients(int m, int n,
                                                                               const QContext& ctx) {
  if (n < 3) throw std::invalid_argument("invariant_vector_coefficients: need n >= 3");
  const double A = invariant_vector_constant(m, n, ctx);
  std::vector<std::pair<std::vector<int>, double>> out;
  std::vector<int> mm(n - 2);
  // increasing tuples 0 <= m_2 <= ... <= m_{n-1} <= m
  std::function<void(int, int)> rec = [&](int pos, int lo) {
    if (pos == n - 2) {
      int total = m;
      double prod = 1.0;
      for (int r = 0; r < n - 2; ++r) {
        total += mm[r];
        prod *= std::sqrt(qnum(2.0 * mm[r] + (r + 2) - 1, ctx));
      }
      out.emplace_back(mm, (total % 2 ? -1.0 : 1.0) * A * prod);
      return;
    }
    for (int v = lo; v <= m; ++v) {
      mm[pos] = v;
      rec(pos + 1, v);
    }
  };
  rec(0, 0);
  return out;
}

VectorXd invariant_vector_in_basis(const Irrep& rep, int m, const QContext& ctx) {
  if (rep.labels.empty()) throw std::invalid_argument("invariant_vector_in_basis: need a GT basis");
  std::map<GTPattern, int> where;
  for (size_t a = 0; a < rep.labels.size(); ++a) where[rep.labels[a]] = static_cast<int>(a);
  VectorXd v = VectorXd::Zero(rep.dim());
  for (const auto& [mm, c] : invariant_vector_coefficients(m, rep.n, ctx))
    v(where.at(class1_zero_weight_pattern(m, mm))) = c;
  return v;
}

}  // namespace qflag
