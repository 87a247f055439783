#pragma once

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qflag/qcalc.hpp"
#include "qflag/uqgl.hpp"

namespace qflag {

// All interlacing tableaux with top row lambda, lexicographic on rows read
// top-to-bottom and left-to-right.
std::vector<GTPattern> enumerate_patterns(const Weight& lambda);

// Patterns of a given weight, in the same order.
std::vector<GTPattern> patterns_of_weight(const Weight& lambda, const Weight& mu);

// Pattern with entry (k, i) raised by one (i counted from 0), if it still interlaces.
std::optional<GTPattern> raised(const GTPattern& p, int k, int i);

// Coefficient of |p + delta_{k,i}> in E_k |p> for the general GT action
// (all coefficients positive). Zero if the raised tableau does not interlace.
template <class T>
T gt_raise_coefficient(const GTPattern& p, int k, int i, const T& q) {
  using std::abs;
  using std::sqrt;
  if (!raised(p, k, i)) return T(0);
  auto l = [&](int row, int j) { return p.entry(row, j + 1) - j; };
  const int lki = l(k, i);
  T num(1), den(1);
  for (int j = 0; j <= k; ++j) num *= qnum(l(k + 1, j) - lki, q);
  for (int j = 0; j < k - 1; ++j) num *= qnum(l(k - 1, j) - lki - 1, q);
  for (int j = 0; j < k; ++j)
    if (j != i) den *= qnum(l(k, j) - lki, q) * qnum(l(k, j) - lki - 1, q);
  T v = -num / den;
  if (v < T(0)) {
    if (v > T(-1e-12) * (abs(num / den) + T(1))) return T(0);
    throw std::domain_error("gt_raise_coefficient: negative radicand");
  }
  return sqrt(v);
}

// Matrix of E_k from the patterns `from` to the patterns `to`.
template <class T>
Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> gt_weight_block(
    const std::vector<GTPattern>& from, const std::vector<GTPattern>& to, int k, const T& q) {
  Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> out(to.size(), from.size());
  out.setZero();
  std::map<GTPattern, int> where;
  for (size_t r = 0; r < to.size(); ++r) where[to[r]] = static_cast<int>(r);
  for (size_t c = 0; c < from.size(); ++c)
    for (int i = 0; i < k; ++i) {
      auto t = raised(from[c], k, i);
      if (!t) continue;
      auto it = where.find(*t);
      if (it != where.end()) out(it->second, c) = gt_raise_coefficient(from[c], k, i, q);
    }
  return out;
}

// Irrep in the upper GT basis assembled from the general GT action.
Irrep gt_irrep(const Weight& lambda, const QContext& ctx);

// Class-1 representation (m, 0, ..., 0, -m) of U_q(gl_n) in the upper GT basis.
Irrep class1_generator_matrices(int m, int n, const QContext& ctx);

// One term of the printed class-1 formula for E_{k-1}: target tableau,
// whether it interlaces, and the square-root coefficient.
struct PrintedTerm {
  GTPattern target;
  bool valid = false;
  double coefficient = 0.0;
};

// Transcription of the printed class-1 E_{k-1} action (k >= 2). Rows are read as
// (m_r, m'_r) = (first entry, signed last entry), with m_1 = m'_1 = m_11.
// Throws std::domain_error on a vanishing denominator or a negative radicand.
std::vector<PrintedTerm> class1_printed_raise(const GTPattern& p, int k, const QContext& ctx);

// Weight-0 class-1 tableau with row r equal to (m_r, 0, ..., 0, -m_r); middle = (m_2, ..., m_{n-1}).
GTPattern class1_zero_weight_pattern(int m, const std::vector<int>& middle);

// Coefficients of the lower-block invariant vector in the upper GT basis,
// keyed by (m_2, ..., m_{n-1}).
std::vector<std::pair<std::vector<int>, double>> invariant_vector_coefficients(int m, int n,
                                                                               const QContext& ctx);

// Normalizing constant [n-2]!^{-1/2} qbinom(m+n-2, n-2)^{-1}.
double invariant_vector_constant(int m, int n, const QContext& ctx);

// Invariant vector placed into the basis of gt_irrep((m,0,..,0,-m)).
VectorXd invariant_vector_in_basis(const Irrep& rep, int m, const QContext& ctx);

// <y_k | x_j> for the non-unit vectors, via the terminating 4phi3.
template <class T>
T racah_overlap(int k, int j, int m, const T& q) {
  if (j < 0 || k < 0 || j > m || k > m) throw std::out_of_range("racah_overlap: index out of range");
  using std::pow;
  const T q2 = q * q;
  std::vector<T> upper{T(pow(q, -2 * k)), T(pow(q, 2 * (k + 1))), T(pow(q, -2 * j)),
                       T(pow(q, 2 * (j + 1)))};
  // full denominator list: the three displayed lower parameters plus (q^2; q^2)_l
  std::vector<T> lower{T(pow(q, -2 * m)), T(pow(q, 2 * (m + 2))), q2, q2};
  T sign = ((j + k + m) % 2 == 0) ? T(1) : T(-1);
  return sign / qnum(m + 1, q) * basic_hypergeometric(upper, lower, q2, q2);
}

// Coefficients of the symmetric three-term recurrence in k.
template <class T>
T recurrence_a(int k, int m, const T& q) {
  T kk = qnum(k + 1, q);
  return qnum(m + k + 2, q) * qnum(m - k, q) * kk * kk / (qnum(2 * k + 1, q) * qnum(2 * k + 2, q));
}

template <class T>
T recurrence_c(int k, int m, const T& q) {
  if (k == 0) return T(0);
  T kk = qnum(k, q);
  return qnum(m + k + 1, q) * qnum(m - k + 1, q) * kk * kk / (qnum(2 * k, q) * qnum(2 * k + 1, q));
}

// |[j][j+1]<y_k|x_j> - a(k)<y_{k+1}|x_j> - (a(k)+c(k))<y_k|x_j> - c(k)<y_{k-1}|x_j>|,
// with `overlap(k, j)` supplying the values (k outside 0..m gives 0).
template <class T, class Overlap>
T recurrence_residual(int k, int j, int m, const T& q, Overlap&& overlap) {
  using std::abs;
  auto at = [&](int kk) { return (kk < 0 || kk > m) ? T(0) : T(overlap(kk, j)); };
  T a = recurrence_a(k, m, q), c = recurrence_c(k, m, q);
  T lhs = qnum(j, q) * qnum(j + 1, q) * at(k);
  return abs(lhs - a * at(k + 1) - (a + c) * at(k) - c * at(k - 1));
}

}  // namespace qflag
