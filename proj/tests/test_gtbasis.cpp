#include <doctest.h>

#include <Eigen/SVD>
#include <cmath>

#include "qflag/gtbasis.hpp"
#include "qflag/lower_basis.hpp"
#include "qflag/weights.hpp"

using namespace qflag;

namespace {

Eigen::VectorXd block_singular_values(const Irrep& rep, const Sparse& X, const Weight& from, const Weight& to) {
  return Eigen::JacobiSVD<MatrixXd>(rep.block(X, from, to)).singularValues();
}

}  // namespace

TEST_CASE("pattern enumeration") {
  const auto triv = enumerate_patterns({0, 0, 0});
  REQUIRE(triv.size() == 1);
  for (const auto& row : triv[0].rows)
    for (int x : row) CHECK(x == 0);
  CHECK(enumerate_patterns({1, 0, -1}).size() == 8);
  for (int m = 0; m <= 6; ++m) CHECK(patterns_of_weight({m, 0, -m}, {0, 0, 0}).size() == size_t(m + 1));
  for (const auto& p : enumerate_patterns({2, 1, -1})) CHECK(p.interlaces());
}

TEST_CASE("raising a pattern out of the interlacing region gives zero") {
  const QContext ctx(0.5);
  for (const auto& p : enumerate_patterns({2, 0, -2}))
    for (int k = 1; k <= 2; ++k)
      for (int i = 0; i < k; ++i)
        if (!raised(p, k, i)) CHECK(gt_raise_coefficient(p, k, i, ctx.q) == 0.0);
}

TEST_CASE("K acts diagonally on patterns") {
  const QContext ctx(0.5);
  const Irrep rep = gt_irrep({2, 1, -1}, ctx);
  for (int idx = 0; idx < rep.dim(); ++idx) {
    const Weight w = rep.labels[idx].weight();
    CHECK(w == rep.weights[idx]);
    for (int i = 1; i <= 2; ++i)
      CHECK(rep.k_diag_root(i)(idx) == doctest::Approx(std::pow(ctx.q, 0.5 * (w[i - 1] - w[i]))));
  }
}

TEST_CASE("GT matrices agree with the Gram construction up to gauge") {
  for (double q : {0.3, 0.5, 0.8}) {
    const QContext ctx(q);
    const Irrep gt = gt_irrep({2, 0, -2}, ctx), gram = build_irrep({2, 0, -2}, ctx);
    REQUIRE(gt.dim() == gram.dim());
    CHECK(relation_residuals(gt).max_residual < 1e-10);
    for (const Weight& w : gt.distinct_weights())
      for (int i = 1; i <= 2; ++i) {
        const Weight up = w + simple_root(3, i);
        if (!gt.has_weight(up)) continue;
        const Eigen::VectorXd a = block_singular_values(gt, gt.E[i - 1], w, up);
        const Eigen::VectorXd b = block_singular_values(gram, gram.E[i - 1], w, up);
        CHECK((a - b).norm() < 1e-10);
      }
  }
}

TEST_CASE("printed class-1 formulas on their valid domain") {
  const QContext ctx(0.5);
  const Irrep rep = class1_generator_matrices(3, 3, ctx);
  CHECK(relation_residuals(rep).max_residual < 1e-10);
}

TEST_CASE("invariant vector coefficients") {
  for (double q : {0.3, 0.5, 0.8}) {
    const QContext ctx(q);
    const auto triv = invariant_vector_coefficients(0, 3, ctx);
    REQUIRE(triv.size() == 1);
    CHECK(std::abs(triv[0].second) == doctest::Approx(1.0));
    for (int m = 1; m <= 8; ++m) {
      const auto coeffs = invariant_vector_coefficients(m, 3, ctx);
      REQUIRE(coeffs.size() == size_t(m + 1));
      double norm2 = 0.0;
      for (const auto& [middle, a] : coeffs) {
        const int j = middle[0];
        const double expected = ((j + m) % 2 ? -1.0 : 1.0) * std::sqrt(qnum(2.0 * j + 1, ctx)) / qnum(m + 1.0, ctx);
        CHECK(a == doctest::Approx(expected).epsilon(1e-10));
        norm2 += a * a;
      }
      CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-12));
    }
    for (int n = 3; n <= 4; ++n)
      for (int m = 0; m <= 4; ++m) {
        const double expected = 1.0 / std::sqrt(qfact(n - 2, ctx)) / qbinom(m + n - 2, n - 2, ctx);
        CHECK(invariant_vector_constant(m, n, ctx) == doctest::Approx(expected).epsilon(1e-10));
      }
  }
}

TEST_CASE("invariant vector is annihilated by the lower generators for n = 4") {
  const QContext ctx(0.5);
  for (int m = 0; m <= 4; ++m) {
    const Irrep rep = gt_irrep({m, 0, 0, -m}, ctx);
    const VectorXd v = invariant_vector_in_basis(rep, m, ctx);
    CHECK(v.norm() == doctest::Approx(1.0));
    for (int i = 2; i <= 3; ++i) {
      CHECK((rep.E[i - 1] * v).norm() < 1e-10);
      CHECK((rep.F[i - 1] * v).norm() < 1e-10);
    }
  }
}

TEST_CASE("trivial-type overlaps of the lower basis") {
  for (double qd : {0.3, 0.5, 0.8}) {
    const QContext ctx(qd);
    for (int m = 1; m <= 12; ++m) {
      const Class1Blocks blocks = class1_lower_blocks(m, wide(qd));
      const MatrixXd zero = to_double(blocks.zero_lower);
      for (int j = 0; j <= m; ++j) {
        const double expected = ((j + m) % 2 ? -1.0 : 1.0) * std::sqrt(qnum(2.0 * j + 1, ctx)) / qnum(m + 1.0, ctx);
        CHECK(zero(j, 0) == doctest::Approx(expected).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("4phi3 overlaps") {
  const double q = 0.5;
  for (int m = 0; m <= 6; ++m)
    for (int j = 0; j <= m; ++j) {
      const double s = ((j + m) % 2 ? -1.0 : 1.0) / qnum(m + 1, q);
      CHECK(racah_overlap(0, j, m, q) == doctest::Approx(s));
      CHECK(racah_overlap(j, 0, m, q) == doctest::Approx(s));
    }
  CHECK_THROWS_AS(racah_overlap(3, 0, 2, q), std::out_of_range);
}

TEST_CASE("4phi3 overlaps match the lower basis and the three-term recurrence") {
  const int m = 6;
  for (double qd : {0.3, 0.5, 0.8}) {
    const wide q(qd);
    const Class1Blocks blocks = class1_lower_blocks(m, q);
    for (int j = 0; j <= m; ++j)
      for (int k = 0; k <= m; ++k) {
        const wide scale = sqrt(qnum(wide(2 * j + 1), q) * qnum(wide(2 * k + 1), q));
        const wide diff = racah_overlap(k, j, m, q) - blocks.zero_lower(j, k) / scale;
        CHECK(static_cast<double>(abs(diff)) < 1e-9);
        const wide res = recurrence_residual(k, j, m, q, [&](int kk, int jj) { return racah_overlap(kk, jj, m, q); });
        CHECK(static_cast<double>(res) < 1e-12);
      }
  }
}
