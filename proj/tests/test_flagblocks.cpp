#include <doctest.h>

#include <Eigen/SVD>
#include <cmath>

#include "qflag/flagblocks.hpp"
#include "qflag/subharm.hpp"
#include "qflag/weights.hpp"

using namespace qflag;

namespace {

MatrixXd block_of(const Sparse& X, const TruncatedSpace& src, int sb, const TruncatedSpace& tgt, int tb) {
  const auto& s = src.blocks[sb];
  const auto& t = tgt.blocks[tb];
  return MatrixXd(X).block(t.offset, s.offset, t.size(), s.size());
}

double op_norm(const MatrixXd& X) {
  return X.size() == 0 ? 0.0 : Eigen::JacobiSVD<MatrixXd>(X).singularValues()(0);
}

Weight ket_weight(const MatrixCoefficient& f, const QContext& ctx) {
  auto rep = shared_gt_irrep(f.tau, ctx);
  for (int b = 0; b < rep->dim(); ++b)
    if (f.c.col(b).cwiseAbs().maxCoeff() > 0) return rep->weights[b];
  return {};
}

}  // namespace

TEST_CASE("dominant shells and normalization") {
  CHECK(normalized({2, 1, 1}) == Weight{1, 0, 0});
  CHECK(same_class({1, 0, 0}, {3, 2, 2}));
  CHECK(shell_of({3, 1, -2}) == 5);
  const auto shell = dominant_shell(3, 2);
  CHECK(shell.size() == 6);
  for (size_t k = 1; k < shell.size(); ++k) CHECK(shell_of(shell[k - 1]) <= shell_of(shell[k]));
}

TEST_CASE("K acts by a scalar on every block") {
  const QContext ctx(0.5);
  const Weight mu{1, 1, -2};
  const TruncatedSpace sp = make_space(3, mu, 4, ctx);
  REQUIRE(sp.dim > 0);
  for (int i = 1; i <= 2; ++i) {
    const MatrixXd K(right_action_op('K', i, sp, sp));
    const double expected = std::pow(ctx.q, 0.5 * root_pairing(mu, i));
    CHECK((K - expected * MatrixXd::Identity(sp.dim, sp.dim)).norm() < 1e-12);
  }
}

TEST_CASE("E_1 on the zero-weight blocks") {
  const QContext ctx(0.5);
  const TruncatedSpace src = make_space(3, {0, 0, 0}, 6, ctx, false);
  const TruncatedSpace tgt = make_space(3, {1, -1, 0}, 6, ctx, false);
  const Sparse E = right_action_op('E', 1, src, tgt);
  const int triv = src.find({0, 0, 0});
  REQUIRE(triv >= 0);
  CHECK(tgt.find({0, 0, 0}) == -1);
  CHECK(MatrixXd(E).block(0, src.blocks[triv].offset, tgt.dim, 1).norm() == 0.0);
  for (int m = 1; m <= 3; ++m) {
    const int sb = src.find({m, 0, -m}), tb = tgt.find({m, 0, -m});
    REQUIRE(sb >= 0);
    REQUIRE(tb >= 0);
    const double expected = std::sqrt(qnum(double(m), ctx) * qnum(m + 1.0, ctx));
    CHECK(op_norm(block_of(E, src, sb, tgt, tb)) == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("multiplication by one is the identity") {
  const QContext ctx(0.5);
  const TruncatedSpace sp = make_space(3, {0, 0, 0}, 4, ctx);
  const auto M = mult_operator(one(3), sp, sp, ctx);
  CHECK((MatrixXd(M.matrix) - MatrixXd::Identity(sp.dim, sp.dim)).norm() < 1e-12);
  const auto a = yd_action(one(3), sp, ctx);
  CHECK((MatrixXd(a.matrix) - MatrixXd::Identity(sp.dim, sp.dim)).norm() < 1e-12);
}

TEST_CASE("product with one") {
  const QContext ctx(0.5);
  const Element f{unit_coefficient({1, 0, 0}, 0, 1, ctx)};
  const Element p = product(one(3), f, ctx);
  REQUIRE(p.size() == 1);
  CHECK(p[0].tau == f[0].tau);
  CHECK((p[0].c - f[0].c).norm() < 1e-14);
}

TEST_CASE("multiplication is associative on interior blocks") {
  const QContext ctx(0.5);
  const int L = 5;
  const Element f{unit_coefficient({1, 0, 0}, 1, 0, ctx)};
  const Element g{unit_coefficient({1, 0, 0}, 0, 2, ctx)};
  const Weight zero{0, 0, 0};
  const Weight mid = normalized(ket_weight(g[0], ctx));
  const Weight top = normalized(mid + ket_weight(f[0], ctx));
  const TruncatedSpace s0 = make_space(3, zero, L, ctx), s1 = make_space(3, mid, L, ctx),
                       s2 = make_space(3, top, L, ctx);
  const MatrixXd two_step = MatrixXd(mult_operator(f, s1, s2, ctx).matrix) * MatrixXd(mult_operator(g, s0, s1, ctx).matrix);
  const MatrixXd one_step(mult_operator(product(f, g, ctx), s0, s2, ctx).matrix);
  const auto inner = s0.indices_up_to(L - 2);
  double worst = 0.0;
  for (int c : inner) worst = std::max(worst, (two_step.col(c) - one_step.col(c)).norm());
  CHECK(worst < 1e-9);
}

TEST_CASE("Yetter-Drinfeld action is unitary on interior shells") {
  CHECK(yd_unitarity_defect({1, 0}, 2, {0, 0}, 6, QContext(0.5)) < 1e-8);
  for (double q : {0.3, 0.8}) CHECK(yd_unitarity_defect({1, 0, 0}, 3, {0, 0, 0}, 5, QContext(q)) < 1e-8);
}

TEST_CASE("covariance and intertwining") {
  const QContext ctx(0.5);
  const Element f{unit_coefficient({1, 0, 0}, 0, 1, ctx)};
  CHECK(yd_covariance_residual({1, 0, 0}, 0, 1, f, {0, 0, 0}, 5, ctx) < 1e-8);
  CHECK(intertwining_residual(1, {1, 0, 0}, 5, ctx) < 1e-8);
}

TEST_CASE("commutator with one vanishes") {
  const QContext ctx(0.5);
  const auto t = commutator_defects(1, one(3), 3, {0, 0, 0}, 5, ctx);
  for (const auto& row : t.blocks) CHECK(row.defect < 1e-12);
}

TEST_CASE("tail maxima and decay") {
  std::vector<DefectRow> rows{{{1, 0, 0}, 1, -1, 0.9}, {{2, 1, 0}, 2, -1, 0.5}, {{4, 2, 0}, 4, -1, 0.1}};
  CHECK(tail_maxima(rows, 2) == std::vector<double>{0.9, 0.5, 0.1});
  CHECK_FALSE(decays({0.9, 0.5, 0.1}, 0.1));
  CHECK(decays({0.9, 0.5, 0.05}, 0.1));
  CHECK_FALSE(decays({0.9, 1.0, 0.05}, 0.1));
  CHECK_FALSE(decays({}, 0.1));
  std::vector<DefectRow> levels{{{1, 0, 0}, 1, 0, 0.4}, {{1, 0, 0}, 1, 2, 0.2}};
  CHECK(level_tail_maxima(levels, 3) == std::vector<double>{0.4, 0.2, 0.2, 0.0});
}

TEST_CASE("metric norm reduces to the operator norm for flat metrics") {
  MatrixXd X(2, 2);
  X << 3, 0, 0, 1;
  CHECK(metric_norm(X, VectorXd::Ones(2), VectorXd::Ones(2)) == doctest::Approx(3.0));
  CHECK(metric_norm(X, VectorXd::Ones(2), (VectorXd(2) << 4, 1).finished()) == doctest::Approx(6.0));
}
