#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "qflag/asymptotics.hpp"
#include "qflag/gtbasis.hpp"
#include "qflag/phase_ops.hpp"
#include "qflag/weights.hpp"

using namespace qflag;

TEST_CASE("phase of simple operators") {
  CHECK(phase(MatrixXd::Zero(3, 2)).norm() == 0.0);
  CHECK(phase(MatrixXd::Constant(1, 1, 2.7))(0, 0) == doctest::Approx(1.0));
  MatrixXd X(2, 2);
  X << 3.0, 0.0, 0.0, -1e-14;
  const MatrixXd P = phase(X);
  CHECK(P(0, 0) == doctest::Approx(1.0));
  CHECK(P(1, 1) == 0.0);
}

TEST_CASE("phase is a partial isometry") {
  std::mt19937 gen(7);
  std::normal_distribution<double> nd;
  MatrixXd X(4, 3);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 3; ++c) X(r, c) = nd(gen);
  const MatrixXd P = phase(X);
  CHECK((P * P.transpose() * P - P).norm() < 1e-12);
  const MatrixXd abs_x = P.transpose() * X;
  CHECK((abs_x - abs_x.transpose()).norm() < 1e-12);
  CHECK((P * abs_x - X).norm() < 1e-12);
}

TEST_CASE("trivial representation has a single spin-0 string") {
  const QContext ctx(0.5);
  const Irrep rep = gt_irrep({0, 0, 0}, ctx);
  const auto strings = sl2_string_decomposition(rep, 1, {0, 0, 0});
  REQUIRE(strings.size() == 1);
  CHECK(strings[0].spin == 0.0);
  CHECK(d_operator(rep, 1, {0, 0, 0}).norm() == 0.0);
}

TEST_CASE("string spectrum on the zero weight of (m,0,-m)") {
  for (double q : {0.3, 0.5, 0.8}) {
    const QContext ctx(q);
    for (int m = 1; m <= 5; ++m) {
      const Irrep rep = gt_irrep({m, 0, -m}, ctx);
      auto strings = sl2_string_decomposition(rep, 1, {0, 0, 0});
      REQUIRE(strings.size() == size_t(m + 1));
      std::sort(strings.begin(), strings.end(), [](const auto& a, const auto& b) { return a.spin < b.spin; });
      const MatrixXd psi = functional_calculus([](double x) { return 1.0 / (1.0 + x * x); }, rep, 1, {0, 0, 0});
      const int ds = static_cast<int>(rep.indices({0, 0, 0}).size());
      for (int j = 0; j <= m; ++j) {
        CHECK(strings[j].spin == doctest::Approx(j));
        const double s = std::sqrt(qnum(double(j), ctx) * qnum(j + 1.0, ctx));
        CHECK(strings[j].singular_value == doctest::Approx(s).epsilon(1e-10));
        const VectorXd x = strings[j].at_source;
        REQUIRE(x.size() == ds);
        const MatrixXd E = rep.block(rep.E[0], {0, 0, 0}, {1, -1, 0});
        const MatrixXd F = rep.block(rep.F[0], {1, -1, 0}, {0, 0, 0});
        CHECK((F * E * x - s * s * x).norm() < 1e-9 * (1 + s * s));
        const double eig = x.dot(psi.topLeftCorner(ds, ds) * x);
        CHECK(eig == doctest::Approx(1.0 / (1.0 + s * s)).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("functional calculus of the identity and of x") {
  const QContext ctx(0.5);
  const Irrep rep = gt_irrep({2, 0, -1}, ctx);
  const Weight mu{1, 0, 0};
  const MatrixXd D = d_operator(rep, 2, mu);
  const MatrixXd id = functional_calculus([](double) { return 1.0; }, rep, 2, mu);
  const MatrixXd lin = functional_calculus([](double x) { return x; }, rep, 2, mu);
  CHECK((id - MatrixXd::Identity(D.rows(), D.cols())).norm() < 1e-12);
  CHECK((lin - D).norm() < 1e-10 * (1 + D.norm()));
}

TEST_CASE("phase via SVD equals phase via strings") {
  std::mt19937 gen(2024);
  std::uniform_int_distribution<int> pick(0, 3);
  for (int trial = 0; trial < 50; ++trial) {
    const QContext ctx(trial % 3 == 0 ? 0.3 : (trial % 3 == 1 ? 0.5 : 0.8));
    const int b = pick(gen), a = b + pick(gen);
    const Weight lambda{a, b, 0};
    const Irrep rep = gt_irrep(lambda, ctx);
    const auto& weights = rep.distinct_weights();
    const Weight mu = weights[trial % weights.size()];
    const int i = 1 + trial % 2;
    if (!rep.has_weight(mu + simple_root(3, i))) continue;
    const MatrixXd svd = phase(block_op(rep, 'E', i, mu)).matrix;
    CHECK((svd - string_phase(rep, i, mu)).norm() < 1e-10);
  }
}

TEST_CASE("almost symmetry census") {
  const QContext ctx(0.5);
  const auto triv = almost_symmetry(gt_irrep({0, 0, 0}, ctx), 1, {0, 0, 0}, 1);
  CHECK(triv.numerical_rank == 1);
  CHECK(triv.census == 1);
  for (int m = 1; m <= 4; ++m) {
    const Irrep rep = gt_irrep({m, 0, -m}, ctx);
    const auto one = almost_symmetry(rep, 1, {0, 0, 0}, 1);
    CHECK(one.numerical_rank == 1);
    CHECK(one.residual < 1e-10);
    const auto two = almost_symmetry(rep, 1, {0, 0, 0}, 2);
    CHECK(two.numerical_rank == std::min(m + 1, 2));
    CHECK(two.census == std::min(m + 1, 2));
  }
}

TEST_CASE("phase words compose") {
  const QContext ctx(0.5);
  const Irrep rep = gt_irrep({2, 0, -2}, ctx);
  Weight landed;
  const MatrixXd w = phase_word(rep, {0, 0, 0}, {{'E', 1}, {'F', 1}}, &landed);
  CHECK(landed == Weight{0, 0, 0});
  const MatrixXd e = phase(block_op(rep, 'E', 1, {0, 0, 0})).matrix;
  const MatrixXd f = phase(block_op(rep, 'F', 1, {1, -1, 0})).matrix;
  CHECK((w - f * e).norm() < 1e-12);
}

TEST_CASE("phase asymptotics") {
  const double q = 0.5;
  const QContext ctx(q);
  const double k1 = -1.0 / std::sqrt(qnum(2.0, ctx)) * (1.0 / qnum(0.5, ctx) - 1.0 / qnum(1.5, ctx));
  CHECK(static_cast<double>(phase_limit(1, wide(q))) == doctest::Approx(k1).epsilon(1e-12));
  CHECK(phase_asymptotics_check(3, {2}, q)[0].value == 0.0);
  const auto row = phase_asymptotics_check(2, {40}, q)[0];
  CHECK(std::abs(std::abs(row.value) - std::abs(row.limit)) < 1e-6);
  // The lower basis used here puts the matrix element on the opposite side of zero.
  CHECK(row.value * row.limit < 0.0);
}

TEST_CASE("telescoping norms") {
  const double q = 0.5;
  const QContext ctx(q);
  auto closed = [&](int l) { return 1.0 - std::pow(qnum(0.5, ctx) / qnum(l + 0.5, ctx), 2); };
  const auto deep = telescoping_norm_check(3, {40}, q)[0];
  CHECK(std::abs(deep.value - closed(3)) < 1e-6);
  CHECK(deep.limit == doctest::Approx(closed(3)));
  CHECK(telescoping_norm_check(1, {40}, q)[0].limit == doctest::Approx(closed(1)));
  // l >= m: the only missing piece is the kernel string j = 0
  for (int m = 1; m <= 4; ++m) {
    const double expected = 1.0 - 1.0 / std::pow(qnum(m + 1.0, ctx), 2);
    CHECK(telescoping_norm_check(m + 2, {m}, q)[0].value == doctest::Approx(expected).epsilon(1e-10));
  }
}
