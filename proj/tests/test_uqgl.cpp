#include <doctest.h>

#include <cmath>

#include "qflag/uqgl.hpp"
#include "qflag/weights.hpp"

using namespace qflag;

TEST_CASE("trivial representation") {
  const QContext ctx(0.5);
  const Irrep rep = build_irrep({0, 0, 0}, ctx);
  CHECK(rep.dim() == 1);
  for (const auto& X : rep.E) CHECK(X.norm() == 0.0);
  for (const auto& X : rep.F) CHECK(X.norm() == 0.0);
  CHECK(quantum_dimension(rep) == doctest::Approx(1.0));
}

TEST_CASE("adjoint representation") {
  for (double q : {0.3, 0.5, 0.8}) {
    const QContext ctx(q);
    const Irrep rep = build_irrep({1, 0, -1}, ctx);
    CHECK(rep.dim() == 8);
    CHECK(rep.indices({0, 0, 0}).size() == 2);
    CHECK(relation_residuals(rep).max_residual < 1e-10);
    // classical limit of the quantum dimension is 8; [2][2][4]/[2] at q
    CHECK(quantum_dimension(rep) == doctest::Approx(qnum(2.0, ctx) * qnum(4.0, ctx)));
    CHECK(quantum_dimension(rep) == doctest::Approx(quantum_dimension_formula({1, 0, -1}, q)));
  }
}

TEST_CASE("quantum dimension of the vector representation") {
  const QContext ctx(0.5);
  CHECK(quantum_dimension(build_irrep({1, 0, 0}, ctx)) == doctest::Approx(qnum(3.0, ctx)));
}

TEST_CASE("Weyl dimensions and relations across small weights") {
  const QContext ctx(0.5);
  for (const Weight& lambda : {Weight{2, 0, 0}, Weight{2, 1, 0}, Weight{3, 0, -1}, Weight{1, 1, 0, 0}}) {
    const Irrep rep = build_irrep(lambda, ctx);
    CHECK(rep.dim() == weyl_dimension(lambda));
    CHECK(relation_residuals(rep).max_residual < 1e-9);
    CHECK(quantum_dimension(rep) == doctest::Approx(quantum_dimension_formula(lambda, 0.5)));
  }
}

TEST_CASE("K elements") {
  const QContext ctx(0.5);
  const Irrep rep = build_irrep({1, 0, -1}, ctx);
  const VectorXd id = element_K_lambda(rep, {0, 0, 0});
  CHECK((id.array() - 1.0).abs().maxCoeff() < 1e-15);
  for (int i = 1; i <= 2; ++i) {
    const Weight a = simple_root(3, i);
    const VectorXd k = element_K_lambda(rep, std::vector<double>(a.begin(), a.end()));
    CHECK((k - rep.k_diag_root(i)).norm() < 1e-15);
  }
  const VectorXd k2rho = element_K_lambda(rep, {2, 0, -2});
  for (int idx : rep.indices({0, 0, 0})) CHECK(k2rho(idx) == doctest::Approx(1.0));
}

TEST_CASE("tensor product operators satisfy the relations") {
  const QContext ctx(0.5);
  const Irrep a = build_irrep({1, 0, 0}, ctx), b = build_irrep({0, 0, -1}, ctx);
  const OperatorSet ops = tensor_operators(a, b);
  CHECK(ops.weights.size() == 9);
  CHECK(ops.E.size() == 2);
}
