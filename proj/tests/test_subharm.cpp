#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "qflag/gtbasis.hpp"
#include "qflag/subharm.hpp"
#include "qflag/weights.hpp"

using namespace qflag;

TEST_CASE("decomposing under the full algebra leaves one component") {
  const QContext ctx(0.5);
  const Irrep rep = gt_irrep({2, 1, -1}, ctx);
  const auto dec = decompose(rep, {{1, 2}, SubgroupSpec::Side::general});
  REQUIRE(dec.components.size() == 1);
  CHECK(dec.components[0].highest == Weight{2, 1, -1});
  CHECK(dec.components[0].isometry.cols() == rep.dim());
}

TEST_CASE("lower-block trivial type is spanned by the invariant vector") {
  for (double q : {0.3, 0.5, 0.8}) {
    const QContext ctx(q);
    for (int m = 1; m <= 4; ++m) {
      const Irrep rep = gt_irrep({m, 0, -m}, ctx);
      const auto dec = decompose(rep, {{2}, SubgroupSpec::Side::lower});
      const MatrixXd P = dec.projection({0, 0, 0});
      CHECK(P.trace() == doctest::Approx(1.0));
      const VectorXd v = invariant_vector_in_basis(rep, m, ctx);
      CHECK((P * v - v).norm() < 1e-10);
    }
  }
}

TEST_CASE("adjoint restricted to the first root") {
  const QContext ctx(0.5);
  const Irrep rep = gt_irrep({1, 0, -1}, ctx);
  const auto dec = decompose(rep, {{1}, SubgroupSpec::Side::upper});
  int total = 0;
  for (const auto& c : dec.components) total += static_cast<int>(c.isometry.cols());
  CHECK(total == 8);
  // weight 0 carries one vector of the spin-1 string and the spin-0 string
  double spin1 = 0.0, spin0 = 0.0;
  const MatrixXd P1 = dec.projection({1, -1, 0}), P0 = dec.projection({0, 0, 0});
  for (int idx : rep.indices({0, 0, 0})) {
    spin1 += P1(idx, idx);
    spin0 += P0(idx, idx);
  }
  CHECK(spin1 == doctest::Approx(1.0));
  CHECK(spin0 == doctest::Approx(1.0));
}

TEST_CASE("tensor product decompositions") {
  const QContext ctx(0.5);
  SUBCASE("trivial factor") {
    const auto parts = tensor_decompose(gt_irrep({0, 0, 0}, ctx), gt_irrep({1, 0, -1}, ctx), ctx);
    REQUIRE(parts.size() == 1);
    CHECK((parts[0].isometry.transpose() * parts[0].isometry - MatrixXd::Identity(8, 8)).norm() < 1e-12);
  }
  SUBCASE("vector times covector") {
    const auto parts = tensor_decompose(gt_irrep({1, 0, 0}, ctx), gt_irrep({0, 0, -1}, ctx), ctx);
    std::vector<std::pair<Weight, int>> found;
    for (const auto& p : parts) found.emplace_back(p.highest, static_cast<int>(p.isometry.cols()));
    std::sort(found.begin(), found.end());
    CHECK(found == std::vector<std::pair<Weight, int>>{{{0, 0, 0}, 1}, {{1, 0, -1}, 8}});
  }
  SUBCASE("adjoint squared") {
    const auto parts = tensor_decompose(gt_irrep({1, 0, -1}, ctx), gt_irrep({1, 0, -1}, ctx), ctx);
    std::map<Weight, int> mult;
    int total = 0;
    for (const auto& p : parts) {
      ++mult[p.highest];
      total += static_cast<int>(p.isometry.cols());
    }
    CHECK(total == 64);
    CHECK(mult == std::map<Weight, int>{{{2, 0, -2}, 1}, {{2, -1, -1}, 1}, {{1, 1, -2}, 1}, {{1, 0, -1}, 2}, {{0, 0, 0}, 1}});
  }
}

TEST_CASE("numerical invariant vector matches the closed form") {
  const QContext ctx(0.5);
  for (int m = 0; m <= 5; ++m) {
    const auto v = invariant_vector_numeric(m, 3, 0.5);
    const auto c = invariant_vector_coefficients(m, 3, ctx);
    REQUIRE(v.size() == c.size());
    std::vector<double> a, b;
    for (size_t k = 0; k < v.size(); ++k) {
      a.push_back(std::abs(v[k]));
      b.push_back(std::abs(c[k].second));
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    for (size_t k = 0; k < a.size(); ++k) CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-10));
  }
}

TEST_CASE("orthotypicality of the trivial type") {
  for (double q : {0.3, 0.5, 0.8}) {
    const QContext ctx(q);
    for (const auto& row : orthotypicality_scan(3, {0, 0}, {1, 2, 5, 10}, ctx)) {
      CHECK(row.norm == doctest::Approx(1.0 / qnum(row.m + 1.0, ctx)).epsilon(1e-9));
      CHECK(row.formula == doctest::Approx(row.norm).epsilon(1e-9));
      CHECK(row.norm <= row.bound + 1e-12);
    }
    for (const auto& row : orthotypicality_scan(3, {3, -3}, {1, 2}, ctx)) CHECK(row.norm == 0.0);
  }
  CHECK_THROWS_AS(orthotypicality_scan(3, {0, 0, 0}, {1}, QContext(0.5)), std::invalid_argument);
}

TEST_CASE("orthotypicality for n = 4 stays below its bound") {
  const QContext ctx(0.5);
  const auto rows = orthotypicality_scan(4, {1, 0, -1}, {1, 2, 3, 4}, ctx);
  for (const auto& row : rows) CHECK(row.norm <= row.bound + 1e-12);
  CHECK(rows.back().norm < rows[1].norm);
}

TEST_CASE("decay exponent fit") {
  std::vector<int> m{4, 6, 8, 10};
  std::vector<double> v;
  for (int x : m) v.push_back(3.0 * std::pow(0.5, 2.0 * x));
  CHECK(fit_decay_exponent(m, v, 0.5) == doctest::Approx(2.0));
}
