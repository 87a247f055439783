#include <doctest.h>

#include "qflag/bgg.hpp"
#include "qflag/gtbasis.hpp"

using namespace qflag;

TEST_CASE("diagram shape") {
  const BGGDiagram& d = bgg_diagram();
  REQUIRE(d.vertices.size() == 6);
  CHECK(d.degree(0).size() == 1);
  CHECK(d.degree(1).size() == 2);
  CHECK(d.degree(2).size() == 2);
  CHECK(d.degree(3).size() == 1);
  CHECK(d.squares.size() == 4);
  for (const auto& a : d.arrows) CHECK(d.length[a.to] == d.length[a.from] + 1);
  for (const auto& sq : d.squares) {
    CHECK(d.length[sq.sink] == d.length[sq.source] + 2);
    REQUIRE(sq.terms.size() == 2);
    const auto plain = unsigned_terms(sq);
    CHECK(plain[0].sign == 1.0);
    CHECK(plain[1].sign == -1.0);
  }
}

TEST_CASE("lifting sl3 weights into a gl3 representation") {
  const QContext ctx(0.5);
  const Irrep adj = gt_irrep({1, 0, -1}, ctx);
  CHECK(lift(adj, {0, 0, 0}) == Weight{0, 0, 0});
  CHECK(lift(adj, {1, -1, 0}) == Weight{1, -1, 0});
  CHECK(lift(gt_irrep({2, 1, 0}, ctx), {0, 0, 0}) == Weight{1, 1, 1});
  CHECK_FALSE(lift(gt_irrep({1, 0, 0}, ctx), {0, 0, 0}).has_value());
}

TEST_CASE("hexagon identity") {
  for (double q : {0.3, 0.5, 0.8})
    for (const auto& r : hexagon_check(4, QContext(q))) {
      if (r.a == 0 && r.b == 0) CHECK(r.value == 0.0);
      CHECK(r.value < 1e-10);
    }
}

TEST_CASE("normalized square defects") {
  const QContext ctx(0.5);
  const auto rows = normalized_defects(4, ctx, 3);
  REQUIRE_FALSE(rows.empty());
  for (const auto& r : rows) {
    if (r.a == 0 && r.b == 0) CHECK(r.signed_defect == 0.0);
    // both paths are products of phases, so each square is at most 2
    CHECK(r.signed_defect <= 2.0 + 1e-12);
    CHECK(r.signed_defect == doctest::Approx(r.unsigned_defect).epsilon(1e-12));
  }
  const auto tail = square_tail(rows, 1, 2);
  CHECK(tail.size() == 3);
  for (size_t s = 1; s < tail.size(); ++s) CHECK(tail[s] <= tail[s - 1] + 1e-15);
}

TEST_CASE("almost-symmetry ranks") {
  const QContext ctx(0.5);
  for (const auto& row : almost_symmetry_rank(1, 1, {0, 0, 0}, 6, ctx)) {
    CHECK(row.rank == row.census);
    if (row.a == 0 && row.b == 0) CHECK(row.rank == 1);
    if (row.a == row.b) CHECK(row.rank == 1);
  }
  for (const auto& row : almost_symmetry_rank(1, 2, {0, 0, 0}, 6, ctx)) CHECK(row.rank == row.census);
}

TEST_CASE("Euler characteristic") {
  CHECK(euler_characteristic({0, 0, 0}) == 1);
  CHECK(euler_characteristic({1, 0, -1}) == 0);
  for (int a = 0; a <= 20; ++a)
    for (int b = 0; a + b <= 20; ++b) CHECK(euler_characteristic({a + b, b, 0}) == (a + b == 0 ? 1 : 0));
}

TEST_CASE("per-block cohomology") {
  const QContext ctx(0.5);
  const auto triv = per_block_cohomology(0, 0, ctx);
  CHECK(triv.cohomology == std::vector<int>{1, 0, 0, 0});
  const auto adj = per_block_cohomology(1, 1, ctx);
  CHECK(adj.cohomology == std::vector<int>{0, 0, 0, 0});
  CHECK(adj.chain_dims == std::vector<int>{2, 2, 0, 0});
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; a + b <= 4; ++b) {
      const auto c = per_block_cohomology(a, b, ctx);
      CHECK(c.complex_defect < 1e-8);
      CHECK_FALSE(c.flagged);
      CHECK(c.cohomology == std::vector<int>{a + b == 0 ? 1 : 0, 0, 0, 0});
    }
}
