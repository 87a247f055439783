#include <doctest.h>

#include <cmath>
#include <functional>

#include "qflag/qcalc.hpp"
#include "qflag/wide.hpp"

using namespace qflag;

TEST_CASE("q-numbers") {
  const QContext ctx(0.5);
  CHECK(qnum(0.0, ctx) == doctest::Approx(0.0));
  CHECK(qnum(2.0, ctx) == doctest::Approx(2.5));
  CHECK(qnum(0.5, ctx) == doctest::Approx(0.471404521).epsilon(1e-9));
  CHECK(qnum(-3.0, ctx) == doctest::Approx(-qnum(3.0, ctx)));
}

TEST_CASE("q-factorials and binomials") {
  const QContext ctx(0.5);
  CHECK(qfact(0, ctx) == 1.0);
  CHECK(qbinom(3, 1, ctx) == doctest::Approx(5.25));
  // [4] = q^3 + q + q^-1 + q^-3 = 10.625 at q = 1/2
  CHECK(qnum(4.0, ctx) == doctest::Approx(10.625));
  CHECK(qbinom(4, 2, ctx) == doctest::Approx(10.625 * 5.25 / 2.5));
  CHECK_THROWS_AS(qfact(-1, ctx), std::domain_error);
  CHECK_THROWS_AS(qbinom(2, 3, ctx), std::domain_error);
}

TEST_CASE("q-Pochhammer symbol") {
  CHECK(qpochhammer(0.3, 0.25, 0) == 1.0);
  for (int n = 1; n < 5; ++n) CHECK(qpochhammer(1.0, 0.7, n) == 0.0);
  const double q = 0.5;
  CHECK(qpochhammer(std::pow(q, -2), q * q, 2) == doctest::Approx(0.0));
}

TEST_CASE("basic hypergeometric series") {
  const double r = 0.25;
  CHECK(basic_hypergeometric<double>({1.0, 0.3}, {0.6}, r, 0.9) == doctest::Approx(1.0));
  CHECK_THROWS_AS(basic_hypergeometric<double>({0.3}, {0.6}, r, 0.5), std::invalid_argument);
  for (double x : {0.0, 0.2, 0.7}) {
    CHECK(little_q_legendre(0, x, r) == doctest::Approx(1.0));
    CHECK(little_q_legendre(1, x, r) == doctest::Approx(1.0 - (1.0 + r) * x));
  }
}

TEST_CASE("Jackson q-integral") {
  const double q = 0.5, r = q * q;
  std::function<double(const double&)> one = [](const double&) { return 1.0; };
  CHECK(jackson_qintegral(one, r) == doctest::Approx(1.0));
  std::function<double(const double&)> inv_sqrt = [](const double& x) { return 1.0 / std::sqrt(x); };
  CHECK(jackson_qintegral(inv_sqrt, r) == doctest::Approx(1.0 + q));
}

TEST_CASE("Jackson q-integral of x^{-1/2} p_k in extended precision") {
  for (double qd : {0.3, 0.5, 0.8}) {
    const wide q(qd), r = q * q;
    for (int k = 0; k <= 6; ++k) {
      std::function<wide(const wide&)> f = [&](const wide& x) {
        return little_q_legendre(k, x, r) / boost::multiprecision::sqrt(x);
      };
      const wide lhs = jackson_qintegral(f, r, wide(1e-40), 1000000);
      const wide rhs = boost::multiprecision::sqrt(q) / qnum(wide(k + 0.5), q);
      CHECK(static_cast<double>(boost::multiprecision::abs(lhs - rhs)) < 1e-12);
    }
  }
}

TEST_CASE("Jackson q-integral keeps going past isolated tiny terms") {
  // p_k vanishes nearly at x = 1 for large k and small q.
  const wide q(0.3), r = q * q;
  const int k = 10;
  std::function<wide(const wide&)> f = [&](const wide& x) {
    return little_q_legendre(k, x, r) / boost::multiprecision::sqrt(x);
  };
  const wide lhs = jackson_qintegral(f, r, wide(1e-40), 1000000);
  const wide rhs = boost::multiprecision::sqrt(q) / qnum(wide(k + 0.5), q);
  CHECK(static_cast<double>(boost::multiprecision::abs(lhs - rhs)) < 1e-12);
}

TEST_CASE("q-derivative") {
  const double r = 0.36;
  std::function<double(const double&)> c = [](const double&) { return 3.0; };
  CHECK(qderivative(c, r, 0.7) == doctest::Approx(0.0));
  for (double alpha : {1.0, 2.5, -0.5})
    for (double x : {0.2, 0.9}) {
      std::function<double(const double&)> f = [alpha](const double& y) { return std::pow(y, alpha); };
      CHECK(qderivative(f, r, x) == doctest::Approx(qnum_nonsym(alpha, r) * std::pow(x, alpha - 1)));
    }
  // D_q (x; q^{-1})_2 = -[[2]]_{q^{-1}} (x; q^{-1})_1, with D_q acting at base r
  for (double x : {0.3, 0.8}) {
    std::function<double(const double&)> f = [r](const double& y) { return qpochhammer(y, 1.0 / r, 2); };
    CHECK(qderivative(f, r, x) ==
          doctest::Approx(-qnum_nonsym(2.0, 1.0 / r) * qpochhammer(x, 1.0 / r, 1)));
  }
  CHECK_THROWS_AS(qderivative(c, r, 0.0), std::domain_error);
}

TEST_CASE("Rodrigues formula agrees with the series") {
  const double r = 0.25;
  for (int k = 0; k <= 4; ++k)
    for (double x : {0.1, 0.45, 0.9})
      CHECK(little_q_legendre_rodrigues(k, x, r) == doctest::Approx(little_q_legendre(k, x, r)).epsilon(1e-8));
}

TEST_CASE("telescoping sum") {
  for (double q : {0.3, 0.5, 0.8})
    for (int l = 0; l <= 12; ++l)
      CHECK(telescoping_partial_sum(l, q) == doctest::Approx(telescoping_closed_form(l, q)).epsilon(1e-12));
  CHECK(telescoping_closed_form(0, 0.5) == doctest::Approx(0.0));
}
