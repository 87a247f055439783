#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qflag {

// Deformation parameter together with the tolerances used by the checks.
struct QContext {
  double q = 0.5;
  double sqrt_q = std::sqrt(0.5);
  double eps_exact = 1e-10;
  double eps_asym = 1e-6;

  QContext() = default;
  explicit QContext(double q_value, double exact = 1e-10, double asym = 1e-6);

  // q^a with the half-integer part taken from the stored square root.
  double power(double a) const;
};

class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Generic scalar kernels. T is double or the extended type from wide.hpp.

template <class T>
T qpow(const T& q, const T& a) {
  using std::pow;
  return pow(q, a);
}

// Symmetric q-number (q^a - q^-a)/(q - q^-1).
template <class T>
T qnum(const T& a, const T& q) {
  return (qpow(q, a) - qpow(q, T(-a))) / (q - T(1) / q);
}

template <class T>
T qnum(int a, const T& q) {
  return qnum(T(a), q);
}

// Non-symmetric q-number (1 - r^a)/(1 - r).
template <class T>
T qnum_nonsym(const T& a, const T& r) {
  return (T(1) - qpow(r, a)) / (T(1) - r);
}

template <class T>
T qfact(int a, const T& q) {
  if (a < 0) throw std::domain_error("qfact: negative argument");
  T out(1);
  for (int k = 2; k <= a; ++k) out *= qnum(k, q);
  return out;
}

template <class T>
T qbinom(int a, int m, const T& q) {
  if (m < 0 || m > a) throw std::domain_error("qbinom: need 0 <= m <= a");
  T out(1);
  for (int k = 1; k <= m; ++k) out *= qnum(a - m + k, q) / qnum(k, q);
  return out;
}

// Non-symmetric factorial [[n]]_r! = prod_{k<=n} (1 - r^k)/(1 - r).
template <class T>
T qfact_nonsym(int n, const T& r) {
  T out(1);
  for (int k = 1; k <= n; ++k) out *= qnum_nonsym(T(k), r);
  return out;
}

// (a; base)_n = prod_{i<n} (1 - a base^i).
template <class T>
T qpochhammer(const T& a, const T& base, int n) {
  if (n < 0) throw std::domain_error("qpochhammer: negative length");
  T out(1), factor = a;
  for (int i = 0; i < n; ++i) {
    out *= T(1) - factor;
    factor *= base;
  }
  return out;
}

// Returns k if value equals base^{-k} for an integer k >= 0, otherwise -1.
template <class T>
int terminating_index(const T& value, const T& base) {
  using std::abs;
  using std::log;
  using std::round;
  if (!(value > T(0))) return -1;
  T t = -log(value) / log(base);
  T k = round(t);
  if (k < T(0)) return -1;
  int ki = static_cast<int>(k);
  T back = qpow(base, T(-ki));
  if (abs(back - value) <= T(1e-9) * abs(value)) return ki;
  return -1;
}

// Terminating basic hypergeometric series. `lower` is the FULL denominator
// list: the term of order l is prod(upper;base)_l / prod(lower;base)_l * z^l,
// with no implicit (base;base)_l factor.
template <class T>
T basic_hypergeometric(const std::vector<T>& upper, const std::vector<T>& lower, const T& base,
                       const T& z) {
  int terms = -1;
  for (const T& u : upper) {
    int k = terminating_index(u, base);
    if (k >= 0 && (terms < 0 || k < terms)) terms = k;
  }
  if (terms < 0) throw std::invalid_argument("basic_hypergeometric: series does not terminate");
  T sum(0), term(1);
  for (int l = 0; l <= terms; ++l) {
    sum += term;
    if (l == terms) break;
    T num(1), den(1);
    T bl = qpow(base, T(l));
    for (const T& u : upper) num *= T(1) - u * bl;
    for (const T& d : lower) den *= T(1) - d * bl;
    if (den == T(0)) throw std::domain_error("basic_hypergeometric: vanishing denominator");
    term *= num / den * z;
  }
  return sum;
}

// Little q-Legendre polynomial p_k(x | r) = 2phi1(r^-k, r^{k+1}; r | r; r x).
template <class T>
T little_q_legendre(int k, const T& x, const T& r) {
  std::vector<T> upper{qpow(r, T(-k)), qpow(r, T(k + 1))};
  std::vector<T> lower{r, r};
  return basic_hypergeometric(upper, lower, r, T(r * x));
}

// Jackson integral over (0,1]: (1 - base) sum_j base^j f(base^j). Stops once `patience`
// consecutive terms fall below the threshold, so isolated small terms near x = 1 do not end it.
template <class T>
T jackson_qintegral(const std::function<T(const T&)>& f, const T& base,
                    const T& threshold = T(1e-15), long cap = 100000, int patience = 8) {
  using std::abs;
  T sum(0), x(1);
  int small = 0;
  for (long j = 0; j < cap; ++j) {
    T term = x * f(x);
    sum += term;
    small = abs(term) < threshold ? small + 1 : 0;
    if (small >= patience) return (T(1) - base) * sum;
    x *= base;
  }
  throw DivergenceError("jackson_qintegral: tail did not fall below threshold within cap");
}

// q-derivative (f(base x) - f(x)) / (base x - x).
template <class T>
T qderivative(const std::function<T(const T&)>& f, const T& base, const T& x) {
  if (x == T(0)) throw std::domain_error("qderivative: x must be nonzero");
  return (f(base * x) - f(x)) / (base * x - x);
}

// k-fold q-derivative evaluated at x.
template <class T>
T qderivative_n(const std::function<T(const T&)>& f, const T& base, const T& x, int order) {
  if (order == 0) return f(x);
  std::function<T(const T&)> inner = [&](const T& y) {
    return qderivative_n(f, base, y, order - 1);
  };
  return qderivative(inner, base, x);
}

// Rodrigues-type representation D_r^k [x^k (x; r^-1)_k] / [[k]]_r!.
template <class T>
T little_q_legendre_rodrigues(int k, const T& x, const T& r) {
  std::function<T(const T&)> g = [k, r](const T& y) {
    using std::pow;
    return T(pow(y, k)) * qpochhammer(y, T(T(1) / r), k);
  };
  return qderivative_n(g, r, x, k) / qfact_nonsym(k, r);
}

// Double-precision entry points bound to a context.
double qnum(double a, const QContext& ctx);
double qfact(int a, const QContext& ctx);
double qbinom(int a, int m, const QContext& ctx);
double qnum_nonsym(double a, const QContext& ctx);

// Partial sum of [1/2]^2 (1/[k-1/2]^2 - 1/[k+1/2]^2) over k = 1..l.
template <class T>
T telescoping_partial_sum(int l, const T& q) {
  T half = qnum(T(0.5), q);
  T sum(0);
  for (int k = 1; k <= l; ++k) {
    T a = qnum(T(k - 0.5), q), b = qnum(T(k + 0.5), q);
    sum += half * half * (T(1) / (a * a) - T(1) / (b * b));
  }
  return sum;
}

template <class T>
T telescoping_closed_form(int l, const T& q) {
  T half = qnum(T(0.5), q), top = qnum(T(l + 0.5), q);
  return T(1) - half * half / (top * top);
}

}  // namespace qflag
