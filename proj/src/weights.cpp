#include "qflag/weights.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qflag/qcalc.hpp"

namespace qflag {

int pairing(const Weight& a, const Weight& b) {
  if (a.size() != b.size()) throw std::invalid_argument("pairing: rank mismatch");
  return std::inner_product(a.begin(), a.end(), b.begin(), 0);
}

Weight simple_root(int n, int i) {
  if (i < 1 || i >= n) throw std::out_of_range("simple_root: index out of range");
  Weight a(n, 0);
  a[i - 1] = 1;
  a[i] = -1;
  return a;
}

Weight rho_doubled(int n) {
  Weight r(n);
  for (int j = 0; j < n; ++j) r[j] = n - 1 - 2 * j;
  return r;
}

double rho_pairing(const Weight& mu) {
  return 0.5 * pairing(rho_doubled(static_cast<int>(mu.size())), mu);
}

int root_pairing(const Weight& mu, int i) { return mu[i - 1] - mu[i]; }

Weight operator+(const Weight& a, const Weight& b) {
  Weight c(a);
  for (size_t k = 0; k < c.size(); ++k) c[k] += b[k];
  return c;
}

Weight operator-(const Weight& a, const Weight& b) {
  Weight c(a);
  for (size_t k = 0; k < c.size(); ++k) c[k] -= b[k];
  return c;
}

Weight scaled(const Weight& a, int c) {
  Weight out(a);
  for (int& x : out) x *= c;
  return out;
}

bool is_dominant(const Weight& lambda) {
  for (size_t k = 0; k + 1 < lambda.size(); ++k)
    if (lambda[k] < lambda[k + 1]) return false;
  return true;
}

Weight sl3_weight(int a, int b) { return Weight{a + b, b, 0}; }

int root_height(const Weight& lambda, const Weight& mu) {
  int partial = 0, height = 0;
  for (size_t k = 0; k < lambda.size(); ++k) {
    partial += lambda[k] - mu[k];
    if (partial < 0) return -1;
    if (k + 1 < lambda.size()) height += partial;
  }
  return partial == 0 ? height : -1;
}

long weyl_dimension(const Weight& lambda) {
  const int n = static_cast<int>(lambda.size());
  // Exact rational product; numerator and denominator stay small for the ranks used here.
  long double num = 1, den = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      num *= (lambda[i] - lambda[j] + j - i);
      den *= (j - i);
    }
  return std::lround(static_cast<double>(num / den));
}

double quantum_dimension_formula(const Weight& lambda, double q) {
  const int n = static_cast<int>(lambda.size());
  double out = 1.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      out *= qnum<double>(lambda[i] - lambda[j] + j - i, q) / qnum<double>(j - i, q);
  return out;
}

namespace {

bool dominated_by(Weight sorted_desc, const Weight& lambda) {
  long a = 0, b = 0;
  for (size_t k = 0; k < lambda.size(); ++k) {
    a += sorted_desc[k];
    b += lambda[k];
    if (a > b) return false;
  }
  return a == b;
}

Weight sort_desc(Weight w) {
  std::sort(w.begin(), w.end(), std::greater<int>());
  return w;
}

// |nu + rho|^2 scaled by 4 to stay integral.
long shifted_norm4(const Weight& nu) {
  Weight r = rho_doubled(static_cast<int>(nu.size()));
  long s = 0;
  for (size_t k = 0; k < nu.size(); ++k) {
    long v = 2L * nu[k] + r[k];
    s += v * v;
  }
  return s;
}

}  // namespace

std::map<Weight, int> freudenthal_multiplicities(const Weight& lambda) {
  if (!is_dominant(lambda)) throw std::invalid_argument("freudenthal: weight not dominant");
  const int n = static_cast<int>(lambda.size());
  std::map<Weight, long> memo;  // keyed by dominant representative
  const long top = shifted_norm4(lambda);

  std::function<long(const Weight&)> mult = [&](const Weight& nu) -> long {
    Weight d = sort_desc(nu);
    if (!dominated_by(d, lambda)) return 0;
    if (d == lambda) return 1;
    auto it = memo.find(d);
    if (it != memo.end()) return it->second;
    long acc = 0;  // 2 * sum_{alpha>0} sum_{k>=1} (d + k alpha, alpha) m(d + k alpha), times 4
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        for (int k = 1;; ++k) {
          Weight v = d;
          v[i] += k;
          v[j] -= k;
          if (!dominated_by(sort_desc(v), lambda)) break;
          acc += 2L * (v[i] - v[j]) * mult(v);
        }
      }
    long denom4 = top - shifted_norm4(d);
    long value = denom4 > 0 ? (4 * acc) / denom4 : 0;
    if (denom4 > 0 && (4 * acc) % denom4 != 0)
      throw std::logic_error("freudenthal: non-integral multiplicity");
    memo[d] = value;
    return value;
  };

  // Enumerate dominant weights below lambda, then spread over permutations.
  std::map<Weight, int> out;
  const int total = std::accumulate(lambda.begin(), lambda.end(), 0);
  Weight cur(n);
  std::function<void(int, int, int)> rec = [&](int pos, int remaining, int upper) {
    if (pos == n - 1) {
      if (remaining > upper || remaining < lambda[n - 1]) return;
      cur[pos] = remaining;
      if (!dominated_by(cur, lambda)) return;
      long m = mult(cur);
      if (m <= 0) return;
      Weight perm = cur;
      std::sort(perm.begin(), perm.end());
      do out[perm] = static_cast<int>(m);
      while (std::next_permutation(perm.begin(), perm.end()));
      return;
    }
    for (int v = std::min(upper, lambda[0]); v >= lambda[n - 1]; --v) {
      cur[pos] = v;
      rec(pos + 1, remaining - v, v);
    }
  };
  rec(0, total, lambda[0]);
  return out;
}

std::string to_string(const Weight& w) {
  std::ostringstream os;
  os << "(";
  for (size_t k = 0; k < w.size(); ++k) os << (k ? "," : "") << w[k];
  os << ")";
  return os.str();
}

}  // namespace qflag
