#pragma once

#include <map>
#include <string>
#include <vector>

namespace qflag {

// gl_n weight (mu_1, ..., mu_n) with integer entries.
using Weight = std::vector<int>;

int pairing(const Weight& a, const Weight& b);

// alpha_i = e_i - e_{i+1}, with i counted from 1.
Weight simple_root(int n, int i);

// 2 rho = (n-1, n-3, ..., 1-n).
Weight rho_doubled(int n);

// (rho, mu) as a real number.
double rho_pairing(const Weight& mu);

// (alpha_i, mu).
int root_pairing(const Weight& mu, int i);

Weight operator+(const Weight& a, const Weight& b);
Weight operator-(const Weight& a, const Weight& b);
Weight scaled(const Weight& a, int c);

bool is_dominant(const Weight& lambda);

// Weight that stands for the sl_3 label (a, b): (a + b, b, 0).
Weight sl3_weight(int a, int b);

// Depth of lambda - mu as a sum of simple roots; -1 if mu is not below lambda.
int root_height(const Weight& lambda, const Weight& mu);

// Classical Weyl dimension of the gl_n irrep with highest weight lambda.
long weyl_dimension(const Weight& lambda);

// Product formula prod_{alpha>0} [(lambda+rho, alpha)]_q / [(rho, alpha)]_q.
double quantum_dimension_formula(const Weight& lambda, double q);

// Weight multiplicities at q = 1 from the Freudenthal recursion.
std::map<Weight, int> freudenthal_multiplicities(const Weight& lambda);

std::string to_string(const Weight& w);

}  // namespace qflag
