#pragma once

#include <vector>

#include "qflag/lower_basis.hpp"

namespace qflag {

// <lower (k, -k+1; 0) | ph(E_1) | invariant vector> on V^(m,0,-m) for k = 1..m,
// computed in extended precision. ph(E_1) uses the SVD with a relative zero
// threshold of `rel_threshold`.
std::vector<wide> phase_column(int m, const wide& q, const wide& rel_threshold = wide(1e-60));

// Printed limit (-1)^k [k]/[2k]^{1/2} ([k-1/2]^{-1} - [k+1/2]^{-1}).
wide phase_limit(int k, const wide& q);

struct ConvergenceRow {
  int m = 0;
  double value = 0.0;
  double limit = 0.0;
  double abs_error = 0.0;
};

std::vector<ConvergenceRow> phase_asymptotics_check(int k, const std::vector<int>& m_values, double q);

// ||p_{S_l} ph(E_1) p_triv||^2 (first l lower components) against 1 - [1/2]^2/[l+1/2]^2.
std::vector<ConvergenceRow> telescoping_norm_check(int l, const std::vector<int>& m_values, double q);

}  // namespace qflag
