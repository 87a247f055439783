#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "qflag/gtbasis.hpp"
#include "qflag/wide.hpp"

namespace qflag {

// Lower GT basis of an irrep: the upper GT basis of the dual-reversed highest weight
// (-lambda_n, ..., -lambda_1), transported through the order-reversing automorphism.
struct BasisChange {
  std::vector<GTPattern> lower_labels;
  MatrixXd upper_to_lower;  // entry (r, c) = <lower r | rep basis vector c>
  std::string phase_convention;
};

BasisChange build_lower_basis(const Irrep& rep, const QContext& ctx);

// Index of the lower pattern whose rows below the top are all zero, or -1.
int lower_invariant_index(const BasisChange& bc);

// n = 3, highest weight (m, 0, -m): lower vectors of the weight-0 and weight-alpha_1
// spaces in upper coordinates, computed in extended precision.
struct Class1Blocks {
  int m = 0;
  std::vector<GTPattern> zero_upper;    // middle row (j, -j), bottom 0; j = 0..m
  std::vector<GTPattern> alpha1_upper;  // middle row (j, -j), bottom 1; j = 1..m
  WideMatrix zero_lower;                // column k: lower (k, -k; 0), k = 0..m
  WideMatrix alpha1_lower;              // column k-1: lower (k, -k+1; 0), k = 1..m
  WideMatrix e1;                        // E_1 from weight 0 to weight alpha_1 (upper coordinates)
};

Class1Blocks class1_lower_blocks(int m, const wide& q);

MatrixXd to_double(const WideMatrix& m);

// Wide-precision counterparts used by the asymptotic checks.
wide wide_qnum(double a, const wide& q);

}  // namespace qflag
