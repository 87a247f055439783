#pragma once

#include <functional>
#include <vector>

#include "qflag/uqgl.hpp"

namespace qflag {

// Operator between two weight spaces of one irrep, in weight-space coordinates.
struct WeightBlockOp {
  Weight source, target;
  MatrixXd matrix;
};

// X_i restricted to the weight space `source` (X = 'E' or 'F').
WeightBlockOp block_op(const Irrep& rep, char generator, int i, const Weight& source);

// Partial isometry of the polar decomposition; singular values at or below
// rel_threshold * sigma_max count as zero.
MatrixXd phase(const MatrixXd& op, double rel_threshold = 1e-10);
WeightBlockOp phase(const WeightBlockOp& op, double rel_threshold = 1e-10);

// Irreducible U_q(sl_2)-string of the i-th subalgebra meeting the pair (mu, mu + alpha_i).
struct SL2String {
  double spin = 0.0;
  VectorXd at_source;  // unit vector in V_mu coordinates, empty if the string misses mu
  VectorXd at_target;  // unit vector in V_{mu+alpha_i} coordinates, empty if it misses mu+alpha_i
  double singular_value = 0.0;  // |E_i| on the string at mu
};

std::vector<SL2String> sl2_string_decomposition(const Irrep& rep, int i, const Weight& mu);

// Phase of E_i on V_mu assembled from the strings.
MatrixXd string_phase(const Irrep& rep, int i, const Weight& mu);

// D_i = [[0, F_i], [E_i, 0]] on V_mu (+) V_{mu+alpha_i}.
MatrixXd d_operator(const Irrep& rep, int i, const Weight& mu);

// psi(D_i) on V_mu (+) V_{mu+alpha_i}, built from the string decomposition.
MatrixXd functional_calculus(const std::function<double(double)>& psi, const Irrep& rep, int i,
                             const Weight& mu);

// ph(F_i)^s ph(E_i)^s - Id on V_mu against minus the projection onto strings with spin < h + s,
// h = (alpha_i, mu)/2.
struct AlmostSymmetry {
  double residual = 0.0;  // || (ph(F)^s ph(E)^s - Id) + P ||
  int numerical_rank = 0;  // rank of ph(F)^s ph(E)^s - Id
  int census = 0;          // number of strings through mu with spin < h + s
};

AlmostSymmetry almost_symmetry(const Irrep& rep, int i, const Weight& mu, int shift);

// Product of phases ph(X_{i_r}) ... ph(X_{i_1}) applied starting at `source`;
// word entries are ('E'|'F', i) in application order.
MatrixXd phase_word(const Irrep& rep, const Weight& source,
                    const std::vector<std::pair<char, int>>& word, Weight* landed = nullptr);

}  // namespace qflag
