#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <map>
#include <string>
#include <vector>

#include "qflag/qcalc.hpp"
#include "qflag/weights.hpp"

namespace qflag {

using Sparse = Eigen::SparseMatrix<double>;
using Eigen::MatrixXd;
using Eigen::VectorXd;

// Triangular tableau; rows[0] is the top row (length n), rows[n-1] has length 1.
struct GTPattern {
  std::vector<std::vector<int>> rows;

  int rank() const { return static_cast<int>(rows.size()); }
  // Entry m_{k,j} with the row index k counted from the bottom (1..n) and j from 1.
  int entry(int k, int j) const { return rows[rank() - k][j - 1]; }
  int& entry(int k, int j) { return rows[rank() - k][j - 1]; }
  int row_sum(int k) const;
  Weight weight() const;
  bool interlaces() const;

  auto operator<=>(const GTPattern&) const = default;
};

// Finite-dimensional type-1 irrep of U_q(gl_n) in an orthonormal basis.
// K_i acts by q^{(alpha_i, mu)/2} and G_j by q^{mu_j/2} on weight-mu vectors.
struct Irrep {
  int n = 0;
  Weight highest;
  double q = 0.5;
  std::vector<Weight> weights;       // weight of each basis vector
  std::vector<GTPattern> labels;     // empty unless the basis is a GT basis
  std::vector<Sparse> E, F;          // n-1 generators each
  std::string construction;          // "gram" or "gelfand-tsetlin"

  int dim() const { return static_cast<int>(weights.size()); }

  // Must be called after the basis is filled in.
  void index_weights();

  const std::vector<int>& indices(const Weight& w) const;
  bool has_weight(const Weight& w) const { return weight_ids_.count(w) > 0; }
  const std::vector<Weight>& distinct_weights() const { return distinct_; }

  // Dense block of X between the weight spaces `from` and `to` (rows: to).
  MatrixXd block(const Sparse& X, const Weight& from, const Weight& to) const;

  // Diagonal of the Cartan element with q-exponent (lambda, mu)/2.
  VectorXd k_diag(const std::vector<double>& lambda) const;
  VectorXd k_diag_root(int i) const;

 private:
  std::map<Weight, int> weight_ids_;
  std::vector<Weight> distinct_;
  std::vector<std::vector<int>> members_;
  std::vector<int> id_of_;
  std::vector<int> pos_of_;
};

struct BuildOptions {
  int dim_cap = 5000;
  double null_threshold = 1e-9;
};

// Gram (Shapovalov) construction from the defining relations.
Irrep build_irrep(const Weight& lambda, const QContext& ctx, const BuildOptions& opt = {});

// Trace of q^{(2 rho, nu)}; agrees with the q-Weyl product formula.
double quantum_dimension(const Irrep& rep);

// Diagonal of K_lambda, acting by q^{(lambda, mu)/2}.
VectorXd element_K_lambda(const Irrep& rep, const std::vector<double>& lambda);

struct RelationReport {
  double max_residual = 0.0;
  std::vector<std::pair<std::string, double>> entries;
};

// Frobenius residuals of the defining relations, unitarity and weight bookkeeping.
RelationReport relation_residuals(const Irrep& rep);

// Generators of the tensor product via the coproduct, acting on index a*d2 + b.
struct OperatorSet {
  std::vector<Sparse> E, F;
  std::vector<Weight> weights;
};
OperatorSet tensor_operators(const Irrep& a, const Irrep& b);
OperatorSet operators_of(const Irrep& rep);

// Unique intertwiner U with U src(F_w) src_hw = target(F_w) tgt_hw for all words w.
MatrixXd intertwiner_from_hw(const Irrep& src, const std::vector<Sparse>& target_F,
                             const VectorXd& src_hw, const VectorXd& tgt_hw);

// Basis index of the highest-weight vector (unique for an irrep).
int highest_weight_index(const Irrep& rep);

Sparse kron(const Sparse& a, const Sparse& b);
Sparse diagonal_sparse(const VectorXd& d);

}  // namespace qflag
