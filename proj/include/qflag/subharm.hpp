#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "qflag/gtbasis.hpp"
#include "qflag/uqgl.hpp"

namespace qflag {

// Block subgroup generated by {E_i, F_i : i in roots} together with the torus.
struct SubgroupSpec {
  enum class Side { upper, lower, general };
  std::vector<int> roots;  // simple-root indices, counted from 1
  Side side = Side::general;
};

struct IsotypicComponent {
  Weight highest;     // weight of the subgroup highest-weight vector
  MatrixXd isometry;  // orthonormal columns spanning one irreducible copy
};

struct IsotypicalDecomposition {
  SubgroupSpec subgroup;
  int dim = 0;
  std::vector<IsotypicComponent> components;

  // Orthogonal projection onto all copies with the given highest weight.
  MatrixXd projection(const Weight& highest) const;
};

struct DecomposeOptions {
  double null_threshold = 1e-9;
};

// Orthonormal basis of the joint kernel of {E_i : i in roots}, per weight.
std::vector<std::pair<Weight, MatrixXd>> highest_weight_vectors(const OperatorSet& ops,
                                                                const std::vector<int>& roots,
                                                                double null_threshold = 1e-9);

IsotypicalDecomposition decompose(const OperatorSet& ops, const SubgroupSpec& sub,
                                  const DecomposeOptions& opt = {});
IsotypicalDecomposition decompose(const Irrep& rep, const SubgroupSpec& sub,
                                  const DecomposeOptions& opt = {});

// Shared, immutable GT irreps keyed by (lambda, q); safe for concurrent use.
std::shared_ptr<const Irrep> shared_gt_irrep(const Weight& lambda, const QContext& ctx);

// Source of irreps on a miss of the in-memory cache; an empty loader means gt_irrep.
using IrrepLoader = std::function<std::shared_ptr<const Irrep>(const Weight&, const QContext&)>;
void set_irrep_loader(IrrepLoader loader);

struct TensorComponent {
  Weight highest;
  MatrixXd isometry;  // from the GT basis of shared_gt_irrep(highest) into V1 (x) V2
};

// Decomposition of rep1 (x) rep2 (tensor index a*d2 + b, coproduct E (x) K + K^-1 (x) E).
std::vector<TensorComponent> tensor_decompose(const Irrep& rep1, const Irrep& rep2,
                                              const QContext& ctx, int dim_cap = 20000);

// Invariant vector of the lower block {2..n-1} in V^(m,0,..,0,-m), computed as the
// joint kernel on the weight-0 space, in extended precision. Indexed like
// patterns_of_weight(lambda, 0); sign fixed so the all-zero middle tableau has sign (-1)^m.
std::vector<double> invariant_vector_numeric(int m, int n, double q);

struct OrthotypicalityRow {
  int m = 0;
  double norm = 0.0;     // from the numerically computed invariant vector
  double formula = 0.0;  // from the closed-form coefficients
  double bound = 0.0;    // displayed coefficient bound
};

// ||p_{tau1} p_triv|| on V^(m,0,..,0,-m), where tau1 is the upper U_q(n-1) type whose
// highest weight is `tau_row` (length n-1).
std::vector<OrthotypicalityRow> orthotypicality_scan(int n, const std::vector<int>& tau_row,
                                                     const std::vector<int>& m_values,
                                                     const QContext& ctx);

// Least-squares exponent p with values ~ C q^{p m}.
double fit_decay_exponent(const std::vector<int>& m, const std::vector<double>& values, double q);

}  // namespace qflag
