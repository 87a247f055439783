#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qflag/uqgl.hpp"

namespace qflag {

// Highest weights are kept with last entry 0; weights are compared modulo (1, ..., 1).
Weight normalized(const Weight& lambda);
bool same_class(const Weight& a, const Weight& b);
int shell_of(const Weight& lambda);

// Dominant highest weights with last entry 0 and shell lambda_1 - lambda_n <= L.
std::vector<Weight> dominant_shell(int n, int L);

// One K_q-type inside L^2(E_mu): coefficient matrices (bra index, ket index) with the ket
// restricted to the mu-weight space.
struct HarmonicBlock {
  Weight sigma;
  std::shared_ptr<const Irrep> rep;
  std::vector<int> kets;  // basis indices of (V^sigma)_mu
  int offset = 0;
  double qdim = 1.0;
  VectorXd bra_metric;  // Schur weights on the bra leg, or a single 1 without the bra leg

  int bra_dim() const { return static_cast<int>(bra_metric.size()); }
  int size() const { return bra_dim() * static_cast<int>(kets.size()); }
  int index(int bra, int ket_pos) const {
    return offset + bra * static_cast<int>(kets.size()) + ket_pos;
  }
};

struct TruncatedSpace {
  int n = 3;
  Weight mu;
  int shell = 0;
  bool bra_leg = true;
  std::vector<HarmonicBlock> blocks;
  int dim = 0;

  int find(const Weight& sigma) const;  // block position, -1 if absent
  VectorXd metric() const;
  // Flat indices of the blocks accepted by the predicate on sigma.
  template <class Pred>
  std::vector<int> indices_where(Pred&& keep) const {
    std::vector<int> out;
    for (const auto& b : blocks)
      if (keep(b.sigma))
        for (int r = 0; r < b.size(); ++r) out.push_back(b.offset + r);
    return out;
  }
  std::vector<int> indices_up_to(int max_shell) const;
};

// Bra metric q^{2 s (rho, wt_a)} / dim_q(sigma); s is fixed by the unitarity of the
// fundamental corepresentation under left multiplication.
inline constexpr int kBraMetricSign = 1;

TruncatedSpace make_space(int n, const Weight& mu, int shell, const QContext& ctx,
                          bool bra_leg = true);

// f(X) = sum_{a,b} c(a, b) pi_tau(X)_{ab} in the GT basis of shared_gt_irrep(tau).
struct MatrixCoefficient {
  Weight tau;
  MatrixXd c;
};
using Element = std::vector<MatrixCoefficient>;

MatrixCoefficient unit_coefficient(const Weight& tau, int a, int b, const QContext& ctx);
Element one(int n);

// f g = <g' (x) f' | . | g (x) f>, decomposed into irreducible blocks.
Element product(const Element& f, const Element& g, const QContext& ctx);

// S(f) as a coefficient of the dual type, S(f)(X) = f(S_hat^{-1}(X)).
MatrixCoefficient antipode(const MatrixCoefficient& f, const QContext& ctx);
Element antipode(const Element& f, const QContext& ctx);

// K_{t rho} acting on the ket leg, i.e. ket b scaled by q^{t (rho, wt_b) / 2}.
MatrixCoefficient twist_ket(const MatrixCoefficient& f, double t, const QContext& ctx);

// Evaluation f(X) for X a generator ('E', 'F' with index i, or 'K' with K_i).
double evaluate(const MatrixCoefficient& f, char generator, int i, const QContext& ctx);

// Right regular action of E_i, F_i or K_i on the ket leg.
Sparse right_action_op(char generator, int i, const TruncatedSpace& src, const TruncatedSpace& tgt);

// ph(E_i) or ph(F_i) on the ket leg, blockwise.
Sparse right_phase_op(char generator, int i, const TruncatedSpace& src, const TruncatedSpace& tgt);

struct BlockOperator {
  Sparse matrix;
  std::vector<Weight> truncated_sources;  // source types with a target beyond the cutoff
};

// Left multiplication g -> f g.
BlockOperator mult_operator(const Element& f, const TruncatedSpace& src, const TruncatedSpace& tgt,
                            const QContext& ctx);
// Right multiplication g -> g h.
BlockOperator right_mult_operator(const Element& h, const TruncatedSpace& src,
                                  const TruncatedSpace& tgt, const QContext& ctx);

// Exponent of the unitary twist, selected by yd_tiebreak.
inline constexpr double kUnitaryTwist = -4.0;

struct YDOptions {
  double k_power = kUnitaryTwist;  // exponent t of K_{t rho} applied to S(a_(2))
};

// pi_{mu,0}(a) g = a_(1) g (K_{t rho} |> S(a_(2))), from `src` into the same bundle.
BlockOperator yd_action(const Element& a, const TruncatedSpace& src, const QContext& ctx,
                        const YDOptions& opt = {});

// max over (i, j) of || sum_k pi(u_ki)^* pi(u_kj) - delta_ij || on blocks of shell <= L - 2.
double yd_unitarity_defect(const Weight& tau, int n, const Weight& mu, int L, const QContext& ctx,
                           const YDOptions& opt = {});

struct TwistCandidate {
  std::string label;
  double k_power = 0.0;
  double defect = 0.0;
};

// Unitarity defects of the candidate twists K^2_rho, K_rho, K_{4 rho}, K_{-4 rho}; the
// chosen power is the one with the smallest defect.
struct YDTiebreak {
  std::vector<TwistCandidate> candidates;
  double chosen_power = kUnitaryTwist;
  std::string note;
};
YDTiebreak yd_tiebreak(int n, const Weight& mu, int L, const QContext& ctx);

// || pi_{mu+nu}(u_ij) M_f - sum_{k,l} M_{u_ik f S(u_kl)} pi_mu(u_lj) || on shells <= L - 3.
double yd_covariance_residual(const Weight& tau, int i, int j, const Element& f, const Weight& mu,
                              int L, const QContext& ctx);

// max_{a,b} || pi_{rho}(u_ab) ph(E_i) - ph(E_i) pi_{rho - alpha_i}(u_ab) || on shells <= L - 2.
double intertwining_residual(int i, const Weight& tau, int L, const QContext& ctx);

// Operator norm of a compression, in the Schur metric.
double metric_norm(const MatrixXd& op, const VectorXd& src_metric, const VectorXd& tgt_metric);

struct DefectRow {
  Weight sigma;
  int shell = 0;
  int level = -1;  // l - |h| of the K^i-string through the source kets; -1 for a whole block
  double defect = 0.0;
};

// Whole-block compressions and their refinement by the K^i-type (string spin) of the
// source ket, which is the filtration defining J_i.
struct DefectTable {
  std::vector<DefectRow> blocks;
  std::vector<DefectRow> strings;
};

// [ph(E_i), M_f] restricted to source types of shell <= L - 1.
DefectTable commutator_defects(int i, const Element& f, int n, const Weight& mu, int L,
                               const QContext& ctx);

// pi_{mu+alpha_i}(a) ph(E_i) - ph(E_i) pi_mu(a) restricted to source types of shell <= L - 2.
DefectTable equivariance_defects(int i, const Element& a, int n, const Weight& mu, int L,
                                 const QContext& ctx);

// Max block defect over sl_3 types (a, b) with min(a, b) >= s, s = 0..s_max.
std::vector<double> tail_maxima(const std::vector<DefectRow>& rows, int s_max);

// Max string defect over levels >= s, s = 0..s_max.
std::vector<double> level_tail_maxima(const std::vector<DefectRow>& rows, int s_max);

// True when the sequence is nonincreasing (up to `slack`) and last < ratio * first.
bool decays(const std::vector<double>& tail, double ratio, double slack = 1e-12);

}  // namespace qflag
