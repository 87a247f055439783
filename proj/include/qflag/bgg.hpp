#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qflag/phase_ops.hpp"

namespace qflag {

// Word of generators in application order, as used by phase_word.
using Word = std::vector<std::pair<char, int>>;

// Signed sum of phase words; every term starts at the same vertex.
struct SignedWord {
  double sign = 1.0;
  Word word;
};

struct BGGArrow {
  int from = 0, to = 0;   // vertex positions
  std::string label;      // "ph(E1)", "ph(E2)^2", "-A1", ...
  std::vector<SignedWord> terms;
  std::vector<int> support;  // simple roots i with alpha_i in supp
};

struct BGGSquare {
  int source = 0, sink = 0;
  std::vector<SignedWord> terms;  // sum of both paths, signs included
};

// Six vertices {0, a1, a2, 2a1+a2, a1+2a2, 2rho} as sl_3 weights (sum 0), with Bruhat parity.
struct BGGDiagram {
  std::vector<Weight> vertices;
  std::vector<int> length;  // Bruhat length 0..3
  std::vector<BGGArrow> arrows;
  std::vector<BGGSquare> squares;

  int parity(int v) const { return length[v] % 2; }
  // Vertices of cohomological degree k, i.e. length k.
  std::vector<int> degree(int k) const;
};

const BGGDiagram& bgg_diagram();

// Square terms with every minus sign of the diagram dropped (the non-anticommuting form).
std::vector<SignedWord> unsigned_terms(const BGGSquare& sq);

// gl_3 weight in the class of `sl3` having the coordinate sum of the highest weight of rep,
// or nothing when the class does not meet the lattice of rep.
std::optional<Weight> lift(const Irrep& rep, const Weight& sl3);

// Sum of signed phase words on the ket weight space at `source` (an sl_3 weight).
MatrixXd phase_combination(const Irrep& rep, const Weight& source, const std::vector<SignedWord>& terms);

struct BlockResidual {
  int a = 0, b = 0;
  double value = 0.0;
};

// ph(E1)ph(E2)^2ph(E1) - ph(E2)ph(E1)^2ph(E2) from `start` (default -rho), per block a+b <= L.
std::vector<BlockResidual> hexagon_check(int L, const QContext& ctx,
                                         const Weight& start = {-1, 0, 1});

struct SquareDefect {
  int a = 0, b = 0;
  int square = 0;        // 1..4
  double signed_defect = 0.0;    // norm of the signed (anticommuting) sum
  double unsigned_defect = 0.0;  // norm with the minus signs dropped
  // max(|p^1_{>=l} D p^2_{>=l}|, |p^2_{>=l} D p^1_{>=l}|) by string level l = 0..levels-1
  std::vector<double> level_defects;
};

// Orthonormal basis (columns) of the strings of the i-th subalgebra through V_mu whose
// level l - |h| is at least `min_level`.
MatrixXd string_level_basis(const Irrep& rep, int i, const Weight& mu, int min_level);

std::vector<SquareDefect> normalized_defects(int L, const QContext& ctx, int levels = 5);

// Max signed defect of one square over blocks with min(a, b) >= s, s = 0..s_max.
std::vector<double> square_tail(const std::vector<SquareDefect>& rows, int square, int s_max);
// Max level defect of one square over levels >= s, s = 0..s_max.
std::vector<double> square_level_tail(const std::vector<SquareDefect>& rows, int square, int s_max);

struct SymmetryRankRow {
  int a = 0, b = 0;
  int rank = 0;
  int census = 0;
  double residual = 0.0;
};

// Rank of ph(F_i)^s ph(E_i)^s - Id on V^sigma_mu for sigma = (a, b), a + b <= L.
std::vector<SymmetryRankRow> almost_symmetry_rank(int i, int shift, const Weight& mu, int L,
                                                  const QContext& ctx);

// sum over vertices of (-1)^parity dim V^sigma at base + vertex.
long euler_characteristic(const Weight& sigma, const Weight& base = {0, 0, 0});

struct CohomologyReport {
  int a = 0, b = 0;
  std::vector<int> chain_dims;  // per degree 0..3
  std::vector<int> ranks;       // rank of d_k, k = 0..2
  std::vector<int> cohomology;  // per degree 0..3
  std::vector<int> kernel_dims;  // dim ker d_k per degree, d_3 = 0
  double complex_defect = 0.0;  // max ||d_{k+1} d_k||
  bool flagged = false;         // a singular value sits within 10x of the threshold
};

inline constexpr double kRankThreshold = 1e-8;

// Complex built from the exact U_q(n^+) intertwiners with the Serre-adjusted diagonal arrows.
CohomologyReport per_block_cohomology(int a, int b, const QContext& ctx);

// Same diagram with the phase arrows; near-kernel dimensions are reported, not asserted.
CohomologyReport normalized_cohomology(int a, int b, const QContext& ctx);

}  // namespace qflag
