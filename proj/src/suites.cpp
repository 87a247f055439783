#include "qflag/suites.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qflag/asymptotics.hpp"
#include "qflag/bgg.hpp"
#include "qflag/flagblocks.hpp"
#include "qflag/subharm.hpp"

namespace qflag {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%.3g", i ? " " : "", v[i]);
    out += buf;
  }
  return out;
}

SuiteReport start(std::string name, const RunConfig& cfg) {
  SuiteReport r;
  r.suite = std::move(name);
  r.q = cfg.q;
  return r;
}

double pick(double override_value, double fallback) { return override_value > 0 ? override_value : fallback; }
int pick(int override_value, int fallback) { return override_value > 0 ? override_value : fallback; }

void add(SuiteReport& r, std::string name, std::string anchor, double value, double bound) {
  r.checks.push_back({std::move(name), std::move(anchor), value, bound, value < bound});
}

// A table that vanishes to roundoff passes; otherwise the tail must decay by `ratio`, and the
// deepest tail has to contain at least one block.
void tail_check(SuiteReport& r, std::string name, std::string anchor, const std::vector<double>& tail, int deep_blocks,
                double ratio) {
  const bool vanishes = tail.front() < 1e-10;
  const double value = vanishes ? 0.0 : tail.back() / tail.front();
  r.checks.push_back({std::move(name), std::move(anchor), value, ratio,
                      deep_blocks > 0 && (vanishes || decays(tail, ratio))});
}

std::vector<int> range(int from, int to) {
  std::vector<int> out;
  for (int v = from; v <= to; ++v) out.push_back(v);
  return out;
}

double to_d(const wide& w) { return static_cast<double>(w); }

// Sorted singular values of the E_i weight blocks, the E_1 E_2 / E_2 E_1 products, and the
// eigenvalues of F_1 E_1 + 2 F_2 E_2 per weight space; unchanged by orthogonal changes of
// basis inside weight spaces. Compared relative to the size of each invariant.
std::map<std::string, VectorXd> gauge_invariants(const Irrep& rep) {
  std::map<std::string, VectorXd> out;
  auto sv = [](const MatrixXd& m) {
    if (m.size() == 0) return VectorXd();
    return VectorXd(Eigen::JacobiSVD<MatrixXd>(m).singularValues());
  };
  for (const Weight& mu : rep.distinct_weights()) {
    const std::string key = to_string(mu);
    for (int i = 1; i < rep.n; ++i) out["E" + std::to_string(i) + key] = sv(block_op(rep, 'E', i, mu).matrix);
    if (rep.n >= 3) {
      const Weight up1 = mu + simple_root(rep.n, 1), up2 = mu + simple_root(rep.n, 2);
      const Weight top = up1 + simple_root(rep.n, 2);
      out["E1E2" + key] = sv(rep.block(rep.E[0], up2, top) * rep.block(rep.E[1], mu, up2));
      out["E2E1" + key] = sv(rep.block(rep.E[1], up1, top) * rep.block(rep.E[0], mu, up1));
      MatrixXd h = MatrixXd::Zero(rep.indices(mu).size(), rep.indices(mu).size());
      for (int i = 1; i < rep.n; ++i) {
        MatrixXd e = block_op(rep, 'E', i, mu).matrix;
        h += i * e.transpose() * e;
      }
      out["H" + key] = Eigen::SelfAdjointEigenSolver<MatrixXd>(h).eigenvalues();
    }
  }
  return out;
}

double invariant_distance(const Irrep& a, const Irrep& b) {
  auto ia = gauge_invariants(a), ib = gauge_invariants(b);
  if (ia.size() != ib.size()) return INFINITY;
  double worst = 0.0;
  for (const auto& [k, v] : ia) {
    auto it = ib.find(k);
    if (it == ib.end() || it->second.size() != v.size()) return INFINITY;
    VectorXd x = v, y = it->second;
    std::sort(x.data(), x.data() + x.size());
    std::sort(y.data(), y.data() + y.size());
    if (x.size()) worst = std::max(worst, (x - y).cwiseAbs().maxCoeff() / std::max(1.0, x.cwiseAbs().maxCoeff()));
  }
  return worst;
}

SuiteReport qcalc_identities(const RunConfig& cfg) {
  SuiteReport r = start("qcalc-identities", cfg);
  const double tol = pick(cfg.tol, 1e-10);
  const wide q(cfg.q), r2 = q * q;
  double tele = 0.0;
  for (int l = 1; l <= 20; ++l)
    tele = std::max(tele, to_d(abs(telescoping_partial_sum(l, q) - telescoping_closed_form(l, q))));
  add(r, "telescoping partial sums l<=20", "sum_k [1/2]^2([k-1/2]^-2 - [k+1/2]^-2) = 1 - [1/2]^2/[l+1/2]^2",
      tele, tol);
  double rod = 0.0;
  for (int k = 0; k <= 10; ++k)
    for (wide x : {wide(0.3), wide(0.7), r2, r2 * r2 * r2})
      rod = std::max(rod, to_d(abs(little_q_legendre_rodrigues(k, x, r2) - little_q_legendre(k, x, r2))));
  add(r, "Rodrigues form k<=10", "p_k(x|q^2) = D^k[x^k (x; q^-2)_k] / [[k]]!", rod, tol);
  for (int k = 0; k <= 10; ++k) {
    std::function<wide(const wide&)> f = [&](const wide& x) { return little_q_legendre(k, x, r2) / sqrt(x); };
    const wide lhs = jackson_qintegral(f, r2, wide(1e-40), 1000000);
    const wide rhs = sqrt(q) / qnum(wide(k + 0.5), q);
    add(r, "q-integral k=" + std::to_string(k), "int_0^1 x^-1/2 p_k(x|q^2) d_{q^2}x = q^1/2 [(2k+1)/2]^-1",
        to_d(abs(lhs - rhs)), tol);
  }
  return r;
}

SuiteReport representations(const RunConfig& cfg) {
  SuiteReport r = start("representations", cfg);
  const QContext ctx(cfg.q);
  const int L = pick(cfg.shell, 8);
  double rel = 0.0, rel_gram = 0.0;
  int mult_bad = 0, blocks = 0;
  auto mult_ok = [](const Irrep& rep) {
    const auto fm = freudenthal_multiplicities(rep.highest);
    long total = 0;
    for (const auto& [w, c] : fm) {
      if (static_cast<int>(rep.indices(w).size()) != c) return false;
      total += c;
    }
    return total == rep.dim();
  };
  for (int a = 0; a <= L; ++a)
    for (int b = 0; a + b <= L; ++b) {
      ++blocks;
      auto g = shared_gt_irrep(sl3_weight(a, b), ctx);
      Irrep gram = build_irrep(sl3_weight(a, b), ctx);
      rel = std::max(rel, relation_residuals(*g).max_residual / g->dim());
      rel_gram = std::max(rel_gram, relation_residuals(gram).max_residual / gram.dim());
      mult_bad += !mult_ok(*g) + !mult_ok(gram);
    }
  const double tol = pick(cfg.tol, 1e-9);
  add(r, "relations n=3 GT a+b<=" + std::to_string(L), "defining relations, residual / dim", rel, tol);
  add(r, "relations n=3 Gram a+b<=" + std::to_string(L), "defining relations, residual / dim", rel_gram, tol);
  double rel4 = 0.0;
  for (int m = 1; m <= 4; ++m) {
    Irrep c = class1_generator_matrices(m, 4, ctx);
    rel4 = std::max(rel4, relation_residuals(c).max_residual / c.dim());
    mult_bad += !mult_ok(c);
  }
  add(r, "relations n=4 class-1 m<=4", "defining relations, residual / dim", rel4, tol);
  r.checks.push_back({"weight multiplicities", "dim V_mu equals the Freudenthal multiplicity", double(mult_bad), 0.0,
                      mult_bad == 0});
  r.notes.push_back("blocks checked: " + std::to_string(blocks));
  return r;
}

SuiteReport class1_golden(const RunConfig& cfg) {
  SuiteReport r = start("class1-golden", cfg);
  const QContext ctx(cfg.q);
  const double tol = pick(cfg.tol, 1e-9);
  for (int m = 1; m <= pick(cfg.m, 6); ++m) {
    Irrep c = class1_generator_matrices(m, 3, ctx);
    Irrep g = build_irrep({m, 0, -m}, ctx);
    add(r, "m=" + std::to_string(m), "class-1 matrices agree with the Gram construction up to gauge",
        invariant_distance(c, g), tol);
  }
  return r;
}

SuiteReport gt_change_of_basis(const RunConfig& cfg) {
  SuiteReport r = start("gt-change-of-basis", cfg);
  const QContext ctx(cfg.q);
  const double tol = pick(cfg.tol, 1e-10);
  const wide q(cfg.q);
  for (int m = 1; m <= 12; ++m) {
    Class1Blocks cb = class1_lower_blocks(m, q);
    wide err(0);
    for (int j = 0; j <= m; ++j) {
      const wide expect = wide((j + m) % 2 ? -1 : 1) * sqrt(qnum(wide(2 * j + 1), q)) / qnum(wide(m + 1), q);
      err = std::max(err, wide(abs(cb.zero_lower(j, 0) - expect)));
    }
    add(r, "trivial overlaps m=" + std::to_string(m),
        "<upper (j,-j;0) | lower trivial> = (-1)^{j+m} [2j+1]^1/2 / [m+1]", to_d(err), tol);
  }
  for (int n : {3, 4})
    for (int m = 1; m <= (n == 3 ? 8 : 5); ++m) {
      Weight top(n, 0);
      top.front() = m;
      top.back() = -m;
      const auto zero = patterns_of_weight(top, Weight(n, 0));
      const auto numeric = invariant_vector_numeric(m, n, cfg.q);
      std::map<GTPattern, double> closed;
      for (const auto& [middle, c] : invariant_vector_coefficients(m, n, ctx))
        closed[class1_zero_weight_pattern(m, middle)] = c;
      double err = 0.0;
      for (size_t a = 0; a < zero.size(); ++a) {
        auto it = closed.find(zero[a]);
        err = std::max(err, std::fabs(numeric[a] - (it == closed.end() ? 0.0 : it->second)));
      }
      add(r, "invariant vector n=" + std::to_string(n) + " m=" + std::to_string(m),
          "closed-form invariant-vector coefficients", err, tol);
    }
  return r;
}

SuiteReport racah(const RunConfig& cfg) {
  SuiteReport r = start("racah", cfg);
  const wide q(cfg.q);
  const double tol = pick(cfg.tol, 1e-9);
  for (int m = 1; m <= pick(cfg.m, 10); ++m) {
    Class1Blocks cb = class1_lower_blocks(m, q);
    wide err(0), rec(0);
    for (int j = 0; j <= m; ++j)
      for (int k = 0; k <= m; ++k) {
        const wide formula = racah_overlap(k, j, m, q) * sqrt(qnum(wide(2 * j + 1), q) * qnum(wide(2 * k + 1), q));
        err = std::max(err, wide(abs(cb.zero_lower(j, k) - formula)));
        rec = std::max(rec, recurrence_residual(k, j, m, q, [&](int kk, int jj) { return racah_overlap(kk, jj, m, q); }));
      }
    add(r, "4phi3 overlaps m=" + std::to_string(m), "<y_k|x_j> as a terminating 4phi3", to_d(err), tol);
    add(r, "recurrence m=" + std::to_string(m), "three-term recurrence in k", to_d(rec), tol);
  }
  return r;
}

SuiteReport phase_asymptotics(const RunConfig& cfg) {
  SuiteReport r = start("phase-asymptotics", cfg);
  const double tol = pick(cfg.tol, 1e-6);
  const int m_max = cfg.m_max;
  std::vector<int> ms;
  for (int m = m_max / 2; m <= m_max; m += std::max(1, m_max / 8)) ms.push_back(m);
  if (ms.back() != m_max) ms.push_back(m_max);
  const auto ks = cfg.k_values.empty() ? range(1, 5) : cfg.k_values;
  for (int k : ks) {
    auto rows = phase_asymptotics_check(k, ms, cfg.q);
    add(r, "k=" + std::to_string(k) + " error at m=" + std::to_string(m_max),
        "<lower (k,-k+1;0)| ph(E_1) |invariant> -> (-1)^k [k][2k]^-1/2 ([k-1/2]^-1 - [k+1/2]^-1)",
        rows.back().abs_error, tol);
    std::vector<double> errs, mags;
    for (const auto& row : rows) {
      errs.push_back(row.abs_error);
      mags.push_back(std::fabs(std::fabs(row.value) - std::fabs(row.limit)));
    }
    const double p = fit_decay_exponent(ms, errs, cfg.q);
    // exponent p in error ~ q^{p m}; at least half the nominal rate
    r.checks.push_back({"k=" + std::to_string(k) + " decay exponent", "log-error slope / log q >= 1/2", p, 0.5,
                        p >= 0.5});
    r.notes.push_back("k=" + std::to_string(k) + " value " + num(rows.back().value) + " limit " +
                      num(rows.back().limit) + " | magnitude error " + num(mags.back()) + " exponent " +
                      num(fit_decay_exponent(ms, mags, cfg.q)));
  }
  return r;
}

SuiteReport telescoping(const RunConfig& cfg) {
  SuiteReport r = start("telescoping", cfg);
  const double tol = pick(cfg.tol, 1e-6);
  const int top = cfg.l > 0 ? cfg.l : 10;
  for (int l = cfg.l > 0 ? cfg.l : 1; l <= top; ++l) {
    auto rows = telescoping_norm_check(l, {cfg.m_max}, cfg.q);
    add(r, "l=" + std::to_string(l), "||p_{S_l} ph(E_1) p_triv||^2 -> 1 - [1/2]^2/[l+1/2]^2", rows.back().abs_error,
        tol);
  }
  return r;
}

SuiteReport orthotypicality(const RunConfig& cfg) {
  SuiteReport r = start("orthotypicality", cfg);
  const QContext ctx(cfg.q);
  const double tol = pick(cfg.tol, 1e-10);
  const auto ms = range(1, cfg.m_max);
  for (int t = 0; t <= 2; ++t) {
    std::vector<int> tau(cfg.n - 1, 0);
    tau.front() = t;
    tau.back() = -t;
    auto rows = orthotypicality_scan(cfg.n, tau, ms, ctx);
    double formula = 0.0, excess = -INFINITY, rise = -INFINITY;
    for (size_t i = 0; i < rows.size(); ++i) {
      formula = std::max(formula, std::fabs(rows[i].norm - rows[i].formula));
      excess = std::max(excess, rows[i].norm - rows[i].bound);
      if (i > 0 && rows[i].m >= std::max(2, t + 1)) rise = std::max(rise, rows[i].norm - rows[i - 1].norm);
    }
    const std::string label = "tau=" + to_string(tau);
    add(r, label + " closed form", "||p_tau p_triv|| from the closed-form coefficients", formula, tol);
    r.checks.push_back({label + " bound", "||p_tau p_triv|| <= displayed coefficient bound", excess, 1e-12,
                        excess <= 1e-12});
    r.checks.push_back({label + " monotone", "||p_tau p_triv|| decreasing in m", rise, 0.0, rise < 0.0});
  }
  return r;
}

SuiteReport hexagon(const RunConfig& cfg) {
  SuiteReport r = start("hexagon", cfg);
  const QContext ctx(cfg.q);
  const int L = pick(cfg.shell, 8);
  double worst = 0.0;
  for (const auto& row : hexagon_check(L, ctx)) worst = std::max(worst, row.value);
  add(r, "max block residual a+b<=" + std::to_string(L),
      "ph(E1)ph(E2)^2ph(E1) = ph(E2)ph(E1)^2ph(E2) from L2(E_-rho) to L2(E_rho)", worst, pick(cfg.tol, 1e-9));
  return r;
}

SuiteReport bgg_defects(const RunConfig& cfg) {
  SuiteReport r = start("bgg-defects", cfg);
  const QContext ctx(cfg.q);
  const int L = pick(cfg.shell, 10);
  const auto rows = normalized_defects(L, ctx);
  double sign_gap = 0.0;
  for (const auto& row : rows) sign_gap = std::max(sign_gap, std::fabs(row.signed_defect - row.unsigned_defect));
  add(r, "sign discipline", "signed squares anticommute exactly when unsigned ones commute", sign_gap, 1e-12);
  const double ratio = pick(cfg.tol, 0.1);
  int deep = 0;
  for (const auto& row : rows) deep += std::min(row.a, row.b) >= 4;
  for (int s = 1; s <= 4; ++s) {
    const auto tail = square_tail(rows, s, 4);
    tail_check(r, "square " + std::to_string(s) + " tail min(a,b)>=s", "normalized square defect decays along min(a,b)",
               tail, deep, ratio);
    r.notes.push_back("square " + std::to_string(s) + " block tail s=0..4: " + join(tail));
    r.notes.push_back("square " + std::to_string(s) + " string-level tail l=0..4: " +
                      join(square_level_tail(rows, s, 4)));
  }
  int rank_bad = 0;
  for (int i = 1; i <= 2; ++i)
    for (int shift = 1; shift <= 2; ++shift)
      for (const auto& row : almost_symmetry_rank(i, shift, {0, 0, 0}, std::min(L, 8), ctx))
        rank_bad += row.rank != row.census || row.residual > 1e-9;
  r.checks.push_back({"almost symmetry ranks", "rank(ph(F)^s ph(E)^s - Id) equals the short-string census",
                      double(rank_bad), 0.0, rank_bad == 0});
  return r;
}

SuiteReport bgg_index(const RunConfig& cfg) {
  SuiteReport r = start("bgg-index", cfg);
  const QContext ctx(cfg.q);
  const int L = pick(cfg.shell, 20);
  const BGGDiagram& d = bgg_diagram();
  int grading_bad = 0;
  for (const auto& a : d.arrows) grading_bad += d.parity(a.from) == d.parity(a.to);
  r.checks.push_back({"grading", "arrows join opposite parities", double(grading_bad), 0.0, grading_bad == 0});
  int chi_bad = 0, cases = 0;
  for (int a = 0; a <= L; ++a)
    for (int b = 0; a + b <= L; ++b, ++cases)
      chi_bad += euler_characteristic(sl3_weight(a, b)) != (a == 0 && b == 0 ? 1 : 0);
  r.checks.push_back({"euler characteristic, " + std::to_string(cases) + " types",
                      "sum (-1)^parity dim V^sigma_mu = delta_{sigma,triv}", double(chi_bad), 0.0, chi_bad == 0});
  const int Lc = std::min(L, 8);
  int coh_bad = 0, flagged = 0;
  double dd = 0.0;
  std::vector<int> near_kernel(4, 0);
  for (int a = 0; a <= Lc; ++a)
    for (int b = 0; a + b <= Lc; ++b) {
      auto c = per_block_cohomology(a, b, ctx);
      const bool triv = a == 0 && b == 0;
      coh_bad += c.cohomology != std::vector<int>{triv ? 1 : 0, 0, 0, 0};
      flagged += c.flagged;
      dd = std::max(dd, c.complex_defect);
      auto nc = normalized_cohomology(a, b, ctx);
      for (int k = 0; k < 4; ++k) near_kernel[k] += nc.kernel_dims[k];
    }
  r.checks.push_back({"cohomology a+b<=" + std::to_string(Lc), "exact complex resolves the trivial type",
                      double(coh_bad), 0.0, coh_bad == 0});
  add(r, "d^2 of the exact complex", "d_{k+1} d_k = 0", dd, 1e-8);
  r.notes.push_back("flagged rank decisions: " + std::to_string(flagged));
  r.notes.push_back("normalized complex near-kernel dims summed over blocks, degrees 0..3: " +
                    std::to_string(near_kernel[0]) + " " + std::to_string(near_kernel[1]) + " " +
                    std::to_string(near_kernel[2]) + " " + std::to_string(near_kernel[3]));
  return r;
}

SuiteReport yd_unitarity(const RunConfig& cfg) {
  SuiteReport r = start("yd-unitarity", cfg);
  const QContext ctx(cfg.q);
  const int L = pick(cfg.shell, 6);
  const double tol = pick(cfg.tol, 1e-8);
  const Weight zero{0, 0, 0};
  for (const auto& [tau, mu] : std::vector<std::pair<Weight, Weight>>{{{1, 0, 0}, zero}, {{1, 1, 0}, zero},
                                                                      {{1, 0, 0}, {1, 0, 0}}})
    add(r, "unitarity tau=" + to_string(tau) + " mu=" + to_string(mu), "sum_k pi(u_ki)^* pi(u_kj) = delta_ij",
        yd_unitarity_defect(tau, cfg.n, mu, L, ctx), tol);
  for (int j = 0; j < 3; ++j) {
    Element f{unit_coefficient({1, 0, 0}, 0, j, ctx)};
    add(r, "covariance f=u_0" + std::to_string(j), "pi(u_ij) M_f = sum M_{u_ik f S(u_kl)} pi(u_lj)",
        yd_covariance_residual({1, 0, 0}, 0, 1, f, zero, L, ctx), tol);
  }
  for (int i = 1; i <= 2; ++i)
    add(r, "intertwining ph(E_" + std::to_string(i) + ")", "ph(E_i) intertwines L2(E_{rho-alpha_i}) and L2(E_rho)",
        intertwining_residual(i, {1, 0, 0}, L, ctx), tol);
  const auto tb = yd_tiebreak(cfg.n, zero, std::min(L, 4), ctx);
  for (const auto& c : tb.candidates) r.notes.push_back("twist " + c.label + " unitarity defect " + num(c.defect));
  r.notes.push_back(tb.note);
  return r;
}

SuiteReport commutator_defects_suite(const RunConfig& cfg) {
  SuiteReport r = start("commutator-defects", cfg);
  const QContext ctx(cfg.q);
  // smallest cutoffs whose tested shells reach the type (4, 4)
  const int L = pick(cfg.shell, 9), L_equiv = pick(cfg.shell, 10);
  const double ratio = pick(cfg.tol, 0.1);
  const Weight zero{0, 0, 0};
  auto record = [&](const std::string& label, const DefectTable& t) {
    int deep = 0;
    for (const auto& row : t.blocks) deep += std::min(row.sigma[0] - row.sigma[1], row.sigma[1] - row.sigma[2]) >= 4;
    const auto tail = tail_maxima(t.blocks, 4);
    tail_check(r, label + " tail min(a,b)>=s", "defect decays along min(a,b)", tail, deep, ratio);
    r.notes.push_back(label + " block tail s=0..4: " + join(tail));
    r.notes.push_back(label + " string-level tail l=0..4: " + join(level_tail_maxima(t.strings, 4)));
  };
  for (int j = 0; j < 3; ++j)
    record("[ph(E_1), M_u0" + std::to_string(j) + "]",
           commutator_defects(1, {unit_coefficient({1, 0, 0}, 0, j, ctx)}, cfg.n, zero, L, ctx));
  record("[ph(E_2), M_u01]", commutator_defects(2, {unit_coefficient({1, 0, 0}, 0, 1, ctx)}, cfg.n, zero, L, ctx));
  for (const auto& [a, b] : {std::pair{0, 1}, std::pair{1, 0}})
    record("equivariance u" + std::to_string(a) + std::to_string(b),
           equivariance_defects(1, {unit_coefficient({1, 0, 0}, a, b, ctx)}, cfg.n, zero, L_equiv, ctx));
  return r;
}

using SuiteFn = SuiteReport (*)(const RunConfig&);

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> all{
      {"qcalc-identities", qcalc_identities},
      {"representations", representations},
      {"class1-golden", class1_golden},
      {"gt-change-of-basis", gt_change_of_basis},
      {"racah", racah},
      {"phase-asymptotics", phase_asymptotics},
      {"telescoping", telescoping},
      {"orthotypicality", orthotypicality},
      {"hexagon", hexagon},
      {"bgg-defects", bgg_defects},
      {"bgg-index", bgg_index},
      {"yd-unitarity", yd_unitarity},
      {"commutator-defects", commutator_defects_suite},
  };
  return all;
}

// Tables.

Table telescoping_table(const RunConfig& cfg) {
  Table t{{"m", "value", "limit", "error"}, {}};
  const int l = cfg.l > 0 ? cfg.l : 3;
  std::vector<int> ms = range(std::max(l, 1), cfg.m_max);
  for (const auto& row : telescoping_norm_check(l, ms, cfg.q))
    t.rows.push_back({std::to_string(row.m), num(row.value), num(row.limit), num(row.abs_error)});
  return t;
}

Table orthotypicality_table(const RunConfig& cfg) {
  Table t{{"m", "norm", "coefficient_bound"}, {}};
  std::vector<int> tau(cfg.n - 1, 0);
  const int k = cfg.k_values.empty() ? 1 : cfg.k_values.front();
  tau.front() = k;
  tau.back() = -k;
  for (const auto& row : orthotypicality_scan(cfg.n, tau, range(1, cfg.m_max), QContext(cfg.q)))
    t.rows.push_back({std::to_string(row.m), num(row.norm), num(row.bound)});
  return t;
}

Table racah_table(const RunConfig& cfg) {
  Table t{{"j", "k", "formula", "matrix", "diff"}, {}};
  const int m = cfg.m > 0 ? cfg.m : 6;
  const wide q(cfg.q);
  Class1Blocks cb = class1_lower_blocks(m, q);
  for (int j = 0; j <= m; ++j)
    for (int k = 0; k <= m; ++k) {
      const wide formula = racah_overlap(k, j, m, q) * sqrt(qnum(wide(2 * j + 1), q) * qnum(wide(2 * k + 1), q));
      const wide matrix = cb.zero_lower(j, k);
      t.rows.push_back({std::to_string(j), std::to_string(k), num(to_d(formula)), num(to_d(matrix)),
                        num(to_d(abs(formula - matrix)))});
    }
  return t;
}

Table phase_asymptotics_table(const RunConfig& cfg) {
  Table t{{"k", "m", "value", "limit", "error"}, {}};
  const auto ks = cfg.k_values.empty() ? range(1, 5) : cfg.k_values;
  for (int k : ks)
    for (const auto& row : phase_asymptotics_check(k, range(std::max(k, 1), cfg.m_max), cfg.q))
      t.rows.push_back({std::to_string(k), std::to_string(row.m), num(row.value), num(row.limit), num(row.abs_error)});
  return t;
}

Table hexagon_table(const RunConfig& cfg) {
  Table t{{"a", "b", "residual"}, {}};
  for (const auto& row : hexagon_check(pick(cfg.shell, 8), QContext(cfg.q)))
    t.rows.push_back({std::to_string(row.a), std::to_string(row.b), num(row.value)});
  return t;
}

Table bgg_index_table(const RunConfig& cfg) {
  Table t{{"a", "b", "chi"}, {}};
  const int L = pick(cfg.shell, 20);
  for (int a = 0; a <= L; ++a)
    for (int b = 0; a + b <= L; ++b)
      t.rows.push_back({std::to_string(a), std::to_string(b), std::to_string(euler_characteristic(sl3_weight(a, b)))});
  return t;
}

Table bgg_defects_table(const RunConfig& cfg) {
  Table t{{"a", "b", "square_id", "defect_norm"}, {}};
  for (const auto& row : normalized_defects(pick(cfg.shell, 10), QContext(cfg.q)))
    t.rows.push_back({std::to_string(row.a), std::to_string(row.b), std::to_string(row.square), num(row.signed_defect)});
  return t;
}

Table bgg_cohomology_table(const RunConfig& cfg) {
  Table t{{"a", "b", "complex", "h0", "h1", "h2", "h3", "flagged"}, {}};
  const QContext ctx(cfg.q);
  const int L = pick(cfg.shell, 8);
  for (int a = 0; a <= L; ++a)
    for (int b = 0; a + b <= L; ++b)
      for (const auto& [label, c] : {std::pair{"exact", per_block_cohomology(a, b, ctx)},
                                     std::pair{"normalized-kernel", normalized_cohomology(a, b, ctx)}}) {
        const auto& v = std::string(label) == "exact" ? c.cohomology : c.kernel_dims;
        t.rows.push_back({std::to_string(a), std::to_string(b), label, std::to_string(v[0]), std::to_string(v[1]),
                          std::to_string(v[2]), std::to_string(v[3]), c.flagged ? "1" : "0"});
      }
  return t;
}

Table almost_symmetry_table(const RunConfig& cfg) {
  Table t{{"a", "b", "i", "shift", "rank", "census", "residual"}, {}};
  const QContext ctx(cfg.q);
  const int shift = cfg.k_values.empty() ? 1 : cfg.k_values.front();
  for (int i = 1; i <= 2; ++i)
    for (const auto& row : almost_symmetry_rank(i, shift, {0, 0, 0}, pick(cfg.shell, 8), ctx))
      t.rows.push_back({std::to_string(row.a), std::to_string(row.b), std::to_string(i), std::to_string(shift),
                        std::to_string(row.rank), std::to_string(row.census), num(row.residual)});
  return t;
}

Table commutator_defects_table(const RunConfig& cfg) {
  Table t{{"a", "b", "shell", "level", "defect"}, {}};
  const QContext ctx(cfg.q);
  const int j = cfg.k_values.empty() ? 1 : cfg.k_values.front();
  const auto table =
      commutator_defects(1, {unit_coefficient({1, 0, 0}, 0, j, ctx)}, cfg.n, {0, 0, 0}, pick(cfg.shell, 7), ctx);
  for (const auto* rows : {&table.blocks, &table.strings})
    for (const auto& row : *rows)
      t.rows.push_back({std::to_string(row.sigma[0] - row.sigma[1]), std::to_string(row.sigma[1] - row.sigma[2]),
                        std::to_string(row.shell), std::to_string(row.level), num(row.defect)});
  return t;
}

using TableFn = Table (*)(const RunConfig&);

const std::vector<std::pair<std::string, TableFn>>& tables() {
  static const std::vector<std::pair<std::string, TableFn>> all{
      {"telescoping", telescoping_table},
      {"orthotypicality", orthotypicality_table},
      {"racah", racah_table},
      {"phase-asymptotics", phase_asymptotics_table},
      {"hexagon", hexagon_table},
      {"bgg-index", bgg_index_table},
      {"bgg-defects", bgg_defects_table},
      {"bgg-cohomology", bgg_cohomology_table},
      {"almost-symmetry", almost_symmetry_table},
      {"commutator-defects", commutator_defects_table},
  };
  return all;
}

template <class Registry>
std::vector<std::string> names_of(const Registry& reg) {
  std::vector<std::string> out;
  for (const auto& [name, fn] : reg) out.push_back(name);
  return out;
}

}  // namespace

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const std::vector<std::string>& suite_names() {
  static const auto names = names_of(suites());
  return names;
}

SuiteReport run_suite(const std::string& name, const RunConfig& cfg) {
  if (!(cfg.q > 0 && cfg.q < 1)) throw std::invalid_argument("q must lie in (0, 1)");
  for (const auto& [n, fn] : suites())
    if (n == name) return fn(cfg);
  throw std::invalid_argument("unknown suite: " + name);
}

const std::vector<std::string>& table_names() {
  static const auto names = names_of(tables());
  return names;
}

Table make_table(const std::string& name, const RunConfig& cfg) {
  if (!(cfg.q > 0 && cfg.q < 1)) throw std::invalid_argument("q must lie in (0, 1)");
  for (const auto& [n, fn] : tables())
    if (n == name) return fn(cfg);
  throw std::invalid_argument("unknown table: " + name);
}

std::string Table::csv() const {
  std::ostringstream out;
  for (size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
  out << '\n';
  for (const auto& row : rows) {
    for (size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
    out << '\n';
  }
  return out.str();
}

std::string Table::json() const {
  nlohmann::ordered_json doc;
  doc["columns"] = columns;
  doc["rows"] = rows;
  return doc.dump(2) + "\n";
}

std::string report_json(const SuiteReport& report) {
  nlohmann::ordered_json doc;
  doc["suite"] = report.suite;
  doc["q"] = report.q;
  doc["passed"] = report.passed();
  doc["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : report.checks)
    doc["checks"].push_back({{"name", c.name}, {"anchor", c.anchor}, {"value", c.value}, {"bound", c.bound},
                             {"pass", c.pass}});
  doc["notes"] = report.notes;
  return doc.dump(2) + "\n";
}

std::string report_csv(const SuiteReport& report) {
  Table t{{"suite", "q", "check", "value", "bound", "pass"}, {}};
  for (const auto& c : report.checks) {
    std::string name = c.name;
    std::replace(name.begin(), name.end(), ',', ';');
    t.rows.push_back({report.suite, num(report.q), name, num(c.value), num(c.bound), c.pass ? "1" : "0"});
  }
  return t.csv();
}

}  // namespace qflag
