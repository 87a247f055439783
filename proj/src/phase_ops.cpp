#include "qflag/phase_ops.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>

#include "qflag/qcalc.hpp"

namespace qflag {

WeightBlockOp block_op(const Irrep& rep, char generator, int i, const Weight& source) {
  const Weight a = simple_root(rep.n, i);
  WeightBlockOp op;
  op.source = source;
  if (generator == 'E') {
    op.target = source + a;
    op.matrix = rep.block(rep.E[i - 1], source, op.target);
  } else if (generator == 'F') {
    op.target = source - a;
    op.matrix = rep.block(rep.F[i - 1], source, op.target);
  } else {
    throw std::invalid_argument("block_op: generator must be E or F");
  }
  return op;
}

MatrixXd phase(const MatrixXd& op, double rel_threshold) {
  MatrixXd out = MatrixXd::Zero(op.rows(), op.cols());
  if (op.size() == 0) return out;
  Eigen::JacobiSVD<MatrixXd> svd(op, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const VectorXd& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return out;
  for (int r = 0; r < s.size(); ++r)
    if (s(r) > rel_threshold * s(0)) out += svd.matrixU().col(r) * svd.matrixV().col(r).transpose();
  return out;
}

WeightBlockOp phase(const WeightBlockOp& op, double rel_threshold) {
  return {op.source, op.target, phase(op.matrix, rel_threshold)};
}

std::vector<SL2String> sl2_string_decomposition(const Irrep& rep, int i, const Weight& mu) {
  const double q = rep.q;
  const Weight up = mu + simple_root(rep.n, i);
  const double h = 0.5 * root_pairing(mu, i);
  MatrixXd E = rep.block(rep.E[i - 1], mu, up);
  MatrixXd F = rep.block(rep.F[i - 1], up, mu);
  std::vector<SL2String> out;
  const int ds = static_cast<int>(rep.indices(mu).size());
  if (ds > 0) {
    MatrixXd fe = E.transpose() * E;
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(fe);
    for (int r = 0; r < ds; ++r) {
      const double ev = std::max(es.eigenvalues()(r), 0.0);
      // F E = [l - h][l + h + 1] on the spin-l string at mu
      double best = -1, err = 1e300;
      for (double l = std::fabs(h); l <= std::fabs(h) + rep.dim() + 1; l += 1.0) {
        double model = qnum<double>(l - h, q) * qnum<double>(l + h + 1, q);
        double e = std::fabs(model - ev) / std::max(1.0, std::fabs(model));
        if (e < err) {
          err = e;
          best = l;
        }
        if (model > 2 * ev + 10) break;
      }
      if (err > 1e-6) throw std::runtime_error("sl2_string_decomposition: eigenvalue off the string spectrum");
      SL2String s;
      s.spin = best;
      s.at_source = es.eigenvectors().col(r);
      s.singular_value = std::sqrt(ev);
      if (best - h >= 1.0 - 1e-9) {
        VectorXd w = E * s.at_source;
        s.at_target = w / w.norm();
      }
      out.push_back(s);
    }
  }
  // strings that meet mu + alpha_i but not mu: kernel of F_i there
  const int dt = static_cast<int>(rep.indices(up).size());
  if (dt > 0) {
    MatrixXd ef = F.transpose() * F;
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(ef);
    const double top = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    for (int r = 0; r < dt; ++r)
      if (std::fabs(es.eigenvalues()(r)) <= 1e-18 * top) {
        SL2String s;
        s.spin = std::fabs(h + 1.0);
        s.at_target = es.eigenvectors().col(r);
        out.push_back(s);
      }
  }
  return out;
}

MatrixXd string_phase(const Irrep& rep, int i, const Weight& mu) {
  const Weight up = mu + simple_root(rep.n, i);
  MatrixXd U = MatrixXd::Zero(rep.indices(up).size(), rep.indices(mu).size());
  for (const auto& s : sl2_string_decomposition(rep, i, mu))
    if (s.at_source.size() && s.at_target.size()) U += s.at_target * s.at_source.transpose();
  return U;
}

MatrixXd d_operator(const Irrep& rep, int i, const Weight& mu) {
  const Weight up = mu + simple_root(rep.n, i);
  const int ds = static_cast<int>(rep.indices(mu).size());
  const int dt = static_cast<int>(rep.indices(up).size());
  MatrixXd D = MatrixXd::Zero(ds + dt, ds + dt);
  D.bottomLeftCorner(dt, ds) = rep.block(rep.E[i - 1], mu, up);
  D.topRightCorner(ds, dt) = rep.block(rep.F[i - 1], up, mu);
  return D;
}

MatrixXd functional_calculus(const std::function<double(double)>& psi, const Irrep& rep, int i,
                             const Weight& mu) {
  const Weight up = mu + simple_root(rep.n, i);
  const int ds = static_cast<int>(rep.indices(mu).size());
  const int dt = static_cast<int>(rep.indices(up).size());
  MatrixXd out = MatrixXd::Zero(ds + dt, ds + dt);
  auto embed = [&](const VectorXd& src, const VectorXd& tgt) {
    VectorXd v = VectorXd::Zero(ds + dt);
    if (src.size()) v.head(ds) = src;
    if (tgt.size()) v.tail(dt) = tgt;
    return v;
  };
  for (const auto& s : sl2_string_decomposition(rep, i, mu)) {
    if (s.at_source.size() && s.at_target.size() && s.singular_value > 0) {
      // D acts on span{v, w} as s * [[0,1],[1,0]]; eigenvectors (v +- w)/sqrt 2
      VectorXd plus = embed(s.at_source, s.at_target) / std::sqrt(2.0);
      VectorXd minus = embed(s.at_source, -s.at_target) / std::sqrt(2.0);
      out += psi(s.singular_value) * plus * plus.transpose();
      out += psi(-s.singular_value) * minus * minus.transpose();
    } else {
      VectorXd v = s.at_source.size() ? embed(s.at_source, VectorXd()) : embed(VectorXd(), s.at_target);
      out += psi(0.0) * v * v.transpose();
    }
  }
  return out;
}

MatrixXd phase_word(const Irrep& rep, const Weight& source,
                    const std::vector<std::pair<char, int>>& word, Weight* landed) {
  Weight cur = source;
  MatrixXd M = MatrixXd::Identity(rep.indices(source).size(), rep.indices(source).size());
  for (const auto& [g, i] : word) {
    WeightBlockOp op = phase(block_op(rep, g, i, cur));
    M = op.matrix * M;
    cur = op.target;
  }
  if (landed) *landed = cur;
  return M;
}

AlmostSymmetry almost_symmetry(const Irrep& rep, int i, const Weight& mu, int shift) {
  AlmostSymmetry out;
  const int d = static_cast<int>(rep.indices(mu).size());
  if (d == 0) return out;
  std::vector<std::pair<char, int>> word;
  for (int s = 0; s < shift; ++s) word.emplace_back('E', i);
  for (int s = 0; s < shift; ++s) word.emplace_back('F', i);
  MatrixXd M = phase_word(rep, mu, word) - MatrixXd::Identity(d, d);
  const double h = 0.5 * root_pairing(mu, i);
  MatrixXd P = MatrixXd::Zero(d, d);
  for (const auto& s : sl2_string_decomposition(rep, i, mu)) {
    if (!s.at_source.size()) continue;
    if (s.spin < h + shift - 1e-9) {
      P += s.at_source * s.at_source.transpose();
      ++out.census;
    }
  }
  out.residual = (M + P).norm();
  Eigen::JacobiSVD<MatrixXd> svd(M);
  for (int r = 0; r < svd.singularValues().size(); ++r)
    if (svd.singularValues()(r) > 0.5) ++out.numerical_rank;
  return out;
}

}  // namespace qflag
