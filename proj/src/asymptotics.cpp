#include "qflag/asymptotics.hpp"

#include <Eigen/SVD>

#include <map>
#include <mutex>

namespace qflag {

namespace {

WideMatrix wide_phase(const WideMatrix& op, const wide& rel_threshold) {
  WideMatrix out = WideMatrix::Zero(op.rows(), op.cols());
  Eigen::JacobiSVD<WideMatrix> svd(op, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0) return out;
  for (int r = 0; r < s.size(); ++r)
    if (s(r) > rel_threshold * s(0)) out += svd.matrixU().col(r) * svd.matrixV().col(r).transpose();
  return out;
}

}  // namespace

std::vector<wide> phase_column(int m, const wide& q, const wide& rel_threshold) {
  static std::mutex mutex;
  static std::map<std::pair<int, std::string>, std::vector<wide>> memo;
  const auto key = std::make_pair(m, q.str(40) + "/" + rel_threshold.str(10));
  {
    std::lock_guard lock(mutex);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  std::vector<wide> out;
  if (m >= 1) {
    Class1Blocks b = class1_lower_blocks(m, q);
    WideMatrix ph = wide_phase(b.e1, rel_threshold);
    WideVector image = ph * b.zero_lower.col(0);
    for (int k = 1; k <= m; ++k) out.push_back(b.alpha1_lower.col(k - 1).dot(image));
  }
  std::lock_guard lock(mutex);
  memo.emplace(key, out);
  return out;
}

wide phase_limit(int k, const wide& q) {
  using std::sqrt;
  wide sign = (k % 2 == 0) ? wide(1) : wide(-1);
  return sign * qnum(wide(k), q) / sqrt(qnum(wide(2 * k), q)) *
         (wide(1) / qnum(wide(k - 0.5), q) - wide(1) / qnum(wide(k + 0.5), q));
}

std::vector<ConvergenceRow> phase_asymptotics_check(int k, const std::vector<int>& m_values, double q) {
  const wide wq(q);
  const wide lim = phase_limit(k, wq);
  std::vector<ConvergenceRow> rows;
  for (int m : m_values) {
    wide v(0);
    if (k <= m) v = phase_column(m, wq)[k - 1];
    using std::abs;
    rows.push_back({m, static_cast<double>(v), static_cast<double>(lim), static_cast<double>(abs(v - lim))});
  }
  return rows;
}

std::vector<ConvergenceRow> telescoping_norm_check(int l, const std::vector<int>& m_values, double q) {
  const wide wq(q);
  const wide lim = telescoping_closed_form(l, wq);
  std::vector<ConvergenceRow> rows;
  for (int m : m_values) {
    auto col = phase_column(m, wq);
    wide s(0);
    for (int k = 1; k <= std::min(l, m); ++k) s += col[k - 1] * col[k - 1];
    using std::abs;
    rows.push_back({m, static_cast<double>(s), static_cast<double>(lim), static_cast<double>(abs(s - lim))});
  }
  return rows;
}

}  // namespace qflag
