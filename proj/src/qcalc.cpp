#include "qflag/qcalc.hpp"

namespace qflag {

QContext::QContext(double q_value, double exact, double asym)
    : q(q_value), sqrt_q(std::sqrt(q_value)), eps_exact(exact), eps_asym(asym) {
  if (!(q_value > 0.0 && q_value < 1.0)) throw std::domain_error("QContext: q must lie in (0,1)");
}

double QContext::power(double a) const {
  double twice = 2.0 * a;
  if (twice == std::round(twice) && std::fabs(twice) < 1e6) {
    long t = std::lround(twice);
    double whole = std::pow(q, static_cast<double>((t - (t & 1)) / 2));
    return (t & 1) ? whole * sqrt_q : whole;
  }
  return std::pow(q, a);
}

double qnum(double a, const QContext& ctx) {
  return (ctx.power(a) - ctx.power(-a)) / (ctx.q - 1.0 / ctx.q);
}

double qfact(int a, const QContext& ctx) { return qfact<double>(a, ctx.q); }

double qbinom(int a, int m, const QContext& ctx) { return qbinom<double>(a, m, ctx.q); }

double qnum_nonsym(double a, const QContext& ctx) { return (1.0 - ctx.power(a)) / (1.0 - ctx.q); }

}  // namespace qflag
