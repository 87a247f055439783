#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <Eigen/Core>

#include <limits>

namespace qflag {

// 100 decimal digits; expression templates off so the type behaves like a
// plain value type inside Eigen kernels.
using wide = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<100>,
                                           boost::multiprecision::et_off>;

}  // namespace qflag

namespace Eigen {

template <>
struct NumTraits<qflag::wide> : GenericNumTraits<qflag::wide> {
  using Real = qflag::wide;
  using NonInteger = qflag::wide;
  using Literal = qflag::wide;
  using Nested = qflag::wide;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 10,
    MulCost = 40
  };
  static inline Real epsilon() { return std::numeric_limits<Real>::epsilon(); }
  static inline Real dummy_precision() { return Real(1e-80); }
  static inline Real highest() { return (std::numeric_limits<Real>::max)(); }
  static inline Real lowest() { return std::numeric_limits<Real>::lowest(); }
  static inline Real infinity() { return std::numeric_limits<Real>::infinity(); }
  static inline Real quiet_NaN() { return std::numeric_limits<Real>::quiet_NaN(); }
  static inline int digits10() { return std::numeric_limits<Real>::digits10; }
};

}  // namespace Eigen

namespace qflag {

using WideMatrix = Eigen::Matrix<wide, Eigen::Dynamic, Eigen::Dynamic>;
using WideVector = Eigen::Matrix<wide, Eigen::Dynamic, 1>;

}  // namespace qflag
