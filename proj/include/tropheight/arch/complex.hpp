#pragma once

/**
 * @file complex.hpp
 * @brief Minimal complex arithmetic over any real type, including Boost
 *        multiprecision floats (std::complex is unspecified for those).
 */

#include <cmath>
#include <limits>
#include <string>
#include <type_traits>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "tropheight/errors.hpp"
#include "tropheight/exact/rational.hpp"

namespace tropheight {

namespace mp = boost::multiprecision;

using Float128 = mp::number<mp::cpp_bin_float<128, mp::digit_base_2>, mp::et_off>;
using Float256 = mp::number<mp::cpp_bin_float<256, mp::digit_base_2>, mp::et_off>;
using Float512 = mp::number<mp::cpp_bin_float<512, mp::digit_base_2>, mp::et_off>;

template <class Real>
Real pi_of() {
  return boost::math::constants::pi<Real>();
}

/// Mantissa bits of Real.
template <class Real>
int mantissa_bits() {
  return std::numeric_limits<Real>::digits;
}

template <class Real>
Real to_real(const Rational& x) {
  if constexpr (std::is_same_v<Real, double>) {
    return x.to_double();
  } else {
    return Real(x.num().get_str()) / Real(x.den().get_str());
  }
}

template <class Real>
bool finite(const Real& x) {
  using std::isfinite;
  using boost::multiprecision::isfinite;
  return isfinite(x);
}

template <class Real>
struct ComplexApprox {
  Real re{0}, im{0};

  ComplexApprox() = default;
  ComplexApprox(Real r, Real i = Real(0)) : re(std::move(r)), im(std::move(i)) {}

  friend ComplexApprox operator+(const ComplexApprox& a, const ComplexApprox& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ComplexApprox operator-(const ComplexApprox& a, const ComplexApprox& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ComplexApprox operator-(const ComplexApprox& a) { return {-a.re, -a.im}; }
  friend ComplexApprox operator*(const ComplexApprox& a, const ComplexApprox& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ComplexApprox operator*(const Real& k, const ComplexApprox& a) { return {k * a.re, k * a.im}; }
  friend ComplexApprox operator/(const ComplexApprox& a, const ComplexApprox& b) {
    Real d = b.re * b.re + b.im * b.im;
    if (d == 0) throw PrecisionError("complex division by zero");
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }

  ComplexApprox conj() const { return {re, -im}; }
  Real norm() const { return re * re + im * im; }
  Real abs() const {
    using std::hypot;
    return hypot(re, im);
  }
  Real arg() const {
    using std::atan2;
    return atan2(im, re);
  }
  bool is_finite() const { return finite(re) && finite(im); }

  std::string str() const {
    return std::to_string(static_cast<double>(re)) + (im < 0 ? " - " : " + ") +
           std::to_string(static_cast<double>(im < 0 ? -im : im)) + "i";
  }
};

template <class Real>
ComplexApprox<Real> cexp(const ComplexApprox<Real>& z) {
  using std::cos;
  using std::exp;
  using std::sin;
  Real m = exp(z.re);
  return {m * cos(z.im), m * sin(z.im)};
}

template <class Real>
ComplexApprox<Real> clog(const ComplexApprox<Real>& z) {
  using std::log;
  return {log(z.abs()), z.arg()};
}

/// Principal square root, branch cut on the negative real axis.
template <class Real>
ComplexApprox<Real> csqrt(const ComplexApprox<Real>& z) {
  using std::abs;
  using std::sqrt;
  if (z.re == 0 && z.im == 0) return {Real(0), Real(0)};
  Real r = z.abs();
  Real t = sqrt((r + abs(z.re)) / 2);
  if (z.re >= 0) return {t, z.im / (2 * t)};
  return {abs(z.im) / (2 * t), z.im < 0 ? -t : t};
}

template <class Real>
ComplexApprox<Real> csin(const ComplexApprox<Real>& z) {
  using std::cos;
  using std::cosh;
  using std::sin;
  using std::sinh;
  return {sin(z.re) * cosh(z.im), cos(z.re) * sinh(z.im)};
}

/// log|1 - e^{2 pi i a}| without cancellation when a is near an integer.
template <class Real>
Real log_abs_one_minus_e(const ComplexApprox<Real>& a) {
  using std::exp;
  using std::log;
  const Real pi = pi_of<Real>();
  if (a.im > 1) {
    // |e^{2 pi i a}| < e^{-2 pi}: no cancellation.
    ComplexApprox<Real> e = cexp(ComplexApprox<Real>(-2 * pi * a.im, 2 * pi * a.re));
    return log((ComplexApprox<Real>(1) - e).abs());
  }
  // 1 - e^{2 pi i a} = -2i sin(pi a) e^{i pi a}
  ComplexApprox<Real> s = csin(ComplexApprox<Real>(pi * a.re, pi * a.im));
  Real as = s.abs();
  if (as == 0) throw PrecisionError("point on the theta divisor to working precision");
  return log(Real(2) * as) - pi * a.im;
}

}  // namespace tropheight
