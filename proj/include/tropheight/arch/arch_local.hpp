#pragma once

/**
 * @file arch_local.hpp
 * @brief Archimedean normalized local height through C* / q^Z.
 *
 * The period lattice comes from the AGM; the elliptic logarithm of a real
 * point is a Carlson R_F integral. With the lattice basis reduced so that
 * tau = Omega2 / Omega1 lies in the standard fundamental domain,
 * v = w / Omega1, u = e^{2 pi i v}, q = e^{2 pi i tau} and
 *
 *     lambda'(P) = (ell/2) B2(t) - log|theta(u)|,
 *     ell = -log|q|,  t = Im v / Im tau in [0, 1),
 *     theta(u) = (1 - u) prod_{n >= 1} (1 - q^n u)(1 - q^n / u).
 */

#include <algorithm>
#include <cmath>
#include <limits>
#include <type_traits>

#include "tropheight/arch/complex.hpp"
#include "tropheight/elliptic/curve.hpp"

namespace tropheight {

template <class Real>
using Complex = ComplexApprox<Real>;

namespace detail {

template <class Real>
Real epsilon_of() {
  return std::numeric_limits<Real>::epsilon();
}

template <class Real>
Real agm(Real a, Real b) {
  using std::abs;
  using std::sqrt;
  if (a <= 0 || b <= 0) throw PrecisionError("AGM of non-positive arguments");
  Real eps = epsilon_of<Real>() * 8;
  for (int it = 0; it < 200; ++it) {
    if (abs(a - b) <= eps * a) return (a + b) / 2;
    Real an = (a + b) / 2;
    b = sqrt(a * b);
    a = an;
  }
  throw PrecisionError("AGM did not converge");
}

/// Carlson's R_F(x, y, z) = 1/2 int_0^inf dt / sqrt((t+x)(t+y)(t+z)).
template <class Real>
Complex<Real> carlson_rf(Complex<Real> x, Complex<Real> y, Complex<Real> z) {
  using std::pow;
  Real tol = pow(epsilon_of<Real>(), Real(1) / 6);
  for (int it = 0; it < 400; ++it) {
    Complex<Real> a = Real(1) / Real(3) * (x + y + z);
    Real scale = a.abs();
    Real spread = std::max({(a - x).abs(), (a - y).abs(), (a - z).abs()});
    if (scale == 0 && spread == 0) throw PrecisionError("Carlson R_F with all arguments zero");
    // The mean can vanish (x = -b2/12); duplication moves it off zero.
    if (scale > 0 && spread < tol * scale) {
      Complex<Real> X = (a - x) / a, Y = (a - y) / a;
      Complex<Real> Z = -(X + Y);
      Complex<Real> e2 = X * Y - Z * Z, e3 = X * Y * Z;
      Complex<Real> series = Complex<Real>(1) - Real(1) / Real(10) * e2 +
                             Real(1) / Real(14) * e3 + Real(1) / Real(24) * (e2 * e2) -
                             Real(3) / Real(44) * (e2 * e3);
      return series / csqrt(a);
    }
    Complex<Real> sx = csqrt(x), sy = csqrt(y), sz = csqrt(z);
    Complex<Real> lam = sx * sy + sy * sz + sz * sx;
    x = Real(1) / Real(4) * (x + lam);
    y = Real(1) / Real(4) * (y + lam);
    z = Real(1) / Real(4) * (z + lam);
  }
  throw PrecisionError("Carlson R_F did not converge");
}

// Newton polish of a root of 4t^3 + b2 t^2 + 2 b4 t + b6.
template <class Real>
Real polish_root(Real t, const Real& b2, const Real& b4, const Real& b6) {
  using std::abs;
  for (int it = 0; it < 8; ++it) {
    Real f = ((4 * t + b2) * t + 2 * b4) * t + b6;
    Real df = (12 * t + 2 * b2) * t + 2 * b4;
    if (df == 0) break;
    Real step = f / df;
    t -= step;
    if (abs(step) <= epsilon_of<Real>() * (1 + abs(t))) break;
  }
  return t;
}

}  // namespace detail

template <class Real>
struct ArchContext {
  WeierstrassCurve curve;
  Real a1{0}, a2{0}, a3{0}, b2{0}, b4{0}, b6{0};
  bool three_real_roots = false;
  Real e1{0};                   // the (largest) real root
  Complex<Real> e2, e3;        // real for positive discriminant, e2 > e3
  Complex<Real> omega1, omega2;  // AGM basis, omega1 real and positive
  Complex<Real> big1, big2;      // reduced basis, tau = big2 / big1
  Complex<Real> tau, q;
  Real ell_inf{0};  // -log|q|

  explicit ArchContext(WeierstrassCurve e) : curve(std::move(e)) {}

  int bits() const { return mantissa_bits<Real>(); }
};

template <class Real>
ArchContext<Real> arch_context(const WeierstrassCurve& e) {
  using std::acos;
  using std::cbrt;
  using std::cos;
  using std::log;
  using std::sqrt;
  ArchContext<Real> c{e};
  c.a1 = to_real<Real>(e.a1());
  c.a2 = to_real<Real>(e.a2());
  c.a3 = to_real<Real>(e.a3());
  c.b2 = to_real<Real>(e.b2());
  c.b4 = to_real<Real>(e.b4());
  c.b6 = to_real<Real>(e.b6());
  const Real pi = pi_of<Real>();
  // Depressed cubic of t^3 + A t^2 + B t + C, A = b2/4, B = b4/2, C = b6/4.
  Real A = c.b2 / 4, B = c.b4 / 2, C = c.b6 / 4;
  Real p = B - A * A / 3;
  Real q0 = 2 * A * A * A / 27 - A * B / 3 + C;
  Real shift = -A / 3;
  if (e.discriminant().sign() > 0) {
    c.three_real_roots = true;
    Real m = 2 * sqrt(-p / 3);
    Real arg = 3 * q0 / (p * m);
    arg = std::clamp(arg, Real(-1), Real(1));
    Real phi = acos(arg) / 3;
    Real r[3];
    for (int k = 0; k < 3; ++k)
      r[k] = detail::polish_root(Real(m * cos(phi - 2 * pi * k / 3) + shift), c.b2, c.b4, c.b6);
    std::sort(r, r + 3, [](const Real& x, const Real& y) { return x > y; });
    c.e1 = r[0];
    c.e2 = Complex<Real>(r[1]);
    c.e3 = Complex<Real>(r[2]);
    Real w1 = pi / detail::agm(sqrt(r[0] - r[2]), sqrt(r[0] - r[1]));
    Real w2 = pi / detail::agm(sqrt(r[0] - r[2]), sqrt(r[1] - r[2]));
    c.omega1 = Complex<Real>(w1);
    c.omega2 = Complex<Real>(Real(0), w2);
  } else {
    Real disc = q0 * q0 / 4 + p * p * p / 27;
    Real s = cbrt(-q0 / 2 + sqrt(disc)) + cbrt(-q0 / 2 - sqrt(disc));
    c.e1 = detail::polish_root(Real(s + shift), c.b2, c.b4, c.b6);
    // 4t^3 + b2 t^2 + 2 b4 t + b6 = (t - e1)(4t^2 + P t + R)
    Real P = c.b2 + 4 * c.e1, R = 2 * c.b4 + P * c.e1;
    Real d = 16 * R - P * P;  // > 0: complex pair
    c.e2 = Complex<Real>(-P / 8, sqrt(d) / 8);
    c.e3 = c.e2.conj();
    Real alpha = 3 * c.e1 + c.b2 / 4;
    Real beta = sqrt(3 * c.e1 * c.e1 + c.b2 / 2 * c.e1 + c.b4 / 2);
    Real w1 = 2 * pi / detail::agm(Real(2 * sqrt(beta)), Real(sqrt(2 * beta + alpha)));
    Real w2i = pi / detail::agm(Real(2 * sqrt(beta)), Real(sqrt(2 * beta - alpha)));
    c.omega1 = Complex<Real>(w1);
    c.omega2 = Complex<Real>(w1 / 2, w2i);
  }
  // Reduce tau into |Re tau| <= 1/2, |tau| >= 1.
  c.big1 = c.omega1;
  c.big2 = c.omega2;
  for (int it = 0; it < 1000; ++it) {
    Complex<Real> t = c.big2 / c.big1;
    using std::round;
    Real k = round(t.re);
    if (k != 0) {
      c.big2 = c.big2 - k * c.big1;
      t = c.big2 / c.big1;
    }
    if (t.norm() < Real(1) - 8 * detail::epsilon_of<Real>()) {
      Complex<Real> old1 = c.big1;
      c.big1 = c.big2;
      c.big2 = -old1;
      continue;
    }
    break;
  }
  c.tau = c.big2 / c.big1;
  if (c.tau.im < 0) {
    c.big2 = -c.big2;
    c.tau = c.big2 / c.big1;
  }
  c.q = cexp(Complex<Real>(-2 * pi * c.tau.im, 2 * pi * c.tau.re));
  c.ell_inf = 2 * pi * c.tau.im;
  if (!c.q.is_finite() || !finite(c.ell_inf)) throw PrecisionError("non-finite period data");
  return c;
}

/// Elliptic logarithm of a real affine point; the result w satisfies
/// wp(w) = x + b2/12 and wp'(w) = 2y + a1 x + a3 for the AGM lattice.
template <class Real>
Complex<Real> elliptic_log(const ArchContext<Real>& c, const Real& x, const Real& y) {
  auto identity_component = [&](const Real& px, const Real& py) {
    Real xe = std::max(px, c.e1);
    Complex<Real> w0 = detail::carlson_rf(Complex<Real>(xe - c.e1), Complex<Real>(xe) - c.e2,
                                          Complex<Real>(xe) - c.e3);
    Real psi = 2 * py + c.a1 * px + c.a3;
    Real w = w0.re;
    return Complex<Real>(psi <= 0 ? w : -w);
  };
  Real scale = 1 + (x < 0 ? -x : x);
  if (x >= c.e1 - 16 * detail::epsilon_of<Real>() * scale || !c.three_real_roots)
    return identity_component(x, y);
  // On the bounded component: add the 2-torsion point T3 = (e3, .), whose
  // logarithm is omega2 / 2, and land on the identity component.
  Real e3 = c.e3.re;
  Real y3 = -(c.a1 * e3 + c.a3) / 2;
  Real dx = x - e3;
  Complex<Real> half2 = Real(1) / Real(2) * c.omega2;
  using std::abs;
  if (abs(dx) <= 16 * detail::epsilon_of<Real>() * scale) return half2;
  Real lam = (y - y3) / dx;
  Real nu = y - lam * x;
  Real x2 = lam * lam + c.a1 * lam - c.a2 - x - e3;
  Real y2 = -(lam + c.a1) * x2 - nu - c.a3;
  return identity_component(x2, y2) - half2;
}

/// Position of w in the reduced basis: v = w / Omega1 shifted so that
/// 0 <= Im v < Im tau and 0 <= Re v < 1 (after removing the tau part).
template <class Real>
struct NormalizedLog {
  Complex<Real> v;
  Real t;  // Im v / Im tau, in [0, 1)
};

template <class Real>
NormalizedLog<Real> normalize_log(const ArchContext<Real>& c, const Complex<Real>& w) {
  using std::floor;
  Complex<Real> v = w / c.big1;
  Real k = floor(v.im / c.tau.im);
  v = v - k * c.tau;
  v = v - Complex<Real>(floor(v.re));
  Real t = v.im / c.tau.im;
  if (t < 0) t = 0;
  if (t >= 1) t = 0;
  return {v, t};
}

/// -log|theta(u)| plus the quadratic term, for a normalized v.
template <class Real>
Real arch_height_at(const ArchContext<Real>& c, const NormalizedLog<Real>& nl) {
  using std::abs;
  using std::log;
  const Complex<Real>& v = nl.v;
  Real lt = log_abs_one_minus_e(v);
  Real cut = log(Real(2)) * Real(mantissa_bits<Real>() + 8);
  for (long n = 1;; ++n) {
    Complex<Real> nt = Real(n) * c.tau;
    lt += log_abs_one_minus_e(nt + v) + log_abs_one_minus_e(nt - v);
    // Next terms are bounded by |q|^n.
    if (c.ell_inf * Real(n) > cut) break;
    if (n > 100000) throw PrecisionError("theta product did not converge");
  }
  Real t = nl.t;
  Real b2 = t * t - t + Real(1) / Real(6);
  Real res = c.ell_inf / 2 * b2 - lt;
  if (!finite(res)) throw PrecisionError("non-finite archimedean height");
  return res;
}

template <class Real>
Real local_height_arch(const ArchContext<Real>& c, const Real& x, const Real& y) {
  Complex<Real> w = elliptic_log(c, x, y);
  if (w.abs() == 0) throw PrecisionError("elliptic logarithm underflow; raise the precision");
  return arch_height_at(c, normalize_log(c, w));
}

template <class Real>
Real local_height_arch(const ArchContext<Real>& c, const CurvePoint& pt) {
  if (pt.infinity) throw PreconditionError("archimedean height at the point at infinity");
  if (!c.curve.contains(pt)) throw InputError("point " + pt.str() + " is not on the curve");
  return local_height_arch(c, to_real<Real>(pt.x), to_real<Real>(pt.y));
}

/// wp(w) and wp'(w) for the reduced lattice from the q-expansion.
template <class Real>
std::pair<Complex<Real>, Complex<Real>> weierstrass_p(const ArchContext<Real>& c,
                                                      const Complex<Real>& w) {
  const Real pi = pi_of<Real>();
  Complex<Real> v = w / c.big1;
  Complex<Real> k = Complex<Real>(Real(0), 2 * pi) / c.big1;  // 2 pi i / Omega1
  auto ex = [&](const Complex<Real>& a) {
    return cexp(Complex<Real>(-2 * pi * a.im, 2 * pi * a.re));
  };
  Complex<Real> s(Real(1) / Real(12)), sd(0);
  // Terms with q^n / u enter the derivative with the opposite sign.
  auto add = [&](const Complex<Real>& z, int sign) {
    Complex<Real> one(1);
    Complex<Real> den = one - z;
    s = s + z / (den * den);
    Complex<Real> dz = z * (one + z) / (den * den * den);
    sd = sign > 0 ? sd + dz : sd - dz;
  };
  add(ex(v), 1);
  Real cut = std::log(2.0) * (mantissa_bits<Real>() + 8);
  for (long n = 1;; ++n) {
    Complex<Real> nt = Real(n) * c.tau;
    add(ex(nt + v), 1);
    add(ex(nt - v), -1);
    Complex<Real> qn = ex(nt);
    s = s - Real(2 * n) * (qn / (Complex<Real>(1) - qn));
    if (c.ell_inf * Real(n) > cut) break;
  }
  return {k * k * s, k * k * k * sd};
}

/// j(tau) = 1728 E4^3 / (E4^3 - E6^2) for the reduced tau.
template <class Real>
Complex<Real> j_invariant(const ArchContext<Real>& c) {
  Complex<Real> e4(1), e6(1), qn(1);
  Real cut = std::log(2.0) * (mantissa_bits<Real>() + 8);
  for (long n = 1;; ++n) {
    qn = qn * c.q;
    Complex<Real> l = qn / (Complex<Real>(1) - qn);
    Real n3 = Real(n) * n * n, n5 = n3 * n * n;
    e4 = e4 + Real(240) * n3 * l;
    e6 = e6 - Real(504) * n5 * l;
    if (c.ell_inf * Real(n) > cut) break;
  }
  Complex<Real> e43 = e4 * e4 * e4;
  return Real(1728) * e43 / (e43 - e6 * e6);
}

struct ArchHeight {
  double value;
  double error_estimate;  // heuristic, from the working precision
  int bits;
};

namespace detail {

template <class Real>
ArchHeight arch_height_with(const WeierstrassCurve& e, const CurvePoint& pt) {
  ArchContext<Real> c = arch_context<Real>(e);
  Real v = local_height_arch(c, pt);
  using std::abs;
  using std::ldexp;
  double scale = 1.0 + std::abs(static_cast<double>(v)) + static_cast<double>(c.ell_inf);
  double err = std::ldexp(scale, -(mantissa_bits<Real>() - 16));
  return {static_cast<double>(v), std::max(err, scale * std::numeric_limits<double>::epsilon()),
          mantissa_bits<Real>()};
}

}  // namespace detail

/// Runtime precision choice: bits <= 53 uses double, then 128, 256, 512.
inline ArchHeight local_height_arch(const WeierstrassCurve& e, const CurvePoint& pt,
                                    int bits = 128) {
  if (bits < 24 || bits > 512)
    throw InputError("archimedean precision must be between 24 and 512 bits");
  if (bits <= 53) return detail::arch_height_with<double>(e, pt);
  if (bits <= 128) return detail::arch_height_with<Float128>(e, pt);
  if (bits <= 256) return detail::arch_height_with<Float256>(e, pt);
  return detail::arch_height_with<Float512>(e, pt);
}

}  // namespace tropheight
