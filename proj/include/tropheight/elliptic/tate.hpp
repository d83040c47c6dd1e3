#pragma once

/**
 * @file tate.hpp
 * @brief Tate curves: q from j, points from parameters, and the theta
 *        product of the uniformization.
 *
 * E_q : y^2 + xy = x^3 + a4(q) x + a6(q) with
 *
 *     a4 = -5 s3(q),  a6 = -(5 s3(q) + 7 s5(q)) / 12,  s_k = sum sigma_k(n) q^n,
 *
 * and the point of parameter z in Q_p^* / q^Z is (X(z, q), Y(z, q)):
 *
 *     X = sum_{n in Z} q^n z / (1 - q^n z)^2 - 2 sum_{n >= 1} n q^n / (1 - q^n)
 *     Y = sum_{n in Z} (q^n z)^2 / (1 - q^n z)^3 + sum_{n >= 1} n q^n / (1 - q^n).
 *
 * The theta function is (1 - z) prod_{n >= 1} (1 - q^n z)(1 - q^n / z).
 */

#include <vector>

#include "tropheight/elliptic/local_height.hpp"
#include "tropheight/exact/padic.hpp"
#include "tropheight/exact/power_series.hpp"

namespace tropheight {

namespace detail {

inline Integer divisor_power_sum(long n, unsigned k) {
  Integer s = 0;
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) s += ipow(Integer(d), k);
  return s;
}

/// s(q) = 1/j(q) = q prod (1 - q^n)^24 / E4(q)^3, to the given order.
inline PowerSeries inverse_j_series(std::size_t order) {
  PowerSeries e4(order), prod(order);
  e4[0] = 1;
  for (std::size_t n = 1; n < order; ++n) e4[n] = Rational(Integer(240 * divisor_power_sum(n, 3)));
  prod[0] = 1;
  for (std::size_t n = 1; n < order; ++n) {
    PowerSeries f(order);
    f[0] = 1;
    f[n] = -1;
    prod = prod * f;
  }
  PowerSeries s = prod.pow(24) * e4.pow(3).inverse();
  PowerSeries shifted(order);
  for (std::size_t n = 1; n < order; ++n) shifted[n] = s[n - 1];
  return shifted;
}

inline PadicElement exact_padic(const Integer& p, const Rational& x, long prec) {
  return PadicElement(p, x, prec);
}

}  // namespace detail

/// Tate parameter of a curve with v_p(j) < 0, with absolute precision at
/// least M + 2 v(q), enough for j(q) = j mod p^M.
inline PadicElement tate_q(const WeierstrassCurve& e, const Integer& p, long precision) {
  if (!is_probable_prime(p)) throw InputError("tate_q: " + p.get_str() + " is not prime");
  if (precision < 1) throw InputError("tate_q: precision must be positive");
  if (e.j().is_zero() || detail::vp(e.j(), p) >= 0)
    throw PreconditionError("tate_q needs v_p(j) < 0 (potentially multiplicative reduction)");
  long ell = -detail::vp(e.j(), p);
  long target = precision + 2 * ell;
  // q = sum_{k <= K} c_k s^k with v(s) = ell; the tail starts at (K+1) ell.
  long terms = (target + ell - 1) / ell;  // K + 1
  PowerSeries q_of_s = series_compose_invert(detail::inverse_j_series(terms + 1));
  Rational s = Rational(1) / e.j();
  Rational q(0), sk(1);
  for (long k = 1; k <= terms; ++k) {
    sk *= s;
    q += q_of_s[k] * sk;
  }
  return PadicElement(p, q, (terms + 1) * ell);
}

/// sum_{n < c.size()} c_n x^n for a p-adic x of positive valuation; the
/// omitted tail has valuation >= c.size() v(x).
inline PadicElement eval_series(const std::vector<Rational>& c, const PadicElement& x) {
  long vx = x.valuation_lower_bound();
  if (vx <= 0) throw PreconditionError("eval_series needs an argument of positive valuation");
  long tail = static_cast<long>(c.size()) * vx;
  const Integer& p = x.prime();
  PadicElement acc = PadicElement::zero(p, tail);
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + PadicElement(p, c[k], tail);
  return acc.truncated(tail);
}

struct TateCurve {
  PadicElement q, a4, a6;
  long ell;

  /// Rational approximants of the coefficients, y^2 + xy = x^3 + a4 x + a6.
  WeierstrassCurve approx_curve() const {
    return WeierstrassCurve(1, 0, 0, a4.approx(), a6.approx());
  }
  long precision() const { return std::min(a4.absolute_precision(), a6.absolute_precision()); }
};

inline TateCurve tate_curve(const PadicElement& q) {
  long ell = q.valuation();
  if (ell <= 0) throw PreconditionError("Tate curve needs v(q) > 0");
  long terms = q.absolute_precision() / ell + 2;
  std::vector<Rational> s3(terms), s5(terms);
  for (long n = 1; n < terms; ++n) {
    s3[n] = Rational(detail::divisor_power_sum(n, 3));
    s5[n] = Rational(detail::divisor_power_sum(n, 5));
  }
  std::vector<Rational> c4(terms), c6(terms);
  for (long n = 0; n < terms; ++n) {
    c4[n] = Rational(-5) * s3[n];
    c6[n] = -(Rational(5) * s3[n] + Rational(7) * s5[n]) / Rational(12);
  }
  return {q, eval_series(c4, q), eval_series(c6, q), ell};
}

/// (x, y) on E_q for the parameter z; needs 0 <= v(z) < v(q) and z not in q^Z.
struct TatePoint {
  PadicElement x, y;
  CurvePoint approx() const { return {x.approx(), y.approx(), false}; }
};

inline TatePoint tate_point(const PadicElement& q, const PadicElement& z, long precision) {
  const Integer& p = q.prime();
  long ell = q.valuation();
  if (ell <= 0) throw PreconditionError("tate_point needs v(q) > 0");
  long vz = z.valuation();
  if (vz < 0 || vz >= ell)
    throw PreconditionError("tate_point needs 0 <= v(z) < v(q); normalize z by powers of q");
  long work = std::max(q.absolute_precision(), z.absolute_precision()) + ell;
  PadicElement one = detail::exact_padic(p, 1, work);
  PadicElement one_minus_z = one - z;
  if (one_minus_z.is_zero())
    throw InputError("tate_point: z is 1 to working precision (the identity)");

  // Omitted terms from index K+1 on have valuation >= (K+1) ell - v(z).
  long terms = (precision + vz) / ell + 1;
  PadicElement zi = one / z;
  PadicElement x = z / one_minus_z.pow(2);
  PadicElement y = z * z / one_minus_z.pow(3);
  PadicElement qm = one;
  for (long m = 1; m <= terms; ++m) {
    qm = qm * q;
    PadicElement a = qm * z, b = qm * zi, mm = detail::exact_padic(p, Rational(m), work);
    PadicElement one_a = one - a, one_b = one - b, geo = mm * qm / (one - qm);
    x = x + a / one_a.pow(2) + b / one_b.pow(2) - detail::exact_padic(p, 2, work) * geo;
    y = y + a * a / one_a.pow(3) - b / one_b.pow(3) + geo;
  }
  long tail = (terms + 1) * ell - vz;
  x = x.truncated(tail);
  y = y.truncated(tail);
  if (x.absolute_precision() < precision || y.absolute_precision() < precision)
    throw PrecisionError("tate_point: inputs carry too few digits for precision " +
                         std::to_string(precision) + "; got " +
                         std::to_string(std::min(x.absolute_precision(), y.absolute_precision())));
  return {x.truncated(precision), y.truncated(precision)};
}

/// v(theta(z)) factor by factor. For n >= 1 every factor 1 - q^n z^{+-1}
/// has a term of positive valuation and is a unit, so the product is exact.
inline Rational theta_valuation(const PadicElement& q, const PadicElement& z) {
  const Integer& p = q.prime();
  long ell = q.valuation();
  long vz = z.valuation();
  if (ell <= 0 || vz < 0 || vz >= ell)
    throw PreconditionError("theta_valuation needs 0 <= v(z) < v(q)");
  long work = std::max(q.absolute_precision(), z.absolute_precision()) + ell;
  PadicElement one = detail::exact_padic(p, 1, work);
  auto factor_val = [&](const PadicElement& f) -> long {
    if (f.is_zero()) throw OnDivisor("theta(z) vanishes to working precision (z on the divisor)");
    return f.valuation();
  };
  long v = factor_val(one - z);
  PadicElement zi = one / z, qn = one;
  // Factors beyond n = 2 are units for the same reason; two rounds suffice
  // to exercise both kinds.
  for (long n = 1; n <= 2; ++n) {
    qn = qn * q;
    v += factor_val(one - qn * z) + factor_val(one - qn * zi);
  }
  return Rational(v);
}

/// lambda' = (ell/2) B2(v(z)/ell) + v(theta(z)), in v-units.
inline Rational local_height_via_tate_z(const PadicElement& q, const PadicElement& z) {
  Rational vt = theta_valuation(q, z);
  Rational ell(q.valuation());
  return ell / Rational(2) * bernoulli2(Rational(z.valuation()) / ell) + vt;
}

/// Multiplies z by a power of q so that 0 <= v(z) < v(q).
inline PadicElement normalize_parameter(const PadicElement& q, const PadicElement& z) {
  long ell = q.valuation(), vz = z.valuation();
  long k = vz >= 0 ? vz / ell : -((-vz + ell - 1) / ell);
  return k == 0 ? z : z * q.pow(-k);
}

}  // namespace tropheight
