#pragma once

/**
 * @file local_height.hpp
 * @brief Normalized non-archimedean local heights lambda' for D = (O).
 *
 * All values are exact rationals in v-units (multiply by log p for the real
 * value). With ell = v_p(Delta_min) and m the component index of P,
 *
 *     lambda' = i + (ell/2) B2(m/ell),   i = max(0, -v_p(x)/2).
 *
 * Only m' = min(m, ell - m) is visible through B2, and that is what is
 * reported. For a point on a singular component it equals
 * min(v_p(2y + a1 x + a3), floor(ell/2)); the Tate-parameter route in tate.hpp
 * is the independent check of this rule.
 */

#include <cmath>
#include <string>

#include "tropheight/elliptic/reduction.hpp"
#include "tropheight/exact/bernoulli.hpp"

namespace tropheight {

struct LocalHeightReport {
  Integer p;
  ReductionType reduction;
  Rational i;  // intersection multiplicity with the thickened divisor
  long component_m = 0;
  Rational lambda_prime;  // v-units
  bool via_quadratic_extension = false;

  double real_value() const { return lambda_prime.to_double() * Rational::log_abs_integer(p); }
};

namespace detail {

inline Rational intersection_multiplicity(const CurvePoint& pt, const Integer& p) {
  if (pt.x.is_zero()) return Rational(0);
  long v = valuation_unchecked(pt.x, p).value();
  if (v >= 0) return Rational(0);
  if (v % 2 != 0)
    throw TheoremViolation("odd negative valuation " + std::to_string(v) + " of x at " +
                           p.get_str() + "; the point is not on a p-integral model");
  return Rational(-v / 2);
}

inline void require_affine(const CurvePoint& pt) {
  if (pt.infinity) throw PreconditionError("local height at the point at infinity (on the divisor)");
}

// Caller guarantees multiplicative reduction on a minimal model.
inline long component_m(const WeierstrassCurve& e, const Integer& p, const CurvePoint& pt, long ell) {
  if (!pt.x.is_zero() && valuation_unchecked(pt.x, p).value() < 0) return 0;
  long v_psi2 = vp(e.psi2(pt), p);
  long v_phi = vp(e.phi_x(pt), p);
  if (v_psi2 <= 0 || v_phi <= 0) return 0;  // nonsingular reduction
  return std::min(v_psi2, ell / 2);
}

inline LocalHeightReport multiplicative(const WeierstrassCurve& e, const Integer& p,
                                        const CurvePoint& pt, const ReductionType& red) {
  LocalHeightReport rep{p, red, Rational(0), 0, Rational(0), false};
  rep.component_m = component_m(e, p, pt, red.ell);
  if (rep.component_m == 0) rep.i = intersection_multiplicity(pt, p);
  Rational ell(red.ell);
  rep.lambda_prime = rep.i + ell / Rational(2) * bernoulli2(Rational(rep.component_m) / ell);
  rep.via_quadratic_extension = red.kind == ReductionKind::NonsplitMultiplicative;
  return rep;
}

}  // namespace detail

/// lambda' = i at a prime of good reduction; e must be minimal at p.
inline LocalHeightReport local_height_good(const WeierstrassCurve& e, const Integer& p,
                                           const CurvePoint& pt) {
  detail::require_affine(pt);
  ReductionType red = reduction_type(e, p);
  if (red.kind != ReductionKind::Good)
    throw PreconditionError("local_height_good at a prime of " + red.name() + " reduction");
  Rational i = detail::intersection_multiplicity(pt, p);
  return {p, red, i, 0, i, false};
}

inline long component_m_split_mult(const WeierstrassCurve& e, const Integer& p,
                                   const CurvePoint& pt) {
  detail::require_affine(pt);
  ReductionType red = reduction_type(e, p);
  if (red.kind != ReductionKind::SplitMultiplicative)
    throw PreconditionError("component index needs split multiplicative reduction, found " +
                            red.name());
  return detail::component_m(e, p, pt, red.ell);
}

inline LocalHeightReport local_height_split_mult(const WeierstrassCurve& e, const Integer& p,
                                                 const CurvePoint& pt) {
  detail::require_affine(pt);
  ReductionType red = reduction_type(e, p);
  if (red.kind != ReductionKind::SplitMultiplicative)
    throw PreconditionError("local_height_split_mult at a prime of " + red.name() + " reduction");
  return detail::multiplicative(e, p, pt, red);
}

/// Same formulas as the split case: over the unramified quadratic extension
/// the reduction splits with the same uniformizer. Flagged in the report.
inline LocalHeightReport local_height_nonsplit_mult(const WeierstrassCurve& e, const Integer& p,
                                                    const CurvePoint& pt) {
  detail::require_affine(pt);
  ReductionType red = reduction_type(e, p);
  if (red.kind != ReductionKind::NonsplitMultiplicative)
    throw PreconditionError("local_height_nonsplit_mult at a prime of " + red.name() +
                            " reduction");
  return detail::multiplicative(e, p, pt, red);
}

/// Any model: moves to a p-minimal model, maps the point and dispatches.
inline LocalHeightReport local_height(const WeierstrassCurve& e, const Integer& p,
                                      const CurvePoint& pt) {
  detail::require_affine(pt);
  MinimalModel mm = minimal_model_at(e, p);
  CurvePoint q = WeierstrassCurve::map_point(mm.change, pt);
  ReductionType red = reduction_type(mm.curve, p);
  switch (red.kind) {
    case ReductionKind::Good: {
      Rational i = detail::intersection_multiplicity(q, p);
      return {p, red, i, 0, i, false};
    }
    case ReductionKind::SplitMultiplicative:
    case ReductionKind::NonsplitMultiplicative:
      return detail::multiplicative(mm.curve, p, q, red);
    case ReductionKind::Additive:
      break;
  }
  throw PreconditionError("additive reduction at " + p.get_str() +
                          "; local heights are only implemented at semistable places");
}

}  // namespace tropheight
