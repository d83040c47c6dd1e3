#pragma once

/**
 * @file reduction.hpp
 * @brief Reduction type of a p-minimal model.
 */

#include <string>

#include "tropheight/elliptic/minimal_model.hpp"
#include "tropheight/exact/primes.hpp"

namespace tropheight {

enum class ReductionKind { Good, SplitMultiplicative, NonsplitMultiplicative, Additive };

struct ReductionType {
  ReductionKind kind = ReductionKind::Good;
  long ell = 0;  // v_p(Delta_min); 0 for good reduction

  bool multiplicative() const {
    return kind == ReductionKind::SplitMultiplicative ||
           kind == ReductionKind::NonsplitMultiplicative;
  }
  std::string name() const {
    switch (kind) {
      case ReductionKind::Good: return "good";
      case ReductionKind::SplitMultiplicative: return "split multiplicative";
      case ReductionKind::NonsplitMultiplicative: return "nonsplit multiplicative";
      case ReductionKind::Additive: return "additive";
    }
    return "?";
  }
  friend bool operator==(const ReductionType&, const ReductionType&) = default;
};

namespace detail {

// Integral coefficients mod p of a p-integral model.
struct ReducedCoefficients {
  long a1, a2, a3, a4, a6, p;
  long f(long x, long y) const {
    return ((y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6) % p + p * p) % p;
  }
};

inline ReducedCoefficients reduce_coefficients(const WeierstrassCurve& e, const Integer& p) {
  auto r = [&](const Rational& a) { return reduce_mod(a, p).get_si(); };
  return {r(e.a1()), r(e.a2()), r(e.a3()), r(e.a4()), r(e.a6()), p.get_si()};
}

// Split test for p = 2, 3: the tangent cone at the node is
// Y^2 + a1 XY - (a2 + 3 x0) X^2; split iff it has a root T = Y/X in F_p.
inline bool node_is_split_small(const WeierstrassCurve& e, const Integer& p) {
  ReducedCoefficients c = reduce_coefficients(e, p);
  long n = c.p;
  auto mod = [n](long v) { return ((v % n) + n) % n; };
  for (long x = 0; x < n; ++x)
    for (long y = 0; y < n; ++y) {
      if (c.f(x, y) != 0) continue;
      long fy = mod(2 * y + c.a1 * x + c.a3);
      long fx = mod(c.a1 * y - 3 * x * x - 2 * c.a2 * x - c.a4);
      if (fx != 0 || fy != 0) continue;
      long b = mod(c.a2 + 3 * x);
      for (long t = 0; t < n; ++t)
        if (mod(t * t + c.a1 * t - b) == 0) return true;
      return false;
    }
  throw TheoremViolation("multiplicative reduction without a singular point mod " + p.get_str());
}

}  // namespace detail

/// Reduction type at p of a p-minimal model.
inline ReductionType reduction_type(const WeierstrassCurve& e, const Integer& p) {
  if (!is_probable_prime(p)) throw InputError("reduction_type: " + p.get_str() + " is not prime");
  if (!is_minimal_at(e, p))
    throw PreconditionError("reduction_type needs a model minimal at " + p.get_str());
  long vd = detail::vp(e.discriminant(), p);
  if (vd == 0) return {ReductionKind::Good, 0};
  if (detail::vp(e.c4(), p) > 0) return {ReductionKind::Additive, vd};
  bool split = p > 3 ? legendre(reduce_mod(-e.c6(), p), p) == 1
                     : detail::node_is_split_small(e, p);
  return {split ? ReductionKind::SplitMultiplicative : ReductionKind::NonsplitMultiplicative, vd};
}

}  // namespace tropheight
