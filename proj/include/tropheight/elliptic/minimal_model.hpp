#pragma once

/**
 * @file minimal_model.hpp
 * @brief p-minimal Weierstrass models by substitution search.
 */

#include <algorithm>
#include <limits>
#include <optional>

#include "tropheight/elliptic/curve.hpp"

namespace tropheight {

struct MinimalModel {
  WeierstrassCurve curve;
  ModelChange change;  // input coordinates -> minimal coordinates
};

namespace detail {

inline bool p_integral(const WeierstrassCurve& e, const Integer& p) {
  for (const auto& a : e.coefficients())
    if (!a.is_zero() && valuation_unchecked(a, p).value() < 0) return false;
  return true;
}

inline long vp(const Rational& x, const Integer& p) {
  Valuation v = valuation_unchecked(x, p);
  return v.is_infinite() ? std::numeric_limits<long>::max() / 4 : v.value();
}

// One step u = p with integral (r, s, t), or nothing if the model is minimal.
inline std::optional<ModelChange> reduce_once(const WeierstrassCurve& e, const Integer& p) {
  if (vp(e.discriminant(), p) < 12) return std::nullopt;
  Rational up(p);
  if (p > 3) {
    if (vp(e.c4(), p) < 4 || vp(e.c6(), p) < 6) return std::nullopt;
    // Complete the square and the cube; 2 and 3 are units here.
    Rational s = -e.a1() / Rational(2);
    Rational r = -e.b2() / Rational(12);
    Rational t = -(e.a3() + r * e.a1()) / Rational(2);
    return ModelChange{up, r, s, t};
  }
  // p = 2, 3: r mod p^2, s mod p, t mod p^3 cover every admissible change.
  long pl = p.get_si();
  for (long s = 0; s < pl; ++s)
    for (long r = 0; r < pl * pl; ++r)
      for (long t = 0; t < pl * pl * pl; ++t) {
        ModelChange c{up, Rational(r), Rational(s), Rational(t)};
        if (p_integral(e.transformed(c), p)) return c;
      }
  return std::nullopt;
}

}  // namespace detail

/// A model integral and minimal at p, with the change that reaches it.
/// Models that are already p-minimal come back unchanged.
inline MinimalModel minimal_model_at(const WeierstrassCurve& e, const Integer& p) {
  if (!is_probable_prime(p)) throw InputError("minimal_model_at: " + p.get_str() + " is not prime");
  ModelChange total;
  WeierstrassCurve cur = e;

  long k = 0;
  const auto& a = e.coefficients();
  const long weight[5] = {1, 2, 3, 4, 6};
  for (int i = 0; i < 5; ++i) {
    if (a[i].is_zero()) continue;
    long v = detail::vp(a[i], p);
    if (v < 0) k = std::max(k, (-v + weight[i] - 1) / weight[i]);
  }
  if (k > 0) {
    total = ModelChange{prime_power(p, -k), 0, 0, 0};
    cur = e.transformed(total);
  }
  while (auto step = detail::reduce_once(cur, p)) {
    cur = cur.transformed(*step);
    total = total.then(*step);
  }
  return {cur, total};
}

inline bool is_minimal_at(const WeierstrassCurve& e, const Integer& p) {
  return detail::p_integral(e, p) && !detail::reduce_once(e, p);
}

}  // namespace tropheight
