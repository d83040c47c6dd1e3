#pragma once

/**
 * @file doubling_oracle.hpp
 * @brief Canonical height as the limit 4^-n h(x([2^n] P)), by exact
 *        rational doubling. Independent of every local height routine.
 */

#include <cmath>
#include <optional>
#include <set>
#include <vector>

#include "tropheight/elliptic/curve.hpp"

namespace tropheight {

struct DoublingEstimate {
  bool torsion = false;
  std::vector<double> estimates;  // 4^-n h(x_n) for n = 0 .. reached
  double hhat_x = 0;              // last estimate
  double extrapolated = 0;        // (4 a_n - a_{n-1}) / 3
  double half() const { return hhat_x / 2; }
};

/// x([2]Q) = (x^4 - b4 x^2 - 2 b6 x - b8) / (4x^3 + b2 x^2 + 2 b4 x + b6);
/// nullopt when [2]Q = O.
inline std::optional<Rational> double_x(const WeierstrassCurve& e, const Rational& x) {
  Rational x2 = x * x;
  Rational den = Rational(4) * x2 * x + e.b2() * x2 + Rational(2) * e.b4() * x + e.b6();
  if (den.is_zero()) return std::nullopt;
  Rational num = x2 * x2 - e.b4() * x2 - Rational(2) * e.b6() * x - e.b8();
  return num / den;
}

/// Naive height log max(|a|, |b|) of a/b in lowest terms.
inline double naive_height(const Rational& x) {
  Integer a = abs(x.num());
  Integer b = x.den();
  return Rational::log_abs_integer(a > b ? a : b);
}

/// Runs n_max doublings. A repeated x-coordinate or reaching O means torsion,
/// reported exactly as height 0. The bit budget guards against runaway sizes.
inline DoublingEstimate doubling_oracle(const WeierstrassCurve& e, const CurvePoint& p,
                                        int n_max = 10, std::size_t bit_budget = 1u << 28) {
  if (p.infinity) return {true, {0.0}, 0, 0};
  if (!e.contains(p)) throw InputError("doubling oracle: point " + p.str() + " is not on the curve");
  if (n_max < 1 || n_max > 30) throw InputError("doubling oracle: n_max must be in 1..30");
  DoublingEstimate out;
  std::set<Rational> seen;
  Rational x = p.x;
  double scale = 1;
  for (int n = 0;; ++n) {
    if (!seen.insert(x).second) {
      out.torsion = true;
      break;
    }
    out.estimates.push_back(naive_height(x) / scale);
    if (n == n_max) break;
    auto next = double_x(e, x);
    if (!next) {
      out.torsion = true;
      break;
    }
    x = *next;
    std::size_t bits = mpz_sizeinbase(x.num().get_mpz_t(), 2) + mpz_sizeinbase(x.den().get_mpz_t(), 2);
    if (bits > bit_budget)
      throw PrecisionError("doubling oracle: coordinates exceed " + std::to_string(bit_budget) +
                           " bits at n = " + std::to_string(n + 1) + "; reduce n_max");
    scale *= 4;
  }
  if (out.torsion) {
    out.hhat_x = out.extrapolated = 0;
    return out;
  }
  std::size_t k = out.estimates.size();
  out.hhat_x = out.estimates.back();
  out.extrapolated = k >= 2 ? (4 * out.estimates[k - 1] - out.estimates[k - 2]) / 3 : out.hhat_x;
  return out;
}

}  // namespace tropheight
