#pragma once

/**
 * @file characteristic.hpp
 * @brief Theta characteristic and the constant r with
 *        ||f_trop||(nu) = ||Psi||(nu + k) + r.
 */

#include <cstddef>
#include <vector>

#include "tropheight/tropical/riemann.hpp"
#include "tropheight/tropical/theta.hpp"

namespace tropheight {

struct ThetaCharacteristic {
  RationalVector k;      // solves [u', k] = l(u')/2 for all u' in Y
  RationalVector kappa;  // k reduced into M [0,1)^g
  Rational r;            // ||f_trop|| - ||Psi|| o t_k
  Rational r_prime;      // f_trop - Psi o t_k
  std::size_t points_checked = 0;
};

/// Deterministic grid of points M a / 7^e, 0 <= a_i < 7^e, with e minimal
/// such that the grid has at least min_points points.
inline std::vector<RationalVector> denominator7_grid(const DegenerationData& d,
                                                     std::size_t min_points = 50) {
  std::size_t g = d.rank();
  long side = 7;
  auto count = [&](long s) {
    double c = 1;
    for (std::size_t i = 0; i < g; ++i) c *= static_cast<double>(s);
    return c;
  };
  while (count(side) < static_cast<double>(min_points)) side *= 7;
  std::vector<RationalVector> out;
  std::vector<long> a(g, 0);
  for (;;) {
    RationalVector y(g);
    for (std::size_t i = 0; i < g; ++i) y[i] = Rational(Integer(a[i]), Integer(side));
    out.push_back(d.to_x_star(y));
    std::size_t i = 0;
    while (i < g && a[i] == side - 1) a[i++] = 0;
    if (i == g) break;
    ++a[i];
  }
  return out;
}

/// k = M G^-1 l / 2. For principal data 2k = Phi^-T l is integral.
inline RationalVector characteristic_vector(const DegenerationData& d) {
  RatMatrix mg = to_rational(d.embedding()) * d.gram_inverse();
  return scale(Rational(1, 2), mg * to_rational(d.linear_part()));
}

inline ThetaCharacteristic theta_characteristic(const TropicalTheta& t,
                                                std::size_t min_points = 50) {
  const DegenerationData& d = t.data();
  if (!d.is_principal())
    throw PreconditionError("theta characteristic needs principal data (|det G| = |det M|)");
  ThetaCharacteristic out;
  out.k = characteristic_vector(d);
  if (!is_integral(scale(Rational(2), out.k)))
    throw TheoremViolation("2k = " + vector_str(scale(Rational(2), out.k)) + " is not integral");
  out.kappa = t.reduce(out.k).nu0;

  TropicalRiemannTheta psi(d);
  bool first = true;
  for (const auto& nu : denominator7_grid(d, min_points)) {
    Rational r = t.eval_norm(nu) - psi.norm(nu + out.k);
    if (first) {
      out.r = r;
      out.r_prime = t.eval_f_trop(nu) - psi.psi(nu + out.k);
      first = false;
    } else if (r != out.r) {
      throw NotPrincipallyPolarizedData(
          "||f_trop|| - ||Psi|| o t_k is not constant: " + out.r.str() + " at the first grid point, " +
          r.str() + " at " + vector_str(nu));
    }
    ++out.points_checked;
  }
  Rational expected = -d.inner(out.k, out.k) / Rational(2) + out.r_prime;
  if (expected != out.r)
    throw TheoremViolation("r = " + out.r.str() + " but -[k,k]/2 + r' = " + expected.str());
  return out;
}

}  // namespace tropheight
