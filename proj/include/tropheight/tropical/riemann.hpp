#pragma once

/**
 * @file riemann.hpp
 * @brief The tropical Riemann theta function of the lattice Y with the
 *        inner product [M u', M v'] = u'^T G v'.
 *
 *   ||Psi||(nu) = 1/2 min_{u'} [nu + M u', nu + M u']   (a closest-vector problem)
 *   Psi(nu)     = ||Psi||(nu) - 1/2 [nu, nu]
 */

#include "tropheight/degeneration/degeneration.hpp"
#include "tropheight/tropical/cvp.hpp"

namespace tropheight {

class TropicalRiemannTheta {
 public:
  explicit TropicalRiemannTheta(const DegenerationData& d)
      : d_(d), solver_(to_rational(d.gram())) {}

  /// ||Psi||(nu) together with the lattice point achieving it.
  struct Evaluation {
    Rational value;
    IntVector shift;  // u' with nu + M u' closest to 0
  };
  Evaluation norm_with_witness(const RationalVector& nu) const {
    // min over x of Q(x - t) with t = -M^-1 nu is min over u' of Q(y + u').
    RationalVector t = -d_.to_y(nu);
    CvpResult r = solver_.closest(t);
    return {r.value / Rational(2), r.x};
  }

  Rational norm(const RationalVector& nu) const { return norm_with_witness(nu).value; }

  Rational psi(const RationalVector& nu) const {
    return norm(nu) - d_.inner(nu, nu) / Rational(2);
  }

  const DegenerationData& data() const { return d_; }

 private:
  DegenerationData d_;
  CvpSolver solver_;
};

inline Rational norm_trop_riemann_theta(const DegenerationData& d, const RationalVector& nu) {
  return TropicalRiemannTheta(d).norm(nu);
}

inline Rational trop_riemann_theta(const DegenerationData& d, const RationalVector& nu) {
  return TropicalRiemannTheta(d).psi(nu);
}

}  // namespace tropheight
