#pragma once

/**
 * @file degeneration.hpp
 * @brief Degeneration data (Y inside X*, the pairing, the linear part) and
 *        the quadratic map c_trop with its cocycle.
 *
 * Coordinates: X* = Z^g with Y = M Z^g. The Gram matrix G and the linear
 * part l live on the Y-basis; points nu of X*_R and Fourier indices u of X
 * use the standard bases of X* and X. The polarization map Phi : Y -> X is
 * the integer matrix with <Phi u', M v'> = u'^T G v', i.e. Phi = M^-T G.
 */

#include <cstddef>
#include <string>

#include "tropheight/linalg/matrix.hpp"

namespace tropheight {

class DegenerationData {
 public:
  DegenerationData(IntMatrix embedding, IntMatrix gram, IntVector linear_part)
      : m_(std::move(embedding)), g_(std::move(gram)), l_(std::move(linear_part)) {
    std::size_t g = m_.rows();
    if (g == 0) throw InputError("degeneration rank must be at least 1");
    if (!m_.is_square() || g_.rows() != g || !g_.is_square() || l_.size() != g)
      throw InputError("degeneration data: M, G, l must all have rank " + std::to_string(g));
    det_m_ = determinant(m_);
    if (det_m_ == 0) throw InputError("degeneration data: det M = 0, Y is not a full sublattice");
    if (!g_.is_symmetric()) throw InputError("degeneration data: Gram matrix is not symmetric");
    if (!is_positive_definite(g_))
      throw InputError("degeneration data: Gram matrix is not positive definite");
    // c_trop(e_i) = (G_ii + l_i)/2 must be an integer for c_trop to be Z-valued.
    for (std::size_t i = 0; i < g; ++i)
      if (!mpz_even_p(Integer(g_(i, i) + l_[i]).get_mpz_t()))
        throw InputError("degeneration data: l_" + std::to_string(i) +
                         " and G_ii differ in parity, c_trop would not be integer valued");
    m_inv_ = inverse(m_);
    g_rat_ = to_rational(g_);
    g_inv_ = inverse(g_rat_);
    RatMatrix phi = m_inv_.transpose() * g_rat_;
    phi_ = IntMatrix(g, g);
    for (std::size_t i = 0; i < g; ++i)
      for (std::size_t j = 0; j < g; ++j) {
        if (!phi(i, j).is_integer())
          throw InputError("degeneration data: M^-T G is not integral, so G does not come from "
                           "a map Y -> X");
        phi_(i, j) = phi(i, j).num();
      }
    gm_inv_ = g_rat_ * m_inv_;
  }

  std::size_t rank() const { return m_.rows(); }
  const IntMatrix& embedding() const { return m_; }
  const IntMatrix& gram() const { return g_; }
  const IntVector& linear_part() const { return l_; }
  const IntMatrix& phi() const { return phi_; }
  const RatMatrix& embedding_inverse() const { return m_inv_; }
  const RatMatrix& gram_inverse() const { return g_inv_; }
  const Integer& det_embedding() const { return det_m_; }

  /// Phi : Y -> X is bijective exactly when |det G| = |det M|.
  bool is_principal() const { return abs(determinant(g_)) == abs(det_m_); }

  /// Y-coordinates M^-1 nu of a point of X*_Q.
  RationalVector to_y(const RationalVector& nu) const {
    check_len(nu.size());
    return m_inv_ * nu;
  }
  /// X*-coordinates M u' of a Y-vector.
  IntVector to_x_star(const IntVector& u) const {
    check_len(u.size());
    return m_ * u;
  }
  RationalVector to_x_star(const RationalVector& y) const {
    check_len(y.size());
    return to_rational(m_) * y;
  }

  /// c_trop(u') = u'^T G u' / 2 + l^T u' / 2.
  Rational c_trop(const IntVector& u) const {
    check_len(u.size());
    return c_of_y(to_rational(u));
  }

  /// The quadratic extension of c_trop to X*_R, nu in X*-coordinates.
  Rational c_trop_real(const RationalVector& nu) const { return c_of_y(to_y(nu)); }

  /// z_{u'}(nu) = c_trop(u') + <Phi u', nu>.
  Rational cocycle_z(const IntVector& u, const RationalVector& nu) const {
    check_len(u.size());
    check_len(nu.size());
    return c_trop(u) + dot(to_rational(u), gm_inv_ * nu);
  }

  /// <Phi u', nu> alone.
  Rational phi_pairing(const IntVector& u, const RationalVector& nu) const {
    return dot(to_rational(u), gm_inv_ * nu);
  }

  /// [mu, nu] on X*_R, determined by [M u', M v'] = u'^T G v'.
  Rational inner(const RationalVector& mu, const RationalVector& nu) const {
    return bilinear(g_rat_, to_y(mu), to_y(nu));
  }

 private:
  void check_len(std::size_t n) const {
    if (n != rank())
      throw InputError("vector of length " + std::to_string(n) + " for rank " +
                       std::to_string(rank()) + " data");
  }
  Rational c_of_y(const RationalVector& y) const {
    return (bilinear(g_rat_, y, y) + dot(to_rational(l_), y)) / Rational(2);
  }

  IntMatrix m_, g_;
  IntVector l_;
  Integer det_m_;
  RatMatrix m_inv_, g_rat_, g_inv_, gm_inv_;
  IntMatrix phi_;
};

/// Rank-1 data of a Tate curve with v(q) = ell: M = G = [ell], l = [-ell].
inline DegenerationData tate_degeneration(long ell) {
  if (ell < 1) throw InputError("Tate degeneration needs ell >= 1");
  Integer e(ell);
  return DegenerationData(IntMatrix{{e}}, IntMatrix{{e}}, IntVector{-e});
}

}  // namespace tropheight
