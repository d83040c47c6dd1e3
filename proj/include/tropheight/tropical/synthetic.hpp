#pragma once

/**
 * @file synthetic.hpp
 * @brief Random principally polarized data with a known characteristic.
 *
 * Pick a positive definite G, a unimodular Phi and put M = Phi^-T G, so
 * Phi = M^-T G is the (bijective) polarization. A single base term u = 0
 * with coefficient r0 generates f_trop = Psi o t_k + r0 with
 * k = Phi^-T l / 2.
 */

#include <cstddef>
#include <random>

#include "tropheight/tropical/theta.hpp"

namespace tropheight {

struct SyntheticDatum {
  TropicalTheta theta;
  RationalVector k;  // expected characteristic
  Rational r_prime;  // expected f_trop - Psi o t_k
};

/// Symmetric, strictly diagonally dominant, entries in [-max_entry, max_entry].
inline IntMatrix random_positive_definite(std::size_t g, std::mt19937_64& rng,
                                          long max_entry = 25) {
  long off_cap = std::max(1L, max_entry / static_cast<long>(2 * g));
  std::uniform_int_distribution<long> off(-off_cap, off_cap);
  IntMatrix m(g, g);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = i + 1; j < g; ++j) m(i, j) = m(j, i) = off(rng);
  for (std::size_t i = 0; i < g; ++i) {
    long row = 0;
    for (std::size_t j = 0; j < g; ++j)
      if (j != i) row += std::abs(m(i, j).get_si());
    std::uniform_int_distribution<long> diag(row + 1, std::max(row + 1, max_entry));
    m(i, i) = diag(rng);
  }
  return m;
}

/// Product of a few elementary matrices with multipliers in {-1, 1}.
inline IntMatrix random_unimodular(std::size_t g, std::mt19937_64& rng, int steps = 3) {
  IntMatrix u = IntMatrix::identity(g);
  if (g < 2) {
    if (rng() & 1) u(0, 0) = -1;
    return u;
  }
  std::uniform_int_distribution<std::size_t> idx(0, g - 1);
  for (int s = 0; s < steps; ++s) {
    std::size_t i = idx(rng), j = idx(rng);
    if (i == j) continue;
    Integer k = (rng() & 1) ? 1 : -1;
    for (std::size_t c = 0; c < g; ++c) u(i, c) += k * u(j, c);
  }
  return u;
}

/// Random l with l_i = G_ii mod 2, |l_i| <= bound.
inline IntVector random_linear_part(const IntMatrix& gram, std::mt19937_64& rng, long bound = 10) {
  std::uniform_int_distribution<long> dist(-bound, bound);
  IntVector l(gram.rows());
  for (std::size_t i = 0; i < l.size(); ++i) {
    long v = dist(rng);
    if (((v - gram(i, i).get_si()) % 2) != 0) v += (v < bound ? 1 : -1);
    l[i] = v;
  }
  return l;
}

inline SyntheticDatum synthetic_principal(std::size_t g, std::mt19937_64& rng, long max_entry = 25) {
  IntMatrix gram = random_positive_definite(g, rng, max_entry);
  IntMatrix phi = random_unimodular(g, rng);
  RatMatrix phi_inv_t = inverse(phi).transpose();
  RatMatrix m_rat = phi_inv_t * to_rational(gram);
  IntMatrix m(g, g);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) m(i, j) = m_rat(i, j).num();
  IntVector l = random_linear_part(gram, rng);
  std::uniform_int_distribution<long> rd(-12, 12);
  Rational r0(Integer(rd(rng)), Integer(1 + (rng() % 4)));
  DegenerationData d(m, gram, l);
  RationalVector k = scale(Rational(1, 2), phi_inv_t * to_rational(l));
  // Minimizers over M [0,1)^g sit near the lattice point -(M^-1 k + 1/2);
  // put the base term there so a small margin certifies every evaluation.
  RationalVector ky = d.to_y(k);
  IntVector center(g);
  for (std::size_t i = 0; i < g; ++i) center[i] = (ky[i] + Rational(1, 2)).round();
  FourierTerm base = translate_term(d, FourierTerm{IntVector(g, Integer(0)), r0}, center);
  TropicalTheta t(std::move(d), {base}, 2);
  return {std::move(t), std::move(k), r0};
}

/// The same data and terms with each coefficient rounded down to an integer,
/// as for coefficient valuations over a field with value group Z.
inline TropicalTheta with_integral_coefficients(const TropicalTheta& t) {
  std::vector<FourierTerm> terms = t.base_terms();
  for (auto& term : terms) term.a = Rational(term.a.floor());
  return TropicalTheta(t.data(), std::move(terms), t.margin());
}

}  // namespace tropheight
