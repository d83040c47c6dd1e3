#pragma once

/**
 * @file curve_search.hpp
 * @brief Small deterministic search for semistable curves with rational
 *        points, for the end-to-end tests and the samples.
 */

#include <numeric>
#include <optional>
#include <vector>

#include "tropheight/global/global_height.hpp"

namespace tropheight {

struct SearchHit {
  WeierstrassCurve curve;
  CurvePoint point;
  int torsion_order = 0;  // 0 for a point of infinite order
};

/// Affine points with x = a/b^2, |a| <= x_bound, 1 <= b <= den_bound, taking
/// the larger root y for each x. Ordered by b, then a.
inline std::vector<CurvePoint> small_points(const WeierstrassCurve& e, long x_bound, long den_bound) {
  std::vector<CurvePoint> out;
  for (long b = 1; b <= den_bound; ++b) {
    for (long a = -x_bound; a <= x_bound; ++a) {
      if (b > 1 && std::gcd(a, b) != 1) continue;
      Rational x(Integer(a), Integer(b * b));
      Rational lin = e.a1() * x + e.a3();
      Rational f = x * x * x + e.a2() * x * x + e.a4() * x + e.a6();
      Rational disc = lin * lin + Rational(4) * f;  // (2y + lin)^2
      if (disc.sign() < 0) continue;
      Integer n = disc.num(), d = disc.den();
      if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) continue;
      Integer rn, rd;
      mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
      mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
      Rational y = (Rational(rn, rd) - lin) / Rational(2);
      out.push_back({x, y, false});
    }
  }
  return out;
}

/// Order of P if it is at most max_order, else 0.
inline int torsion_order(const WeierstrassCurve& e, const CurvePoint& p, int max_order = 12) {
  CurvePoint acc = p;
  for (int n = 1; n <= max_order; ++n) {
    if (acc.infinity) return n;
    acc = e.add(acc, p);
  }
  return 0;
}

/// Integral models y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with
/// a1, a3 in {0, 1}, a2 in {-1, 0, 1}, |a4|, |a6| <= coeff_bound, semistable,
/// walked in a fixed order. Each curve contributes its first point.
struct CurveSearch {
  long coeff_bound = 10;
  long x_bound = 20;
  long den_bound = 3;

  std::vector<SearchHit> run(std::size_t want_free, std::size_t want_torsion) const {
    std::vector<SearchHit> out;
    std::size_t n_free = 0, n_tors = 0;
    for (long a6 = 0; a6 <= coeff_bound; a6 = a6 > 0 ? -a6 : -a6 + 1) {
      for (long a4 = 0; a4 <= coeff_bound; a4 = a4 > 0 ? -a4 : -a4 + 1) {
        for (long a1 : {0L, 1L})
          for (long a3 : {1L, 0L})
            for (long a2 : {0L, -1L, 1L}) {
              if (n_free >= want_free && n_tors >= want_torsion) return out;
              std::optional<WeierstrassCurve> model;
              try {
                model.emplace(a1, a2, a3, a4, a6);
              } catch (const InputError&) {
                continue;  // singular
              }
              const WeierstrassCurve& e = *model;
              if (!additive_primes(e).empty()) continue;
              std::vector<CurvePoint> pts = small_points(e, x_bound, den_bound);
              std::optional<SearchHit> free_hit, tors_hit;
              for (const CurvePoint& p : pts) {
                int ord = torsion_order(e, p);
                if (ord == 0 && !free_hit) free_hit = SearchHit{e, p, 0};
                if (ord > 1 && !tors_hit) tors_hit = SearchHit{e, p, ord};
              }
              if (free_hit && n_free < want_free) {
                out.push_back(*free_hit);
                ++n_free;
              } else if (tors_hit && n_tors < want_torsion) {
                out.push_back(*tors_hit);
                ++n_tors;
              }
            }
      }
    }
    return out;
  }
};

}  // namespace tropheight
