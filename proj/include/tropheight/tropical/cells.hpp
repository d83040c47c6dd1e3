#pragma once

/**
 * @file cells.hpp
 * @brief Domains of linearity of f_trop in rank 1 and 2, computed exactly.
 *
 * Each term u of the certified term window owns the convex region where it
 * is minimal. Those regions are clipped to the fundamental parallelotope
 * P0 = M [0,1]^g, then translated over u' in {-1,0}^g (the translate of
 * u's piece by M u' belongs to u - Phi u') and merged per term, which gives
 * the cells on the region M [-1,1]^g. Shared faces belong to every adjacent
 * cell.
 */

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "tropheight/tropical/characteristic.hpp"
#include "tropheight/tropical/theta.hpp"

namespace tropheight {

using Polygon = std::vector<RationalVector>;  // vertices in counterclockwise order

struct Cell {
  IntVector term;
  Polygon vertices;  // rank 1: {lo, hi}
};

struct QuotientCell {
  IntVector term;               // representative of the class of u modulo Phi Y
  std::vector<Polygon> pieces;  // its pieces inside P0
};

struct CellComplex {
  std::size_t rank = 0;
  std::vector<Cell> cells;
  std::vector<QuotientCell> quotient_cells;
};

namespace geometry {

/// Keep the part of a convex polygon where n . x <= b.
inline Polygon clip(const Polygon& poly, const RationalVector& n, const Rational& b) {
  Polygon out;
  std::size_t m = poly.size();
  for (std::size_t i = 0; i < m; ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % m];
    Rational fp = dot(n, p) - b, fq = dot(n, q) - b;
    if (fp.sign() <= 0) out.push_back(p);
    if ((fp.sign() < 0 && fq.sign() > 0) || (fp.sign() > 0 && fq.sign() < 0)) {
      Rational s = fp / (fp - fq);
      out.push_back(p + scale(s, q - p));
    }
  }
  // Drop repeated and collinear vertices.
  Polygon clean;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (clean.empty() || !(clean.back() == out[i])) clean.push_back(out[i]);
  while (clean.size() > 1 && clean.front() == clean.back()) clean.pop_back();
  bool changed = true;
  while (changed && clean.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < clean.size(); ++i) {
      const auto& a = clean[(i + clean.size() - 1) % clean.size()];
      const auto& c = clean[(i + 1) % clean.size()];
      RationalVector u = clean[i] - a, v = c - clean[i];
      if ((u[0] * v[1] - u[1] * v[0]).is_zero()) {
        clean.erase(clean.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
    }
  }
  return clean;
}

inline Rational twice_area(const Polygon& p) {
  Rational s(0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& a = p[i];
    const auto& b = p[(i + 1) % p.size()];
    s += a[0] * b[1] - a[1] * b[0];
  }
  return s;
}

/// Convex hull (Andrew's monotone chain), counterclockwise, no collinear points.
inline Polygon convex_hull(Polygon pts) {
  std::sort(pts.begin(), pts.end(), [](const RationalVector& a, const RationalVector& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  auto cross = [](const RationalVector& o, const RationalVector& a, const RationalVector& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  Polygon h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]).sign() <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]).sign() <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

inline RationalVector centroid(const Polygon& p) {
  RationalVector c(p.front().size(), Rational(0));
  for (const auto& v : p) c = c + v;
  return scale(Rational(1, static_cast<long>(p.size())), c);
}

/// Same polygon up to the starting vertex.
inline bool same_polygon(const Polygon& a, const Polygon& b) {
  if (a.size() != b.size()) return false;
  Polygon x = a, y = b;
  auto lex = [](const RationalVector& p, const RationalVector& q) {
    return p[0] < q[0] || (p[0] == q[0] && p[1] < q[1]);
  };
  std::sort(x.begin(), x.end(), lex);
  std::sort(y.begin(), y.end(), lex);
  return x == y;
}

}  // namespace geometry

namespace detail {

// Region M * box as a polygon (rank 2) or interval (rank 1).
inline Polygon parallelotope(const DegenerationData& d, const Rational& lo, const Rational& hi) {
  if (d.rank() == 1) {
    Polygon p = {d.to_x_star(RationalVector{lo}), d.to_x_star(RationalVector{hi})};
    if (p[1][0] < p[0][0]) std::swap(p[0], p[1]);
    return p;
  }
  Polygon p = {d.to_x_star(RationalVector{lo, lo}), d.to_x_star(RationalVector{hi, lo}),
               d.to_x_star(RationalVector{hi, hi}), d.to_x_star(RationalVector{lo, hi})};
  if (geometry::twice_area(p).sign() < 0) std::reverse(p.begin(), p.end());
  return p;
}

// Restrict a region to a_u + u.x <= a_v + v.x for every other term v.
inline std::optional<Polygon> term_region(const std::vector<EffectiveTerm>& terms, std::size_t i,
                                          Polygon region, std::size_t rank) {
  const auto& t = terms[i];
  for (std::size_t j = 0; j < terms.size(); ++j) {
    if (j == i) continue;
    RationalVector n = to_rational(t.u - terms[j].u);
    Rational b = terms[j].a - t.a;
    if (rank == 1) {
      // n x <= b on the interval [lo, hi].
      Rational lo = region[0][0], hi = region[1][0];
      if (n[0].is_zero()) {
        if (b.sign() < 0) return std::nullopt;
        continue;
      }
      Rational x = b / n[0];
      if (n[0].sign() > 0) hi = std::min(hi, x);
      else lo = std::max(lo, x);
      if (!(lo < hi)) return std::nullopt;
      region = {RationalVector{lo}, RationalVector{hi}};
    } else {
      region = geometry::clip(region, n, b);
      if (region.size() < 3) return std::nullopt;
    }
  }
  if (rank == 2 && geometry::twice_area(region).is_zero()) return std::nullopt;
  return region;
}

}  // namespace detail

inline CellComplex domains_of_linearity(const TropicalTheta& t) {
  const DegenerationData& d = t.data();
  std::size_t g = d.rank();
  if (g > 2) throw InputError("domains of linearity are only computed in rank 1 and 2");
  const auto& terms = t.effective_terms();
  Polygon p0 = detail::parallelotope(d, Rational(0), Rational(1));

  struct Piece {
    IntVector term;
    Polygon poly;
  };
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    auto region = detail::term_region(terms, i, p0, g);
    if (!region) continue;
    if (terms[i].layer >= t.margin())
      throw InsufficientTerms("a domain of linearity in the fundamental domain belongs to a term "
                              "on the outer layer; raise the margin");
    pieces.push_back({terms[i].u, *region});
  }

  CellComplex cx;
  cx.rank = g;

  // Quotient cells: group the pieces of P0 by the class of u modulo Phi Y.
  RatMatrix phi_inv = inverse(d.phi());
  for (const auto& pc : pieces) {
    bool placed = false;
    for (auto& qc : cx.quotient_cells) {
      if (is_integral(phi_inv * to_rational(pc.term - qc.term))) {
        qc.pieces.push_back(pc.poly);
        placed = true;
        break;
      }
    }
    if (!placed) cx.quotient_cells.push_back({pc.term, {pc.poly}});
  }

  // Cells on M [-1,1]^g from translates of the pieces.
  std::map<IntVector, Polygon> merged;
  detail::for_each_in_box(g, 1, [&](const IntVector& s, int) {
    for (const auto& x : s)
      if (x > 0) return;
    RationalVector shift = to_rational(d.to_x_star(s));
    IntVector dphi = d.phi() * s;
    for (const auto& pc : pieces) {
      IntVector term = pc.term - dphi;
      Polygon& acc = merged[term];
      for (const auto& v : pc.poly) acc.push_back(v + shift);
      // Periodicity check: the translated term really is minimal there.
      RationalVector c = geometry::centroid(pc.poly) + shift;
      Rational via_terms = Rational(0);
      bool found = false;
      for (const auto& e : terms)
        if (e.u == pc.term) {
          FourierTerm moved = translate_term(d, FourierTerm{e.u, e.a}, s);
          via_terms = moved.a + dot(moved.u, c);
          found = true;
        }
      if (!found || via_terms != t.eval_f_trop(c))
        throw TheoremViolation("domains of linearity are not Y-periodic near " + vector_str(c));
    }
  });
  for (auto& [term, pts] : merged) {
    Polygon poly;
    if (g == 1) {
      auto [lo, hi] = std::minmax_element(
          pts.begin(), pts.end(),
          [](const RationalVector& a, const RationalVector& b) { return a[0] < b[0]; });
      poly = {*lo, *hi};
    } else {
      poly = geometry::convex_hull(pts);
    }
    cx.cells.push_back({term, std::move(poly)});
  }
  std::sort(cx.cells.begin(), cx.cells.end(), [](const Cell& a, const Cell& b) {
    return a.vertices.front() < b.vertices.front();
  });
  return cx;
}

/// Voronoi cell of 0 for Y with the inner product [.,.], as a polygon in
/// X*-coordinates (rank 2) or an interval (rank 1).
inline Polygon voronoi_cell(const DegenerationData& d) {
  std::size_t g = d.rank();
  if (g > 2) throw InputError("Voronoi cells are only computed in rank 1 and 2");
  RatMatrix gram = to_rational(d.gram());
  RatMatrix cut = d.embedding_inverse().transpose() * gram;  // [x, M s] = x . (cut s)
  for (long radius = 2;; radius *= 2) {
    Polygon cell = detail::parallelotope(d, Rational(-radius), Rational(radius));
    detail::for_each_in_box(g, static_cast<int>(radius), [&](const IntVector& s, int layer) {
      if (layer == 0) return;
      RationalVector sr = to_rational(s);
      RationalVector n = scale(Rational(2), cut * sr);  // 2 [x, M s] <= [M s, M s]
      Rational b = bilinear(gram, sr, sr);
      if (g == 1) {
        Rational x = b / n[0];
        if (n[0].sign() > 0) cell[1][0] = std::min(cell[1][0], x);
        else cell[0][0] = std::max(cell[0][0], x);
      } else {
        cell = geometry::clip(cell, n, b);
      }
    });
    // A vector M s can only cut the cell if [Ms, Ms] < 4 [v, v] for some
    // vertex v (Cauchy-Schwarz), and then s_i^2 <= that bound * (G^-1)_ii.
    Rational reach(0);
    for (const auto& v : cell) reach = std::max(reach, Rational(4) * d.inner(v, v));
    bool covered = true;
    for (std::size_t i = 0; i < g; ++i)
      if (reach * d.gram_inverse()(i, i) > Rational(radius * radius)) covered = false;
    if (covered) return cell;
  }
}

/// Cells compared with Voronoi cells of Y shifted by -k, clipped to the
/// same region. Returns the number of cells that matched; throws on the
/// first mismatch.
inline std::size_t compare_with_voronoi(const TropicalTheta& t, const CellComplex& cx) {
  const DegenerationData& d = t.data();
  RationalVector k = characteristic_vector(d);
  Polygon vor = voronoi_cell(d);
  Polygon region = detail::parallelotope(d, Rational(-1), Rational(1));
  TropicalRiemannTheta psi(d);
  std::size_t matched = 0;
  for (const auto& cell : cx.cells) {
    RationalVector c = geometry::centroid(cell.vertices);
    // The Voronoi center lambda closest to c + k.
    auto w = psi.norm_with_witness(c + k);
    RationalVector lambda = -to_rational(d.to_x_star(w.shift));
    RationalVector offset = lambda - k;
    Polygon expect;
    if (d.rank() == 1) {
      Rational lo = std::max(vor[0][0] + offset[0], region[0][0]);
      Rational hi = std::min(vor[1][0] + offset[0], region[1][0]);
      expect = {RationalVector{lo}, RationalVector{hi}};
      if (!(expect == cell.vertices))
        throw TheoremViolation("rank-1 cell " + vector_str(cell.vertices[0]) + ".." +
                               vector_str(cell.vertices[1]) + " is not a shifted Voronoi cell");
    } else {
      Polygon shifted;
      for (const auto& v : vor) shifted.push_back(v + offset);
      expect = shifted;
      for (std::size_t e = 0; e < region.size(); ++e) {
        const auto& a = region[e];
        const auto& b = region[(e + 1) % region.size()];
        // Inner side of a counterclockwise edge: cross(b - a, x - a) >= 0.
        RationalVector n = {b[1] - a[1], a[0] - b[0]};
        expect = geometry::clip(expect, n, dot(n, a));
      }
      if (!geometry::same_polygon(expect, cell.vertices))
        throw TheoremViolation("cell around " + vector_str(c) + " is not a shifted Voronoi cell");
    }
    ++matched;
  }
  return matched;
}

}  // namespace tropheight
