#pragma once

/**
 * @file theta.hpp
 * @brief Tropicalized theta functions given by finitely many Fourier terms.
 *
 * f_trop(nu) = min over u of (a_u + <u, nu>). The Fourier coefficients of a
 * theta function are tied together by the Y-action
 *
 *     a_{u - Phi u'} = a_u - c_trop(u') - <u - Phi u', M u'>,
 *
 * so a finite list of base terms determines the whole family. The effective
 * term set is the base terms together with all their translates by
 * u' in [-margin, margin]^g. A point is evaluated after reduction into the
 * fundamental parallelotope M [0,1)^g; if every minimizing term there only
 * arises on the outermost layer (|u'|_inf = margin), the term window may be
 * too small and evaluation refuses with InsufficientTerms.
 */

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "tropheight/degeneration/degeneration.hpp"

namespace tropheight {

struct FourierTerm {
  IntVector u;  // X-coordinates
  Rational a;
};

struct EffectiveTerm {
  IntVector u;
  Rational a;
  int layer = 0;  // smallest |u'|_inf over the translates producing this term
};

namespace detail {

/// Calls fn(u') for every u' in [-r, r]^g, with its sup norm.
template <class Fn>
void for_each_in_box(std::size_t g, int r, Fn&& fn) {
  std::vector<int> c(g, -r);
  for (;;) {
    IntVector u(g);
    int layer = 0;
    for (std::size_t i = 0; i < g; ++i) {
      u[i] = c[i];
      layer = std::max(layer, std::abs(c[i]));
    }
    fn(u, layer);
    std::size_t i = 0;
    while (i < g && c[i] == r) c[i++] = -r;
    if (i == g) return;
    ++c[i];
  }
}

}  // namespace detail

/// Fourier index and coefficient of term (u, a) translated by u' in Y.
inline FourierTerm translate_term(const DegenerationData& d, const FourierTerm& t,
                                  const IntVector& shift) {
  IntVector w = t.u - d.phi() * shift;
  Rational a = t.a - d.c_trop(shift) - Rational(dot(w, d.to_x_star(shift)));
  return {std::move(w), std::move(a)};
}

class TropicalTheta {
 public:
  TropicalTheta(DegenerationData data, std::vector<FourierTerm> terms, int margin = 1)
      : d_(std::move(data)), base_(std::move(terms)), margin_(margin) {
    if (base_.empty()) throw InputError("tropical theta needs at least one Fourier term");
    if (margin_ < 1) throw InputError("tropical theta margin must be at least 1");
    std::map<IntVector, std::size_t> seen;
    for (const auto& t : base_) {
      if (t.u.size() != d_.rank())
        throw InputError("Fourier index " + vector_str(t.u) + " has the wrong length");
      if (!seen.emplace(t.u, 0).second)
        throw InputError("duplicate Fourier index " + vector_str(t.u));
    }
    build_effective();
  }

  const DegenerationData& data() const { return d_; }
  const std::vector<FourierTerm>& base_terms() const { return base_; }
  int margin() const { return margin_; }
  const std::vector<EffectiveTerm>& effective_terms() const { return eff_; }

  struct Reduced {
    RationalVector nu0;  // in M [0,1)^g
    IntVector shift;     // nu = nu0 + M shift
  };
  Reduced reduce(const RationalVector& nu) const {
    IntVector f = floor_vector(d_.to_y(nu));
    RationalVector nu0 = nu - d_.to_x_star(to_rational(f));
    return {std::move(nu0), std::move(f)};
  }

  /// Minimum over the effective terms at a point of the fundamental
  /// parallelotope, with the index of a certified minimizer.
  struct LocalMin {
    Rational value;
    std::size_t term = 0;
  };
  LocalMin eval_fundamental(const RationalVector& nu0) const {
    LocalMin best;
    bool have = false, certified = false;
    for (std::size_t i = 0; i < eff_.size(); ++i) {
      Rational v = eff_[i].a + dot(eff_[i].u, nu0);
      bool inner = eff_[i].layer < margin_;
      if (!have || v < best.value) {
        best = {v, i};
        have = true;
        certified = inner;
      } else if (v == best.value && inner && !certified) {
        best.term = i;
        certified = true;
      }
    }
    if (!certified)
      throw InsufficientTerms("term window of margin " + std::to_string(margin_) +
                              " does not certify the minimum at " + vector_str(nu0) +
                              "; add Fourier terms or raise the margin");
    return best;
  }

  /// f_trop(nu) = f_trop(nu0) - z_shift(nu0).
  Rational eval_f_trop(const RationalVector& nu) const {
    Reduced r = reduce(nu);
    return eval_fundamental(r.nu0).value - d_.cocycle_z(r.shift, r.nu0);
  }

  /// ||f_trop|| = f_trop + c_trop extended quadratically.
  Rational eval_norm(const RationalVector& nu) const {
    Reduced r = reduce(nu);
    // Y-invariant, so the reduced point gives the same value.
    return eval_fundamental(r.nu0).value + d_.c_trop_real(r.nu0);
  }

  /// Base terms together with translates up to the given radius, deduplicated
  /// by keeping the smaller coefficient.
  std::vector<FourierTerm> expanded_terms(int radius) const {
    std::map<IntVector, Rational> acc;
    for (const auto& t : base_)
      detail::for_each_in_box(d_.rank(), radius, [&](const IntVector& s, int) {
        FourierTerm w = translate_term(d_, t, s);
        auto [it, fresh] = acc.emplace(w.u, w.a);
        if (!fresh && w.a < it->second) it->second = w.a;
      });
    std::vector<FourierTerm> out;
    for (auto& [u, a] : acc) out.push_back({u, a});
    return out;
  }

 private:
  void build_effective() {
    std::map<IntVector, std::size_t> index;
    for (const auto& t : base_)
      detail::for_each_in_box(d_.rank(), margin_, [&](const IntVector& s, int layer) {
        FourierTerm w = translate_term(d_, t, s);
        auto it = index.find(w.u);
        if (it == index.end()) {
          index.emplace(w.u, eff_.size());
          eff_.push_back({std::move(w.u), std::move(w.a), layer});
          return;
        }
        EffectiveTerm& e = eff_[it->second];
        if (w.a < e.a || (w.a == e.a && layer < e.layer)) {
          e.a = w.a;
          e.layer = layer;
        }
      });
  }

  DegenerationData d_;
  std::vector<FourierTerm> base_;
  int margin_;
  std::vector<EffectiveTerm> eff_;
};

/// Fourier terms of the rank-1 theta function of a Tate curve with v(q) = ell:
/// a_u = ell (u^2 - u) / 2 for |u| <= radius.
inline TropicalTheta tate_theta(long ell, long radius = 4, int margin = 1) {
  std::vector<FourierTerm> terms;
  for (long u = -radius; u <= radius; ++u)
    terms.push_back({IntVector{Integer(u)}, Rational(ell * (u * u - u), 2)});
  return TropicalTheta(tate_degeneration(ell), std::move(terms), margin);
}

/// ||(f1 (x) f2)_trop|| = ||f1|| + ||f2||. Both factors must share Y inside X*
/// (the same M); G, l and Phi add. The product's base terms pair each base
/// term of f1 with a window of translates of f2, wide enough that the
/// minimizing pair at any point of the fundamental domain is present.
inline TropicalTheta tensor_normalized(const TropicalTheta& t1, const TropicalTheta& t2) {
  const auto& d1 = t1.data();
  const auto& d2 = t2.data();
  if (d1.rank() != d2.rank())
    throw InputError("tensor product of tropical thetas of different ranks");
  if (!(d1.embedding() == d2.embedding()))
    throw InputError("tensor product needs the same lattice Y in X* (equal M)");
  DegenerationData d(d1.embedding(), d1.gram() + d2.gram(), d1.linear_part() + d2.linear_part());
  std::map<IntVector, Rational> acc;
  for (const auto& a : t1.base_terms())
    for (const auto& b : t2.expanded_terms(t1.margin() + t2.margin())) {
      IntVector u = a.u + b.u;
      Rational c = a.a + b.a;
      auto [it, fresh] = acc.emplace(u, c);
      if (!fresh && c < it->second) it->second = c;
    }
  std::vector<FourierTerm> terms;
  for (auto& [u, a] : acc) terms.push_back({u, a});
  return TropicalTheta(std::move(d), std::move(terms), std::max(t1.margin(), t2.margin()));
}

}  // namespace tropheight
