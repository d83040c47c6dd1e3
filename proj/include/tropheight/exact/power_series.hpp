#pragma once

/**
 * @file power_series.hpp
 * @brief Truncated formal power series over the rationals.
 *
 * A series of order n stores the coefficients of x^0 .. x^(n-1); everything
 * from x^n on is unknown. Binary operations truncate to the smaller order.
 */

#include <algorithm>
#include <cstddef>
#include <vector>

#include "tropheight/exact/rational.hpp"

namespace tropheight {

class PowerSeries {
 public:
  PowerSeries() = default;
  explicit PowerSeries(std::size_t order) : c_(order, Rational(0)) {}
  PowerSeries(std::vector<Rational> coeffs, std::size_t order) : c_(std::move(coeffs)) {
    c_.resize(order, Rational(0));
  }

  /// The series x truncated at the given order.
  static PowerSeries variable(std::size_t order) {
    PowerSeries s(order);
    if (order > 1) s.c_[1] = 1;
    return s;
  }

  std::size_t order() const { return c_.size(); }
  const Rational& operator[](std::size_t i) const { return c_.at(i); }
  Rational& operator[](std::size_t i) { return c_.at(i); }
  const std::vector<Rational>& coefficients() const { return c_; }

  friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
    std::size_t n = std::min(a.order(), b.order());
    PowerSeries r(n);
    for (std::size_t i = 0; i < n; ++i) r.c_[i] = a.c_[i] + b.c_[i];
    return r;
  }
  friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
    std::size_t n = std::min(a.order(), b.order());
    PowerSeries r(n);
    for (std::size_t i = 0; i < n; ++i) r.c_[i] = a.c_[i] - b.c_[i];
    return r;
  }
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    std::size_t n = std::min(a.order(), b.order());
    PowerSeries r(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; i + j < n; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
  }
  friend PowerSeries operator*(const Rational& k, PowerSeries s) {
    for (auto& c : s.c_) c *= k;
    return s;
  }

  /// Multiplicative inverse; the constant term must be nonzero.
  PowerSeries inverse() const {
    if (c_.empty() || c_[0].is_zero()) throw InputError("series inverse: constant term is zero");
    std::size_t n = order();
    PowerSeries r(n);
    Rational inv0 = Rational(1) / c_[0];
    r.c_[0] = inv0;
    for (std::size_t k = 1; k < n; ++k) {
      Rational acc(0);
      for (std::size_t i = 1; i <= k; ++i) acc += c_[i] * r.c_[k - i];
      r.c_[k] = -acc * inv0;
    }
    return r;
  }

  PowerSeries pow(unsigned e) const {
    PowerSeries r(order());
    if (order() > 0) r.c_[0] = 1;
    PowerSeries b = *this;
    while (e) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  /// this(inner(x)); inner must have zero constant term.
  PowerSeries compose(const PowerSeries& inner) const {
    if (inner.order() > 0 && !inner.c_[0].is_zero())
      throw InputError("series compose: inner series has a constant term");
    std::size_t n = std::min(order(), inner.order());
    PowerSeries r(n);
    // Horner from the top coefficient down.
    for (std::size_t k = n; k-- > 0;) {
      r = r * inner;
      r.c_[0] += c_[k];
    }
    return r;
  }

  friend bool operator==(const PowerSeries&, const PowerSeries&) = default;

 private:
  std::vector<Rational> c_;
};

/// Compositional inverse of s = s1*x + s2*x^2 + ... with s1 != 0, to the
/// same truncation order, solved one coefficient at a time.
inline PowerSeries series_compose_invert(const PowerSeries& s) {
  std::size_t n = s.order();
  if (n < 2) throw InputError("series reversion needs order >= 2");
  if (!s[0].is_zero()) throw InputError("series reversion: constant term must vanish");
  if (s[1].is_zero()) throw InputError("series reversion: linear coefficient is not a unit");
  // Find g with s(g(x)) = x. Write g = sum_{k>=1} g_k x^k and fix g_k in
  // turn: the x^k coefficient of s(g) is s1*g_k + (terms in g_1..g_{k-1}).
  PowerSeries g(n);
  g[1] = Rational(1) / s[1];
  for (std::size_t k = 2; k < n; ++k) {
    // g currently has g_k = 0, so this coefficient is exactly the rest.
    PowerSeries head(std::vector<Rational>(g.coefficients().begin(), g.coefficients().begin() + k),
                     k + 1);
    g[k] = -s.compose(head)[k] / s[1];
  }
  return g;
}

}  // namespace tropheight
