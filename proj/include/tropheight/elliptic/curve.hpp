#pragma once

/**
 * @file curve.hpp
 * @brief Weierstrass curves over Q, rational points, the group law and
 *        changes of coordinates.
 */

#include <array>
#include <string>

#include "tropheight/exact/rational.hpp"

namespace tropheight {

struct CurvePoint {
  Rational x, y;
  bool infinity = false;

  static CurvePoint at_infinity() { return {Rational(0), Rational(0), true}; }
  friend bool operator==(const CurvePoint& a, const CurvePoint& b) {
    if (a.infinity || b.infinity) return a.infinity == b.infinity;
    return a.x == b.x && a.y == b.y;
  }
  std::string str() const { return infinity ? "O" : "(" + x.str() + ", " + y.str() + ")"; }
};

/// x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.
struct ModelChange {
  Rational u{1}, r{0}, s{0}, t{0};

  /// First apply *this, then `next` (coordinates of the final model).
  ModelChange then(const ModelChange& next) const {
    return {u * next.u, r + u * u * next.r, s + u * next.s,
            t + u * u * u * next.t + s * u * u * next.r};
  }
};

class WeierstrassCurve {
 public:
  WeierstrassCurve(Rational a1, Rational a2, Rational a3, Rational a4, Rational a6)
      : a_{std::move(a1), std::move(a2), std::move(a3), std::move(a4), std::move(a6)} {
    b2_ = a1_() * a1_() + Rational(4) * a2_();
    b4_ = Rational(2) * a4_() + a1_() * a3_();
    b6_ = a3_() * a3_() + Rational(4) * a6_();
    b8_ = a1_() * a1_() * a6_() + Rational(4) * a2_() * a6_() - a1_() * a3_() * a4_() +
          a2_() * a3_() * a3_() - a4_() * a4_();
    c4_ = b2_ * b2_ - Rational(24) * b4_;
    c6_ = -b2_ * b2_ * b2_ + Rational(36) * b2_ * b4_ - Rational(216) * b6_;
    disc_ = -b2_ * b2_ * b8_ - Rational(8) * b4_ * b4_ * b4_ - Rational(27) * b6_ * b6_ +
            Rational(9) * b2_ * b4_ * b6_;
    if (disc_.is_zero()) throw InputError("singular Weierstrass equation (discriminant 0)");
    j_ = c4_ * c4_ * c4_ / disc_;
  }

  const Rational& a1() const { return a_[0]; }
  const Rational& a2() const { return a_[1]; }
  const Rational& a3() const { return a_[2]; }
  const Rational& a4() const { return a_[3]; }
  const Rational& a6() const { return a_[4]; }
  const std::array<Rational, 5>& coefficients() const { return a_; }
  const Rational& b2() const { return b2_; }
  const Rational& b4() const { return b4_; }
  const Rational& b6() const { return b6_; }
  const Rational& b8() const { return b8_; }
  const Rational& c4() const { return c4_; }
  const Rational& c6() const { return c6_; }
  const Rational& discriminant() const { return disc_; }
  const Rational& j() const { return j_; }

  /// y^2 + a1 xy + a3 y - (x^3 + a2 x^2 + a4 x + a6).
  Rational residual(const Rational& x, const Rational& y) const {
    return y * y + a1() * x * y + a3() * y - (x * x * x + a2() * x * x + a4() * x + a6());
  }
  bool contains(const CurvePoint& p) const { return p.infinity || residual(p.x, p.y).is_zero(); }

  /// 2y + a1 x + a3, the y-derivative of the equation.
  Rational psi2(const CurvePoint& p) const { return Rational(2) * p.y + a1() * p.x + a3(); }
  /// 3x^2 + 2 a2 x + a4 - a1 y, minus the x-derivative of the equation.
  Rational phi_x(const CurvePoint& p) const {
    return Rational(3) * p.x * p.x + Rational(2) * a2() * p.x + a4() - a1() * p.y;
  }

  CurvePoint negate(const CurvePoint& p) const {
    if (p.infinity) return p;
    return {p.x, -p.y - a1() * p.x - a3(), false};
  }

  CurvePoint add(const CurvePoint& p, const CurvePoint& q) const {
    if (p.infinity) return q;
    if (q.infinity) return p;
    Rational lambda, nu;
    if (p.x == q.x) {
      if (p.y + q.y + a1() * q.x + a3() == Rational(0)) return CurvePoint::at_infinity();
      Rational den = psi2(p);
      lambda = (Rational(3) * p.x * p.x + Rational(2) * a2() * p.x + a4() - a1() * p.y) / den;
      nu = (-p.x * p.x * p.x + a4() * p.x + Rational(2) * a6() - a3() * p.y) / den;
    } else {
      lambda = (q.y - p.y) / (q.x - p.x);
      nu = (p.y * q.x - q.y * p.x) / (q.x - p.x);
    }
    Rational x3 = lambda * lambda + a1() * lambda - a2() - p.x - q.x;
    Rational y3 = -(lambda + a1()) * x3 - nu - a3();
    return {x3, y3, false};
  }

  CurvePoint dbl(const CurvePoint& p) const { return add(p, p); }

  CurvePoint multiply(const CurvePoint& p, long n) const {
    if (n < 0) return multiply(negate(p), -n);
    CurvePoint acc = CurvePoint::at_infinity(), base = p;
    while (n > 0) {
      if (n & 1) acc = add(acc, base);
      n >>= 1;
      if (n) base = dbl(base);
    }
    return acc;
  }

  /// The curve in the new coordinates of a change x = u^2 x' + r, ...
  WeierstrassCurve transformed(const ModelChange& c) const {
    const Rational &u = c.u, &r = c.r, &s = c.s, &t = c.t;
    if (u.is_zero()) throw InputError("model change with u = 0");
    Rational u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u3 * u3;
    Rational n1 = a1() + Rational(2) * s;
    Rational n2 = a2() - s * a1() + Rational(3) * r - s * s;
    Rational n3 = a3() + r * a1() + Rational(2) * t;
    Rational n4 = a4() - s * a3() + Rational(2) * r * a2() - (t + r * s) * a1() +
                  Rational(3) * r * r - Rational(2) * s * t;
    Rational n6 = a6() + r * a4() + r * r * a2() + r * r * r - t * a3() - t * t - r * t * a1();
    return WeierstrassCurve(n1 / u, n2 / u2, n3 / u3, n4 / u4, n6 / u6);
  }

  static CurvePoint map_point(const ModelChange& c, const CurvePoint& p) {
    if (p.infinity) return p;
    Rational u2 = c.u * c.u;
    Rational xn = (p.x - c.r) / u2;
    Rational yn = (p.y - c.s * u2 * xn - c.t) / (u2 * c.u);
    return {xn, yn, false};
  }
  static CurvePoint unmap_point(const ModelChange& c, const CurvePoint& p) {
    if (p.infinity) return p;
    Rational u2 = c.u * c.u;
    return {u2 * p.x + c.r, u2 * c.u * p.y + c.s * u2 * p.x + c.t, false};
  }

  std::string str() const {
    return "[" + a1().str() + ", " + a2().str() + ", " + a3().str() + ", " + a4().str() + ", " +
           a6().str() + "]";
  }

  friend bool operator==(const WeierstrassCurve& a, const WeierstrassCurve& b) {
    return a.a_ == b.a_;
  }

 private:
  const Rational& a1_() const { return a_[0]; }
  const Rational& a2_() const { return a_[1]; }
  const Rational& a3_() const { return a_[2]; }
  const Rational& a4_() const { return a_[3]; }
  const Rational& a6_() const { return a_[4]; }

  std::array<Rational, 5> a_;
  Rational b2_, b4_, b6_, b8_, c4_, c6_, disc_, j_;
};

}  // namespace tropheight
