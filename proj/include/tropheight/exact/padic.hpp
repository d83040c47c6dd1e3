#pragma once

/**
 * @file padic.hpp
 * @brief Truncated p-adic numbers: an exact rational approximation plus
 *        a certified absolute precision.
 *
 * An element is known modulo p^N where N is its absolute precision. A
 * nonzero element is stored as p^v * u with 0 < u < p^(N-v) and p not
 * dividing u. When every known digit is zero the element is "zero to
 * precision": its valuation is only bounded below by N.
 *
 * Precision is pessimistic: results never claim digits the inputs did
 * not determine.
 */

#include <gmpxx.h>

#include <algorithm>
#include <string>

#include "tropheight/exact/rational.hpp"

namespace tropheight {

class PadicElement {
 public:
  /// x known modulo p^abs_prec. x must be p-integral up to its valuation
  /// (any rational whose denominator is handled by the valuation works).
  PadicElement(const Integer& p, const Rational& x, long abs_prec) : p_(p), n_(abs_prec) {
    if (!is_probable_prime(p)) throw InputError("PadicElement: " + p.get_str() + " is not prime");
    set_from(x);
  }

  static PadicElement zero(const Integer& p, long abs_prec) {
    return PadicElement(p, Rational(0), abs_prec);
  }

  const Integer& prime() const { return p_; }
  long absolute_precision() const { return n_; }
  bool is_zero() const { return zero_; }

  /// Exact valuation; throws if the element is zero to precision.
  long valuation() const {
    if (zero_) throw PrecisionError("valuation of an element that is zero mod p^" + std::to_string(n_));
    return v_;
  }
  /// Lower bound on the valuation, valid for every element.
  long valuation_lower_bound() const { return zero_ ? n_ : v_; }

  long relative_precision() const { return zero_ ? 0 : n_ - v_; }

  /// Unit part in [1, p^rel); 0 for zero-to-precision elements.
  const Integer& unit() const { return u_; }

  /// Representative p^v * u as an exact rational.
  Rational approx() const {
    if (zero_) return Rational(0);
    return Rational(u_) * prime_power(p_, v_);
  }

  /// Whether the exact rational x is congruent to this element mod p^N.
  bool agrees_with(const Rational& x) const {
    Rational d = x - approx();
    if (d.is_zero()) return true;
    return detail::valuation_unchecked(d, p_).value() >= n_;
  }

  PadicElement operator-() const {
    PadicElement r = *this;
    if (!zero_) r.set_from(-approx());
    return r;
  }

  friend PadicElement operator+(const PadicElement& a, const PadicElement& b) {
    a.check_same_prime(b);
    return PadicElement(Trusted{}, a.p_, a.approx() + b.approx(), std::min(a.n_, b.n_));
  }
  friend PadicElement operator-(const PadicElement& a, const PadicElement& b) { return a + (-b); }

  friend PadicElement operator*(const PadicElement& a, const PadicElement& b) {
    a.check_same_prime(b);
    long va = a.valuation_lower_bound(), vb = b.valuation_lower_bound();
    long n = std::min(va + b.n_, vb + a.n_);
    if (a.zero_ || b.zero_) return PadicElement(Trusted{}, a.p_, Rational(0), n);
    return PadicElement(Trusted{}, a.p_, a.approx() * b.approx(), n);
  }

  friend PadicElement operator/(const PadicElement& a, const PadicElement& b) {
    a.check_same_prime(b);
    if (b.zero_)
      throw PrecisionError("division by an element that is zero mod p^" + std::to_string(b.n_));
    if (a.zero_) return PadicElement(Trusted{}, a.p_, Rational(0), a.n_ - b.v_);
    long v = a.v_ - b.v_;
    long rel = std::min(a.relative_precision(), b.relative_precision());
    return PadicElement(Trusted{}, a.p_, a.approx() / b.approx(), v + rel);
  }

  PadicElement pow(long e) const {
    if (e < 0) {
      PadicElement d = pow(-e);
      return PadicElement(Trusted{}, p_, Rational(1), std::max(1L, d.relative_precision())) / d;
    }
    if (e == 0) return PadicElement(Trusted{}, p_, Rational(1), std::max(1L, relative_precision()));
    PadicElement r = *this, b = *this;
    --e;
    while (e > 0) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  /// Same value with precision lowered to at most n.
  PadicElement truncated(long n) const {
    if (n >= n_) return *this;
    return PadicElement(Trusted{}, p_, approx(), n);
  }

  std::string str() const {
    if (zero_) return "O(" + p_.get_str() + "^" + std::to_string(n_) + ")";
    return approx().str() + " + O(" + p_.get_str() + "^" + std::to_string(n_) + ")";
  }

 private:
  struct Trusted {};
  PadicElement(Trusted, const Integer& p, const Rational& x, long abs_prec) : p_(p), n_(abs_prec) {
    set_from(x);
  }

  void check_same_prime(const PadicElement& o) const {
    if (p_ != o.p_) throw InputError("p-adic operands with different primes");
  }

  void set_from(const Rational& x) {
    if (x.is_zero()) {
      zero_ = true;
      v_ = 0;
      u_ = 0;
      return;
    }
    long v = detail::valuation_unchecked(x, p_).value();
    if (v >= n_) {
      zero_ = true;
      v_ = 0;
      u_ = 0;
      return;
    }
    zero_ = false;
    v_ = v;
    Rational unit = x / prime_power(p_, v);
    Integer mod = ipow(p_, static_cast<unsigned long>(n_ - v));
    Integer inv;
    Integer den = unit.den();
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
    u_ = unit.num() * inv;
    mpz_mod(u_.get_mpz_t(), u_.get_mpz_t(), mod.get_mpz_t());
  }

  Integer p_;
  long n_;
  bool zero_ = true;
  long v_ = 0;
  Integer u_;
};

inline std::ostream& operator<<(std::ostream& os, const PadicElement& x) { return os << x.str(); }

}  // namespace tropheight
