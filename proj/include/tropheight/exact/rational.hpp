#pragma once

/**
 * @file rational.hpp
 * @brief Exact rationals over GMP and p-adic valuations.
 *
 * Rational is a thin value type over mpq_class that keeps the canonical
 * form (denominator > 0, lowest terms, zero is 0/1) and hides gmpxx
 * expression templates from the rest of the library.
 */

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "tropheight/errors.hpp"

namespace tropheight {

using Integer = mpz_class;

class Rational {
 public:
  Rational() = default;
  Rational(int n) : v_(static_cast<long>(n)) {}
  Rational(long n) : v_(n) {}
  Rational(long long n) : v_(static_cast<long>(n)) {}
  static_assert(sizeof(long) == sizeof(long long), "LP64 platform expected");
  Rational(const Integer& n) : v_(n) {}
  Rational(const Integer& n, const Integer& d) {
    if (d == 0) throw InputError("rational with zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  /// Parses "n", "-n", "p/q" (surrounding whitespace allowed).
  static Rational parse(std::string_view text) {
    std::string s;
    for (char c : text)
      if (c != ' ' && c != '\t' && c != '\n') s.push_back(c);
    if (s.empty()) throw InputError("empty rational literal");
    auto slash = s.find('/');
    auto parse_int = [&](const std::string& part) {
      std::string_view body = part;
      if (!body.empty() && (body.front() == '-' || body.front() == '+'))
        body.remove_prefix(1);
      if (body.empty()) throw InputError("bad rational literal '" + s + "'");
      for (char c : body)
        if (c < '0' || c > '9') throw InputError("bad rational literal '" + s + "'");
      Integer out;
      out.set_str(part[0] == '+' ? part.substr(1) : part, 10);
      return out;
    };
    if (slash == std::string::npos) return Rational(parse_int(s));
    if (s.find('/', slash + 1) != std::string::npos)
      throw InputError("bad rational literal '" + s + "'");
    Integer n = parse_int(s.substr(0, slash));
    Integer d = parse_int(s.substr(slash + 1));
    if (d == 0) throw InputError("rational with zero denominator: '" + s + "'");
    return Rational(n, d);
  }

  Integer num() const { return v_.get_num(); }
  Integer den() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  Rational operator-() const { return Rational(mpq_class(-v_), Raw{}); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw InputError("division by zero");
    v_ /= o.v_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  Integer floor() const {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
  }
  Integer ceil() const {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
  }
  /// Nearest integer, ties toward +infinity.
  Integer round() const { return (*this + Rational(1, 2)).floor(); }
  Rational frac() const { return *this - Rational(floor()); }
  Rational abs() const { return sign() < 0 ? -*this : *this; }

  Rational pow(long e) const {
    if (e < 0) return Rational(1) / pow(-e);
    Integer n, d;
    mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(e));
    return Rational(n, d);
  }

  double to_double() const { return v_.get_d(); }

  /// log|x| for possibly huge numerators/denominators.
  double log_abs() const {
    if (is_zero()) throw InputError("log of zero");
    return log_abs_integer(v_.get_num()) - log_abs_integer(v_.get_den());
  }

  std::string str() const { return v_.get_str(); }

  static double log_abs_integer(const Integer& n) {
    long exp = 0;
    double mant = mpz_get_d_2exp(&exp, n.get_mpz_t());
    return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
  }

 private:
  struct Raw {};
  Rational(mpq_class q, Raw) : v_(std::move(q)) {}
  mpq_class v_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

using RationalVector = std::vector<Rational>;

/// p-adic valuation with +infinity as its own case rather than a sentinel.
class Valuation {
 public:
  explicit Valuation(long v) : finite_(true), value_(v) {}
  static Valuation infinity() { return Valuation(); }

  bool is_infinite() const { return !finite_; }
  long value() const {
    if (!finite_) throw PreconditionError("valuation is +infinity");
    return value_;
  }

  friend bool operator==(const Valuation& a, const Valuation& b) {
    return a.finite_ == b.finite_ && (!a.finite_ || a.value_ == b.value_);
  }
  friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
    if (!a.finite_ || !b.finite_) {
      if (a.finite_ == b.finite_) return std::strong_ordering::equal;
      return a.finite_ ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return a.value_ <=> b.value_;
  }

  std::string str() const { return finite_ ? std::to_string(value_) : "+inf"; }

 private:
  Valuation() : finite_(false), value_(0) {}
  bool finite_;
  long value_;
};

inline bool is_probable_prime(const Integer& p) {
  return p >= 2 && mpz_probab_prime_p(p.get_mpz_t(), 30) > 0;
}

namespace detail {

inline long remove_factor(Integer& n, const Integer& p) {
  if (n == 0) return 0;
  return static_cast<long>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

// No primality check; callers inside the library have already validated p.
inline Valuation valuation_unchecked(const Rational& x, const Integer& p) {
  if (x.is_zero()) return Valuation::infinity();
  Integer n = x.num(), d = x.den();
  if (n < 0) n = -n;
  long vn = remove_factor(n, p);
  long vd = remove_factor(d, p);
  return Valuation(vn - vd);
}

}  // namespace detail

inline Valuation val_p(const Rational& x, const Integer& p) {
  if (!is_probable_prime(p)) throw InputError("val_p: " + p.get_str() + " is not prime");
  return detail::valuation_unchecked(x, p);
}

inline Integer ipow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

/// p^e for any integer e, as a rational.
inline Rational prime_power(const Integer& p, long e) {
  if (e >= 0) return Rational(ipow(p, static_cast<unsigned long>(e)));
  return Rational(Integer(1), ipow(p, static_cast<unsigned long>(-e)));
}

}  // namespace tropheight

template <>
struct std::hash<tropheight::Rational> {
  std::size_t operator()(const tropheight::Rational& r) const noexcept {
    return std::hash<std::string>{}(r.str());
  }
};
