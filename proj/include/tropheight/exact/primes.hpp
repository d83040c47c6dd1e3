#pragma once

/**
 * @file primes.hpp
 * @brief Integer factorization and small prime helpers.
 *
 * Trial division strips small factors, Pollard-Brent rho handles the
 * remaining cofactor. Discriminants of desk-scale curves factor instantly.
 */

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <vector>

#include "tropheight/exact/rational.hpp"

namespace tropheight {

namespace detail {

inline Integer pollard_brent(const Integer& n, unsigned long seed) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  Integer y = 2 + seed, c = 1 + seed, m = 128, g = 1, r = 1, q = 1, x, ys;
  auto f = [&](const Integer& v) {
    Integer t = v * v + c;
    mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
    return t;
  };
  while (g == 1) {
    x = y;
    for (Integer i = 0; i < r; ++i) y = f(y);
    Integer k = 0;
    while (k < r && g == 1) {
      ys = y;
      Integer lim = std::min(m, Integer(r - k));
      for (Integer i = 0; i < lim; ++i) {
        y = f(y);
        Integer diff = x - y;
        q = q * abs(diff);
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += m;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = f(ys);
      Integer diff = abs(Integer(x - ys));
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g;
}

inline void factor_into(Integer n, std::map<Integer, int>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    ++out[n];
    return;
  }
  for (unsigned long seed = 0;; ++seed) {
    Integer d = pollard_brent(n, seed);
    if (d != n && d != 1) {
      factor_into(d, out);
      factor_into(Integer(n / d), out);
      return;
    }
  }
}

}  // namespace detail

/// Prime factorization of |n| (n != 0) as prime -> exponent.
inline std::map<Integer, int> factor(Integer n) {
  if (n == 0) throw InputError("factor: zero has no factorization");
  if (n < 0) n = -n;
  std::map<Integer, int> out;
  for (unsigned long p = 2; p < 10000 && Integer(p) * p <= n; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      ++out[Integer(p)];
      n /= p;
    }
  }
  detail::factor_into(n, out);
  return out;
}

inline std::vector<Integer> prime_divisors(const Integer& n) {
  std::vector<Integer> out;
  for (const auto& [p, e] : factor(n)) out.push_back(p);
  return out;
}

/// Prime divisors of numerator and denominator together, ascending.
inline std::vector<Integer> prime_support(const Rational& x) {
  std::map<Integer, int> all = factor(x.num() == 0 ? Integer(1) : x.num());
  for (const auto& [p, e] : factor(x.den())) all[p] += e;
  std::vector<Integer> out;
  for (const auto& [p, e] : all) out.push_back(p);
  return out;
}

inline Integer next_prime(const Integer& n) {
  Integer r;
  mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

/// Legendre symbol (a / p) for odd prime p.
inline int legendre(const Integer& a, const Integer& p) {
  return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

/// x mod p for a rational x with denominator prime to p; result in [0, p^k).
inline Integer reduce_mod(const Rational& x, const Integer& modulus) {
  Integer inv;
  Integer d = x.den();
  if (mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), modulus.get_mpz_t()) == 0)
    throw PreconditionError("reduce_mod: denominator not invertible mod " + modulus.get_str());
  Integer r = x.num() * inv;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

}  // namespace tropheight
