#pragma once

// Property suites shared by `tropheight verify` and the acceptance binary.
// Each suite checks library output against an independent oracle (box
// search, Fourier-term closed forms, Tate parameters, the doubling limit)
// with a fixed seed. The oracles stay here, outside the library headers.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tropheight/degeneration/component_group.hpp"
#include "tropheight/elliptic/tate.hpp"
#include "tropheight/exact/bernoulli.hpp"
#include "tropheight/global/curve_search.hpp"
#include "tropheight/tropical/characteristic.hpp"
#include "tropheight/tropical/quantization.hpp"
#include "tropheight/tropical/riemann.hpp"
#include "tropheight/tropical/synthetic.hpp"

namespace tropheight::verify {

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::vector<std::string> failures;  // counterexamples, one per failed case
  std::string detail;                 // summary numbers (max error, ...)
  double seconds = 0;                 // not part of the JSON output

  explicit SuiteResult(std::string n) : name(std::move(n)) {}

  bool passed() const { return failures.empty() && cases > 0; }
  void check(bool ok, const std::function<std::string()>& what) {
    ++cases;
    if (!ok) failures.push_back(what());
  }
};

struct Tolerances {
  double tate_limit = 1e-6;     // archimedean limit vs -(1/12) log|Delta|
  double global = 1e-6;         // |global_sum - hhat_x / 2|
  double doubling_ratio = 1e-5; // |global(2P) / global(P) - 4|
  double torsion = 1e-8;        // |global_sum| for torsion points
};

namespace oracle {

// Exhaustive min over u' in [-radius, radius]^g of (y + u')^T G (y + u').
inline Rational box_minimum(const IntMatrix& gram, const RationalVector& y, int radius) {
  std::size_t g = y.size();
  RatMatrix gr = to_rational(gram);
  std::optional<Rational> best;
  std::vector<int> c(g, -radius);
  for (;;) {
    RationalVector w = y;
    for (std::size_t i = 0; i < g; ++i) w[i] += Rational(c[i]);
    Rational v = bilinear(gr, w, w);
    if (!best || v < *best) best = v;
    std::size_t i = 0;
    while (i < g && c[i] == radius) c[i++] = -radius;
    if (i == g) break;
    ++c[i];
  }
  return *best;
}

inline Rational random_unit(std::mt19937_64& rng, long p, long span = 40) {
  std::uniform_int_distribution<long> d(-span, span), e(1, span);
  for (;;) {
    long a = d(rng), b = e(rng);
    if (a != 0 && a % p != 0 && b % p != 0) return Rational(Integer(a), Integer(b));
  }
}

struct TateInstance {
  long p, ell, vz;
  PadicElement q, z;
};

// q = p^ell * unit; z = p^vz * unit, or 1 + p^k * unit near the identity.
inline TateInstance random_tate_instance(std::mt19937_64& rng, long prec) {
  static const long primes[] = {2, 3, 5, 7};
  long p = primes[rng() % 4];
  long ell = 1 + static_cast<long>(rng() % 6);
  long vz = static_cast<long>(rng() % ell);
  Integer P(p);
  Rational q = prime_power(P, ell) * random_unit(rng, p);
  Rational z(1);
  while (z == Rational(1)) {
    if (vz == 0 && rng() % 3 == 0)
      z = Rational(1) + prime_power(P, 1 + static_cast<long>(rng() % 3)) * random_unit(rng, p);
    else
      z = prime_power(P, vz) * random_unit(rng, p);
  }
  return {p, ell, vz, PadicElement(P, q, prec), PadicElement(P, z, prec)};
}

// Closed form of the normalized rank-1 tropical theta.
inline Rational tate_closed_form(long ell, const Rational& nu) {
  Rational t = nu / Rational(ell);
  return Rational(ell, 2) * bernoulli2(t.frac()) - Rational(ell, 12);
}

}  // namespace oracle

// Suites.

inline SuiteResult tate_closed_form(std::uint64_t seed) {
  SuiteResult r{"tate-closed-form"};
  std::mt19937_64 rng(seed);
  for (long ell = 1; ell <= 10; ++ell) {
    TropicalTheta th = tate_theta(ell);
    std::uniform_int_distribution<long> den(1, 30);
    for (int i = 0; i < 50; ++i) {
      long d = den(rng);
      std::uniform_int_distribution<long> num(0, ell * d);
      Rational nu(Integer(num(rng)), Integer(d));
      Rational got = th.eval_norm({nu});
      Rational want = oracle::tate_closed_form(ell, nu);
      r.check(got == want, [&] {
        return "ell=" + std::to_string(ell) + " nu=" + nu.str() + ": " + got.str() + " vs " + want.str();
      });
    }
  }
  return r;
}

inline SuiteResult psi_shift(std::uint64_t) {
  SuiteResult r{"psi-shift"};
  for (long ell = 1; ell <= 10; ++ell) {
    TropicalTheta th = tate_theta(ell);
    TropicalRiemannTheta psi(th.data());
    for (int j = 0; j < 100; ++j) {
      Rational nu = Rational(-ell) + Rational(Integer(3 * ell * j), Integer(100));
      Rational got = th.eval_f_trop({nu});
      Rational want = psi.psi({nu - Rational(ell, 2)});
      r.check(got == want, [&] {
        return "ell=" + std::to_string(ell) + " nu=" + nu.str() + ": " + got.str() + " vs " + want.str();
      });
    }
  }
  return r;
}

inline std::vector<SyntheticDatum> synthetic_sets(std::uint64_t seed, int count = 20) {
  std::mt19937_64 rng(seed);
  std::vector<SyntheticDatum> out;
  for (int i = 0; i < count; ++i) out.push_back(synthetic_principal(1 + i % 3, rng, 25));
  return out;
}

inline SuiteResult characteristic(std::uint64_t seed) {
  SuiteResult r{"characteristic"};
  int idx = 0;
  for (const SyntheticDatum& s : synthetic_sets(seed)) {
    const DegenerationData& d = s.theta.data();
    std::string tag = "set " + std::to_string(idx++) + " (rank " + std::to_string(d.rank()) + ")";
    try {
      ThetaCharacteristic c = theta_characteristic(s.theta, 50);
      bool ok = c.points_checked >= 50 && is_integral(scale(Rational(2), c.k)) && c.k == s.k &&
                is_integral(d.to_y(c.k - c.kappa)) && is_integral(d.to_y(c.kappa - s.k)) &&
                c.r_prime == s.r_prime;
      r.check(ok, [&] { return tag + ": k = " + vector_str(c.k) + ", expected " + vector_str(s.k); });
    } catch (const std::exception& e) {
      r.check(false, [&] { return tag + ": " + e.what(); });
    }
  }
  return r;
}

inline SuiteResult quantization(std::uint64_t seed) {
  SuiteResult r{"quantization"};
  int idx = 0;
  for (const SyntheticDatum& s : synthetic_sets(seed)) {
    std::string tag = "set " + std::to_string(idx++);
    // Quantization concerns integral coefficients; the synthetic offset r'
    // has a denominator, so round it away.
    QuantizationReport q = quantization_check(with_integral_coefficients(s.theta));
    Rational two_n(Integer(2 * q.n));
    for (std::size_t i = 0; i < q.values.size(); ++i) {
      bool ok = (q.values[i] * two_n).is_integer();
      r.check(ok, [&] {
        return tag + ": value " + q.values[i].str() + " at " + vector_str(q.points[i]) +
               " not in (1/" + two_n.str() + ")Z";
      });
    }
  }
  return r;
}

inline SuiteResult cvp(std::uint64_t seed) {
  SuiteResult r{"cvp"};
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t g = 1 + trial % 4;
    IntMatrix gram = random_positive_definite(g, rng, 25);
    // Rank-g data with M = G, l = G_ii mod 2, nu uniform in the cell.
    IntVector l(g);
    for (std::size_t i = 0; i < g; ++i) l[i] = mpz_odd_p(gram(i, i).get_mpz_t()) ? 1 : 0;
    DegenerationData d(gram, gram, l);
    std::uniform_int_distribution<long> num(0, 143);
    RationalVector y(g);
    for (auto& x : y) x = Rational(Integer(num(rng)), Integer(144));
    RationalVector nu = d.to_x_star(y);
    Rational got = norm_trop_riemann_theta(d, nu);
    Rational want = oracle::box_minimum(gram, y, 4) / Rational(2);
    r.check(got == want, [&] {
      return "rank " + std::to_string(g) + " y=" + vector_str(y) + ": " + got.str() + " vs " + want.str();
    });
  }
  return r;
}

inline SuiteResult tate_dual_route(std::uint64_t seed) {
  SuiteResult r{"tate-dual-route"};
  std::mt19937_64 rng(seed);
  const long prec = 60, M = 30;
  for (int n = 0; n < 20; ++n) {
    oracle::TateInstance t = oracle::random_tate_instance(rng, prec);
    Integer P(t.p);
    std::string tag = "p=" + std::to_string(t.p) + " ell=" + std::to_string(t.ell) +
                      " v(z)=" + std::to_string(t.vz);
    try {
      WeierstrassCurve e = tate_curve(t.q).approx_curve();
      CurvePoint pt = tate_point(t.q, t.z, M).approx();
      Rational got = local_height_split_mult(e, P, pt).lambda_prime;
      Rational want = local_height_via_tate_z(t.q, t.z);
      r.check(got == want, [&] { return tag + ": " + got.str() + " vs " + want.str(); });
    } catch (const std::exception& ex) {
      r.check(false, [&] { return tag + ": " + ex.what(); });
    }
  }
  return r;
}

inline SuiteResult tate_limit(std::uint64_t, const Tolerances& tol = {}) {
  SuiteResult r{"tate-limit"};
  // Non-archimedean: along z = 1 + p^n the sequence lambda' - v(x/y) is
  // constant, equal to v(Delta)/12.
  for (long p : {2, 3, 5, 7}) {
    Integer P(p);
    for (long ell = 1; ell <= 4; ++ell) {
      PadicElement q(P, prime_power(P, ell) * Rational(p + 1), 120);
      WeierstrassCurve e = tate_curve(q).approx_curve();
      Rational target(val_p(e.discriminant(), P).value(), 12);
      for (long n = 1; n <= 6; ++n) {
        TatePoint tp = tate_point(q, PadicElement(P, Rational(1) + prime_power(P, n), 120), 60);
        Rational lam = local_height_split_mult(e, P, tp.approx()).lambda_prime;
        Rational g = lam - Rational((tp.x / tp.y).valuation());
        r.check(g == target, [&] {
          return "p=" + std::to_string(p) + " ell=" + std::to_string(ell) + " n=" + std::to_string(n) +
                 ": " + g.str() + " vs " + target.str();
        });
      }
    }
  }
  // Archimedean: lambda + log|x/y| at x = 10^13 against -(1/12) log|Delta|.
  using R = Float128;
  double worst = 0;
  for (const WeierstrassCurve& e :
       {WeierstrassCurve(0, 0, 1, -1, 0), WeierstrassCurve(0, -1, 1, 0, 0),
        WeierstrassCurve(0, 1, 1, -2, 0), WeierstrassCurve(1, -1, 0, 3, 7)}) {
    ArchContext<R> c = arch_context<R>(e);
    R x = R(1e13);
    R b = c.a1 * x + c.a3;
    R f = x * x * x + c.a2 * x * x + to_real<R>(e.a4()) * x + to_real<R>(e.a6());
    R y = (-b + sqrt(b * b + 4 * f)) / 2;
    double g = static_cast<double>(local_height_arch(c, x, y) + log(abs(x / y)));
    double target = -std::log(std::abs(e.discriminant().to_double())) / 12;
    worst = std::max(worst, std::abs(g - target));
    r.check(std::abs(g - target) < tol.tate_limit, [&] {
      return e.str() + ": limit " + std::to_string(g) + " vs " + std::to_string(target);
    });
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "max archimedean error %.3g", worst);
  r.detail = buf;
  return r;
}

inline std::vector<SearchHit> search_curves() { return CurveSearch{}.run(10, 5); }

inline SuiteResult global(std::uint64_t seed, const Tolerances& tol = {}) {
  SuiteResult r{"global"};
  RunConfig cfg;
  cfg.seed = seed;
  cfg.tolerance = tol.global;
  double worst = 0, worst_ratio = 0;
  for (const SearchHit& h : search_curves()) {
    if (h.torsion_order != 0) continue;
    std::string tag = h.curve.str() + " P=" + h.point.str();
    GlobalHeightReport g = global_height(h.curve, h.point, cfg);
    worst = std::max(worst, g.discrepancy);
    r.check(g.discrepancy < tol.global, [&] {
      return tag + ": sum " + std::to_string(g.global_sum) + " oracle " +
             std::to_string(g.oracle_value) + " discrepancy " + std::to_string(g.discrepancy);
    });
    GlobalHeightReport g2 = global_height(h.curve, h.curve.dbl(h.point), cfg);
    double ratio = g2.global_sum / g.global_sum;
    worst_ratio = std::max(worst_ratio, std::abs(ratio - 4));
    r.check(std::abs(ratio - 4) <= tol.doubling_ratio,
            [&] { return tag + ": global(2P)/global(P) = " + std::to_string(ratio); });
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "max discrepancy %.3g, max |ratio - 4| %.3g", worst, worst_ratio);
  r.detail = buf;
  return r;
}

inline SuiteResult torsion(std::uint64_t seed, const Tolerances& tol = {}) {
  SuiteResult r{"torsion"};
  RunConfig cfg;
  cfg.seed = seed;
  for (const SearchHit& h : search_curves()) {
    if (h.torsion_order == 0) continue;
    GlobalHeightReport g = global_height(h.curve, h.point, cfg);
    r.check(std::abs(g.global_sum) < tol.torsion && g.torsion, [&] {
      return h.curve.str() + " P=" + h.point.str() + " (order " + std::to_string(h.torsion_order) +
             "): global sum " + std::to_string(g.global_sum);
    });
  }
  return r;
}

inline SuiteResult good_reduction(std::uint64_t seed) {
  SuiteResult r{"good-reduction"};
  std::mt19937_64 rng(seed);
  int nonzero = 0;
  for (const SearchHit& h : search_curves()) {
    if (h.torsion_order != 0) continue;
    // A multiple of P has x-denominators at good primes, so i > 0 occurs.
    CurvePoint q = h.curve.multiply(h.point, 3);
    std::vector<Integer> disc_primes = prime_support(h.curve.discriminant());
    std::set<Integer> bad(disc_primes.begin(), disc_primes.end());
    std::vector<Integer> primes;
    for (const Integer& p : prime_divisors(q.x.den()))
      if (!bad.count(p) && primes.size() < 2) primes.push_back(p);
    std::uniform_int_distribution<long> pick(2, 500);
    while (primes.size() < 5) {
      Integer p = next_prime(Integer(pick(rng)));
      if (!bad.count(p) && std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
    }
    for (const Integer& p : primes) {
      LocalHeightReport lh = local_height(h.curve, p, q);
      Rational want(0);
      if (!q.x.is_zero()) {
        long v = val_p(q.x, p).value();
        if (v < 0) want = Rational(-v, 2);
      }
      if (want.sign() > 0) ++nonzero;
      bool ok = lh.reduction.kind == ReductionKind::Good && lh.lambda_prime == want &&
                want.is_integer() && want.sign() >= 0;
      r.check(ok, [&] {
        return h.curve.str() + " Q=3P at p=" + p.get_str() + ": " + lh.lambda_prime.str() +
               " vs " + want.str();
      });
    }
  }
  r.detail = std::to_string(nonzero) + " cases with lambda' > 0";
  return r;
}

using SuiteFn = std::function<SuiteResult(std::uint64_t)>;

inline const std::map<std::string, SuiteFn>& suites() {
  static const std::map<std::string, SuiteFn> all = {
      {"tate-closed-form", tate_closed_form},
      {"psi-shift", psi_shift},
      {"characteristic", characteristic},
      {"quantization", quantization},
      {"cvp", cvp},
      {"tate-dual-route", tate_dual_route},
      {"tate-limit", [](std::uint64_t s) { return tate_limit(s); }},
      {"global", [](std::uint64_t s) { return global(s); }},
      {"torsion", [](std::uint64_t s) { return torsion(s); }},
      {"good-reduction", good_reduction},
  };
  return all;
}

inline SuiteResult run_timed(const SuiteFn& fn, std::uint64_t seed) {
  auto t0 = std::chrono::steady_clock::now();
  SuiteResult r = fn(seed);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace tropheight::verify
