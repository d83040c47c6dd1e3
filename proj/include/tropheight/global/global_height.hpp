#pragma once

/**
 * @file global_height.hpp
 * @brief Sum of normalized local heights over all places, compared with
 *        the doubling oracle.
 *
 * sum_p lambda'_p(P) log p + lambda'_inf(P) = hhat_x(P) / 2, where
 * hhat_x = lim 4^-n h(x([2^n] P)).
 */

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tropheight/arch/arch_local.hpp"
#include "tropheight/elliptic/local_height.hpp"
#include "tropheight/global/doubling_oracle.hpp"

namespace tropheight {

struct RunConfig {
  int bits = 128;           // archimedean working precision
  int n_max = 10;           // doublings in the oracle
  double tolerance = 1e-6;  // |global_sum - oracle|
  std::uint64_t seed = 1;   // good-prime spot checks
};

struct GlobalHeightReport {
  WeierstrassCurve curve;
  CurvePoint point;
  std::vector<LocalHeightReport> finite;  // places with possibly nonzero lambda'
  std::vector<Integer> spot_checked;      // good primes confirmed to give 0
  ArchHeight arch{};
  double finite_sum = 0;
  double global_sum = 0;
  bool torsion = false;
  double oracle_value = 0;  // hhat_x / 2
  double discrepancy = 0;
  double tolerance = 0;

  bool passed() const { return discrepancy <= tolerance; }
};

/// Primes where lambda' can be nonzero: bad primes of the minimal model and
/// primes in the denominator of x there. Both divide Delta, a denominator of
/// some a_i, or the denominator of x on the given model.
inline std::vector<Integer> candidate_primes(const WeierstrassCurve& e, const CurvePoint& pt) {
  std::set<Integer> s;
  for (const Integer& p : prime_support(e.discriminant())) s.insert(p);
  for (const Rational& a : e.coefficients())
    for (const Integer& p : prime_divisors(a.den())) s.insert(p);
  if (!pt.infinity)
    for (const Integer& p : prime_divisors(pt.x.den())) s.insert(p);
  return {s.begin(), s.end()};
}

/// Primes of additive reduction; empty for semistable curves.
inline std::vector<Integer> additive_primes(const WeierstrassCurve& e) {
  std::vector<Integer> out;
  for (const Integer& p : prime_support(e.discriminant())) {
    MinimalModel mm = minimal_model_at(e, p);
    if (reduction_type(mm.curve, p).kind == ReductionKind::Additive) out.push_back(p);
  }
  return out;
}

namespace detail {

inline std::string join_primes(const std::vector<Integer>& ps) {
  std::string s;
  for (const Integer& p : ps) s += (s.empty() ? "" : ", ") + p.get_str();
  return s;
}

}  // namespace detail

inline GlobalHeightReport global_height(const WeierstrassCurve& e, const CurvePoint& pt,
                                        const RunConfig& cfg = {}) {
  if (!e.contains(pt)) throw InputError("point " + pt.str() + " is not on " + e.str());
  if (pt.infinity) throw PreconditionError("global height of O: the point lies on the divisor");
  if (!(cfg.tolerance > 0)) throw InputError("tolerance must be positive");
  std::vector<Integer> additive = additive_primes(e);
  if (!additive.empty())
    throw PreconditionError("additive reduction at " + detail::join_primes(additive) +
                            "; only semistable curves are supported");

  GlobalHeightReport rep{e, pt, {}, {}};
  std::vector<Integer> cands = candidate_primes(e, pt);
  for (const Integer& p : cands) {
    LocalHeightReport lh = local_height(e, p, pt);
    rep.finite_sum += lh.real_value();
    if (!lh.lambda_prime.is_zero() || lh.reduction.kind != ReductionKind::Good)
      rep.finite.push_back(lh);
  }

  // Off the candidate list lambda' must vanish; spot check a few good primes.
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<long> pick(5, 2000);
  while (rep.spot_checked.size() < 5) {
    Integer p = next_prime(Integer(pick(rng)));
    if (std::find(cands.begin(), cands.end(), p) != cands.end()) continue;
    if (std::find(rep.spot_checked.begin(), rep.spot_checked.end(), p) != rep.spot_checked.end())
      continue;
    LocalHeightReport lh = local_height(e, p, pt);
    if (!lh.lambda_prime.is_zero() || lh.reduction.kind != ReductionKind::Good)
      throw TheoremViolation("nonzero local height or bad reduction at " + p.get_str() +
                             ", which is off the candidate list");
    rep.spot_checked.push_back(p);
  }

  rep.arch = local_height_arch(e, pt, cfg.bits);
  rep.global_sum = rep.finite_sum + rep.arch.value;

  DoublingEstimate oracle = doubling_oracle(e, pt, cfg.n_max);
  rep.torsion = oracle.torsion;
  rep.oracle_value = oracle.half();
  rep.discrepancy = std::abs(rep.global_sum - rep.oracle_value);
  rep.tolerance = cfg.tolerance;
  return rep;
}

}  // namespace tropheight
