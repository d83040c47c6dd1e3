#include <gtest/gtest.h>

#include <cmath>

#include "tropheight/global/curve_search.hpp"

using namespace tropheight;

namespace {

WeierstrassCurve curve_37a() { return WeierstrassCurve(0, 0, 1, -1, 0); }

const std::vector<SearchHit>& search_hits() {
  static const std::vector<SearchHit> hits = CurveSearch{}.run(10, 5);
  return hits;
}

}  // namespace

TEST(Doubling, TorsionCyclesToZero) {
  // (0, 0) has order 5 on 11a3.
  WeierstrassCurve e(0, -1, 1, 0, 0);
  DoublingEstimate d = doubling_oracle(e, CurvePoint{0, 0});
  EXPECT_TRUE(d.torsion);
  EXPECT_EQ(d.half(), 0.0);
  // 2-torsion: the denominator vanishes at the first step.
  WeierstrassCurve f(0, 0, 0, -1, 0);
  EXPECT_TRUE(doubling_oracle(f, CurvePoint{1, 0}).torsion);
}

TEST(Doubling, MonotoneStabilization) {
  DoublingEstimate d = doubling_oracle(curve_37a(), CurvePoint{0, 0}, 12);
  ASSERT_FALSE(d.torsion);
  ASSERT_EQ(d.estimates.size(), 13u);
  // |a_{n+1} - a_n| = |eps(2^{n+1} P) - eps(2^n P) 4| / 4^{n+1}, with eps bounded.
  for (std::size_t n = 0; n + 1 < d.estimates.size(); ++n)
    EXPECT_LT(std::abs(d.estimates[n + 1] - d.estimates[n]), 8.0 / std::pow(4.0, n)) << n;
  EXPECT_NEAR(d.half(), 0.0511114082399688 / 2, 1e-7);
}

TEST(Doubling, Errors) {
  EXPECT_THROW(doubling_oracle(curve_37a(), CurvePoint{1, 1}), InputError);
  EXPECT_THROW(doubling_oracle(curve_37a(), CurvePoint{0, 0}, 10, 64), PrecisionError);
  EXPECT_THROW(doubling_oracle(curve_37a(), CurvePoint{0, 0}, 0), InputError);
}

TEST(Global, Known37a) {
  GlobalHeightReport r = global_height(curve_37a(), CurvePoint{0, 0});
  ASSERT_EQ(r.finite.size(), 1u);
  EXPECT_EQ(r.finite[0].p, 37);
  EXPECT_EQ(r.finite[0].lambda_prime, Rational(1, 12));
  EXPECT_NEAR(r.global_sum, 0.0511114082399688 / 2, 1e-12);
  EXPECT_LT(r.discrepancy, 1e-6);
  EXPECT_EQ(r.spot_checked.size(), 5u);
}

TEST(Global, CandidatePrimesCoverDenominators) {
  WeierstrassCurve e = curve_37a();
  CurvePoint p = e.multiply(CurvePoint{0, 0}, 3);  // (-1, -1)
  CurvePoint q = e.multiply(CurvePoint{0, 0}, 5);  // (1/4, -5/8)
  EXPECT_EQ(q.x, Rational(1, 4));
  std::vector<Integer> c = candidate_primes(e, q);
  EXPECT_NE(std::find(c.begin(), c.end(), Integer(2)), c.end());
  GlobalHeightReport r = global_height(e, q);
  bool has2 = false;
  for (const auto& lh : r.finite)
    if (lh.p == 2) {
      has2 = true;
      EXPECT_EQ(lh.lambda_prime, Rational(1));
    }
  EXPECT_TRUE(has2);
  // hhat(5P) = 25 hhat(P).
  GlobalHeightReport r1 = global_height(e, p);
  EXPECT_NEAR(r.global_sum, 25 * r1.global_sum / 9, 1e-10);
}

TEST(Global, NonMinimalModelSameAnswer) {
  WeierstrassCurve e = curve_37a();
  ModelChange ch{Rational(1, 6), 2, -1, 3};
  WeierstrassCurve f = e.transformed(ch);
  CurvePoint p = WeierstrassCurve::map_point(ch, CurvePoint{0, 0});
  GlobalHeightReport r = global_height(f, p);
  EXPECT_NEAR(r.global_sum, 0.0511114082399688 / 2, 1e-12);
  // The oracle's error term h(x) - hhat grows with the scaling of the model,
  // so at n_max = 10 it only agrees to about 2e-6 here.
  EXPECT_LT(r.discrepancy, 1e-5);
}

TEST(Global, AdditiveRejectedWithPrimes) {
  // y^2 = x^3 + 1 has additive reduction at 2 and 3.
  WeierstrassCurve e(0, 0, 0, 0, 1);
  try {
    global_height(e, CurvePoint{2, 3});
    FAIL() << "expected PreconditionError";
  } catch (const PreconditionError& err) {
    std::string what = err.what();
    EXPECT_NE(what.find("2"), std::string::npos);
    EXPECT_NE(what.find("3"), std::string::npos);
  }
  EXPECT_EQ(additive_primes(e), (std::vector<Integer>{2, 3}));
}

TEST(Global, Errors) {
  EXPECT_THROW(global_height(curve_37a(), CurvePoint{1, 1}), InputError);
  EXPECT_THROW(global_height(curve_37a(), CurvePoint::at_infinity()), PreconditionError);
  RunConfig bad;
  bad.tolerance = 0;
  EXPECT_THROW(global_height(curve_37a(), CurvePoint{0, 0}, bad), InputError);
}

TEST(Global, Deterministic) {
  GlobalHeightReport a = global_height(curve_37a(), CurvePoint{0, 0});
  GlobalHeightReport b = global_height(curve_37a(), CurvePoint{0, 0});
  EXPECT_EQ(a.global_sum, b.global_sum);
  EXPECT_EQ(a.spot_checked, b.spot_checked);
}

TEST(Search, SuppliesEnoughCurves) {
  const auto& hits = search_hits();
  int free = 0, tors = 0;
  for (const auto& h : hits) {
    EXPECT_TRUE(additive_primes(h.curve).empty());
    EXPECT_TRUE(h.curve.contains(h.point));
    for (const Rational& a : h.curve.coefficients()) EXPECT_LE(a.abs(), Rational(10));
    (h.torsion_order == 0 ? free : tors)++;
  }
  EXPECT_GE(free, 10);
  EXPECT_GE(tors, 5);
}

TEST(Search, SmallPointsAreOnCurve) {
  for (const CurvePoint& p : small_points(curve_37a(), 20, 3)) EXPECT_TRUE(curve_37a().contains(p));
  EXPECT_EQ(torsion_order(WeierstrassCurve(0, -1, 1, 0, 0), CurvePoint{0, 0}), 5);
  EXPECT_EQ(torsion_order(curve_37a(), CurvePoint{0, 0}), 0);
}

TEST(Global, TorsionSumsToZero) {
  for (const auto& h : search_hits()) {
    if (h.torsion_order == 0) continue;
    GlobalHeightReport r = global_height(h.curve, h.point);
    EXPECT_TRUE(r.torsion);
    EXPECT_LT(std::abs(r.global_sum), 1e-8) << h.curve.str() << " " << h.point.str();
  }
}
