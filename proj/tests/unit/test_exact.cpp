#include <gtest/gtest.h>

#include <random>

#include "tropheight/exact/bernoulli.hpp"
#include "tropheight/exact/padic.hpp"
#include "tropheight/exact/power_series.hpp"
#include "tropheight/exact/primes.hpp"
#include "tropheight/exact/rational.hpp"

using namespace tropheight;

namespace {

Rational random_rational(std::mt19937_64& rng, long span = 1000) {
  std::uniform_int_distribution<long> num(-span, span), den(1, span);
  return Rational(Integer(num(rng)), Integer(den(rng)));
}

}  // namespace

TEST(Rational, CanonicalForm) {
  Rational r(Integer(6), Integer(-4));
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 2);
  EXPECT_EQ(Rational(Integer(0), Integer(-7)).den(), 1);
  EXPECT_THROW(Rational(Integer(1), Integer(0)), InputError);
}

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(Rational::parse("-10/4"), Rational(-5, 2));
  EXPECT_EQ(Rational::parse(" 7 "), Rational(7));
  EXPECT_EQ(Rational::parse("+3/9").str(), "1/3");
  EXPECT_THROW(Rational::parse("1/0"), InputError);
  EXPECT_THROW(Rational::parse("abc"), InputError);
  EXPECT_THROW(Rational::parse("1/2/3"), InputError);
  EXPECT_THROW(Rational::parse(""), InputError);
}

TEST(Rational, FloorCeilFrac) {
  EXPECT_EQ(Rational(-7, 2).floor(), -4);
  EXPECT_EQ(Rational(-7, 2).ceil(), -3);
  EXPECT_EQ(Rational(-7, 2).frac(), Rational(1, 2));
  EXPECT_EQ(Rational(5, 2).round(), 3);
}

TEST(Rational, AdditionIsExact) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    Rational a = random_rational(rng), b = random_rational(rng);
    EXPECT_EQ((a + b) - b, a);
    if (!b.is_zero()) {
      EXPECT_EQ((a / b) * b, a);
    }
  }
}

TEST(Valuation, Examples) {
  EXPECT_EQ(val_p(Rational(8, 3), 2), Valuation(3));
  EXPECT_TRUE(val_p(Rational(0), 5).is_infinite());
  EXPECT_EQ(val_p(Rational(50, 7), 5), Valuation(2));
  EXPECT_EQ(val_p(Rational(7, 50), 5), Valuation(-2));
  EXPECT_THROW(val_p(Rational(3), 4), InputError);
  EXPECT_THROW(val_p(Rational(0), 5).value(), PreconditionError);
  EXPECT_LT(Valuation(1000), Valuation::infinity());
}

TEST(Bernoulli, Examples) {
  EXPECT_EQ(bernoulli2(Rational(0)), Rational(1, 6));
  EXPECT_EQ(bernoulli2(Rational(1, 2)), Rational(-1, 12));
  EXPECT_EQ(bernoulli2(Rational(1, 5)), Rational(1, 150));
  EXPECT_EQ(bernoulli2(Rational(4, 5)), Rational(1, 150));
}

TEST(Bernoulli, Symmetry) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 1000; ++i) {
    Rational t = random_rational(rng);
    EXPECT_EQ(bernoulli2(t), bernoulli2(Rational(1) - t));
  }
}

TEST(Primes, Factor) {
  auto f = factor(Integer(-2 * 2 * 3 * 37 * 37));
  EXPECT_EQ(f.size(), 3u);
  EXPECT_EQ(f[Integer(2)], 2);
  EXPECT_EQ(f[Integer(37)], 2);
  Integer big = Integer("1000000007") * Integer("998244353");
  auto g = factor(big);
  EXPECT_EQ(g.size(), 2u);
  EXPECT_EQ(g[Integer("998244353")], 1);
  EXPECT_EQ(reduce_mod(Rational(1, 3), 7), 5);
}

TEST(Padic, ProductAndSumAgreeWithExactReduction) {
  std::mt19937_64 rng(13);
  for (long p : {2L, 3L, 5L, 7L}) {
    for (int i = 0; i < 200; ++i) {
      Rational a = random_rational(rng), b = random_rational(rng);
      if (a.is_zero() || b.is_zero()) continue;
      PadicElement pa(p, a, 12), pb(p, b, 10);
      PadicElement s = pa + pb, m = pa * pb, q = pa / pb;
      EXPECT_TRUE(s.agrees_with(a + b));
      EXPECT_TRUE(m.agrees_with(a * b));
      EXPECT_TRUE(q.agrees_with(a / b));
      EXPECT_EQ(m.absolute_precision(),
                std::min(pa.valuation() + 10, pb.valuation() + 12));
    }
  }
}

TEST(Padic, ZeroToPrecisionIsDistinct) {
  PadicElement a(5, Rational(25), 2);
  EXPECT_TRUE(a.is_zero());
  EXPECT_THROW((void)a.valuation(), PrecisionError);
  EXPECT_EQ(a.valuation_lower_bound(), 2);
  PadicElement b(5, Rational(1, 5), 3);
  EXPECT_EQ(b.valuation(), -1);
  EXPECT_EQ(b.relative_precision(), 4);
  PadicElement c = PadicElement(5, Rational(1), 6) - PadicElement(5, Rational(26), 6);
  EXPECT_EQ(c.valuation(), 2);  // cancellation leaves 4 relative digits
  EXPECT_EQ(c.relative_precision(), 4);
  EXPECT_THROW(PadicElement(6, Rational(1), 3), InputError);
}

TEST(Padic, Powers) {
  PadicElement z(3, Rational(6, 5), 10);
  EXPECT_TRUE(z.pow(3).agrees_with(Rational(216, 125)));
  EXPECT_TRUE(z.pow(-2).agrees_with(Rational(25, 36)));
  EXPECT_EQ(z.pow(-2).valuation(), -2);
}

TEST(PowerSeries, ReversionExamples) {
  PowerSeries x = PowerSeries::variable(6);
  EXPECT_EQ(series_compose_invert(x), x);
  PowerSeries s({Rational(0), Rational(1), Rational(1)}, 5);
  PowerSeries g = series_compose_invert(s);
  EXPECT_EQ(g[1], Rational(1));
  EXPECT_EQ(g[2], Rational(-1));
  EXPECT_EQ(g[3], Rational(2));
  EXPECT_EQ(g[4], Rational(-5));
  EXPECT_THROW(series_compose_invert(PowerSeries({Rational(0), Rational(0), Rational(1)}, 4)),
               InputError);
}

// Lagrange inversion: [x^n] g = (1/n) [x^(n-1)] (x / s(x))^n.
TEST(PowerSeries, ReversionMatchesLagrangeInversion) {
  std::mt19937_64 rng(14);
  std::uniform_int_distribution<long> coef(-9, 9);
  const std::size_t order = 9;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Rational> c(order, Rational(0));
    long lead = 0;
    while (lead == 0) lead = coef(rng);
    c[1] = lead;
    for (std::size_t k = 2; k < order; ++k) c[k] = coef(rng);
    PowerSeries s(c, order);
    PowerSeries g = series_compose_invert(s);

    // s(x)/x has constant term s1, so (x/s)^n is a plain series.
    std::vector<Rational> shifted(c.begin() + 1, c.end());
    PowerSeries s_over_x(shifted, order);
    PowerSeries q = s_over_x.inverse();
    for (std::size_t n = 1; n < order; ++n)
      EXPECT_EQ(g[n], q.pow(static_cast<unsigned>(n))[n - 1] / Rational(static_cast<long>(n)));

    PowerSeries round = s.compose(g);
    EXPECT_EQ(round, PowerSeries::variable(order));
  }
}
