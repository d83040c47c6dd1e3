#include <gtest/gtest.h>

#include "tropheight/tropheight.hpp"

using namespace tropheight;
using io::Json;

TEST(Io, RationalParsing) {
  EXPECT_EQ(io::rational_from(Json("-3/6"), "x"), Rational(-1, 2));
  EXPECT_EQ(io::rational_from(Json(7), "x"), Rational(7));
  EXPECT_EQ(io::rational_from(Json("123456789012345678901234567890"), "x"),
            Rational(Integer("123456789012345678901234567890")));
  EXPECT_THROW(io::rational_from(Json("1/0"), "x"), InputError);
  EXPECT_THROW(io::rational_from(Json("abc"), "x"), InputError);
  EXPECT_THROW(io::rational_from(Json(0.5), "x"), InputError);
  EXPECT_THROW(io::integer_from(Json("1/2"), "x"), InputError);
}

TEST(Io, CurveAndPointRoundTrip) {
  WeierstrassCurve e(Rational(1, 2), -1, 0, Rational(-7, 3), 5);
  WeierstrassCurve back = io::curve_from_json(Json::parse(io::to_json(e).dump()));
  EXPECT_EQ(back, e);
  CurvePoint p{Rational(1, 4), Rational(-5, 8)};
  EXPECT_EQ(io::point_from_json(io::to_json(p)), p);
  // Missing coefficients default to 0.
  EXPECT_EQ(io::curve_from_json(Json{{"a3", "1"}, {"a4", "-1"}}), WeierstrassCurve(0, 0, 1, -1, 0));
  EXPECT_THROW(io::curve_from_json(Json{{"a6", "0"}}), InputError);  // singular
  EXPECT_THROW(io::point_from_json(Json{{"x", "1"}}), InputError);
}

TEST(Io, ThetaRoundTrip) {
  TropicalTheta t = tate_theta(5, 3);
  TropicalTheta back = io::theta_from_json(Json::parse(io::to_json(t).dump()));
  EXPECT_EQ(back.data().gram(), t.data().gram());
  EXPECT_EQ(back.base_terms().size(), t.base_terms().size());
  for (long n = 0; n < 5; ++n) EXPECT_EQ(back.eval_norm({Rational(n)}), t.eval_norm({Rational(n)}));
}

TEST(Io, DegenerationErrorsNameTheField) {
  Json d = {{"rank", 2}, {"embedding_matrix", {{1, 0}, {0, 1}}}, {"gram", {{2, 0}, {0, 2}}},
            {"linear_part", {0}}};
  try {
    io::degeneration_from_json(d);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("rank 2"), std::string::npos) << e.what();
  }
  d["linear_part"] = {0, 0};
  d["gram"] = {{2, 0}, {0}};
  EXPECT_THROW(io::degeneration_from_json(d), InputError);
  EXPECT_THROW(io::parse_text("{\"rank\": ", "inline"), InputError);
}

TEST(Io, GlobalReportFields) {
  GlobalHeightReport r = global_height(WeierstrassCurve(0, 0, 1, -1, 0), CurvePoint{0, 0});
  Json j = io::to_json(r);
  EXPECT_EQ(j["finite_places"].size(), 1u);
  EXPECT_EQ(j["finite_places"][0]["lambda_prime_v_units"], "1/12");
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["archimedean"]["precision_bits"], 128);
}
