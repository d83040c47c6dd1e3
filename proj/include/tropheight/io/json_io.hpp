#pragma once

/**
 * @file json_io.hpp
 * @brief JSON schemas for curves, points, degeneration data, tropical theta
 *        functions and reports. Rationals travel as "p/q" strings; plain
 *        JSON integers are accepted on input.
 *
 *   curve:        {"a1": "0", "a2": "0", "a3": "1", "a4": "-1", "a6": "0"}
 *   point:        {"x": "1/4", "y": "-5/8"}
 *   degeneration: {"rank": g, "embedding_matrix": [[..]], "gram": [[..]],
 *                  "linear_part": [..]}
 *   theta:        {"degeneration": {...}, "terms": [{"u": [..], "a": "p/q"}],
 *                  "margin": 1}
 */

#include <json.hpp>

#include "tropheight/global/global_height.hpp"
#include "tropheight/tropical/characteristic.hpp"
#include "tropheight/tropical/theta.hpp"

namespace tropheight::io {

using Json = nlohmann::ordered_json;

inline Rational rational_from(const Json& j, const std::string& what) {
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const InputError& e) {
      throw InputError(what + ": " + e.what());
    }
  }
  throw InputError(what + ": expected a rational string \"p/q\" or an integer, got " + j.dump());
}

inline Integer integer_from(const Json& j, const std::string& what) {
  Rational r = rational_from(j, what);
  if (!r.is_integer()) throw InputError(what + ": expected an integer, got " + r.str());
  return r.num();
}

inline Json to_json(const Rational& r) { return r.str(); }
inline Json to_json(const Integer& n) { return n.get_str(); }

template <class T>
Json to_json(const std::vector<T>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline const Json& field(const Json& j, const char* key, const std::string& what) {
  if (!j.is_object()) throw InputError(what + ": expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(what + ": missing field \"" + key + "\"");
  return *it;
}

inline Json parse_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError("cannot parse JSON from " + source + ": " + e.what());
  }
}

// Curves and points.

inline WeierstrassCurve curve_from_json(const Json& j) {
  const char* keys[] = {"a1", "a2", "a3", "a4", "a6"};
  Rational a[5];
  for (int i = 0; i < 5; ++i)
    a[i] = j.is_object() && !j.contains(keys[i]) ? Rational(0)
                                                   : rational_from(field(j, keys[i], "curve"),
                                                                   std::string("curve.") + keys[i]);
  return WeierstrassCurve(a[0], a[1], a[2], a[3], a[4]);
}

inline Json to_json(const WeierstrassCurve& e) {
  return {{"a1", e.a1().str()}, {"a2", e.a2().str()}, {"a3", e.a3().str()},
          {"a4", e.a4().str()}, {"a6", e.a6().str()}};
}

inline CurvePoint point_from_json(const Json& j) {
  return {rational_from(field(j, "x", "point"), "point.x"),
          rational_from(field(j, "y", "point"), "point.y"), false};
}

inline Json to_json(const CurvePoint& p) {
  if (p.infinity) return "O";
  return {{"x", p.x.str()}, {"y", p.y.str()}};
}

// Degeneration data and tropical theta functions.

inline IntVector int_vector_from(const Json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + ": expected an array");
  IntVector v;
  for (std::size_t i = 0; i < j.size(); ++i)
    v.push_back(integer_from(j[i], what + "[" + std::to_string(i) + "]"));
  return v;
}

inline RationalVector rational_vector_from(const Json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + ": expected an array");
  RationalVector v;
  for (std::size_t i = 0; i < j.size(); ++i)
    v.push_back(rational_from(j[i], what + "[" + std::to_string(i) + "]"));
  return v;
}

inline IntMatrix int_matrix_from(const Json& j, std::size_t g, const std::string& what) {
  if (!j.is_array() || j.size() != g)
    throw InputError(what + ": expected " + std::to_string(g) + " rows");
  IntMatrix m(g, g);
  for (std::size_t i = 0; i < g; ++i) {
    IntVector row = int_vector_from(j[i], what + "[" + std::to_string(i) + "]");
    if (row.size() != g) throw InputError(what + ": row " + std::to_string(i) + " has wrong length");
    for (std::size_t c = 0; c < g; ++c) m(i, c) = row[c];
  }
  return m;
}

inline Json to_json(const IntMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(i, c).get_str());
    a.push_back(row);
  }
  return a;
}

inline DegenerationData degeneration_from_json(const Json& j) {
  const Json& rank = field(j, "rank", "degeneration");
  if (!rank.is_number_integer() || rank.get<long>() < 1)
    throw InputError("degeneration.rank: expected a positive integer");
  auto g = static_cast<std::size_t>(rank.get<long>());
  IntVector l = int_vector_from(field(j, "linear_part", "degeneration"), "degeneration.linear_part");
  return DegenerationData(int_matrix_from(field(j, "embedding_matrix", "degeneration"), g,
                                          "degeneration.embedding_matrix"),
                          int_matrix_from(field(j, "gram", "degeneration"), g, "degeneration.gram"),
                          std::move(l));
}

inline Json to_json(const DegenerationData& d) {
  return {{"rank", d.rank()},
          {"embedding_matrix", to_json(d.embedding())},
          {"gram", to_json(d.gram())},
          {"linear_part", to_json(d.linear_part())}};
}

inline TropicalTheta theta_from_json(const Json& j) {
  DegenerationData d = degeneration_from_json(field(j, "degeneration", "theta"));
  const Json& terms = field(j, "terms", "theta");
  if (!terms.is_array()) throw InputError("theta.terms: expected an array");
  std::vector<FourierTerm> out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    std::string w = "theta.terms[" + std::to_string(i) + "]";
    out.push_back({int_vector_from(field(terms[i], "u", w), w + ".u"),
                   rational_from(field(terms[i], "a", w), w + ".a")});
  }
  int margin = 1;
  if (j.contains("margin")) {
    if (!j["margin"].is_number_integer()) throw InputError("theta.margin: expected an integer");
    margin = j["margin"].get<int>();
  }
  return TropicalTheta(std::move(d), std::move(out), margin);
}

inline Json to_json(const TropicalTheta& t) {
  Json terms = Json::array();
  for (const auto& term : t.base_terms()) terms.push_back({{"u", to_json(term.u)}, {"a", term.a.str()}});
  return {{"degeneration", to_json(t.data())}, {"terms", terms}, {"margin", t.margin()}};
}

// Reports. Floats carry their tolerance next to them.

inline Json to_json(const ThetaCharacteristic& c) {
  return {{"k", to_json(c.k)},
          {"kappa", to_json(c.kappa)},
          {"r", c.r.str()},
          {"r_prime", c.r_prime.str()},
          {"points_checked", c.points_checked}};
}

inline Json to_json(const LocalHeightReport& r) {
  Json j = {{"prime", r.p.get_str()},
            {"reduction", r.reduction.name()},
            {"ell", r.reduction.ell},
            {"intersection", r.i.str()},
            {"component_m", r.component_m},
            {"lambda_prime_v_units", r.lambda_prime.str()},
            {"lambda_prime", r.real_value()},
            {"lambda_prime_tolerance", 1e-15 * (1 + std::abs(r.real_value()))}};
  if (r.via_quadratic_extension) j["note"] = "via unramified quadratic extension";
  return j;
}

inline Json to_json(const GlobalHeightReport& r) {
  Json places = Json::array();
  for (const auto& lh : r.finite) places.push_back(to_json(lh));
  return {{"curve", to_json(r.curve)},
          {"point", to_json(r.point)},
          {"finite_places", places},
          {"spot_checked_good_primes", to_json(r.spot_checked)},
          {"archimedean",
           {{"lambda_prime", r.arch.value}, {"error_estimate", r.arch.error_estimate},
            {"precision_bits", r.arch.bits}}},
          {"global_sum", r.global_sum},
          {"torsion", r.torsion},
          {"oracle_half_hhat_x", r.oracle_value},
          {"discrepancy", r.discrepancy},
          {"tolerance", r.tolerance},
          {"passed", r.passed()}};
}

}  // namespace tropheight::io
