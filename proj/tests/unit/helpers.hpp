#pragma once

#include <random>

#include "tropheight/linalg/matrix.hpp"

namespace testing_helpers {

using namespace tropheight;

inline RationalVector random_point(std::size_t g, std::mt19937_64& rng, long span = 60,
                                   long max_den = 12) {
  std::uniform_int_distribution<long> num(-span, span), den(1, max_den);
  RationalVector v(g);
  for (auto& x : v) x = Rational(Integer(num(rng)), Integer(den(rng)));
  return v;
}

inline IntVector random_int_vector(std::size_t g, std::mt19937_64& rng, long span = 3) {
  std::uniform_int_distribution<long> dist(-span, span);
  IntVector v(g);
  for (auto& x : v) x = dist(rng);
  return v;
}

}  // namespace testing_helpers
