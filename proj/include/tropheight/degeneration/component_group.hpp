#pragma once

/**
 * @file component_group.hpp
 * @brief The finite group X* / Y via the Smith normal form of M.
 */

#include <cstddef>
#include <optional>
#include <vector>

#include "tropheight/degeneration/degeneration.hpp"
#include "tropheight/linalg/smith.hpp"

namespace tropheight {

struct ComponentGroup {
  std::vector<Integer> invariant_factors;  // d_1 | d_2 | ..., all > 1
  Integer exponent = 1;                    // d_last, or 1 for the trivial group
  Integer order = 1;
  std::optional<std::vector<IntVector>> representatives;  // coset leaders in X*
};

inline constexpr long kDefaultEnumerationBound = 1000000;

inline ComponentGroup component_group(const DegenerationData& d,
                                      long enumeration_bound = kDefaultEnumerationBound) {
  SmithForm s = smith_normal_form(d.embedding());
  ComponentGroup out;
  std::vector<Integer> diag = s.diagonal();
  for (const auto& x : diag) {
    if (x == 0) throw InputError("component group: det M = 0");
    if (x != 1) out.invariant_factors.push_back(x);
    out.order *= x;
  }
  if (!out.invariant_factors.empty()) out.exponent = out.invariant_factors.back();
  if (out.order > enumeration_bound) return out;

  // U M V = D, so x -> U x maps X*/Y onto Z^g / D Z^g; leaders are U^-1 a
  // with 0 <= a_i < d_i, reduced into the fundamental parallelotope of Y.
  RatMatrix u_inv = inverse(s.U);
  std::size_t g = d.rank();
  std::vector<IntVector> reps;
  IntVector a(g, Integer(0));
  for (;;) {
    RationalVector x = u_inv * to_rational(a);
    RationalVector y = d.to_y(x);
    IntVector shift = floor_vector(y);
    reps.push_back(to_integer(x - d.to_x_star(to_rational(shift))));
    std::size_t i = 0;
    while (i < g) {
      a[i] += 1;
      if (a[i] < diag[i]) break;
      a[i] = 0;
      ++i;
    }
    if (i == g) break;
  }
  out.representatives = std::move(reps);
  return out;
}

}  // namespace tropheight
