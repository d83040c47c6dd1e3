#pragma once

/**
 * @file quantization.hpp
 * @brief ||f_trop|| on the finite group X* / Y takes values in (1/2N) Z
 *        whenever N kills that group.
 */

#include <cstddef>
#include <string>
#include <vector>

#include "tropheight/degeneration/component_group.hpp"
#include "tropheight/tropical/theta.hpp"

namespace tropheight {

struct QuantizationReport {
  Integer n;
  std::vector<IntVector> points;
  std::vector<Rational> values;
  std::vector<std::size_t> violations;  // indices into values
  bool ok() const { return violations.empty(); }
};

inline QuantizationReport quantization_check(const TropicalTheta& t, const Integer& n) {
  if (n < 1) throw InputError("quantization needs N >= 1");
  ComponentGroup cg = component_group(t.data());
  if (!cg.representatives)
    throw PreconditionError("component group of order " + cg.order.get_str() +
                            " is too large to enumerate");
  if (!mpz_divisible_p(n.get_mpz_t(), cg.exponent.get_mpz_t()))
    throw PreconditionError("N = " + n.get_str() + " does not kill X*/Y (exponent " +
                            cg.exponent.get_str() + ")");
  QuantizationReport rep;
  rep.n = n;
  Rational two_n(Integer(2 * n));
  for (const auto& nu : *cg.representatives) {
    Rational v = t.eval_norm(to_rational(nu));
    if (!(v * two_n).is_integer()) rep.violations.push_back(rep.values.size());
    rep.points.push_back(nu);
    rep.values.push_back(v);
  }
  return rep;
}

inline QuantizationReport quantization_check(const TropicalTheta& t) {
  return quantization_check(t, component_group(t.data()).exponent);
}

}  // namespace tropheight
