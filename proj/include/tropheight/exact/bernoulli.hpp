#pragma once

#include "tropheight/exact/rational.hpp"

namespace tropheight {

/// Second Bernoulli polynomial B2(t) = t^2 - t + 1/6.
inline Rational bernoulli2(const Rational& t) { return t * t - t + Rational(1, 6); }

}  // namespace tropheight
