#pragma once

// Everything in one include.

#include "tropheight/arch/arch_local.hpp"
#include "tropheight/arch/complex.hpp"
#include "tropheight/degeneration/component_group.hpp"
#include "tropheight/degeneration/degeneration.hpp"
#include "tropheight/elliptic/curve.hpp"
#include "tropheight/elliptic/local_height.hpp"
#include "tropheight/elliptic/minimal_model.hpp"
#include "tropheight/elliptic/reduction.hpp"
#include "tropheight/elliptic/tate.hpp"
#include "tropheight/exact/bernoulli.hpp"
#include "tropheight/exact/padic.hpp"
#include "tropheight/exact/power_series.hpp"
#include "tropheight/exact/primes.hpp"
#include "tropheight/exact/rational.hpp"
#include "tropheight/global/curve_search.hpp"
#include "tropheight/global/doubling_oracle.hpp"
#include "tropheight/global/global_height.hpp"
#include "tropheight/io/json_io.hpp"
#include "tropheight/linalg/matrix.hpp"
#include "tropheight/linalg/smith.hpp"
#include "tropheight/tropical/cells.hpp"
#include "tropheight/tropical/characteristic.hpp"
#include "tropheight/tropical/cvp.hpp"
#include "tropheight/tropical/quantization.hpp"
#include "tropheight/tropical/riemann.hpp"
#include "tropheight/tropical/synthetic.hpp"
#include "tropheight/tropical/theta.hpp"
#include "tropheight/errors.hpp"
