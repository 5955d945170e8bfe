#pragma once

#include <vector>

#include "ecp3p/p3p_ec.h"

namespace ecp3p {

// Lambda Twist: the two distance conics are combined into a degenerate conic
// through one real root of a cubic, which splits into two lines; each line is
// intersected with one conic. The cubic root comes from cubic_one_real_root.
// No iterative refinement is applied to the result.
//
// Throws kDegenerateCubic when the cubic's leading coefficient vanishes.
std::vector<P3PSolution> solve_lt(const P3PProblem& p);

}  // namespace ecp3p
