#pragma once

#include <vector>

#include "conecert/rational.hpp"

namespace conecert {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

RatVec vec_add(const RatVec& a, const RatVec& b);
RatVec vec_sub(const RatVec& a, const RatVec& b);
RatVec vec_scale(const Rat& s, const RatVec& a);
bool vec_is_zero(const RatVec& a);

/// <a, b> with metric G (pass empty matrix for the standard inner product).
Rat inner(const RatVec& a, const RatVec& b, const RatMat& gram);

/// Solve A x = b exactly; throws std::domain_error on singular A.
RatVec solve_linear(RatMat a, RatVec b);

RatMat invert(const RatMat& a);

/// Symmetric positive definite test via exact LDL^T pivots.
bool is_positive_definite(const RatMat& a);

}  // namespace conecert
