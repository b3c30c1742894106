#pragma once

#include <vector>

#include "normforge/common.hpp"

namespace normforge {

using ZVec = std::vector<Coef>;
using ZMat = std::vector<ZVec>;  // row-major, all rows the same length

// Solve A x = b exactly over the integers.  Returns false when no integral
// solution exists.  On success x is canonical: the particular solution is
// reduced against an echelon basis of the solution lattice so that every
// pivot coordinate lies in [0, pivot).  Deterministic for fixed input.
bool solve_integer(const ZMat& A, const ZVec& b, ZVec& x);

}  // namespace normforge
