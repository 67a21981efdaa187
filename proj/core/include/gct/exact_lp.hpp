#pragma once

#include <vector>

#include "gct/exact.hpp"
#include "gct/polyspace.hpp"

namespace gct {

struct FeasibilityResult {
  bool feasible = false;
  std::vector<Rational> x;       // A x = b, x >= 0 when feasible
  std::vector<Rational> farkas;  // y^T A >= 0 and y^T b < 0 when infeasible
};

// Phase-one simplex over the rationals with Bland's rule.
FeasibilityResult solve_feasibility(const Matrix& A, const std::vector<Rational>& b);

}  // namespace gct
