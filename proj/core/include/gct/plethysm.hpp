#pragma once

#include "gct/exact.hpp"

namespace gct {

// Number of d-element sets of D-subsets of [lambda_1] in which i lies in exactly
// lambda^t_i of the subsets. Requires D odd and |lambda| = D d.
BigInt pleth_upper_bound(const Partition& lambda, int D, int d);

// The rectangle case m x (dD/m): every element of [dD/m] lies in exactly m subsets.
BigInt sl_invariant_bound(int D, int m, int d);

}  // namespace gct
