#pragma once

#include "gct/exact.hpp"
#include "gct/polyspace.hpp"
#include "gct/search.hpp"

namespace gct {

struct FnOptions {
  // Fix the labels on the first x-slice and multiply by the signed orbit size.
  // Only legal for cubic tensors invariant under simultaneous relabeling; checked.
  bool relabel_symmetry = false;
  SearchOptions search;
};

// Points of [n1]x[n2]x[n3] in lexicographic order; w lives on C^{n2 n3} (x) C^{n1 n3} (x) C^{n1 n2}.
Rational eval_F_format(int n1, int n2, int n3, const SparseTensor& w, const FnOptions& opts = {});
Rational eval_Fn(int n, const SparseTensor& w, const FnOptions& opts = {});
// Direct sum over coordinate maps mu, nu, pi; equals eval_Fn at the matrix multiplication tensor.
Rational eval_Fn_matmul(int n, const SearchOptions& opts = {});

}  // namespace gct
