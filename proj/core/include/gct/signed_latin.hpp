#pragma once

#include <string>

#include "gct/exact.hpp"
#include "gct/search.hpp"

namespace gct {

enum class LatinKind { square, annulus, cube, admissible_table };
enum class TableWeighting { det, per };

struct LatinOptions {
  // Quotient by symbol (or row) relabeling and multiply by the signed orbit size.
  bool symmetry_reduction = true;
  SearchOptions search;
};

struct LatinQuery {
  LatinKind kind = LatinKind::square;
  int n = 0;  // squares, cubes, tables
  int m = 0;  // annuli rows
  int d = 0;  // annuli columns
  TableWeighting weighting = TableWeighting::det;

  std::string describe() const;
};

// (#column-even) - (#column-odd) Latin squares of order n.
BigInt signed_latin_squares(int n, const LatinOptions& opts = {});
// m x d arrays, columns and wrap-around diagonals Latin; signed by columns.
BigInt signed_latin_annuli(int m, int d, const LatinOptions& opts = {});
// Labelings [n]^3 -> [n^2] bijective on all slices; signed by the 3n slice permutations.
BigInt signed_latin_cubes(int n, const LatinOptions& opts = {});
// Pairs (S,T) of n^2 x n arrays with permutation rows whose columns enumerate [n]x[n].
BigInt signed_admissible_tables(int n, TableWeighting weighting, const LatinOptions& opts = {});

BigInt signed_count(const LatinQuery& q, const LatinOptions& opts = {});

}  // namespace gct
