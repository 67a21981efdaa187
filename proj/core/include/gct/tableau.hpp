#pragma once

#include <utility>
#include <vector>

#include "gct/exact.hpp"
#include "gct/polyspace.hpp"
#include "gct/search.hpp"

namespace gct {

// m x s array over [d], every symbol D times, no symbol twice in a column.
class Tableau {
 public:
  struct Cell {
    int row;
    int col;
    friend bool operator==(const Cell&, const Cell&) = default;
  };

  // cells are row-major with 1-based symbols.
  Tableau(int m, int s, std::vector<int> cells);
  static Tableau generic(int D, int m);
  static Tableau cyclic(int D);

  int rows() const { return m_; }
  int cols() const { return s_; }
  int symbols() const { return d_; }
  int occurrences() const { return D_; }
  int at(int row, int col) const { return cells_[(row - 1) * s_ + (col - 1)]; }
  const std::vector<int>& cells() const { return cells_; }

  // Position of the iota-th occurrence of symbol i, scanning columns left to right.
  Cell position(int iota, int symbol) const;
  // (iota, symbol) for the cell at (row, col).
  std::pair<int, int> occurrence(int row, int col) const;

  friend bool operator==(const Tableau& a, const Tableau& b) {
    return a.m_ == b.m_ && a.s_ == b.s_ && a.cells_ == b.cells_;
  }

 private:
  int m_, s_, d_ = 0, D_ = 0;
  std::vector<int> cells_;
  std::vector<std::vector<Cell>> pos_;
  std::vector<int> occ_;
};

bool validate_tableau(int m, int s, const std::vector<int>& cells);

// Rows pair complementary D-subsets of the 2D columns, chosen greedily in lexicographic order.
Tableau power_sum_tableau(int D, int m);

enum class TableauEngine { automatic, by_factor, by_column };

struct TableauEvalOptions {
  TableauEngine engine = TableauEngine::automatic;
  // Fix the first column permutation and multiply by the signed orbit size.
  // Only legal for tensors invariant under simultaneous relabeling; checked.
  bool relabel_symmetry = false;
  SearchOptions search;
};

Rational eval_tableau_invariant(const Tableau& T, const SparseTensor& v, const TableauEvalOptions& opts = {});
Rational eval_generic_invariant(int D, int m, const SparseTensor& v, const TableauEvalOptions& opts = {});
Rational eval_cyclic_invariant(int D, const SparseTensor& v, const TableauEvalOptions& opts = {});

}  // namespace gct
