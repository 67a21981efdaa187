#include "gct/exact_lp.hpp"

#include "gct/errors.hpp"

namespace gct {

FeasibilityResult solve_feasibility(const Matrix& A, const std::vector<Rational>& b) {
  const int rows = static_cast<int>(A.size());
  if (static_cast<int>(b.size()) != rows) throw InvalidInput("right-hand side has wrong length");
  const int n = rows ? static_cast<int>(A[0].size()) : 0;
  for (const auto& r : A) {
    if (static_cast<int>(r.size()) != n) throw InvalidInput("ragged constraint matrix");
  }
  const int cols = n + rows;  // structural then artificial variables
  std::vector<std::vector<Rational>> t(rows, std::vector<Rational>(cols + 1, 0));
  std::vector<int> flip(rows, 1);
  for (int i = 0; i < rows; ++i) {
    if (b[i] < 0) flip[i] = -1;
    for (int j = 0; j < n; ++j) t[i][j] = A[i][j] * flip[i];
    t[i][n + i] = 1;
    t[i][cols] = b[i] * flip[i];
  }
  std::vector<int> basis(rows);
  for (int i = 0; i < rows; ++i) basis[i] = n + i;
  // Reduced costs for the phase-one objective (sum of artificials); last entry is -objective.
  std::vector<Rational> rc(cols + 1, 0);
  for (int j = n; j < cols; ++j) rc[j] = 1;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j <= cols; ++j) rc[j] -= t[i][j];
  }

  while (true) {
    int enter = -1;
    for (int j = 0; j < cols; ++j) {
      if (rc[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    int leave = -1;
    Rational best;
    for (int i = 0; i < rows; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][cols] / t[i][enter];
      if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) throw InternalError("phase-one simplex is unbounded");
    Rational p = t[leave][enter];
    for (auto& v : t[leave]) v /= p;
    for (int i = 0; i < rows; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rational f = t[i][enter];
      for (int j = 0; j <= cols; ++j) t[i][j] -= f * t[leave][j];
    }
    if (rc[enter] != 0) {
      Rational f = rc[enter];
      for (int j = 0; j <= cols; ++j) rc[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }

  FeasibilityResult res;
  const Rational objective = -rc[cols];
  if (objective == 0) {
    res.feasible = true;
    res.x.assign(n, 0);
    for (int i = 0; i < rows; ++i) {
      if (basis[i] < n) res.x[basis[i]] = t[i][cols];
    }
    return res;
  }
  // Simplex multipliers y_i = 1 - rc(artificial_i); the certificate is -y in the original row signs.
  res.farkas.assign(rows, 0);
  for (int i = 0; i < rows; ++i) res.farkas[i] = -(1 - rc[n + i]) * flip[i];
  return res;
}

}  // namespace gct
