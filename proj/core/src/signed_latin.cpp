#include "gct/signed_latin.hpp"

#include <algorithm>
#include <bit>
#include <memory>
#include <numeric>

#include "gct/errors.hpp"

namespace gct {

namespace {

constexpr uint64_t bit(int x) { return uint64_t{1} << x; }

// Column-major fill of an m x d array over [m]; every column a permutation.
// Rows additionally Latin (squares) or wrap-around diagonals Latin (annuli).
class ArrayEngine {
 public:
  ArrayEngine(int m, int d, bool diagonal, bool fix_first)
      : m_(m), d_(d), diagonal_(diagonal), fix_first_(fix_first), col_(d, 0), line_(diagonal ? d : m, 0),
        parity_(m * d + 1, 0) {}

  int levels() const { return m_ * d_; }
  int choices(int) const { return m_; }
  int default_split_depth() const { return std::min(levels(), m_ + 1); }

  bool push(int level, int x) {
    const int j = level / m_, i = level % m_;
    if (fix_first_ && j == 0 && x != i) return false;
    const int line = diagonal_ ? ((j - i) % d_ + d_) % d_ : i;
    if ((col_[j] | line_[line]) & bit(x)) return false;
    const int flips = std::popcount(col_[j] >> (x + 1));
    col_[j] |= bit(x);
    line_[line] |= bit(x);
    parity_[level + 1] = parity_[level] ^ (flips & 1);
    return true;
  }

  void pop(int level, int x) {
    const int j = level / m_, i = level % m_;
    const int line = diagonal_ ? ((j - i) % d_ + d_) % d_ : i;
    col_[j] &= ~bit(x);
    line_[line] &= ~bit(x);
  }

  void leaf(Accumulator& acc) const { acc.add(static_cast<__int128>(parity_[levels()] ? -1 : 1)); }

 private:
  int m_, d_;
  bool diagonal_, fix_first_;
  std::vector<uint64_t> col_, line_;
  std::vector<int> parity_;
};

// Points of [n]^3 in lexicographic order, each receiving a label in [n^2].
class CubeEngine {
 public:
  CubeEngine(int n, bool fix_first) : n_(n), fix_first_(fix_first), xs_(n, 0), ys_(n, 0), zs_(n, 0) {
    parity_.assign(n * n * n + 1, 0);
  }

  int levels() const { return n_ * n_ * n_; }
  int choices(int) const { return n_ * n_; }
  int default_split_depth() const { return std::min(levels(), fix_first_ ? n_ * n_ + 2 : 2); }

  bool push(int level, int l) {
    const int x = level / (n_ * n_), y = level / n_ % n_, z = level % n_;
    if (fix_first_ && x == 0 && l != y * n_ + z) return false;
    if ((xs_[x] | ys_[y] | zs_[z]) & bit(l)) return false;
    const int flips = std::popcount(xs_[x] >> (l + 1)) + std::popcount(ys_[y] >> (l + 1)) +
                      std::popcount(zs_[z] >> (l + 1));
    xs_[x] |= bit(l);
    ys_[y] |= bit(l);
    zs_[z] |= bit(l);
    parity_[level + 1] = parity_[level] ^ (flips & 1);
    return true;
  }

  void pop(int level, int l) {
    const int x = level / (n_ * n_), y = level / n_ % n_, z = level % n_;
    xs_[x] &= ~bit(l);
    ys_[y] &= ~bit(l);
    zs_[z] &= ~bit(l);
  }

  void leaf(Accumulator& acc) const { acc.add(static_cast<__int128>(parity_[levels()] ? -1 : 1)); }

 private:
  int n_;
  bool fix_first_;
  std::vector<uint64_t> xs_, ys_, zs_;
  std::vector<int> parity_;
};

struct TableRows {
  int n = 0;
  // pairs[o][k]: 0-based index of (S_k, T_k) in lexicographic [n]x[n]
  std::vector<std::vector<int>> pairs;
  std::vector<int> row_sign;  // sgn(S) sgn(T), or 1 for the per weighting
};

std::shared_ptr<TableRows> make_table_rows(int n, TableWeighting w) {
  auto t = std::make_shared<TableRows>();
  t->n = n;
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  auto sign0 = [](const std::vector<int>& q) {
    std::vector<int> one(q.size());
    for (size_t i = 0; i < q.size(); ++i) one[i] = q[i] + 1;
    return perm_sign(std::span<const int>(one));
  };
  for (const auto& s : perms) {
    for (const auto& tt : perms) {
      std::vector<int> pr(n);
      for (int k = 0; k < n; ++k) pr[k] = s[k] * n + tt[k];
      t->pairs.push_back(std::move(pr));
      t->row_sign.push_back(w == TableWeighting::det ? sign0(s) * sign0(tt) : 1);
    }
  }
  return t;
}

// Level = table row; a choice is one (S-row, T-row) option.
class TableEngine {
 public:
  TableEngine(std::shared_ptr<const TableRows> rows, bool increasing)
      : rows_(std::move(rows)), increasing_(increasing), col_(rows_->n, 0) {
    const int levels = rows_->n * rows_->n;
    chosen_.assign(levels, -1);
    parity_.assign(levels + 1, 0);
  }

  int levels() const { return rows_->n * rows_->n; }
  int choices(int) const { return static_cast<int>(rows_->pairs.size()); }
  int default_split_depth() const { return std::min(levels(), 1); }

  bool push(int level, int o) {
    if (increasing_ && level > 0 && o <= chosen_[level - 1]) return false;
    const auto& pr = rows_->pairs[o];
    const int n = rows_->n;
    for (int k = 0; k < n; ++k) {
      if (col_[k] & bit(pr[k])) return false;
    }
    int flips = rows_->row_sign[o] < 0 ? 1 : 0;
    for (int k = 0; k < n; ++k) {
      flips += std::popcount(col_[k] >> (pr[k] + 1));
      col_[k] |= bit(pr[k]);
    }
    chosen_[level] = o;
    parity_[level + 1] = parity_[level] ^ (flips & 1);
    return true;
  }

  void pop(int level, int o) {
    const auto& pr = rows_->pairs[o];
    for (int k = 0; k < rows_->n; ++k) col_[k] &= ~bit(pr[k]);
    chosen_[level] = -1;
  }

  void leaf(Accumulator& acc) const { acc.add(static_cast<__int128>(parity_[levels()] ? -1 : 1)); }

 private:
  std::shared_ptr<const TableRows> rows_;
  bool increasing_;
  std::vector<uint64_t> col_;
  std::vector<int> chosen_;
  std::vector<int> parity_;
};

}  // namespace

std::string LatinQuery::describe() const {
  switch (kind) {
    case LatinKind::square:
      return "latin-squares " + std::to_string(n);
    case LatinKind::annulus:
      return "latin-annuli " + std::to_string(m) + " " + std::to_string(d);
    case LatinKind::cube:
      return "latin-cubes " + std::to_string(n);
    case LatinKind::admissible_table:
      return std::string("admissible-tables ") + std::to_string(n) +
             (weighting == TableWeighting::det ? " det" : " per");
  }
  return "?";
}

BigInt signed_latin_squares(int n, const LatinOptions& opts) {
  if (n < 1 || n > 64) throw InvalidInput("latin squares need 1 <= n <= 64");
  const bool reduce = opts.symmetry_reduction;
  BigInt pre = reduce ? signed_power_sum(n, n) : BigInt(1);
  if (pre == 0) return 0;
  std::string key = "latin-squares " + std::to_string(n) + (reduce ? " reduced" : " full");
  return pre * run_search(ArrayEngine(n, n, false, reduce), opts.search, key);
}

BigInt signed_latin_annuli(int m, int d, const LatinOptions& opts) {
  if (m < 1 || d < m || m > 64) throw InvalidInput("latin annuli need 1 <= m <= d and m <= 64");
  const bool reduce = opts.symmetry_reduction;
  BigInt pre = reduce ? signed_power_sum(m, d) : BigInt(1);
  if (pre == 0) return 0;
  std::string key = "latin-annuli " + std::to_string(m) + " " + std::to_string(d) + (reduce ? " reduced" : " full");
  return pre * run_search(ArrayEngine(m, d, true, reduce), opts.search, key);
}

BigInt signed_latin_cubes(int n, const LatinOptions& opts) {
  if (n < 1 || n > 8) throw InvalidInput("latin cubes need 1 <= n <= 8");
  const bool reduce = opts.symmetry_reduction;
  BigInt pre = reduce ? signed_power_sum(n * n, 3 * n) : BigInt(1);
  if (pre == 0) return 0;
  std::string key = "latin-cubes " + std::to_string(n) + (reduce ? " reduced" : " full");
  return pre * run_search(CubeEngine(n, reduce), opts.search, key);
}

BigInt signed_admissible_tables(int n, TableWeighting weighting, const LatinOptions& opts) {
  if (n < 1 || n > 8) throw InvalidInput("admissible tables need 1 <= n <= 8");
  const bool reduce = opts.symmetry_reduction;
  BigInt pre = reduce ? signed_power_sum(n * n, n) : BigInt(1);
  if (pre == 0) return 0;
  std::string key = "admissible-tables " + std::to_string(n) +
                    (weighting == TableWeighting::det ? " det" : " per") + (reduce ? " reduced" : " full");
  return pre * run_search(TableEngine(make_table_rows(n, weighting), reduce), opts.search, key);
}

BigInt signed_count(const LatinQuery& q, const LatinOptions& opts) {
  switch (q.kind) {
    case LatinKind::square:
      return signed_latin_squares(q.n, opts);
    case LatinKind::annulus:
      return signed_latin_annuli(q.m, q.d, opts);
    case LatinKind::cube:
      return signed_latin_cubes(q.n, opts);
    case LatinKind::admissible_table:
      return signed_admissible_tables(q.n, q.weighting, opts);
  }
  throw InvalidInput("unknown latin query");
}

}  // namespace gct
