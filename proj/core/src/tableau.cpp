#include "gct/tableau.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <memory>
#include <unordered_map>
#include <unordered_set>

#include "gct/errors.hpp"
#include "gct/text_io.hpp"

namespace gct {

namespace {

bool check_cells(int m, int s, const std::vector<int>& cells, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (m < 1 || s < 1) return fail("tableau needs m >= 1 and s >= 1");
  if (static_cast<int>(cells.size()) != m * s) return fail("cell count is not m*s");
  int d = 0;
  for (int c : cells) {
    if (c < 1) return fail("symbols must be positive");
    d = std::max(d, c);
  }
  if ((m * s) % d != 0) return fail("m*s is not a multiple of the symbol count");
  const int D = m * s / d;
  std::vector<int> count(d + 1, 0);
  for (int c : cells) ++count[c];
  for (int i = 1; i <= d; ++i) {
    if (count[i] != D) return fail("symbol " + std::to_string(i) + " does not appear " + std::to_string(D) + " times");
  }
  for (int col = 0; col < s; ++col) {
    std::vector<char> seen(d + 1, 0);
    for (int row = 0; row < m; ++row) {
      int c = cells[row * s + col];
      if (seen[c]) return fail("symbol " + std::to_string(c) + " repeats in column " + std::to_string(col + 1));
      seen[c] = 1;
    }
  }
  return true;
}

}  // namespace

bool validate_tableau(int m, int s, const std::vector<int>& cells) { return check_cells(m, s, cells, nullptr); }

Tableau::Tableau(int m, int s, std::vector<int> cells) : m_(m), s_(s), cells_(std::move(cells)) {
  std::string why;
  if (!check_cells(m_, s_, cells_, &why)) throw InvalidInput("invalid tableau: " + why);
  d_ = *std::max_element(cells_.begin(), cells_.end());
  D_ = m_ * s_ / d_;
  pos_.assign(d_ + 1, {});
  occ_.assign(cells_.size(), 0);
  for (int col = 1; col <= s_; ++col) {
    for (int row = 1; row <= m_; ++row) {
      int sym = at(row, col);
      pos_[sym].push_back({row, col});
      occ_[(row - 1) * s_ + (col - 1)] = static_cast<int>(pos_[sym].size());
    }
  }
}

Tableau Tableau::generic(int D, int m) {
  if (D < 1 || m < 1) throw InvalidInput("generic tableau needs D >= 1 and m >= 1");
  std::vector<int> cells;
  for (int row = 1; row <= m; ++row) cells.insert(cells.end(), D, row);
  return Tableau(m, D, std::move(cells));
}

Tableau Tableau::cyclic(int D) {
  if (D < 1) throw InvalidInput("cyclic tableau needs D >= 1");
  std::vector<int> cells;
  for (int i = 1; i <= D; ++i) {
    for (int j = 1; j <= D + 1; ++j) {
      int e = ((j - i + 1) % (D + 1) + (D + 1)) % (D + 1);
      cells.push_back(e == 0 ? D + 1 : e);
    }
  }
  return Tableau(D, D + 1, std::move(cells));
}

Tableau::Cell Tableau::position(int iota, int symbol) const {
  if (symbol < 1 || symbol > d_ || iota < 1 || iota > D_) throw InvalidInput("occurrence out of range");
  return pos_[symbol][iota - 1];
}

std::pair<int, int> Tableau::occurrence(int row, int col) const {
  if (row < 1 || row > m_ || col < 1 || col > s_) throw InvalidInput("cell out of range");
  return {occ_[(row - 1) * s_ + (col - 1)], at(row, col)};
}

Tableau power_sum_tableau(int D, int m) {
  if (D < 1 || D % 2 == 0) throw InvalidInput("power-sum tableau needs odd D");
  if (m < 1) throw InvalidInput("power-sum tableau needs m >= 1");
  if (BigInt(2 * m) > binomial(2 * D, D)) throw InvalidInput("power-sum tableau needs 2m <= binom(2D, D)");
  const int cols = 2 * D;
  std::vector<int> cells(m * cols, 0);
  std::unordered_set<uint64_t> used;
  const uint64_t full = (uint64_t{1} << cols) - 1;
  // Lexicographic order of D-subsets of [2D], as index vectors.
  std::vector<int> subset(D);
  for (int i = 0; i < D; ++i) subset[i] = i;
  auto advance = [&]() {
    int i = D - 1;
    while (i >= 0 && subset[i] == cols - D + i) --i;
    if (i < 0) return false;
    ++subset[i];
    for (int j = i + 1; j < D; ++j) subset[j] = subset[j - 1] + 1;
    return true;
  };
  int row = 0;
  bool more = true;
  while (row < m && more) {
    uint64_t mask = 0;
    for (int c : subset) mask |= uint64_t{1} << c;
    if (!used.count(mask) && !used.count(full ^ mask)) {
      used.insert(mask);
      used.insert(full ^ mask);
      for (int c = 0; c < cols; ++c) cells[row * cols + c] = (mask >> c & 1) ? 2 * row + 1 : 2 * row + 2;
      ++row;
    }
    more = advance();
  }
  if (row < m) throw InternalError("power-sum tableau construction ran out of subsets");
  return Tableau(m, cols, std::move(cells));
}

namespace {

struct IntegerTensor {
  std::vector<std::vector<int>> idx;  // 0-based index tuples
  std::vector<BigInt> val;
  BigInt scale = 1;                   // original = val / scale
  size_t max_bits = 0;
};

IntegerTensor integerize(const SparseTensor& v) {
  IntegerTensor t;
  for (const auto& [k, q] : v.entries()) t.scale = lcm(t.scale, BigInt(q.get_den()));
  for (const auto& [k, q] : v.entries()) {
    std::vector<int> i0(k.size());
    for (size_t a = 0; a < k.size(); ++a) i0[a] = k[a] - 1;
    t.idx.push_back(std::move(i0));
    BigInt z = q.get_num() * (t.scale / q.get_den());
    t.max_bits = std::max(t.max_bits, mpz_sizeinbase(z.get_mpz_t(), 2));
    t.val.push_back(std::move(z));
  }
  return t;
}

template <class Num>
Num from_big(const BigInt& z);
template <>
__int128 from_big<__int128>(const BigInt& z) { return to_int128(z); }
template <>
BigInt from_big<BigInt>(const BigInt& z) { return z; }

inline void add_signed(Accumulator& acc, __int128 v, bool negative) { acc.add(negative ? -v : v); }
inline void add_signed(Accumulator& acc, const BigInt& v, bool negative) { acc.add_signed(v, negative ? -1 : 1); }

struct TabShape {
  int m, s, d, D;
  bool fix_first_col;
  // Per symbol: the (row, col) of each occurrence, 0-based.
  std::vector<std::vector<std::pair<int, int>>> occ;
  // Per column-major cell index col*m+row: symbol (0-based) and occurrence (0-based).
  std::vector<int> cell_sym, cell_occ;
};

std::shared_ptr<TabShape> make_shape(const Tableau& T, bool fix_first_col) {
  auto sh = std::make_shared<TabShape>();
  sh->m = T.rows();
  sh->s = T.cols();
  sh->d = T.symbols();
  sh->D = T.occurrences();
  sh->fix_first_col = fix_first_col;
  sh->occ.assign(sh->d, {});
  sh->cell_sym.assign(sh->m * sh->s, 0);
  sh->cell_occ.assign(sh->m * sh->s, 0);
  for (int sym = 1; sym <= sh->d; ++sym) {
    for (int iota = 1; iota <= sh->D; ++iota) {
      auto c = T.position(iota, sym);
      sh->occ[sym - 1].push_back({c.row - 1, c.col - 1});
      sh->cell_sym[(c.col - 1) * sh->m + (c.row - 1)] = sym - 1;
      sh->cell_occ[(c.col - 1) * sh->m + (c.row - 1)] = iota - 1;
    }
  }
  return sh;
}

// Level i chooses the support tuple read by factor i.
template <class Num>
class ByFactorEngine {
 public:
  ByFactorEngine(std::shared_ptr<const TabShape> sh, std::shared_ptr<const std::vector<std::vector<int>>> idx,
                 std::shared_ptr<const std::vector<Num>> val)
      : sh_(std::move(sh)), idx_(std::move(idx)), val_(std::move(val)) {
    colval_.assign(sh_->s * sh_->m, -1);
    used_.assign(sh_->s, 0);
    prod_.assign(sh_->d + 1, Num(1));
    parity_.assign(sh_->d + 1, 0);
  }

  int levels() const { return sh_->d; }
  int choices(int) const { return static_cast<int>(idx_->size()); }
  int default_split_depth() const { return idx_->size() < 16 ? 2 : 1; }

  bool push(int level, int c) {
    const auto& nu = (*idx_)[c];
    const auto& occ = sh_->occ[level];
    int flips = 0;
    int placed = 0;
    for (; placed < sh_->D; ++placed) {
      auto [row, col] = occ[placed];
      int x = nu[placed];
      if (used_[col] >> x & 1) break;
      if (sh_->fix_first_col && col == 0 && x != row) break;
      int* cv = &colval_[col * sh_->m];
      for (int r = 0; r < sh_->m; ++r) {
        if (cv[r] < 0) continue;
        if ((r < row) != (cv[r] < x)) ++flips;
      }
      cv[row] = x;
      used_[col] |= uint64_t{1} << x;
    }
    if (placed < sh_->D) {
      undo(level, c, placed);
      return false;
    }
    parity_[level + 1] = parity_[level] ^ (flips & 1);
    prod_[level + 1] = prod_[level] * (*val_)[c];
    return true;
  }

  void pop(int level, int c) { undo(level, c, sh_->D); }

  void leaf(Accumulator& acc) const { add_signed(acc, prod_[sh_->d], parity_[sh_->d] != 0); }

 private:
  void undo(int level, int c, int placed) {
    const auto& nu = (*idx_)[c];
    const auto& occ = sh_->occ[level];
    for (int k = 0; k < placed; ++k) {
      auto [row, col] = occ[k];
      colval_[col * sh_->m + row] = -1;
      used_[col] &= ~(uint64_t{1} << nu[k]);
    }
  }

  std::shared_ptr<const TabShape> sh_;
  std::shared_ptr<const std::vector<std::vector<int>>> idx_;
  std::shared_ptr<const std::vector<Num>> val_;
  std::vector<int> colval_;
  std::vector<uint64_t> used_;
  std::vector<Num> prod_;
  std::vector<int> parity_;
};

struct PrefixTables {
  // prefix[k] holds base-m codes of length-(k+1) prefixes of support tuples.
  std::vector<std::unordered_set<uint64_t>> prefix;
  std::unordered_map<uint64_t, int> full;
};

// Level = cell in column-major order; a factor is multiplied in when its last cell is set.
template <class Num>
class ByColumnEngine {
 public:
  ByColumnEngine(std::shared_ptr<const TabShape> sh, std::shared_ptr<const PrefixTables> pt,
                 std::shared_ptr<const std::vector<Num>> val)
      : sh_(std::move(sh)), pt_(std::move(pt)), val_(std::move(val)) {
    const int cells = sh_->m * sh_->s;
    used_.assign(sh_->s, 0);
    code_.assign(sh_->d, 0);
    saved_code_.assign(cells, 0);
    prod_.assign(cells + 1, Num(1));
    parity_.assign(cells + 1, 0);
  }

  int levels() const { return sh_->m * sh_->s; }
  int choices(int) const { return sh_->m; }
  int default_split_depth() const { return std::min(levels(), sh_->m); }

  bool push(int level, int x) {
    const int col = level / sh_->m;
    const int row = level % sh_->m;
    if (used_[col] >> x & 1) return false;
    if (sh_->fix_first_col && col == 0 && x != row) return false;
    const int sym = sh_->cell_sym[level];
    const int k = sh_->cell_occ[level];
    const uint64_t code = code_[sym] * static_cast<uint64_t>(sh_->m) + static_cast<uint64_t>(x);
    int idx = -1;
    if (k + 1 == sh_->D) {
      auto it = pt_->full.find(code);
      if (it == pt_->full.end()) return false;
      idx = it->second;
    } else if (!pt_->prefix[k].count(code)) {
      return false;
    }
    const int flips = std::popcount(used_[col] >> (x + 1));
    used_[col] |= uint64_t{1} << x;
    saved_code_[level] = code_[sym];
    code_[sym] = code;
    parity_[level + 1] = parity_[level] ^ (flips & 1);
    if (idx >= 0) {
      prod_[level + 1] = prod_[level] * (*val_)[idx];
    } else {
      prod_[level + 1] = prod_[level];
    }
    return true;
  }

  void pop(int level, int x) {
    const int col = level / sh_->m;
    used_[col] &= ~(uint64_t{1} << x);
    code_[sh_->cell_sym[level]] = saved_code_[level];
  }

  void leaf(Accumulator& acc) const { add_signed(acc, prod_[levels()], parity_[levels()] != 0); }

 private:
  std::shared_ptr<const TabShape> sh_;
  std::shared_ptr<const PrefixTables> pt_;
  std::shared_ptr<const std::vector<Num>> val_;
  std::vector<uint64_t> used_;
  std::vector<uint64_t> code_;
  std::vector<uint64_t> saved_code_;
  std::vector<Num> prod_;
  std::vector<int> parity_;
};

std::string query_key(const Tableau& T, const SparseTensor& v, const TableauEvalOptions& opts) {
  std::string s = "tableau " + std::to_string(T.rows()) + " " + std::to_string(T.cols());
  for (int c : T.cells()) s += " " + std::to_string(c);
  s += opts.relabel_symmetry ? " sym" : " nosym";
  s += " engine" + std::to_string(static_cast<int>(opts.engine));
  s += " tensor " + fingerprint(serialize_tensor(v));
  return s;
}

template <class Num>
BigInt run_engine(const Tableau& T, const IntegerTensor& it, bool use_column, const TableauEvalOptions& opts,
                  const std::string& key) {
  auto sh = make_shape(T, opts.relabel_symmetry);
  auto vals = std::make_shared<std::vector<Num>>();
  for (const auto& z : it.val) vals->push_back(from_big<Num>(z));
  if (use_column) {
    auto pt = std::make_shared<PrefixTables>();
    pt->prefix.assign(sh->D, {});
    const uint64_t m = static_cast<uint64_t>(sh->m);
    for (size_t e = 0; e < it.idx.size(); ++e) {
      uint64_t code = 0;
      for (int k = 0; k < sh->D; ++k) {
        code = code * m + static_cast<uint64_t>(it.idx[e][k]);
        if (k + 1 < sh->D) pt->prefix[k].insert(code);
      }
      pt->full.emplace(code, static_cast<int>(e));
    }
    return run_search(ByColumnEngine<Num>(sh, pt, vals), opts.search, key);
  }
  auto idx = std::make_shared<std::vector<std::vector<int>>>(it.idx);
  return run_search(ByFactorEngine<Num>(sh, idx, vals), opts.search, key);
}

}  // namespace

Rational eval_tableau_invariant(const Tableau& T, const SparseTensor& v, const TableauEvalOptions& opts) {
  const int m = T.rows();
  if (v.order() != T.occurrences() || !v.is_cubic() || v.shape()[0] != m) {
    throw InvalidInput("tensor shape does not match the tableau (need order " + std::to_string(T.occurrences()) +
                       " with all axes " + std::to_string(m) + ")");
  }
  if (m > 64) throw InvalidInput("tableau evaluation supports at most 64 rows");
  BigInt prefactor = 1;
  if (opts.relabel_symmetry) {
    if (!is_relabel_invariant(v)) throw InvalidInput("relabel symmetry requires a relabel-invariant tensor");
    prefactor = signed_power_sum(static_cast<unsigned>(m), static_cast<unsigned>(T.cols()));
  }
  if (v.is_zero() || prefactor == 0) return 0;

  IntegerTensor it = integerize(v);
  const int d = T.symbols();
  // Column engine needs base-m codes of D digits in 64 bits.
  const double code_bits = T.occurrences() * std::log2(static_cast<double>(std::max(m, 2)));
  bool column_ok = code_bits < 63;
  bool use_column = false;
  switch (opts.engine) {
    case TableauEngine::by_factor:
      break;
    case TableauEngine::by_column:
      if (!column_ok) throw InvalidInput("column engine cannot index this tensor");
      use_column = true;
      break;
    case TableauEngine::automatic: {
      double lgamma_m = std::lgamma(m + 1.0);
      double factor_cost = d * std::log(static_cast<double>(it.idx.size()));
      double column_cost = T.cols() * lgamma_m;
      use_column = column_ok && column_cost < factor_cost;
      break;
    }
  }

  const std::string key = query_key(T, v, opts);
  BigInt sum = it.max_bits * static_cast<size_t>(d) <= 120 ? run_engine<__int128>(T, it, use_column, opts, key)
                                                           : run_engine<BigInt>(T, it, use_column, opts, key);
  BigInt den;
  mpz_pow_ui(den.get_mpz_t(), it.scale.get_mpz_t(), static_cast<unsigned long>(d));
  Rational r(sum * prefactor, den);
  r.canonicalize();
  return r;
}

Rational eval_generic_invariant(int D, int m, const SparseTensor& v, const TableauEvalOptions& opts) {
  return eval_tableau_invariant(Tableau::generic(D, m), v, opts);
}

Rational eval_cyclic_invariant(int D, const SparseTensor& v, const TableauEvalOptions& opts) {
  return eval_tableau_invariant(Tableau::cyclic(D), v, opts);
}

}  // namespace gct
