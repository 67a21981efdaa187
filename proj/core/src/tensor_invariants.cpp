#include "gct/tensor_invariants.hpp"

#include <array>
#include <bit>
#include <memory>

#include "gct/errors.hpp"
#include "gct/text_io.hpp"

namespace gct {

namespace {

constexpr uint64_t bit(int x) { return uint64_t{1} << x; }

struct PointGrid {
  int n1, n2, n3;
  int points() const { return n1 * n2 * n3; }
  void coords(int p, int& x, int& y, int& z) const {
    x = p / (n2 * n3);
    y = p / n3 % n2;
    z = p % n3;
  }
};

// Entries of w grouped by their first two labels; values scaled to integers.
struct Fibers {
  std::vector<std::array<int, 2>> ab;                  // 0-based
  std::vector<std::vector<std::pair<int, BigInt>>> c;  // (label, value) for each pair
  BigInt scale = 1;
};

Fibers fibers(const SparseTensor& w) {
  Fibers f;
  for (const auto& [k, q] : w.entries()) f.scale = lcm(f.scale, BigInt(q.get_den()));
  for (const auto& [k, q] : w.entries()) {
    std::array<int, 2> ab{k[0] - 1, k[1] - 1};
    if (f.ab.empty() || f.ab.back() != ab) {
      f.ab.push_back(ab);
      f.c.emplace_back();
    }
    f.c.back().emplace_back(k[2] - 1, BigInt(q.get_num() * (f.scale / q.get_den())));
  }
  return f;
}

// Fraction-free elimination; a is destroyed.
BigInt bareiss_det(std::vector<BigInt>& a, int k) {
  int sign = 1;
  BigInt prev = 1;
  for (int i = 0; i < k; ++i) {
    if (a[i * k + i] == 0) {
      int r = i + 1;
      while (r < k && a[r * k + i] == 0) ++r;
      if (r == k) return 0;
      for (int j = 0; j < k; ++j) std::swap(a[i * k + j], a[r * k + j]);
      sign = -sign;
    }
    for (int r = i + 1; r < k; ++r) {
      for (int j = i + 1; j < k; ++j) {
        a[r * k + j] = (a[r * k + j] * a[i * k + i] - a[r * k + i] * a[i * k + j]) / prev;
      }
      a[r * k + i] = 0;
    }
    prev = a[i * k + i];
  }
  return sign > 0 ? prev : BigInt(-prev);
}

// Level = point; a choice is a pair (a, b) of x- and y-labels at that point. For fixed x- and
// y-labelings the signed sum over each z-slice is a determinant, taken at the leaf.
class LabelingEngine {
 public:
  LabelingEngine(PointGrid g, bool fix_first, std::shared_ptr<const Fibers> f)
      : g_(g), fix_first_(fix_first), f_(std::move(f)), xs_(g.n1, 0), ys_(g.n2, 0), parity_(g.points() + 1, 0),
        chosen_(g.points(), 0), k_(g.n1 * g.n2), m_(static_cast<size_t>(k_) * k_) {}

  int levels() const { return g_.points(); }
  int choices(int) const { return static_cast<int>(f_->ab.size()); }
  int default_split_depth() const { return std::min(levels(), fix_first_ ? g_.n2 * g_.n3 + 1 : 2); }

  bool push(int level, int c) {
    int x, y, z;
    g_.coords(level, x, y, z);
    const auto& e = f_->ab[c];
    if (fix_first_ && x == 0 && e[0] != y * g_.n3 + z) return false;
    if ((xs_[x] & bit(e[0])) || (ys_[y] & bit(e[1]))) return false;
    const int flips = std::popcount(xs_[x] >> (e[0] + 1)) + std::popcount(ys_[y] >> (e[1] + 1));
    xs_[x] |= bit(e[0]);
    ys_[y] |= bit(e[1]);
    parity_[level + 1] = parity_[level] ^ (flips & 1);
    chosen_[level] = c;
    return true;
  }

  void pop(int level, int c) {
    int x, y, z;
    g_.coords(level, x, y, z);
    const auto& e = f_->ab[c];
    xs_[x] &= ~bit(e[0]);
    ys_[y] &= ~bit(e[1]);
  }

  void leaf(Accumulator& acc) {
    BigInt prod = 1;
    for (int z = 0; z < g_.n3; ++z) {
      for (auto& v : m_) v = 0;
      for (int j = 0; j < k_; ++j) {
        for (const auto& [col, v] : f_->c[chosen_[j * g_.n3 + z]]) m_[j * k_ + col] = v;
      }
      prod *= bareiss_det(m_, k_);
      if (prod == 0) return;
    }
    acc.add_signed(prod, parity_[levels()] ? -1 : 1);
  }

 private:
  PointGrid g_;
  bool fix_first_;
  std::shared_ptr<const Fibers> f_;
  std::vector<uint64_t> xs_, ys_;
  std::vector<int> parity_;
  std::vector<int> chosen_;
  int k_;
  std::vector<BigInt> m_;
};

// Level = point; a choice is (mu, nu, pi) in [n]^3. Labels are the pairs (mu,nu), (nu,pi), (pi,mu).
class MatmulEngine {
 public:
  explicit MatmulEngine(int n)
      : n_(n), xs_(n, 0), ys_(n, 0), zs_(n, 0), parity_(n * n * n + 1, 0) {}

  int levels() const { return n_ * n_ * n_; }
  int choices(int) const { return n_ * n_ * n_; }
  int default_split_depth() const { return std::min(levels(), 2); }

  bool push(int level, int c) {
    const int x = level / (n_ * n_), y = level / n_ % n_, z = level % n_;
    const int mu = c / (n_ * n_), nu = c / n_ % n_, pi = c % n_;
    const int a = mu * n_ + nu, b = nu * n_ + pi, cc = pi * n_ + mu;
    if ((xs_[x] & bit(a)) || (ys_[y] & bit(b)) || (zs_[z] & bit(cc))) return false;
    const int flips =
        std::popcount(xs_[x] >> (a + 1)) + std::popcount(ys_[y] >> (b + 1)) + std::popcount(zs_[z] >> (cc + 1));
    xs_[x] |= bit(a);
    ys_[y] |= bit(b);
    zs_[z] |= bit(cc);
    parity_[level + 1] = parity_[level] ^ (flips & 1);
    return true;
  }

  void pop(int level, int c) {
    const int x = level / (n_ * n_), y = level / n_ % n_, z = level % n_;
    const int mu = c / (n_ * n_), nu = c / n_ % n_, pi = c % n_;
    xs_[x] &= ~bit(mu * n_ + nu);
    ys_[y] &= ~bit(nu * n_ + pi);
    zs_[z] &= ~bit(pi * n_ + mu);
  }

  void leaf(Accumulator& acc) const { acc.add(static_cast<__int128>(parity_[levels()] ? -1 : 1)); }

 private:
  int n_;
  std::vector<uint64_t> xs_, ys_, zs_;
  std::vector<int> parity_;
};

}  // namespace

Rational eval_F_format(int n1, int n2, int n3, const SparseTensor& w, const FnOptions& opts) {
  if (n1 < 1 || n2 < 1 || n3 < 1) throw InvalidInput("format dimensions must be positive");
  const std::vector<int> want{n2 * n3, n1 * n3, n1 * n2};
  if (w.shape() != want) {
    throw InvalidInput("tensor shape must be (" + std::to_string(want[0]) + "," + std::to_string(want[1]) + "," +
                       std::to_string(want[2]) + ")");
  }
  for (int d : want) {
    if (d > 64) throw InvalidInput("label sets larger than 64 are not supported");
  }
  BigInt pre = 1;
  if (opts.relabel_symmetry) {
    if (!(n1 == n2 && n2 == n3) || !is_relabel_invariant(w)) {
      throw InvalidInput("relabel symmetry requires a cubic format and a relabel-invariant tensor");
    }
    pre = signed_power_sum(static_cast<unsigned>(n1 * n1), static_cast<unsigned>(3 * n1));
  }
  if (w.is_zero() || pre == 0) return 0;
  auto f = std::make_shared<const Fibers>(fibers(w));
  const PointGrid g{n1, n2, n3};
  const std::string key = "F " + std::to_string(n1) + " " + std::to_string(n2) + " " + std::to_string(n3) +
                          (opts.relabel_symmetry ? " sym " : " nosym ") + fingerprint(serialize_tensor(w));
  BigInt sum = run_search(LabelingEngine(g, opts.relabel_symmetry, f), opts.search, key);
  BigInt den;
  mpz_pow_ui(den.get_mpz_t(), f->scale.get_mpz_t(), static_cast<unsigned long>(g.points()));
  Rational r(sum * pre, den);
  r.canonicalize();
  return r;
}

Rational eval_Fn(int n, const SparseTensor& w, const FnOptions& opts) { return eval_F_format(n, n, n, w, opts); }

Rational eval_Fn_matmul(int n, const SearchOptions& opts) {
  if (n < 1 || n > 8) throw InvalidInput("matmul evaluation needs 1 <= n <= 8");
  return Rational(run_search(MatmulEngine(n), opts, "Fn-matmul " + std::to_string(n)));
}

}  // namespace gct
