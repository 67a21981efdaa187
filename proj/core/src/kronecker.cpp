#include "gct/kronecker.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>

#include "gct/errors.hpp"

namespace gct {

namespace {

// All partitions contained in a fixed shape, with their border strips.
class SubshapeTable {
 public:
  explicit SubshapeTable(const Partition& lambda) : rows_(lambda.length()) {
    std::vector<int> cur(rows_, 0);
    enumerate(lambda, 0, cur);
    for (size_t id = 0; id < shapes_.size(); ++id) index_[shapes_[id]] = static_cast<int>(id);
    size_.resize(shapes_.size());
    syt_.resize(shapes_.size());
    strips_.resize(shapes_.size());
    for (size_t id = 0; id < shapes_.size(); ++id) {
      size_[id] = std::accumulate(shapes_[id].begin(), shapes_[id].end(), 0);
      syt_[id] = standard_tableaux_count(Partition(shapes_[id]));
      build_strips(static_cast<int>(id));
    }
    full_ = index_.at(lambda.parts().empty() ? std::vector<int>{} : padded(lambda.parts()));
    empty_ = index_.at(std::vector<int>(rows_, 0));
  }

  struct Strip {
    int child;
    int sign;
  };

  int count() const { return static_cast<int>(shapes_.size()); }
  int full() const { return full_; }
  int empty() const { return empty_; }
  int size_of(int id) const { return size_[id]; }
  const BigInt& syt(int id) const { return syt_[id]; }
  const std::vector<Strip>& strips(int id, int q) const {
    static const std::vector<Strip> none;
    const auto& s = strips_[id];
    return q < static_cast<int>(s.size()) ? s[q] : none;
  }

 private:
  std::vector<int> padded(const std::vector<int>& p) const {
    std::vector<int> v(p);
    v.resize(rows_, 0);
    return v;
  }

  void enumerate(const Partition& lambda, int row, std::vector<int>& cur) {
    if (row == rows_) {
      shapes_.push_back(cur);
      return;
    }
    int cap = lambda[row];
    if (row > 0) cap = std::min(cap, cur[row - 1]);
    for (int v = 0; v <= cap; ++v) {
      cur[row] = v;
      enumerate(lambda, row + 1, cur);
    }
    cur[row] = 0;
  }

  void build_strips(int id) {
    const auto& k = shapes_[id];
    auto& out = strips_[id];
    out.assign(size_[id] + 1, {});
    std::vector<int> beta(rows_);
    for (int i = 0; i < rows_; ++i) beta[i] = k[i] + (rows_ - 1 - i);
    for (int q = 1; q <= size_[id]; ++q) {
      for (int i = 0; i < rows_; ++i) {
        const int nb = beta[i] - q;
        if (nb < 0 || std::find(beta.begin(), beta.end(), nb) != beta.end()) continue;
        int between = 0;
        for (int b : beta) {
          if (b > nb && b < beta[i]) ++between;
        }
        std::vector<int> nbeta(beta);
        nbeta[i] = nb;
        std::sort(nbeta.begin(), nbeta.end(), std::greater<int>());
        std::vector<int> child(rows_);
        for (int r = 0; r < rows_; ++r) child[r] = nbeta[r] - (rows_ - 1 - r);
        out[q].push_back({index_.at(child), between % 2 ? -1 : 1});
      }
    }
  }

  int rows_;
  std::vector<std::vector<int>> shapes_;
  std::map<std::vector<int>, int> index_;
  std::vector<int> size_;
  std::vector<BigInt> syt_;
  std::vector<std::vector<std::vector<Strip>>> strips_;
  int full_ = 0, empty_ = 0;
};

template <class Num>
Num num_from(const BigInt& z);
template <>
__int128 num_from<__int128>(const BigInt& z) { return to_int128(z); }
template <>
BigInt num_from<BigInt>(const BigInt& z) { return z; }

inline BigInt big_of(__int128 v) { return to_bigint(v); }
inline const BigInt& big_of(const BigInt& v) { return v; }

template <class Num>
struct Entry {
  int id;
  Num coeff;
};

// Depth-first walk over cycle types with parts >= 2 in weakly decreasing order; each
// node closes its remaining boxes with a tail of fixed points, whose character is f^kappa.
template <class Num>
class ClassWalker {
 public:
  ClassWalker(std::vector<const SubshapeTable*> tables, std::vector<int> powers, int n)
      : tables_(std::move(tables)), powers_(std::move(powers)), n_(n) {
    for (const auto* t : tables_) {
      std::vector<Num> f(t->count());
      for (int id = 0; id < t->count(); ++id) f[id] = num_from<Num>(t->syt(id));
      syt_.push_back(std::move(f));
      scratch_.emplace_back(t->count(), Num(0));
      touched_.emplace_back();
    }
  }

  using Vecs = std::vector<std::vector<Entry<Num>>>;

  Vecs root() const {
    Vecs v;
    for (const auto* t : tables_) v.push_back({{t->full(), Num(1)}});
    return v;
  }

  // Contribution of the tail 1^r closing this node.
  void close(const Vecs& vecs, int r, const BigInt& weight, Accumulator& acc) const {
    BigInt term = weight;
    if (r > 1) mpz_divexact(term.get_mpz_t(), term.get_mpz_t(), factorial(static_cast<unsigned>(r)).get_mpz_t());
    for (size_t u = 0; u < vecs.size(); ++u) {
      Num chi(0);
      for (const auto& e : vecs[u]) chi += e.coeff * syt_[u][e.id];
      if (chi == 0) return;
      BigInt c = big_of(chi);
      for (int p = 0; p < powers_[u]; ++p) term *= c;
    }
    acc.add(term);
  }

  // Remove a q-strip from every shape; false if some character vector vanishes.
  bool step(const Vecs& in, int q, Vecs& out) {
    out.resize(in.size());
    for (size_t u = 0; u < in.size(); ++u) {
      auto& sc = scratch_[u];
      auto& touched = touched_[u];
      touched.clear();
      for (const auto& e : in[u]) {
        for (const auto& s : tables_[u]->strips(e.id, q)) {
          if (sc[s.child] == 0) touched.push_back(s.child);
          if (s.sign > 0) {
            sc[s.child] += e.coeff;
          } else {
            sc[s.child] -= e.coeff;
          }
        }
      }
      out[u].clear();
      std::sort(touched.begin(), touched.end());
      touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
      for (int id : touched) {
        if (sc[id] != 0) out[u].push_back({id, sc[id]});
        sc[id] = 0;
      }
      if (out[u].empty()) return false;
    }
    return true;
  }

  void walk(const Vecs& vecs, int r, int qmax, int last_q, int last_mult, const BigInt& weight, Accumulator& acc,
            Deadline& dl, int depth) {
    dl.tick();
    close(vecs, r, weight, acc);
    if (static_cast<int>(bufs_.size()) <= depth) bufs_.resize(depth + 1);
    for (int q = std::min(qmax, r); q >= 2; --q) {
      Vecs& next = bufs_[depth];
      if (!step(vecs, q, next)) continue;
      const int mult = q == last_q ? last_mult + 1 : 1;
      BigInt w = weight;
      mpz_divexact_ui(w.get_mpz_t(), w.get_mpz_t(), static_cast<unsigned long>(q) * static_cast<unsigned long>(mult));
      Vecs moved = std::move(next);
      walk(moved, r - q, q, q, mult, w, acc, dl, depth + 1);
      bufs_[depth] = std::move(moved);
    }
  }

  int n() const { return n_; }

 private:
  std::vector<const SubshapeTable*> tables_;
  std::vector<int> powers_;
  int n_;
  std::vector<std::vector<Num>> syt_;
  std::vector<std::vector<Num>> scratch_;
  std::vector<std::vector<int>> touched_;
  std::vector<Vecs> bufs_;
};

template <class Num>
BigInt class_sum(const std::vector<const SubshapeTable*>& tables, const std::vector<int>& powers, int n,
                 const SearchOptions& opts, const std::string& key) {
  ClassWalker<Num> proto(tables, powers, n);
  const BigInt nfact = factorial(static_cast<unsigned>(n));
  // Job 0 closes the root with 1^n; job q covers every class whose largest part is q >= 2.
  std::vector<detail::Prefix> jobs{{}};
  for (int q = n; q >= 2; --q) jobs.push_back({q});
  SearchOptions o = opts;
  o.checkpoint_path.clear();
  return detail::run_subtree_jobs(jobs, o, key, [&](size_t i, Deadline& dl) {
    ClassWalker<Num> w = proto;
    Accumulator acc;
    auto root = w.root();
    if (jobs[i].empty()) {
      w.close(root, n, nfact, acc);
      return acc.value();
    }
    const int q = jobs[i][0];
    typename ClassWalker<Num>::Vecs next;
    if (!w.step(root, q, next)) return BigInt(0);
    BigInt weight = nfact;
    mpz_divexact_ui(weight.get_mpz_t(), weight.get_mpz_t(), static_cast<unsigned long>(q));
    w.walk(next, n - q, q, q, 1, weight, acc, dl, 0);
    return acc.value();
  });
}

}  // namespace

BigInt character_value(const Partition& lambda, const Partition& rho) {
  if (lambda.size() != rho.size()) throw InvalidInput("character_value: sizes differ");
  if (lambda.size() == 0) return 1;
  SubshapeTable table(lambda);
  const auto& parts = rho.parts();
  std::vector<int> sorted(parts);
  std::sort(sorted.begin(), sorted.end(), std::greater<int>());
  const size_t first_one = std::find(sorted.begin(), sorted.end(), 1) - sorted.begin();
  std::map<std::pair<int, size_t>, BigInt> memo;
  auto rec = [&](auto&& self, int id, size_t pos) -> BigInt {
    if (pos >= first_one) return table.syt(id);
    auto key = std::make_pair(id, pos);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    BigInt total = 0;
    for (const auto& s : table.strips(id, sorted[pos])) {
      BigInt v = self(self, s.child, pos + 1);
      if (s.sign > 0) {
        total += v;
      } else {
        total -= v;
      }
    }
    memo.emplace(key, total);
    return total;
  };
  return rec(rec, table.full(), 0);
}

BigInt kronecker(const Partition& lambda, const Partition& mu, const Partition& nu, const SearchOptions& opts) {
  const int n = lambda.size();
  if (mu.size() != n || nu.size() != n) throw InvalidInput("kronecker: partitions of different sizes");
  if (n == 0) return 1;
  std::vector<Partition> uniq;
  std::vector<int> powers;
  for (const auto* p : {&lambda, &mu, &nu}) {
    auto it = std::find(uniq.begin(), uniq.end(), *p);
    if (it == uniq.end()) {
      uniq.push_back(*p);
      powers.push_back(1);
    } else {
      ++powers[it - uniq.begin()];
    }
  }
  std::vector<std::unique_ptr<SubshapeTable>> owned;
  std::vector<const SubshapeTable*> tables;
  bool small = true;
  for (const auto& p : uniq) {
    owned.push_back(std::make_unique<SubshapeTable>(p));
    tables.push_back(owned.back().get());
    if (mpz_sizeinbase(standard_tableaux_count(p).get_mpz_t(), 2) > 120) small = false;
  }
  const std::string key = "kronecker " + lambda.to_string() + mu.to_string() + nu.to_string();
  BigInt sum = small ? class_sum<__int128>(tables, powers, n, opts, key)
                     : class_sum<BigInt>(tables, powers, n, opts, key);
  const BigInt nfact = factorial(static_cast<unsigned>(n));
  if (!mpz_divisible_p(sum.get_mpz_t(), nfact.get_mpz_t())) {
    throw InternalError("kronecker: class sum is not divisible by n!");
  }
  BigInt k = sum / nfact;
  if (k < 0) throw InternalError("kronecker: negative coefficient");
  return k;
}

BigInt k_rect(int m, int delta, const SearchOptions& opts) {
  if (m < 1 || delta < 0) throw InvalidInput("k_rect needs m >= 1 and delta >= 0");
  Partition r = Partition::rectangle(m, delta);
  return kronecker(r, r, r, opts);
}

MonoidReport exponent_monoid(int m, int delta_max, const SearchOptions& opts) {
  if (m < 1 || delta_max < 0) throw InvalidInput("exponent_monoid needs m >= 1 and delta_max >= 0");
  MonoidReport rep;
  rep.m = m;
  rep.delta_max = delta_max;
  for (int d = 0; d <= delta_max; ++d) {
    BigInt k = k_rect(m, d, opts);
    rep.values.push_back(k);
    if (k > 0) {
      rep.positive.push_back(d);
      if (d > 0) {
        if (!rep.e_prime) rep.e_prime = d;
        rep.gcd = std::gcd(rep.gcd, d);
      }
    } else {
      rep.gaps.push_back(d);
    }
  }
  if (m <= 2) rep.note = "for m <= 2 the positivity set is not the monoid itself; for m = 2 it is twice the monoid";
  return rep;
}

}  // namespace gct
