#pragma once

#include <atomic>
#include <chrono>
#include <concepts>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gct/errors.hpp"
#include "gct/exact.hpp"

namespace gct {

struct SearchOptions {
  int threads = 1;
  std::optional<double> budget_seconds;
  // Completed subtrees are appended here and skipped on a rerun of the same query.
  std::string checkpoint_path;
  // Depth of the prefix split; -1 lets the engine decide. Never depends on threads.
  int split_depth = -1;
};

// Exact integer sum: 128-bit fast path that spills into a big integer on overflow.
class Accumulator {
 public:
  void add(__int128 v) {
    __int128 r;
    if (__builtin_add_overflow(small_, v, &r)) {
      big_ += to_bigint(small_);
      small_ = v;
    } else {
      small_ = r;
    }
  }
  void add(const BigInt& v) { big_ += v; }
  void add_signed(const BigInt& v, int sign) {
    if (sign > 0) {
      big_ += v;
    } else {
      big_ -= v;
    }
  }
  BigInt value() const { return big_ + to_bigint(small_); }

 private:
  __int128 small_ = 0;
  BigInt big_ = 0;
};

class Deadline {
 public:
  Deadline() = default;
  Deadline(std::optional<double> seconds, std::atomic<bool>* cancel);
  void tick() {
    if (((++count_) & 0x3FFF) == 0) check();
  }
  void check();

 private:
  bool active_ = false;
  std::chrono::steady_clock::time_point end_{};
  std::atomic<bool>* cancel_ = nullptr;
  uint64_t count_ = 0;
};

// A backtracking engine: levels are filled in order, each level picks one of choices(level) options.
// push returns false (and leaves the state unchanged) when the option is infeasible.
template <class E>
concept SearchEngine = std::copy_constructible<E> && requires(E e, const E ce, int level, int c, Accumulator& acc) {
  { ce.levels() } -> std::convertible_to<int>;
  { ce.choices(level) } -> std::convertible_to<int>;
  { e.push(level, c) } -> std::convertible_to<bool>;
  e.pop(level, c);
  e.leaf(acc);
  { ce.default_split_depth() } -> std::convertible_to<int>;
};

template <SearchEngine E>
void search_dfs(E& e, int level, Accumulator& acc, Deadline& dl) {
  if (level == e.levels()) {
    e.leaf(acc);
    return;
  }
  const int n = e.choices(level);
  for (int c = 0; c < n; ++c) {
    dl.tick();
    if (e.push(level, c)) {
      search_dfs(e, level + 1, acc, dl);
      e.pop(level, c);
    }
  }
}

namespace detail {

using Prefix = std::vector<int>;

// Runs job(i) for every prefix, collects exact results, honors the checkpoint file.
BigInt run_subtree_jobs(const std::vector<Prefix>& prefixes, const SearchOptions& opts, const std::string& query,
                        const std::function<BigInt(size_t, Deadline&)>& job);

template <SearchEngine E>
void collect_prefixes(E& e, int level, int depth, Prefix& cur, std::vector<Prefix>& out) {
  if (level == depth) {
    out.push_back(cur);
    return;
  }
  const int n = e.choices(level);
  for (int c = 0; c < n; ++c) {
    if (e.push(level, c)) {
      cur.push_back(c);
      collect_prefixes(e, level + 1, depth, cur, out);
      cur.pop_back();
      e.pop(level, c);
    }
  }
}

}  // namespace detail

// Exhaustive search summing leaf contributions. The result is independent of thread count.
template <SearchEngine E>
BigInt run_search(const E& proto, const SearchOptions& opts, const std::string& query) {
  int depth = opts.split_depth >= 0 ? opts.split_depth : proto.default_split_depth();
  if (depth > proto.levels()) depth = proto.levels();
  std::vector<detail::Prefix> prefixes;
  {
    E e = proto;
    detail::Prefix cur;
    detail::collect_prefixes(e, 0, depth, cur, prefixes);
  }
  return detail::run_subtree_jobs(prefixes, opts, query, [&](size_t i, Deadline& dl) {
    E e = proto;
    const auto& p = prefixes[i];
    for (int lv = 0; lv < static_cast<int>(p.size()); ++lv) {
      if (!e.push(lv, p[lv])) throw InternalError("prefix replay failed");
    }
    Accumulator acc;
    search_dfs(e, static_cast<int>(p.size()), acc, dl);
    return acc.value();
  });
}

}  // namespace gct

namespace gct {

// 64-bit FNV-1a of the text, as 16 hex digits. Stable across runs and platforms.
std::string fingerprint(std::string_view text);

}  // namespace gct
