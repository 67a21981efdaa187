#include "gct/plethysm.hpp"

#include <bit>
#include <vector>

#include "gct/errors.hpp"

namespace gct {

namespace {

struct SubsetSearch {
  std::vector<uint64_t> subsets;  // all D-subsets of [width] as masks, increasing
  std::vector<int> need;          // remaining multiplicity per element
  int width;
  BigInt count = 0;

  // Subsets are chosen in increasing index order, so each set is counted once.
  // The smallest element still needing coverage must lie in the next subset.
  void run(size_t start, int left) {
    if (left == 0) {
      for (int v : need) {
        if (v != 0) return;
      }
      ++count;
      return;
    }
    int lowest = -1;
    int total = 0;
    for (int i = 0; i < width; ++i) {
      if (need[i] > left) return;
      total += need[i];
      if (lowest < 0 && need[i] > 0) lowest = i;
    }
    if (lowest < 0) return;
    const int D = std::popcount(subsets.empty() ? 0 : subsets[0]);
    if (total != left * D) return;
    for (size_t s = start; s < subsets.size(); ++s) {
      const uint64_t mask = subsets[s];
      if (!(mask >> lowest & 1)) {
        // Later subsets in increasing order never contain lowest once their minimum passes it.
        if (std::countr_zero(mask) > lowest) break;
        continue;
      }
      bool ok = true;
      for (uint64_t b = mask; b; b &= b - 1) {
        if (need[std::countr_zero(b)] == 0) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      for (uint64_t b = mask; b; b &= b - 1) --need[std::countr_zero(b)];
      run(s + 1, left - 1);
      for (uint64_t b = mask; b; b &= b - 1) ++need[std::countr_zero(b)];
    }
  }
};

}  // namespace

BigInt pleth_upper_bound(const Partition& lambda, int D, int d) {
  if (D < 1 || D % 2 == 0) throw InvalidInput("pleth_upper_bound needs odd D");
  if (d < 0) throw InvalidInput("pleth_upper_bound needs d >= 0");
  if (lambda.size() != D * d) throw InvalidInput("pleth_upper_bound needs |lambda| = D*d");
  if (d == 0) return 1;
  const int width = lambda[0];
  if (width > 62) throw InvalidInput("pleth_upper_bound supports lambda_1 <= 62");
  SubsetSearch s;
  s.width = width;
  s.need = lambda.conjugate().parts();
  s.need.resize(width, 0);
  if (D > width) return 0;
  // D-subsets ordered by their sorted element lists, lexicographically.
  std::vector<int> cur(D);
  for (int i = 0; i < D; ++i) cur[i] = i;
  while (true) {
    uint64_t mask = 0;
    for (int c : cur) mask |= uint64_t{1} << c;
    s.subsets.push_back(mask);
    int i = D - 1;
    while (i >= 0 && cur[i] == width - D + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < D; ++j) cur[j] = cur[j - 1] + 1;
  }
  s.run(0, d);
  return s.count;
}

BigInt sl_invariant_bound(int D, int m, int d) {
  if (m < 1) throw InvalidInput("sl_invariant_bound needs m >= 1");
  if ((d * D) % m != 0) throw InvalidInput("sl_invariant_bound needs m to divide d*D");
  return pleth_upper_bound(Partition::rectangle(m, d * D / m), D, d);
}

}  // namespace gct
