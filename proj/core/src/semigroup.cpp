#include "gct/semigroup.hpp"

#include <algorithm>
#include <numeric>

#include "gct/errors.hpp"

namespace gct {

SemigroupReport semigroup_report(const std::vector<long>& generators) {
  if (generators.empty()) throw InvalidInput("semigroup needs at least one generator");
  SemigroupReport rep;
  rep.generators = generators;
  std::sort(rep.generators.begin(), rep.generators.end());
  rep.generators.erase(std::unique(rep.generators.begin(), rep.generators.end()), rep.generators.end());
  for (long g : rep.generators) {
    if (g <= 0) throw InvalidInput("semigroup generators must be positive");
    rep.gcd = std::gcd(rep.gcd, g);
  }
  rep.numerical = rep.gcd == 1;
  if (!rep.numerical) return rep;
  const auto& g = rep.generators;
  if (g[0] == 1) {
    rep.frobenius = -1;
    return rep;
  }
  // Every gap is at most this limit: Sylvester for a coprime smallest pair, otherwise Schur.
  long limit;
  if (g.size() >= 2 && std::gcd(g[0], g[1]) == 1) {
    limit = g[0] * g[1] - g[0] - g[1];
  } else {
    limit = (g[0] - 1) * (g.back() - 1) - 1;
  }
  if (limit > 100'000'000) throw InvalidInput("semigroup sieve bound too large");
  std::vector<char> in(limit + 1, 0);
  in[0] = 1;
  for (long x = 1; x <= limit; ++x) {
    for (long a : g) {
      if (a > x) break;
      if (in[x - a]) {
        in[x] = 1;
        break;
      }
    }
  }
  for (long x = 1; x <= limit; ++x) {
    if (!in[x]) rep.gaps.push_back(x);
  }
  rep.frobenius = rep.gaps.empty() ? -1 : rep.gaps.back();
  return rep;
}

}  // namespace gct
