#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gct/exact.hpp"
#include "gct/search.hpp"

namespace gct {

// chi_lambda(rho) by border-strip removal, cycles consumed largest first.
BigInt character_value(const Partition& lambda, const Partition& rho);

// sum_rho chi_lambda chi_mu chi_nu / z_rho; throws InternalError unless a nonnegative integer.
BigInt kronecker(const Partition& lambda, const Partition& mu, const Partition& nu, const SearchOptions& opts = {});

// k(m x delta, m x delta, m x delta)
BigInt k_rect(int m, int delta, const SearchOptions& opts = {});

struct MonoidReport {
  int m = 0;
  int delta_max = 0;
  std::vector<BigInt> values;    // k_m(delta) for delta = 0..delta_max
  std::vector<int> positive;     // delta with k_m(delta) > 0
  std::vector<int> gaps;         // delta in [0, delta_max] with k_m(delta) = 0
  std::optional<int> e_prime;    // least positive element of the positivity set
  int gcd = 0;                   // gcd of the positive elements
  std::string note;
};

MonoidReport exponent_monoid(int m, int delta_max, const SearchOptions& opts = {});

}  // namespace gct
