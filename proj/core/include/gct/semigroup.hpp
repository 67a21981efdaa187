#pragma once

#include <optional>
#include <vector>

namespace gct {

struct SemigroupReport {
  std::vector<long> generators;
  bool numerical = false;          // gcd of the generators is 1
  long gcd = 0;
  std::vector<long> gaps;          // all gaps when numerical
  std::optional<long> frobenius;   // largest gap, -1 when there are none
};

SemigroupReport semigroup_report(const std::vector<long>& generators);

}  // namespace gct
