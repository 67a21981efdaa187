#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gct {

using BigInt = mpz_class;
using Rational = mpq_class;

// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);
Rational parse_rational(std::string_view text);

BigInt to_bigint(__int128 v);
bool fits_int128(const BigInt& z);
__int128 to_int128(const BigInt& z);

BigInt factorial(unsigned n);
BigInt binomial(unsigned n, unsigned k);

// Sum over S_n of sgn^k: n! when k is even or n <= 1, otherwise 0.
BigInt signed_power_sum(unsigned n, unsigned k);

class Permutation {
 public:
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int n);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[i - 1]; }
  const std::vector<int>& images() const { return images_; }

  // (p * q)(i) = p(q(i))
  Permutation operator*(const Permutation& q) const;
  Permutation inverse() const;
  int sign() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

int perm_sign(const Permutation& p);
// Sign of a 1-based image sequence that is already known to be a bijection.
int perm_sign(std::span<const int> images);

class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts);
  static Partition rectangle(int rows, int cols);

  const std::vector<int>& parts() const { return parts_; }
  int size() const { return n_; }
  int length() const { return static_cast<int>(parts_.size()); }
  int operator[](int i) const { return i < length() ? parts_[i] : 0; }
  Partition conjugate() const;
  bool contains(const Partition& mu) const;
  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
  int n_ = 0;
};

Partition parse_partition(std::string_view text);

// Reverse lexicographic: (n) first, (1^n) last.
std::vector<Partition> partitions_of(int n);
BigInt centralizer_order(const Partition& rho);
BigInt multinomial(std::span<const int> alpha);

// Number of standard Young tableaux, by the hook length formula.
BigInt standard_tableaux_count(const Partition& lambda);

}  // namespace gct
