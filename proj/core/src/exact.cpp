#include "gct/exact.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "gct/errors.hpp"

namespace gct {

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const BigInt& z) { return z.get_str(); }

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

BigInt parse_integer(std::string_view s) {
  std::string t(s);
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  return BigInt(t, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  if (!is_integer_literal(num)) throw InvalidInput("not a rational: '" + std::string(text) + "'");
  if (slash == std::string_view::npos) return Rational(parse_integer(num));
  std::string_view den = text.substr(slash + 1);
  if (!is_integer_literal(den) || den[0] == '-' || den[0] == '+') {
    throw InvalidInput("not a rational: '" + std::string(text) + "'");
  }
  BigInt d = parse_integer(den);
  if (d == 0) throw InvalidInput("zero denominator: '" + std::string(text) + "'");
  Rational q(parse_integer(num), d);
  q.canonicalize();
  return q;
}

BigInt to_bigint(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  BigInt hi = static_cast<unsigned long>(static_cast<uint64_t>(u >> 64));
  BigInt lo = static_cast<unsigned long>(static_cast<uint64_t>(u));
  BigInt r = (hi << 64) + lo;
  return neg ? BigInt(-r) : r;
}

bool fits_int128(const BigInt& z) { return mpz_sizeinbase(z.get_mpz_t(), 2) <= 126; }

__int128 to_int128(const BigInt& z) {
  if (!fits_int128(z)) throw InternalError("integer does not fit 128 bits");
  BigInt a = abs(z);
  BigInt hi = a >> 64;
  BigInt lo = a - (hi << 64);
  unsigned __int128 u = (static_cast<unsigned __int128>(hi.get_ui()) << 64) | lo.get_ui();
  __int128 v = static_cast<__int128>(u);
  return z < 0 ? -v : v;
}

BigInt factorial(unsigned n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

BigInt binomial(unsigned n, unsigned k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

BigInt signed_power_sum(unsigned n, unsigned k) {
  if (n <= 1 || k % 2 == 0) return factorial(n);
  return 0;
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size() + 1, 0);
  for (int v : images_) {
    if (v < 1 || v > size() || seen[v]) throw InvalidInput("not a permutation");
    seen[v] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> im(n);
  for (int i = 0; i < n; ++i) im[i] = i + 1;
  return Permutation(std::move(im));
}

Permutation Permutation::operator*(const Permutation& q) const {
  if (q.size() != size()) throw InvalidInput("permutation size mismatch");
  std::vector<int> im(size());
  for (int i = 1; i <= size(); ++i) im[i - 1] = (*this)(q(i));
  return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
  std::vector<int> im(size());
  for (int i = 1; i <= size(); ++i) im[(*this)(i) - 1] = i;
  return Permutation(std::move(im));
}

int Permutation::sign() const { return perm_sign(std::span<const int>(images_)); }

int perm_sign(const Permutation& p) { return p.sign(); }

int perm_sign(std::span<const int> images) {
  // Parity from the cycle decomposition: each cycle of length L contributes L-1 transpositions.
  const size_t n = images.size();
  std::vector<char> seen(n, 0);
  size_t transpositions = 0;
  for (size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    size_t len = 0;
    for (size_t j = i; !seen[j]; j = static_cast<size_t>(images[j] - 1)) {
      seen[j] = 1;
      ++len;
    }
    transpositions += len - 1;
  }
  return transpositions % 2 ? -1 : 1;
}

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] <= 0) throw InvalidInput("partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1]) throw InvalidInput("partition parts must be weakly decreasing");
    n_ += parts_[i];
  }
}

Partition Partition::rectangle(int rows, int cols) {
  if (rows < 0 || cols < 0) throw InvalidInput("negative rectangle dimensions");
  if (rows == 0 || cols == 0) return Partition();
  return Partition(std::vector<int>(rows, cols));
}

Partition Partition::conjugate() const {
  std::vector<int> c(length() ? parts_[0] : 0, 0);
  for (int p : parts_) {
    for (int j = 0; j < p; ++j) ++c[j];
  }
  return Partition(std::move(c));
}

bool Partition::contains(const Partition& mu) const {
  if (mu.length() > length()) return false;
  for (int i = 0; i < mu.length(); ++i) {
    if (mu[i] > parts_[i]) return false;
  }
  return true;
}

std::string Partition::to_string() const {
  std::string s = "(";
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(parts_[i]);
  }
  return s + ")";
}

Partition parse_partition(std::string_view text) {
  std::vector<int> parts;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    int v = 0;
    auto [p, ec] = std::from_chars(cur.data(), cur.data() + cur.size(), v);
    if (ec != std::errc() || p != cur.data() + cur.size()) {
      throw InvalidInput("bad partition entry '" + cur + "'");
    }
    parts.push_back(v);
    cur.clear();
  };
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '(' || c == ')') {
      flush();
    } else {
      cur += c;
    }
  }
  flush();
  return Partition(std::move(parts));
}

namespace {

void partitions_rec(int remaining, int max_part, std::vector<int>& cur, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(remaining - p, p, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions_of(int n) {
  if (n < 0) throw InvalidInput("partitions_of: negative n");
  std::vector<Partition> out;
  std::vector<int> cur;
  partitions_rec(n, n, cur, out);
  return out;
}

BigInt centralizer_order(const Partition& rho) {
  BigInt z = 1;
  const auto& p = rho.parts();
  for (size_t i = 0; i < p.size();) {
    size_t j = i;
    while (j < p.size() && p[j] == p[i]) ++j;
    unsigned mult = static_cast<unsigned>(j - i);
    BigInt pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(p[i]), mult);
    z *= pw * factorial(mult);
    i = j;
  }
  return z;
}

BigInt multinomial(std::span<const int> alpha) {
  int total = 0;
  BigInt den = 1;
  for (int a : alpha) {
    if (a < 0) throw InvalidInput("multinomial: negative entry");
    total += a;
    den *= factorial(static_cast<unsigned>(a));
  }
  return factorial(static_cast<unsigned>(total)) / den;
}

BigInt standard_tableaux_count(const Partition& lambda) {
  Partition conj = lambda.conjugate();
  BigInt hooks = 1;
  for (int i = 0; i < lambda.length(); ++i) {
    for (int j = 0; j < lambda[i]; ++j) {
      hooks *= (lambda[i] - j - 1) + (conj[j] - i - 1) + 1;
    }
  }
  return factorial(static_cast<unsigned>(lambda.size())) / hooks;
}

}  // namespace gct
