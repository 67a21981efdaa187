#include "gct/polyspace.hpp"

#include <algorithm>
#include <numeric>

#include "gct/errors.hpp"

namespace gct {

SparseForm::SparseForm(int m, int D) : m_(m), D_(D) {
  if (m < 1 || D < 0) throw InvalidInput("form needs m >= 1 and D >= 0");
}

void SparseForm::check_key(const Index& alpha) const {
  if (static_cast<int>(alpha.size()) != m_) throw InvalidInput("exponent vector has wrong length");
  int sum = 0;
  for (int a : alpha) {
    if (a < 0) throw InvalidInput("negative exponent");
    sum += a;
  }
  if (sum != D_) throw InvalidInput("exponent vector does not sum to the degree");
}

Rational SparseForm::get(const Index& alpha) const {
  auto it = coeffs_.find(alpha);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

void SparseForm::set(const Index& alpha, const Rational& c) {
  check_key(alpha);
  if (c == 0) {
    coeffs_.erase(alpha);
  } else {
    coeffs_[alpha] = c;
    coeffs_[alpha].canonicalize();
  }
}

void SparseForm::add(const Index& alpha, const Rational& c) { set(alpha, get(alpha) + c); }

SparseTensor::SparseTensor(std::vector<int> shape) : shape_(std::move(shape)) {
  if (shape_.empty()) throw InvalidInput("tensor needs at least one axis");
  for (int d : shape_) {
    if (d < 1) throw InvalidInput("tensor axes must be positive");
  }
}

SparseTensor SparseTensor::cubic(int m, int D) {
  if (D < 1) throw InvalidInput("tensor order must be positive");
  return SparseTensor(std::vector<int>(D, m));
}

bool SparseTensor::is_cubic() const {
  return std::all_of(shape_.begin(), shape_.end(), [&](int d) { return d == shape_[0]; });
}

void SparseTensor::check_key(const Index& idx) const {
  if (idx.size() != shape_.size()) throw InvalidInput("index tuple has wrong length");
  for (size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 1 || idx[i] > shape_[i]) throw InvalidInput("index out of range");
  }
}

Rational SparseTensor::get(const Index& idx) const {
  auto it = entries_.find(idx);
  return it == entries_.end() ? Rational(0) : it->second;
}

void SparseTensor::set(const Index& idx, const Rational& c) {
  check_key(idx);
  if (c == 0) {
    entries_.erase(idx);
  } else {
    entries_[idx] = c;
    entries_[idx].canonicalize();
  }
}

void SparseTensor::add(const Index& idx, const Rational& c) { set(idx, get(idx) + c); }

SparseTensor SparseTensor::scaled(const Rational& c) const {
  SparseTensor out(shape_);
  if (c == 0) return out;
  for (const auto& [k, v] : entries_) out.entries_[k] = v * c;
  return out;
}

bool NamedObject::is_form() const {
  switch (kind) {
    case NamedKind::product:
    case NamedKind::power_sum:
    case NamedKind::determinant:
    case NamedKind::permanent:
    case NamedKind::generic_form:
      return true;
    default:
      return false;
  }
}

void NamedObject::validate() const {
  switch (kind) {
    case NamedKind::product:
      if (m < 1 || D != m) throw InvalidInput("product needs m >= 1");
      break;
    case NamedKind::power_sum:
    case NamedKind::generic_form:
      if (m < 1 || D < 1) throw InvalidInput(kind_name(kind) + " needs D >= 1 and m >= 1");
      break;
    case NamedKind::determinant:
    case NamedKind::permanent:
      if (n < 1 || D != n || m != n * n) throw InvalidInput(kind_name(kind) + " needs n >= 1");
      break;
    case NamedKind::unit_tensor:
    case NamedKind::generic_tensor:
      if (m < 1) throw InvalidInput(kind_name(kind) + " needs m >= 1");
      break;
    case NamedKind::matmul_tensor:
      if (n < 1 || m != n * n) throw InvalidInput("matmul needs n >= 1");
      break;
  }
}

std::string NamedObject::name() const {
  switch (kind) {
    case NamedKind::product:
      return "product(m=" + std::to_string(m) + ")";
    case NamedKind::power_sum:
      return "power-sum(D=" + std::to_string(D) + ",m=" + std::to_string(m) + ")";
    case NamedKind::determinant:
      return "determinant(n=" + std::to_string(n) + ")";
    case NamedKind::permanent:
      return "permanent(n=" + std::to_string(n) + ")";
    case NamedKind::unit_tensor:
      return "unit(m=" + std::to_string(m) + ")";
    case NamedKind::matmul_tensor:
      return "matmul(n=" + std::to_string(n) + ")";
    case NamedKind::generic_form:
      return "generic-form(D=" + std::to_string(D) + ",m=" + std::to_string(m) + ")";
    case NamedKind::generic_tensor:
      return "generic-tensor(m=" + std::to_string(m) + ")";
  }
  return "?";
}

std::string kind_name(NamedKind kind) {
  switch (kind) {
    case NamedKind::product: return "product";
    case NamedKind::power_sum: return "power-sum";
    case NamedKind::determinant: return "determinant";
    case NamedKind::permanent: return "permanent";
    case NamedKind::unit_tensor: return "unit";
    case NamedKind::matmul_tensor: return "matmul";
    case NamedKind::generic_form: return "generic-form";
    case NamedKind::generic_tensor: return "generic-tensor";
  }
  return "?";
}

NamedKind parse_kind(const std::string& text) {
  if (text == "product") return NamedKind::product;
  if (text == "power-sum") return NamedKind::power_sum;
  if (text == "determinant" || text == "det") return NamedKind::determinant;
  if (text == "permanent" || text == "per") return NamedKind::permanent;
  if (text == "unit" || text == "unit-tensor") return NamedKind::unit_tensor;
  if (text == "matmul" || text == "matmul-tensor") return NamedKind::matmul_tensor;
  if (text == "generic-form") return NamedKind::generic_form;
  if (text == "generic-tensor") return NamedKind::generic_tensor;
  throw InvalidInput("unknown object kind '" + text + "'");
}

namespace {

// Exponent vectors of the n! permutation matrices, variable (a,b) at (a-1)n+b.
void add_permutation_monomials(SparseForm& f, int n, bool signed_terms) {
  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 1);
  do {
    Index alpha(n * n, 0);
    for (int a = 0; a < n; ++a) alpha[a * n + sigma[a] - 1] = 1;
    f.set(alpha, signed_terms ? perm_sign(std::span<const int>(sigma)) : 1);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
}

}  // namespace

SparseForm named_form(const NamedObject& obj) {
  obj.validate();
  switch (obj.kind) {
    case NamedKind::product: {
      SparseForm f(obj.m, obj.m);
      f.set(Index(obj.m, 1), 1);
      return f;
    }
    case NamedKind::power_sum: {
      SparseForm f(obj.m, obj.D);
      for (int i = 0; i < obj.m; ++i) {
        Index alpha(obj.m, 0);
        alpha[i] = obj.D;
        f.set(alpha, 1);
      }
      return f;
    }
    case NamedKind::determinant:
    case NamedKind::permanent: {
      SparseForm f(obj.n * obj.n, obj.n);
      add_permutation_monomials(f, obj.n, obj.kind == NamedKind::determinant);
      return f;
    }
    default:
      throw InvalidInput("no explicit form for " + obj.name());
  }
}

SparseTensor named_tensor(const NamedObject& obj) {
  obj.validate();
  switch (obj.kind) {
    case NamedKind::unit_tensor: {
      SparseTensor t(std::vector<int>(3, obj.m));
      for (int i = 1; i <= obj.m; ++i) t.set({i, i, i}, 1);
      return t;
    }
    case NamedKind::matmul_tensor: {
      const int n = obj.n;
      SparseTensor t(std::vector<int>(3, n * n));
      auto pair = [n](int a, int b) { return (a - 1) * n + b; };
      for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
          for (int k = 1; k <= n; ++k) t.set({pair(i, j), pair(j, k), pair(k, i)}, 1);
        }
      }
      return t;
    }
    default:
      if (obj.is_form() && obj.kind != NamedKind::generic_form) return form_to_tensor(named_form(obj));
      throw InvalidInput("no explicit tensor for " + obj.name());
  }
}

SparseTensor form_to_tensor(const SparseForm& f) {
  if (f.degree() < 1) throw InvalidInput("form_to_tensor needs degree >= 1");
  SparseTensor t = SparseTensor::cubic(f.m(), f.degree());
  const BigInt dfact = factorial(static_cast<unsigned>(f.degree()));
  for (const auto& [alpha, c] : f.coeffs()) {
    BigInt afact = 1;
    Index nu;
    for (int i = 0; i < f.m(); ++i) {
      afact *= factorial(static_cast<unsigned>(alpha[i]));
      nu.insert(nu.end(), alpha[i], i + 1);
    }
    Rational value = c * Rational(afact, dfact);
    value.canonicalize();
    do {
      t.set(nu, value);
    } while (std::next_permutation(nu.begin(), nu.end()));
  }
  return t;
}

SparseForm tensor_to_form(const SparseTensor& t) {
  if (!t.is_cubic()) throw InvalidInput("tensor_to_form needs a cubic tensor");
  const int m = t.shape()[0];
  SparseForm f(m, t.order());
  for (const auto& [nu, v] : t.entries()) {
    Index alpha(m, 0);
    for (int x : nu) ++alpha[x - 1];
    f.add(alpha, v);
  }
  return f;
}

namespace {

void check_square(const Matrix& g, int n) {
  if (static_cast<int>(g.size()) != n) throw InvalidInput("matrix dimension does not match tensor axis");
  for (const auto& row : g) {
    if (static_cast<int>(row.size()) != n) throw InvalidInput("matrix is not square");
  }
}

}  // namespace

SparseTensor apply_action(const SparseTensor& v, const std::vector<Matrix>& gs) {
  if (static_cast<int>(gs.size()) != v.order()) throw InvalidInput("need one matrix per tensor axis");
  for (int ax = 0; ax < v.order(); ++ax) check_square(gs[ax], v.shape()[ax]);
  std::map<Index, Rational> cur = v.entries();
  for (int ax = 0; ax < v.order(); ++ax) {
    const Matrix& g = gs[ax];
    std::map<Index, Rational> next;
    for (const auto& [r, val] : cur) {
      Index mu = r;
      for (int row = 0; row < v.shape()[ax]; ++row) {
        const Rational& coef = g[row][r[ax] - 1];
        if (coef == 0) continue;
        mu[ax] = row + 1;
        next[mu] += val * coef;
      }
    }
    cur.clear();
    for (auto& [k, val] : next) {
      if (val != 0) cur.emplace(k, std::move(val));
    }
  }
  SparseTensor out(v.shape());
  for (const auto& [k, val] : cur) out.set(k, val);
  return out;
}

SparseTensor apply_action(const SparseTensor& v, const Matrix& g1, const Matrix& g2, const Matrix& g3) {
  if (v.order() != 3) throw InvalidInput("three matrices need an order-3 tensor");
  return apply_action(v, std::vector<Matrix>{g1, g2, g3});
}

SparseTensor apply_action(const SparseTensor& v, const Matrix& g) {
  if (!v.is_cubic()) throw InvalidInput("a single matrix needs a cubic tensor");
  return apply_action(v, std::vector<Matrix>(v.order(), g));
}

Matrix identity_matrix(int n) {
  Matrix a(n, std::vector<Rational>(n, 0));
  for (int i = 0; i < n; ++i) a[i][i] = 1;
  return a;
}

namespace {

// Gauss-Jordan on [a | b]; returns det(a) and leaves a^-1 b in b when invertible.
Rational gauss_jordan(Matrix a, Matrix* b) {
  const int n = static_cast<int>(a.size());
  Rational det = 1;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(a[piv], a[col]);
      if (b) std::swap((*b)[piv], (*b)[col]);
      det = -det;
    }
    Rational p = a[col][col];
    det *= p;
    for (int j = 0; j < n; ++j) a[col][j] /= p;
    if (b) {
      for (auto& x : (*b)[col]) x /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational f = a[r][col];
      for (int j = 0; j < n; ++j) a[r][j] -= f * a[col][j];
      if (b) {
        for (size_t j = 0; j < (*b)[r].size(); ++j) (*b)[r][j] -= f * (*b)[col][j];
      }
    }
  }
  return det;
}

}  // namespace

Rational determinant(const Matrix& a) {
  check_square(a, static_cast<int>(a.size()));
  return gauss_jordan(a, nullptr);
}

Matrix matrix_inverse(const Matrix& a) {
  check_square(a, static_cast<int>(a.size()));
  Matrix b = identity_matrix(static_cast<int>(a.size()));
  if (gauss_jordan(a, &b) == 0) throw InvalidInput("matrix is singular");
  return b;
}

Matrix tensor_to_matrix(const SparseTensor& t) {
  if (t.order() != 2) throw InvalidInput("tensor_to_matrix needs an order-2 tensor");
  Matrix a(t.shape()[0], std::vector<Rational>(t.shape()[1], 0));
  for (const auto& [k, v] : t.entries()) a[k[0] - 1][k[1] - 1] = v;
  return a;
}

bool is_relabel_invariant(const SparseTensor& t) {
  if (!t.is_cubic()) return false;
  const int m = t.shape()[0];
  if (m == 1) return true;
  std::vector<int> swap12(m), cycle(m);
  std::iota(swap12.begin(), swap12.end(), 1);
  std::swap(swap12[0], swap12[1]);
  for (int i = 0; i < m; ++i) cycle[i] = (i + 1) % m + 1;
  for (const auto* perm : {&swap12, &cycle}) {
    for (const auto& [k, v] : t.entries()) {
      Index img(k.size());
      for (size_t i = 0; i < k.size(); ++i) img[i] = (*perm)[k[i] - 1];
      if (t.get(img) != v) return false;
    }
  }
  return true;
}

}  // namespace gct
