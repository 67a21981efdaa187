#pragma once

#include <map>
#include <string>
#include <vector>

#include "gct/exact.hpp"

namespace gct {

using Index = std::vector<int>;
using Matrix = std::vector<std::vector<Rational>>;

// w = sum_alpha w_alpha X^alpha in Sym^D C^m. Keys are exponent vectors.
class SparseForm {
 public:
  SparseForm(int m, int D);

  int m() const { return m_; }
  int degree() const { return D_; }
  const std::map<Index, Rational>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  Rational get(const Index& alpha) const;
  void set(const Index& alpha, const Rational& c);
  void add(const Index& alpha, const Rational& c);

  friend bool operator==(const SparseForm&, const SparseForm&) = default;

 private:
  void check_key(const Index& alpha) const;
  int m_;
  int D_;
  std::map<Index, Rational> coeffs_;
};

// Index tuples are 1-based. Order 3 may have distinct axes; higher orders are cubic.
class SparseTensor {
 public:
  explicit SparseTensor(std::vector<int> shape);
  static SparseTensor cubic(int m, int D);

  const std::vector<int>& shape() const { return shape_; }
  int order() const { return static_cast<int>(shape_.size()); }
  bool is_cubic() const;
  const std::map<Index, Rational>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }

  Rational get(const Index& idx) const;
  void set(const Index& idx, const Rational& c);
  void add(const Index& idx, const Rational& c);

  SparseTensor scaled(const Rational& c) const;

  friend bool operator==(const SparseTensor&, const SparseTensor&) = default;

 private:
  void check_key(const Index& idx) const;
  std::vector<int> shape_;
  std::map<Index, Rational> entries_;
};

enum class NamedKind {
  product,
  power_sum,
  determinant,
  permanent,
  unit_tensor,
  matmul_tensor,
  generic_form,
  generic_tensor,
};

// Forms use (D, m); determinant/permanent and matmul use n; unit and generic tensors use m.
struct NamedObject {
  NamedKind kind;
  int D = 0;
  int m = 0;
  int n = 0;

  static NamedObject product(int m) { return {NamedKind::product, m, m, 0}; }
  static NamedObject power_sum(int D, int m) { return {NamedKind::power_sum, D, m, 0}; }
  static NamedObject determinant(int n) { return {NamedKind::determinant, n, n * n, n}; }
  static NamedObject permanent(int n) { return {NamedKind::permanent, n, n * n, n}; }
  static NamedObject unit_tensor(int m) { return {NamedKind::unit_tensor, 3, m, 0}; }
  static NamedObject matmul_tensor(int n) { return {NamedKind::matmul_tensor, 3, n * n, n}; }
  static NamedObject generic_form(int D, int m) { return {NamedKind::generic_form, D, m, 0}; }
  static NamedObject generic_tensor(int m) { return {NamedKind::generic_tensor, 3, m, 0}; }

  bool is_form() const;
  std::string name() const;
  void validate() const;
};

NamedKind parse_kind(const std::string& text);
std::string kind_name(NamedKind kind);

SparseForm named_form(const NamedObject& obj);
SparseTensor named_tensor(const NamedObject& obj);

// v(nu) = w_alpha * alpha! / D! where alpha is the exponent type of nu.
SparseTensor form_to_tensor(const SparseForm& f);
// Inverse of form_to_tensor on symmetric tensors.
SparseForm tensor_to_form(const SparseTensor& t);

// w(mu) = sum_r v(r) prod_i g_i(mu_i, r_i); one matrix per axis.
SparseTensor apply_action(const SparseTensor& v, const std::vector<Matrix>& gs);
SparseTensor apply_action(const SparseTensor& v, const Matrix& g1, const Matrix& g2, const Matrix& g3);
// The same g on every axis of a cubic tensor.
SparseTensor apply_action(const SparseTensor& v, const Matrix& g);

Matrix identity_matrix(int n);
Matrix matrix_inverse(const Matrix& a);
Rational determinant(const Matrix& a);

// Symmetric matrix w(i,j) of an order-2 tensor.
Matrix tensor_to_matrix(const SparseTensor& t);

// True if relabeling every axis by the same permutation leaves t unchanged.
bool is_relabel_invariant(const SparseTensor& t);

}  // namespace gct
