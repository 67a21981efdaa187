#include "gct/invariant_theory.hpp"

#include <numeric>

#include "gct/errors.hpp"
#include "gct/exact_lp.hpp"
#include "gct/kronecker.hpp"
#include "gct/signed_latin.hpp"
#include "gct/tableau.hpp"
#include "gct/tensor_invariants.hpp"

namespace gct {

namespace {

long generic_reduced_period(int D, int m) {
  if ((D == 3 && m == 2) || (D == 3 && m == 3) || (D == 4 && m == 3)) return 2;
  return 1;
}

// Smallest k >= 1 with (k a)^2 >= m.
long ceil_sqrt_over(long m, long a) {
  long k = 1;
  while ((k * a) * (k * a) < m) ++k;
  return k;
}

BigInt next_multiple(long b, const BigInt& x) {
  BigInt q = (x + b - 1) / b;
  return q * b;
}

std::optional<int> square_root(int m) {
  int n = 0;
  while ((n + 1) * (n + 1) <= m) ++n;
  if (n * n == m) return n;
  return std::nullopt;
}

}  // namespace

PeriodReport periods(const NamedObject& obj) {
  obj.validate();
  PeriodReport r;
  r.object = obj;
  const int D = obj.D, m = obj.m;
  if (obj.is_form() && D == 1) throw InvalidInput("linear forms have infinite stabilizer period");
  switch (obj.kind) {
    case NamedKind::product:
      r.a = 2;
      r.source = "stabilizer generated by permutation matrices and determinant-one diagonals";
      break;
    case NamedKind::power_sum:
      if (m == 1) {
        r.a = D;
        r.source = "stabilizer of X^D is the group of D-th roots of unity";
      } else if (D == 2) {
        r.a = 2;
        r.source = "quadratic form: stabilizer is the orthogonal group";
      } else {
        r.a = D % 2 == 0 ? D : 2 * D;
        r.source = "stabilizer generated by permutation matrices and diagonals of D-th roots of unity";
      }
      break;
    case NamedKind::determinant:
      r.a = (obj.n % 4 == 0 || obj.n % 4 == 1) ? 1 : 2;
      r.source = "Frobenius: stabilizer generated by transposition and X -> AXB with A, B in SL_n";
      break;
    case NamedKind::permanent:
      r.a = obj.n % 4 == 0 ? 1 : 2;
      r.source = obj.n == 2 ? "per_2 is linearly equivalent to det_2"
                            : "Marcus-May: stabilizer generated by transposition and monomial X -> AXB";
      break;
    case NamedKind::generic_form:
      if (D == 2) {
        r.a = 2;
        r.source = "quadratic form: stabilizer is the orthogonal group";
      } else {
        r.a = generic_reduced_period(D, m) * D / std::gcd(D, m);
        r.source = "Matsumura-Monsky for m > 3; generic binary and ternary form stabilizers otherwise";
      }
      break;
    case NamedKind::unit_tensor:
      r.a = m > 1 ? 2 : 1;
      r.source = "de Groote: stabilizer is diagonal torus with abc = 1, extended by diagonal S_m";
      break;
    case NamedKind::matmul_tensor:
      r.a = 1;
      r.source = "stabilizer generated by (A,B,C) sandwich maps and the cyclic symmetry";
      break;
    case NamedKind::generic_tensor:
      r.a = m == 2 ? 2 : 1;
      r.source = m >= 3 ? "A. M. Popov for m > 3; Thrall-Chanler classification for m = 3"
                        : "generic 2x2x2 tensors lie in the orbit of the unit tensor";
      break;
  }
  if (obj.is_form()) {
    const long g = std::gcd(D, m);
    if ((r.a * g) % D != 0) throw InternalError("stabilizer period is not a multiple of D/gcd(D,m)");
    r.a_reduced = r.a * g / D;
    if ((static_cast<long>(m) * r.a) % D != 0) throw InternalError("degree period is not integral");
    r.b = static_cast<long>(m) * r.a / D;
  } else {
    r.b = static_cast<long>(m) * r.a;
  }
  return r;
}

namespace {

void mark_exact(MinDegreeReport& r, const BigInt& e) {
  r.e_lower = e;
  r.e_exact = e;
  r.verdict = "exact";
}

void form_degree(const NamedObject& obj, MinDegreeReport& r, const SearchOptions& opts, bool evaluate) {
  const int D = obj.D, m = obj.m;
  LatinOptions lopts;
  lopts.search = opts;
  // Degree-m invariants vanish for odd D; every degree in the monoid is a multiple of b.
  auto above_m = [&](bool strict) {
    BigInt lo = strict ? BigInt(m + 1) : BigInt(m);
    return r.b ? next_multiple(*r.b, lo) : lo;
  };
  r.e_lower = above_m(D % 2 == 1);
  r.verdict = "lower-bound";
  if (!evaluate) return;
  switch (obj.kind) {
    case NamedKind::product: {
      if (m % 2 == 0) {
        BigInt c = signed_latin_squares(m, lopts);
        r.evaluation = "signed latin squares(" + std::to_string(m) + ") = " + c.get_str();
        if (c != 0) {
          mark_exact(r, m);
        } else {
          r.e_lower = above_m(true);
        }
      } else {
        BigInt c = signed_latin_annuli(m, m + 1, lopts);
        r.evaluation = "signed latin annuli(" + std::to_string(m) + "," + std::to_string(m + 1) + ") = " + c.get_str();
        if (c != 0) {
          mark_exact(r, m + 1);
        } else {
          r.e_lower = r.b ? next_multiple(*r.b, BigInt(m + 2)) : BigInt(m + 2);
        }
      }
      break;
    }
    case NamedKind::power_sum: {
      if (m < 2) throw InvalidInput("minimal degree of a power sum needs m >= 2");
      if (D % 2 == 0) {
        TableauEvalOptions t;
        t.search = opts;
        Rational v = eval_generic_invariant(D, m, named_tensor(obj), t);
        r.evaluation = "P_{" + std::to_string(D) + "," + std::to_string(m) + "}(w) = " + to_string(v);
        if (v != 0) mark_exact(r, m);
        break;
      }
      if (BigInt(2 * m) <= binomial(2 * D, D)) {
        if (m <= 4) {
          TableauEvalOptions t;
          t.search = opts;
          Rational v = eval_tableau_invariant(power_sum_tableau(D, m), named_tensor(obj), t);
          r.evaluation = "P_T(w) = " + to_string(v) + " for the greedy power-sum tableau";
        } else {
          r.evaluation = "greedy power-sum tableau exists since 2m <= binom(2D,D)";
        }
        mark_exact(r, 2 * m);
      } else {
        r.e_lower = next_multiple(*r.b, BigInt(2 * m + 1));
        r.notes.push_back("2m > binom(2D,D), so e(w) > 2m");
      }
      break;
    }
    case NamedKind::determinant:
    case NamedKind::permanent: {
      const int n = obj.n;
      if (n % 2 == 0) {
        TableWeighting w = obj.kind == NamedKind::determinant ? TableWeighting::det : TableWeighting::per;
        BigInt c = signed_admissible_tables(n, w, lopts);
        r.evaluation = "signed admissible tables(" + std::to_string(n) + "," +
                       (w == TableWeighting::det ? "det" : "per") + ") = " + c.get_str();
        if (c != 0) {
          mark_exact(r, m);
        } else {
          r.e_lower = above_m(true);
        }
      } else {
        r.notes.push_back("whether e = n^2 is open for odd n");
      }
      break;
    }
    case NamedKind::generic_form: {
      if (D % 2 == 0) {
        r.evaluation = "P_{D,m} is a nonzero polynomial (value m! at the power sum)";
        mark_exact(r, m);
      } else if (D == m) {
        r.evaluation = "the cyclic invariant P_D is a nonzero polynomial";
        mark_exact(r, m + 1);
      } else {
        r.notes.push_back("the generic minimal degree for odd D and D != m is open");
      }
      break;
    }
    default:
      throw InvalidInput("not a form");
  }
  if (r.b && r.e_exact && *r.e_exact % *r.b != 0) {
    r.notes.push_back("inconsistent data: minimal degree " + r.e_exact->get_str() +
                      " is not a multiple of the degree period " + std::to_string(*r.b));
  }
}

void tensor_degree(const NamedObject& obj, MinDegreeReport& r, const SearchOptions& opts, bool evaluate) {
  const long m = obj.m;
  const long a = periods(obj).a;
  const long b = m * a;
  const long eprime = m > 2 ? ceil_sqrt_over(m, a) : 1;
  r.e_lower = BigInt(b) * eprime;
  r.verdict = "lower-bound";
  if (!evaluate) return;
  switch (obj.kind) {
    case NamedKind::unit_tensor: {
      if (m == 1) {
        r.evaluation = "F_1(<1>) = 1";
        mark_exact(r, 1);
        break;
      }
      auto n = square_root(static_cast<int>(m));
      if (n && *n % 2 == 0) {
        LatinOptions lopts;
        lopts.search = opts;
        BigInt c = signed_latin_cubes(*n, lopts);
        r.evaluation = "signed latin cubes(" + std::to_string(*n) + ") = " + c.get_str();
        if (c != 0) {
          mark_exact(r, r.e_lower);
        } else {
          r.e_lower += b;
        }
      }
      break;
    }
    case NamedKind::matmul_tensor: {
      Rational v = eval_Fn_matmul(obj.n, opts);
      r.evaluation = "F_n(<n,n,n>) = " + to_string(v);
      if (v != 0) {
        mark_exact(r, r.e_lower);
      } else {
        r.e_lower += b;
      }
      break;
    }
    case NamedKind::generic_tensor: {
      // Generic tensors attain every degree m*delta with k_m(delta) > 0.
      for (int delta = 1;; ++delta) {
        BigInt k = k_rect(static_cast<int>(m), delta, opts);
        if (k > 0) {
          r.evaluation = "k_" + std::to_string(m) + "(" + std::to_string(delta) + ") = " + k.get_str();
          mark_exact(r, BigInt(m) * delta);
          break;
        }
      }
      break;
    }
    default:
      throw InvalidInput("not a tensor");
  }
}

MinDegreeReport degree_report(const NamedObject& obj, const SearchOptions& opts, bool evaluate) {
  obj.validate();
  MinDegreeReport r;
  r.object = obj;
  bool infinite_period = obj.is_form() && obj.D == 1;
  if (!infinite_period) r.b = periods(obj).b;
  try {
    if (obj.is_form()) {
      form_degree(obj, r, opts, evaluate);
    } else {
      tensor_degree(obj, r, opts, evaluate);
    }
  } catch (const BudgetExceeded&) {
    r.verdict = "undecided at budget";
    r.e_exact.reset();
    r.notes.push_back("evaluation did not finish within the budget");
  }
  return r;
}

}  // namespace

MinDegreeReport minimal_degree_report(const NamedObject& obj, const SearchOptions& opts) {
  return degree_report(obj, opts, true);
}

std::string normality_name(Normality n) {
  switch (n) {
    case Normality::non_normal: return "non-normal";
    case Normality::normal_known: return "normal-known";
    case Normality::unknown: return "unknown";
  }
  return "?";
}

NormalityReport nonnormality_flag(const NamedObject& obj, const SearchOptions& opts) {
  NormalityReport rep;
  bool known_normal = false;
  switch (obj.kind) {
    case NamedKind::product: known_normal = obj.m == 2; break;
    case NamedKind::power_sum:
    case NamedKind::generic_form: known_normal = obj.D == 2; break;
    case NamedKind::determinant:
    case NamedKind::permanent: known_normal = obj.n == 2; break;
    case NamedKind::unit_tensor:
    case NamedKind::generic_tensor: known_normal = obj.m <= 2; break;
    case NamedKind::matmul_tensor: known_normal = obj.n == 1; break;
  }
  // Evaluation is skipped when the unconditional bound already decides.
  rep.degree = degree_report(obj, opts, false);
  if (known_normal || !rep.degree.b || BigInt(*rep.degree.b) >= rep.degree.e_lower) {
    rep.degree = degree_report(obj, opts, true);
  }
  const auto& d = rep.degree;
  if (known_normal) {
    rep.flag = Normality::normal_known;
    rep.reason = "the orbit closure is the whole ambient space";
    return rep;
  }
  if (!d.b) {
    rep.reason = "stabilizer period is infinite";
    return rep;
  }
  if (BigInt(*d.b) < d.e_lower) {
    rep.flag = Normality::non_normal;
    rep.reason = "degree period " + std::to_string(*d.b) + " < " + d.e_lower.get_str() + " <= e(w)";
  } else {
    rep.reason = "no strict inequality between the degree period and a certified minimal-degree bound";
  }
  return rep;
}

namespace {

std::vector<BigInt> primitive_integer(const std::vector<Rational>& v) {
  BigInt den = 1;
  for (const auto& q : v) den = lcm(den, BigInt(q.get_den()));
  std::vector<BigInt> out;
  BigInt g = 0;
  for (const auto& q : v) {
    out.push_back(q.get_num() * (den / q.get_den()));
    g = gcd(g, out.back());
  }
  if (g > 1) {
    for (auto& z : out) z /= g;
  }
  return out;
}

// Shift each block to sum zero, then scale the whole vector to a primitive integer vector.
std::vector<std::vector<BigInt>> separator_blocks(const std::vector<Rational>& y, int blocks, int width) {
  std::vector<Rational> shifted(y.size());
  for (int k = 0; k < blocks; ++k) {
    Rational mean = 0;
    for (int i = 0; i < width; ++i) mean += y[k * width + i];
    mean /= width;
    for (int i = 0; i < width; ++i) shifted[k * width + i] = y[k * width + i] - mean;
  }
  auto flat = primitive_integer(shifted);
  std::vector<std::vector<BigInt>> out(blocks);
  for (int k = 0; k < blocks; ++k) out[k].assign(flat.begin() + k * width, flat.begin() + (k + 1) * width);
  return out;
}

}  // namespace

SupportCertificate polystable_form_support(const SparseForm& w) {
  if (w.is_zero()) throw InvalidInput("polystability certificate needs a nonzero form");
  const int m = w.m();
  std::vector<Index> supp;
  for (const auto& [alpha, c] : w.coeffs()) supp.push_back(alpha);
  Matrix A(m, std::vector<Rational>(supp.size(), 0));
  for (size_t j = 0; j < supp.size(); ++j) {
    for (int i = 0; i < m; ++i) A[i][j] = supp[j][i];
  }
  auto res = solve_feasibility(A, std::vector<Rational>(m, 1));
  SupportCertificate cert;
  cert.holds = res.feasible;
  if (res.feasible) {
    for (size_t j = 0; j < supp.size(); ++j) {
      if (res.x[j] != 0) cert.witness.emplace_back(supp[j], res.x[j]);
    }
  } else {
    cert.separator = separator_blocks(res.farkas, 1, m);
  }
  if (!verify_certificate(w, cert)) throw InternalError("form support certificate failed verification");
  return cert;
}

SupportCertificate polystable_tensor_support(const SparseTensor& w) {
  if (w.is_zero()) throw InvalidInput("polystability certificate needs a nonzero tensor");
  if (w.order() != 3 || !w.is_cubic()) throw InvalidInput("tensor certificate needs a cubic order-3 tensor");
  const int m = w.shape()[0];
  std::vector<Index> supp;
  for (const auto& [k, v] : w.entries()) supp.push_back(k);
  Matrix A(3 * m, std::vector<Rational>(supp.size(), 0));
  for (size_t j = 0; j < supp.size(); ++j) {
    for (int ax = 0; ax < 3; ++ax) A[ax * m + supp[j][ax] - 1][j] = 1;
  }
  auto res = solve_feasibility(A, std::vector<Rational>(3 * m, Rational(1, m)));
  SupportCertificate cert;
  cert.holds = res.feasible;
  if (res.feasible) {
    for (size_t j = 0; j < supp.size(); ++j) {
      if (res.x[j] != 0) cert.witness.emplace_back(supp[j], res.x[j]);
    }
  } else {
    cert.separator = separator_blocks(res.farkas, 3, m);
  }
  if (!verify_certificate(w, cert)) throw InternalError("tensor support certificate failed verification");
  return cert;
}

SupportCertificate polystable_named(const NamedObject& obj) {
  obj.validate();
  SupportCertificate c;
  if (obj.is_form()) {
    c = polystable_form_support(named_form(obj));
  } else {
    c = polystable_tensor_support(named_tensor(obj));
  }
  c.reductive_condition = "satisfied by theorem for this named object";
  return c;
}

bool verify_certificate(const SparseForm& w, const SupportCertificate& c) {
  const int m = w.m();
  if (c.holds) {
    std::vector<Rational> sum(m, 0);
    for (const auto& [alpha, coef] : c.witness) {
      if (coef < 0 || w.get(alpha) == 0) return false;
      for (int i = 0; i < m; ++i) sum[i] += coef * alpha[i];
    }
    for (const auto& s : sum) {
      if (s != 1) return false;
    }
    return true;
  }
  if (c.separator.size() != 1 || static_cast<int>(c.separator[0].size()) != m) return false;
  const auto& mu = c.separator[0];
  BigInt total = 0;
  for (const auto& z : mu) total += z;
  if (total != 0) return false;
  bool strict = false;
  for (const auto& [alpha, coef] : w.coeffs()) {
    BigInt dot = 0;
    for (int i = 0; i < m; ++i) dot += mu[i] * alpha[i];
    if (dot < 0) return false;
    if (dot > 0) strict = true;
  }
  return strict;
}

bool verify_certificate(const SparseTensor& w, const SupportCertificate& c) {
  if (w.order() != 3 || !w.is_cubic()) return false;
  const int m = w.shape()[0];
  if (c.holds) {
    std::vector<std::vector<Rational>> marg(3, std::vector<Rational>(m, 0));
    Rational total = 0;
    for (const auto& [k, p] : c.witness) {
      if (p < 0 || w.get(k) == 0) return false;
      for (int ax = 0; ax < 3; ++ax) marg[ax][k[ax] - 1] += p;
      total += p;
    }
    if (total != 1) return false;
    for (const auto& row : marg) {
      for (const auto& v : row) {
        if (v != Rational(1, m)) return false;
      }
    }
    return true;
  }
  if (c.separator.size() != 3) return false;
  for (const auto& blk : c.separator) {
    if (static_cast<int>(blk.size()) != m) return false;
    BigInt s = 0;
    for (const auto& z : blk) s += z;
    if (s != 0) return false;
  }
  bool strict = false;
  for (const auto& [k, v] : w.entries()) {
    BigInt dot = c.separator[0][k[0] - 1] + c.separator[1][k[1] - 1] + c.separator[2][k[2] - 1];
    if (dot < 0) return false;
    if (dot > 0) strict = true;
  }
  return strict;
}

}  // namespace gct
