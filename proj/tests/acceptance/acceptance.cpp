// One line per criterion: "criterion N: PASS|FAIL (seconds) summary".
// Exit status is the number of failed criteria.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "gct/invariant_theory.hpp"
#include "gct/kronecker.hpp"
#include "gct/polyspace.hpp"
#include "gct/semigroup.hpp"
#include "gct/signed_latin.hpp"
#include "gct/tableau.hpp"
#include "gct/tensor_invariants.hpp"
#include "oracles.hpp"

using namespace gct;

namespace {

struct Check {
  std::ostringstream notes;
  bool ok = true;
  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes << " [failed: " << what << "]";
    }
  }
};

Rational rpow(const Rational& b, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

SparseTensor product_tensor(int m) { return form_to_tensor(named_form(NamedObject::product(m))); }

bool has_certificate(const NamedObject& o) {
  auto c = polystable_named(o);
  if (!c.holds) return false;
  return o.is_form() ? verify_certificate(named_form(o), c) : verify_certificate(named_tensor(o), c);
}

void power_sum_law(Check& c) {
  for (auto [D, m] : {std::pair{2, 2}, {2, 4}, {4, 2}, {4, 3}, {4, 4}, {6, 2}}) {
    auto t0 = std::chrono::steady_clock::now();
    Rational v = eval_generic_invariant(D, m, form_to_tensor(named_form(NamedObject::power_sum(D, m))));
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.expect(v == Rational(factorial(m)), "P_{" + std::to_string(D) + "," + std::to_string(m) + "}");
    c.expect(s < 10, "time for (" + std::to_string(D) + "," + std::to_string(m) + ")");
  }
  c.notes << " six (D,m) pairs";
}

void odd_vanishing(Check& c) {
  std::mt19937_64 rng(101);
  int n = 0;
  for (auto [D, m] : {std::pair{3, 2}, {3, 3}, {5, 2}}) {
    for (int t = 0; t < 20; ++t, ++n) {
      auto v = oracle::random_tensor(rng, m, D, 2 + t % 6, 4, t % 2 == 1);
      c.expect(eval_generic_invariant(D, m, v) == 0, "nonzero odd-degree value");
    }
  }
  c.notes << " " << n << " random tensors";
}

void determinant_reduction(Check& c) {
  std::mt19937_64 rng(103);
  std::uniform_int_distribution<int> num(-6, 6), den(1, 5);
  for (int t = 0; t < 10; ++t) {
    const int m = 1 + t % 5;
    Matrix a(m, std::vector<Rational>(m, 0));
    SparseTensor w = SparseTensor::cubic(m, 2);
    for (int i = 0; i < m; ++i) {
      for (int j = i; j < m; ++j) {
        Rational x(num(rng), den(rng));
        x.canonicalize();
        a[i][j] = a[j][i] = x;
        w.set({i + 1, j + 1}, x);
        w.set({j + 1, i + 1}, x);
      }
    }
    c.expect(eval_generic_invariant(2, m, w) == Rational(factorial(m)) * oracle::leibniz_det(a),
             "m = " + std::to_string(m));
  }
  c.notes << " 10 symmetric matrices, m <= 5";
}

void squares_bridge(Check& c) {
  for (int m : {2, 3, 4}) {
    Rational p = eval_generic_invariant(m, m, product_tensor(m));
    BigInt sq = signed_latin_squares(m);
    c.expect(rpow(Rational(factorial(m)), m) * p == Rational(sq), "m = " + std::to_string(m));
    if (m == 3) c.expect(sq == 0, "m = 3 vanishes");
    if (m == 4) c.expect(sq != 0, "m = 4 nonzero");
    c.notes << " m=" << m << ":" << sq;
  }
}

void annulus_bridge(Check& c) {
  for (int m : {1, 3}) {
    BigInt a = signed_latin_annuli(m, m + 1);
    Rational p = eval_cyclic_invariant(m, product_tensor(m));
    c.expect(a != 0, "annuli nonzero for m = " + std::to_string(m));
    c.expect(rpow(Rational(factorial(m)), m + 1) * p == Rational(a), "bridge m = " + std::to_string(m));
    c.notes << " m=" << m << ":" << a;
  }
  auto r = minimal_degree_report(NamedObject::product(3));
  c.expect(r.e_exact && *r.e_exact == 4, "e(X1X2X3) = 4");
  c.notes << " e(X1X2X3)=" << (r.e_exact ? r.e_exact->get_str() : "?");
}

void small_det_per(Check& c) {
  for (auto w : {TableWeighting::det, TableWeighting::per}) {
    const bool det = w == TableWeighting::det;
    auto f = form_to_tensor(named_form(det ? NamedObject::determinant(2) : NamedObject::permanent(2)));
    BigInt t = signed_admissible_tables(2, w);
    c.expect(t != 0, det ? "det tables nonzero" : "per tables nonzero");
    c.expect(16 * eval_generic_invariant(2, 4, f) == Rational(t), det ? "det bridge" : "per bridge");
    c.notes << (det ? " det:" : " per:") << t;
  }
}

void tensor_invariant(Check& c) {
  BigInt cubes = signed_latin_cubes(2);
  c.expect(cubes != 0, "cubes nonzero");
  c.expect(eval_Fn(2, named_tensor(NamedObject::unit_tensor(4))) == Rational(cubes), "F_2 at unit tensor");
  Rational mm = eval_Fn_matmul(2);
  c.expect(mm == eval_Fn(2, named_tensor(NamedObject::matmul_tensor(2))), "matmul routes");
  std::mt19937_64 rng(107);
  for (int n = 1; n <= 4; ++n) {
    Matrix a = oracle::random_matrix(rng, n, 4, false);
    SparseTensor w({1, n, n});
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) w.set({1, i + 1, j + 1}, a[i][j]);
    }
    c.expect(eval_F_format(n, 1, 1, w) == Rational(factorial(n)) * oracle::leibniz_det(a), "F_{n11}");
  }
  c.notes << " cubes(2)=" << cubes << " F_2(matmul)=" << to_string(mm);
}

// k_3 quasipolynomial, indexed by n = delta + 3, residue n mod 12.
Rational k3_quasi(int delta) {
  const int n = delta + 3;
  const long coef[12][2] = {{0, 0}, {6, -7}, {0, -4}, {6, 21}, {0, -16}, {6, -7},
                            {0, 12}, {6, 5},  {0, -16}, {6, 9}, {0, -4},  {6, 5}};
  const auto& p = coef[n % 12];
  Rational q(static_cast<long>(n) * n + p[0] * n + p[1], 48);
  q.canonicalize();
  return q;
}

void kronecker_table(Check& c) {
  const int k3[] = {1, 0, 1, 1, 2, 1, 3, 2, 4, 3, 5, 4, 7};
  for (int d = 0; d <= 12; ++d) c.expect(k_rect(3, d) == k3[d], "k_3(" + std::to_string(d) + ")");
  c.expect(kronecker(Partition::rectangle(4, 2), Partition::rectangle(4, 2), Partition::rectangle(4, 2)) == 1,
           "k_4(2)");
  c.expect(kronecker(Partition::rectangle(9, 3), Partition::rectangle(9, 3), Partition::rectangle(9, 3)) == 1,
           "k_9(3)");
  for (int d = 0; d <= 24; ++d) c.expect(Rational(k_rect(3, d)) == k3_quasi(d), "quasipolynomial at " + std::to_string(d));
  struct Want {
    int m;
    int delta_max;
    std::vector<int> gaps;
  };
  for (const auto& w : {Want{3, 12, {1}}, Want{4, 8, {1}}, Want{5, 7, {1, 2}}, Want{7, 8, {1, 2, 3}}}) {
    auto r = exponent_monoid(w.m, w.delta_max);
    std::vector<int> gaps(r.gaps.begin(), r.gaps.end());
    c.expect(gaps == w.gaps, "gaps of E'(" + std::to_string(w.m) + ")");
    c.expect(r.e_prime && *r.e_prime == w.gaps.back() + 1, "e'(" + std::to_string(w.m) + ")");
  }
  c.notes << " k_3 to 24, gaps for m = 3,4,5,7";
}

void invariance_suite(Check& c) {
  std::mt19937_64 rng(109);
  int cases = 0;
  const int shapes[][3] = {{2, 2, 2}, {2, 4, 4}, {3, 3, 3}, {3, 4, 4}, {2, 3, 2}, {3, 2, 3}, {4, 3, 4}};
  for (const auto& sh : shapes) {
    for (int t = 0; t < 3; ++t, ++cases) {
      Tableau T = oracle::random_tableau(rng, sh[0], sh[1], sh[2]);
      const int m = T.rows(), D = T.occurrences();
      SparseTensor v = oracle::random_tensor(rng, m, D, 2 * m + t, 3, t == 1);
      Matrix g = oracle::random_matrix(rng, m, 2);
      Rational base = eval_tableau_invariant(T, v);
      c.expect(eval_tableau_invariant(T, apply_action(v, g)) == rpow(determinant(g), T.cols()) * base,
               "P_T relative invariance");
      c.expect(base == oracle::tableau_sum(T, v), "P_T pruned = oracle");
    }
  }
  for (int t = 0; t < 4; ++t, ++cases) {
    SparseTensor w = oracle::random_tensor(rng, 4, 3, 12 + t);
    std::vector<Matrix> gs;
    Rational dets = 1;
    for (int k = 0; k < 3; ++k) {
      gs.push_back(oracle::random_matrix(rng, 4, 2));
      dets *= determinant(gs.back());
    }
    c.expect(eval_Fn(2, apply_action(w, gs)) == dets * dets * eval_Fn(2, w), "F_2 relative invariance");
  }
  // Oracle comparison only where the labeling space stays below 10^7.
  const int formats[][3] = {{3, 1, 1}, {4, 1, 1}, {2, 2, 1}, {1, 2, 2}, {2, 1, 2}, {3, 2, 1}, {2, 3, 1}};
  for (const auto& f : formats) {
    if (oracle::labeling_space(f[0], f[1], f[2]) > 10000000) {
      c.expect(false, "format too large for the oracle");
      continue;
    }
    std::vector<int> shape{f[1] * f[2], f[0] * f[2], f[0] * f[1]};
    for (int t = 0; t < 2; ++t, ++cases) {
      SparseTensor w = oracle::random_tensor3(rng, shape, shape[0] * shape[1] * shape[2] / 2 + 1);
      c.expect(eval_F_format(f[0], f[1], f[2], w) == oracle::labeling_sum(f[0], f[1], f[2], w), "F format = oracle");
    }
  }
  c.notes << " " << cases << " random instances";
}

void certificates(Check& c) {
  std::vector<NamedObject> objs{NamedObject::determinant(3), NamedObject::permanent(3), NamedObject::matmul_tensor(2)};
  for (int m = 2; m <= 4; ++m) objs.push_back(NamedObject::product(m));
  for (int D = 2; D <= 5; ++D) {
    for (int m = 1; m <= 4; ++m) objs.push_back(NamedObject::power_sum(D, m));
  }
  for (int m = 1; m <= 5; ++m) objs.push_back(NamedObject::unit_tensor(m));
  for (const auto& o : objs) c.expect(has_certificate(o), o.name());

  SparseForm f(2, 3);
  f.set({2, 1}, 1);
  auto cf = polystable_form_support(f);
  c.expect(!cf.holds && verify_certificate(f, cf), "X1^2 X2 separator");
  SparseTensor t = SparseTensor::cubic(2, 3);
  t.set({1, 1, 1}, 1);
  t.set({1, 1, 2}, 1);
  auto ct = polystable_tensor_support(t);
  c.expect(!ct.holds && verify_certificate(t, ct), "|111>+|112> separator");
  c.notes << " " << objs.size() << " holding, 2 failing";
}

void periods_normality(Check& c) {
  for (int m = 2; m <= 9; ++m) c.expect(periods(NamedObject::product(m)).a == 2, "product a");
  for (int D = 2; D <= 7; ++D) {
    for (int m = 2; m <= 5; ++m) {
      long want = D == 2 ? 2 : (D % 2 == 0 ? D : 2 * D);
      c.expect(periods(NamedObject::power_sum(D, m)).a == want, "power sum a");
    }
  }
  for (int n = 2; n <= 9; ++n) {
    c.expect(periods(NamedObject::determinant(n)).a == ((n % 4 == 0 || n % 4 == 1) ? 1 : 2), "det a");
    c.expect(periods(NamedObject::permanent(n)).a == (n % 4 == 0 ? 1 : 2), "per a");
  }
  for (int m = 2; m <= 6; ++m) c.expect(periods(NamedObject::unit_tensor(m)).a == 2, "unit a");
  for (int n = 1; n <= 4; ++n) c.expect(periods(NamedObject::matmul_tensor(n)).a == 1, "matmul a");
  std::vector<NamedObject> forms;
  for (int m = 2; m <= 8; ++m) forms.push_back(NamedObject::product(m));
  for (int n = 2; n <= 8; ++n) {
    forms.push_back(NamedObject::determinant(n));
    forms.push_back(NamedObject::permanent(n));
  }
  for (int D = 2; D <= 6; ++D) {
    for (int m = 1; m <= 6; ++m) forms.push_back(NamedObject::power_sum(D, m));
  }
  for (const auto& o : forms) {
    auto p = periods(o);
    c.expect(static_cast<long>(o.D) * p.b == static_cast<long>(o.m) * p.a, "D b = m a for " + o.name());
  }
  for (int m = 1; m <= 6; ++m) {
    auto p = periods(NamedObject::unit_tensor(m));
    c.expect(p.b == m * p.a, "b = m a for unit tensor");
  }

  auto flag = [](const NamedObject& o) { return nonnormality_flag(o).flag; };
  for (int m = 3; m <= 6; ++m) c.expect(flag(NamedObject::product(m)) == Normality::non_normal, "product non-normal");
  for (int n = 3; n <= 5; ++n) {
    c.expect(flag(NamedObject::determinant(n)) == Normality::non_normal, "det non-normal");
    c.expect(flag(NamedObject::permanent(n)) == Normality::non_normal, "per non-normal");
  }
  for (int m = 5; m <= 7; ++m) c.expect(flag(NamedObject::unit_tensor(m)) == Normality::non_normal, "unit non-normal");
  for (int n = 2; n <= 3; ++n) c.expect(flag(NamedObject::matmul_tensor(n)) == Normality::non_normal, "matmul non-normal");
  c.expect(flag(NamedObject::product(2)) == Normality::normal_known, "X1X2 normal");
  c.expect(flag(NamedObject::determinant(2)) == Normality::normal_known, "det_2 normal");
  c.expect(flag(NamedObject::permanent(2)) == Normality::normal_known, "per_2 normal");
  c.notes << " table and flags";
}

void semigroups(Check& c) {
  auto r = semigroup_report({2, 5});
  c.expect(r.gaps == std::vector<long>{1, 3}, "gaps(2,5)");
  c.expect(r.frobenius == 3L, "Frobenius(2,5)");
  std::mt19937_64 rng(113);
  std::uniform_int_distribution<long> pick(2, 40);
  int pairs = 0;
  while (pairs < 20) {
    long a = pick(rng), b = pick(rng);
    if (std::gcd(a, b) != 1) continue;
    ++pairs;
    auto s = semigroup_report({a, b});
    c.expect(s.frobenius == a * b - a - b, "Frobenius");
    c.expect(static_cast<long>(s.gaps.size()) == (a - 1) * (b - 1) / 2, "gap count");
  }
  c.notes << " 20 coprime pairs";
}

struct Criterion {
  int id;
  double limit_seconds;
  std::function<void(Check&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> all{
      {1, 60, power_sum_law},      {2, 10, odd_vanishing},   {3, 60, determinant_reduction},
      {4, 60, squares_bridge},     {5, 60, annulus_bridge},  {6, 60, small_det_per},
      {7, 360, tensor_invariant},  {8, 600, kronecker_table}, {9, 600, invariance_suite},
      {10, 10, certificates},      {11, 5, periods_normality}, {12, 1, semigroups},
  };
  int failed = 0;
  for (const auto& cr : all) {
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.notes << " [exception: " << e.what() << "]";
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s > cr.limit_seconds) {
      c.ok = false;
      c.notes << " [over " << cr.limit_seconds << " s]";
    }
    if (!c.ok) ++failed;
    std::cout << "criterion " << cr.id << ": " << (c.ok ? "PASS" : "FAIL") << " (" << std::fixed
              << std::setprecision(2) << s << " s)" << c.notes.str() << std::endl;
  }
  return failed;
}
