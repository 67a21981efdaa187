#include <doctest.h>

#include <numeric>
#include <random>

#include "gct/errors.hpp"
#include "gct/exact_lp.hpp"
#include "gct/invariant_theory.hpp"
#include "gct/semigroup.hpp"
#include "oracles.hpp"

using namespace gct;

namespace {

// Independent re-check of a form witness: nonnegative coefficients on the support summing to (1,...,1).
bool form_witness_ok(const SparseForm& w, const SupportCertificate& c) {
  std::vector<Rational> sum(w.m(), 0);
  for (const auto& [a, q] : c.witness) {
    if (q < 0 || w.get(a) == 0) return false;
    for (int i = 0; i < w.m(); ++i) sum[i] += q * a[i];
  }
  return std::all_of(sum.begin(), sum.end(), [](const Rational& s) { return s == 1; });
}

bool tensor_witness_ok(const SparseTensor& w, const SupportCertificate& c) {
  const int m = w.shape()[0];
  std::vector<std::vector<Rational>> marg(3, std::vector<Rational>(m, 0));
  for (const auto& [k, p] : c.witness) {
    if (p < 0 || w.get(k) == 0) return false;
    for (int ax = 0; ax < 3; ++ax) marg[ax][k[ax] - 1] += p;
  }
  for (const auto& row : marg) {
    for (const auto& v : row) {
      if (v != Rational(1, m)) return false;
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("periods") {
  TEST_CASE("period examples") {
    auto p = periods(NamedObject::product(3));
    CHECK(p.a == 2);
    CHECK(p.b == 2);
    auto d = periods(NamedObject::determinant(3));
    CHECK(d.a == 2);
    CHECK(d.b == 6);
    auto s = periods(NamedObject::power_sum(3, 3));
    CHECK(s.a == 6);
    CHECK(s.b == 6);
    CHECK_THROWS_AS(periods(NamedObject::power_sum(1, 3)), InvalidInput);
  }

  TEST_CASE("period table for all named objects") {
    for (int m = 2; m <= 9; ++m) CHECK(periods(NamedObject::product(m)).a == 2);
    for (int D = 2; D <= 7; ++D) {
      CHECK(periods(NamedObject::power_sum(D, 1)).a == D);
      for (int m = 2; m <= 5; ++m) {
        long want = D == 2 ? 2 : (D % 2 == 0 ? D : 2 * D);
        CHECK(periods(NamedObject::power_sum(D, m)).a == want);
      }
    }
    CHECK_THROWS_AS(periods(NamedObject::determinant(1)), InvalidInput);
    for (int n = 2; n <= 9; ++n) {
      CHECK(periods(NamedObject::determinant(n)).a == ((n % 4 == 0 || n % 4 == 1) ? 1 : 2));
      CHECK(periods(NamedObject::permanent(n)).a == (n % 4 == 0 ? 1 : 2));
    }
    CHECK(periods(NamedObject::unit_tensor(1)).a == 1);
    for (int m = 2; m <= 6; ++m) CHECK(periods(NamedObject::unit_tensor(m)).a == 2);
    for (int n = 1; n <= 4; ++n) CHECK(periods(NamedObject::matmul_tensor(n)).a == 1);
    CHECK(periods(NamedObject::generic_tensor(2)).a == 2);
    for (int m = 3; m <= 6; ++m) CHECK(periods(NamedObject::generic_tensor(m)).a == 1);
    // Generic forms: a = a' D / gcd(D, m).
    CHECK(periods(NamedObject::generic_form(3, 2)).a == 6);
    CHECK(periods(NamedObject::generic_form(3, 3)).a == 2);
    CHECK(periods(NamedObject::generic_form(4, 3)).a == 8);
    CHECK(periods(NamedObject::generic_form(4, 4)).a == 1);
    CHECK(periods(NamedObject::generic_form(5, 4)).a == 5);
    CHECK(periods(NamedObject::generic_form(2, 5)).a == 2);
  }

  TEST_CASE("D b = m a holds exactly for forms and b = m a for tensors") {
    std::vector<NamedObject> objs;
    for (int m = 2; m <= 8; ++m) objs.push_back(NamedObject::product(m));
    for (int D = 2; D <= 6; ++D) {
      for (int m = 1; m <= 6; ++m) {
        objs.push_back(NamedObject::power_sum(D, m));
        objs.push_back(NamedObject::generic_form(D, m));
      }
    }
    for (int n = 2; n <= 8; ++n) {
      objs.push_back(NamedObject::determinant(n));
      objs.push_back(NamedObject::permanent(n));
    }
    for (const auto& o : objs) {
      auto r = periods(o);
      CHECK(static_cast<long>(o.D) * r.b == static_cast<long>(o.m) * r.a);
      REQUIRE(r.a_reduced.has_value());
      CHECK(*r.a_reduced * o.D == r.a * std::gcd(o.D, o.m));
      CHECK_FALSE(r.source.empty());
    }
    for (int m = 1; m <= 6; ++m) {
      auto u = periods(NamedObject::unit_tensor(m));
      CHECK(u.b == m * u.a);
      CHECK_FALSE(u.a_reduced.has_value());
    }
  }
}

TEST_SUITE("min-degree") {
  TEST_CASE("minimal degree examples") {
    auto ps = minimal_degree_report(NamedObject::power_sum(4, 3));
    CHECK(ps.verdict == "exact");
    CHECK(ps.e_exact == BigInt(3));
    auto pr = minimal_degree_report(NamedObject::product(4));
    CHECK(pr.e_exact == BigInt(4));
    auto big = minimal_degree_report(NamedObject::power_sum(3, 11));
    CHECK_FALSE(big.e_exact.has_value());
    CHECK(big.e_lower > 22);
    auto small = minimal_degree_report(NamedObject::power_sum(3, 10));
    CHECK(small.e_exact == BigInt(20));
  }

  TEST_CASE("annulus route for odd products") {
    for (int m : {1, 3}) {
      if (m == 1) continue;  // linear forms have no finite period
      auto r = minimal_degree_report(NamedObject::product(m));
      CHECK(r.e_exact == BigInt(m + 1));
    }
  }

  TEST_CASE("tensor minimal degrees") {
    auto u = minimal_degree_report(NamedObject::unit_tensor(4));
    CHECK(u.e_exact == BigInt(8));
    auto mm = minimal_degree_report(NamedObject::matmul_tensor(2));
    CHECK(mm.e_exact == BigInt(8));
    auto g3 = minimal_degree_report(NamedObject::generic_tensor(3));
    CHECK(g3.e_exact == BigInt(6));
    auto g7 = minimal_degree_report(NamedObject::generic_tensor(7));
    CHECK(g7.e_exact == BigInt(28));
  }

  TEST_CASE("budget exhaustion gives an undecided verdict") {
    SearchOptions o;
    o.budget_seconds = 0.01;
    auto r = minimal_degree_report(NamedObject::product(10), o);
    CHECK(r.verdict == "undecided at budget");
    CHECK_FALSE(r.e_exact.has_value());
    CHECK(r.e_lower >= 10);
  }
}

TEST_SUITE("normality") {
  TEST_CASE("normality examples") {
    auto x1x2 = nonnormality_flag(NamedObject::product(2));
    CHECK(x1x2.flag == Normality::normal_known);
    CHECK(x1x2.degree.e_exact == BigInt(2));
    CHECK(nonnormality_flag(NamedObject::determinant(3)).flag == Normality::non_normal);
    CHECK(nonnormality_flag(NamedObject::matmul_tensor(2)).flag == Normality::non_normal);
    CHECK(nonnormality_flag(NamedObject::determinant(2)).flag == Normality::normal_known);
    CHECK(nonnormality_flag(NamedObject::permanent(2)).flag == Normality::normal_known);
  }

  TEST_CASE("determinants, permanents, unit and matmul tensors beyond the exceptions") {
    for (int n = 3; n <= 6; ++n) {
      CHECK(nonnormality_flag(NamedObject::determinant(n)).flag == Normality::non_normal);
      CHECK(nonnormality_flag(NamedObject::permanent(n)).flag == Normality::non_normal);
    }
    for (int m = 5; m <= 9; ++m) CHECK(nonnormality_flag(NamedObject::unit_tensor(m)).flag == Normality::non_normal);
    for (int m = 3; m <= 4; ++m) CHECK(nonnormality_flag(NamedObject::unit_tensor(m)).flag == Normality::unknown);
    for (int n = 2; n <= 4; ++n) CHECK(nonnormality_flag(NamedObject::matmul_tensor(n)).flag == Normality::non_normal);
  }

  TEST_CASE("non-normal only when the degree period is below the certified bound") {
    std::vector<NamedObject> objs;
    for (int m = 2; m <= 7; ++m) objs.push_back(NamedObject::product(m));
    for (int D = 2; D <= 5; ++D) {
      for (int m = 2; m <= 4; ++m) objs.push_back(NamedObject::power_sum(D, m));
    }
    for (int n = 2; n <= 5; ++n) objs.push_back(NamedObject::determinant(n));
    for (int m = 1; m <= 6; ++m) objs.push_back(NamedObject::unit_tensor(m));
    for (const auto& o : objs) {
      auto r = nonnormality_flag(o);
      if (r.flag == Normality::non_normal) {
        REQUIRE(r.degree.b.has_value());
        CHECK(BigInt(*r.degree.b) < r.degree.e_lower);
      }
    }
  }
}

TEST_SUITE("polystability") {
  TEST_CASE("named forms satisfy the support condition") {
    std::vector<NamedObject> objs{NamedObject::determinant(3), NamedObject::permanent(3), NamedObject::determinant(2)};
    for (int m = 1; m <= 4; ++m) objs.push_back(NamedObject::product(m));
    for (int D = 2; D <= 5; ++D) {
      for (int m = 1; m <= 4; ++m) objs.push_back(NamedObject::power_sum(D, m));
    }
    for (const auto& o : objs) {
      auto c = polystable_named(o);
      CHECK(c.holds);
      CHECK(form_witness_ok(named_form(o), c));
      CHECK(verify_certificate(named_form(o), c));
    }
  }

  TEST_CASE("cyclic shifts certify det_3 with unit coefficients") {
    SupportCertificate c;
    c.holds = true;
    for (int k = 0; k < 3; ++k) {
      Index a(9, 0);
      for (int r = 0; r < 3; ++r) a[r * 3 + (r + k) % 3] = 1;
      c.witness.emplace_back(a, 1);
    }
    CHECK(verify_certificate(named_form(NamedObject::determinant(3)), c));
  }

  TEST_CASE("power sum witness is 1/D on each pure power") {
    auto w = named_form(NamedObject::power_sum(3, 4));
    auto c = polystable_form_support(w);
    REQUIRE(c.holds);
    CHECK(c.witness.size() == 4);
    for (const auto& [a, q] : c.witness) CHECK(q == Rational(1, 3));
  }

  TEST_CASE("named tensors satisfy the uniform marginal condition") {
    std::vector<NamedObject> objs{NamedObject::matmul_tensor(2)};
    for (int m = 1; m <= 5; ++m) objs.push_back(NamedObject::unit_tensor(m));
    for (const auto& o : objs) {
      auto c = polystable_named(o);
      CHECK(c.holds);
      CHECK(tensor_witness_ok(named_tensor(o), c));
    }
    auto mm = polystable_named(NamedObject::matmul_tensor(2));
    Rational total = 0;
    for (const auto& [k, p] : mm.witness) total += p;
    CHECK(total == 1);
  }

  TEST_CASE("failing cases carry a verified separator") {
    SparseForm f(2, 3);
    f.set({2, 1}, 1);
    auto c = polystable_form_support(f);
    CHECK_FALSE(c.holds);
    REQUIRE(c.separator.size() == 1);
    CHECK(c.separator[0] == std::vector<BigInt>{1, -1});
    CHECK(verify_certificate(f, c));

    SparseTensor t = SparseTensor::cubic(2, 3);
    t.set({1, 1, 1}, 1);
    t.set({1, 1, 2}, 1);
    auto ct = polystable_tensor_support(t);
    CHECK_FALSE(ct.holds);
    REQUIRE(ct.separator.size() == 3);
    for (const auto& blk : ct.separator) CHECK(std::accumulate(blk.begin(), blk.end(), BigInt(0)) == 0);
    bool strict = false;
    for (const auto& [k, v] : t.entries()) {
      BigInt dot = ct.separator[0][k[0] - 1] + ct.separator[1][k[1] - 1] + ct.separator[2][k[2] - 1];
      CHECK(dot >= 0);
      strict = strict || dot > 0;
    }
    CHECK(strict);
  }

  TEST_CASE("random supports: every verdict comes with a valid certificate") {
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 30; ++trial) {
      auto t = oracle::random_tensor(rng, 3, 3, 2 + trial % 6);
      auto c = polystable_tensor_support(t);
      CHECK(verify_certificate(t, c));
      if (c.holds) CHECK(tensor_witness_ok(t, c));
      SparseForm f = tensor_to_form(t);
      if (!f.is_zero()) CHECK(verify_certificate(f, polystable_form_support(f)));
    }
  }

  TEST_CASE("zero inputs are rejected") {
    CHECK_THROWS_AS(polystable_form_support(SparseForm(2, 2)), InvalidInput);
    CHECK_THROWS_AS(polystable_tensor_support(SparseTensor::cubic(2, 3)), InvalidInput);
  }
}

TEST_SUITE("exact-lp") {
  TEST_CASE("feasible and infeasible systems") {
    Matrix A{{1, 1}, {1, -1}};
    auto r = solve_feasibility(A, {2, 0});
    REQUIRE(r.feasible);
    CHECK(r.x == std::vector<Rational>{1, 1});
    auto s = solve_feasibility(Matrix{{1, 1}}, {-1});
    REQUIRE_FALSE(s.feasible);
    // y^T A >= 0 and y^T b < 0
    CHECK(s.farkas[0] * 1 >= 0);
    CHECK(s.farkas[0] * -1 < 0);
  }

  TEST_CASE("random systems return verifiable answers") {
    std::mt19937_64 rng(79);
    std::uniform_int_distribution<int> val(-3, 3);
    for (int trial = 0; trial < 100; ++trial) {
      const int rows = 1 + trial % 4, cols = 1 + trial % 5;
      Matrix A(rows, std::vector<Rational>(cols));
      std::vector<Rational> b(rows);
      for (int i = 0; i < rows; ++i) {
        for (auto& x : A[i]) x = val(rng);
        b[i] = val(rng);
      }
      auto r = solve_feasibility(A, b);
      if (r.feasible) {
        for (const auto& x : r.x) CHECK(x >= 0);
        for (int i = 0; i < rows; ++i) {
          Rational s = 0;
          for (int j = 0; j < cols; ++j) s += A[i][j] * r.x[j];
          CHECK(s == b[i]);
        }
      } else {
        Rational yb = 0;
        for (int i = 0; i < rows; ++i) yb += r.farkas[i] * b[i];
        CHECK(yb < 0);
        for (int j = 0; j < cols; ++j) {
          Rational ya = 0;
          for (int i = 0; i < rows; ++i) ya += r.farkas[i] * A[i][j];
          CHECK(ya >= 0);
        }
      }
    }
  }
}

TEST_SUITE("semigroup") {
  TEST_CASE("semigroup examples") {
    auto r = semigroup_report({2, 5});
    CHECK(r.numerical);
    CHECK(r.gaps == std::vector<long>{1, 3});
    CHECK(r.frobenius == 3);
    CHECK(semigroup_report({3, 5}).frobenius == 7);
    auto one = semigroup_report({1});
    CHECK(one.gaps.empty());
    CHECK(one.frobenius == -1);
    auto even = semigroup_report({4, 6});
    CHECK_FALSE(even.numerical);
    CHECK(even.gcd == 2);
    CHECK_FALSE(even.frobenius.has_value());
    CHECK_THROWS_AS(semigroup_report({}), InvalidInput);
    CHECK_THROWS_AS(semigroup_report({0, 3}), InvalidInput);
  }

  TEST_CASE("Sylvester formula on random coprime pairs") {
    std::mt19937_64 rng(83);
    std::uniform_int_distribution<long> pick(2, 50);
    int done = 0;
    while (done < 20) {
      long a = pick(rng), b = pick(rng);
      if (std::gcd(a, b) != 1) continue;
      CHECK(semigroup_report({a, b}).frobenius == a * b - a - b);
      ++done;
    }
  }

  TEST_CASE("gaps agree with a representability sieve") {
    const std::vector<std::vector<long>> sets{{3, 7}, {4, 6, 9}, {6, 10, 15}, {5, 8, 11, 14}, {2, 3}, {7, 9, 11}};
    for (const auto& g : sets) {
      auto r = semigroup_report(g);
      CHECK(r.gaps == oracle::semigroup_gaps(g, 400));
      CHECK(r.frobenius == (r.gaps.empty() ? -1 : r.gaps.back()));
    }
  }
}
