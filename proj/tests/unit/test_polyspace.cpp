#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "gct/errors.hpp"
#include "gct/polyspace.hpp"
#include "gct/text_io.hpp"
#include "oracles.hpp"

using namespace gct;

namespace {

std::set<Index> support(const SparseForm& f) {
  std::set<Index> s;
  for (const auto& [a, c] : f.coeffs()) s.insert(a);
  return s;
}

std::set<Index> permutation_matrices(int n) {
  std::set<Index> s;
  for (const auto& p : oracle::all_perms(n)) {
    Index a(n * n, 0);
    for (int r = 0; r < n; ++r) a[r * n + p[r] - 1] = 1;
    s.insert(a);
  }
  return s;
}

}  // namespace

TEST_SUITE("polyspace") {
  TEST_CASE("sparse containers drop zeros and validate keys") {
    SparseForm f(2, 3);
    f.set({3, 0}, 1);
    f.add({3, 0}, -1);
    CHECK(f.is_zero());
    CHECK_THROWS_AS(f.set({2, 0}, 1), InvalidInput);
    CHECK_THROWS_AS(f.set({3, 0, 0}, 1), InvalidInput);
    SparseTensor t({2, 3, 4});
    CHECK_THROWS_AS(t.set({3, 1, 1}, 1), InvalidInput);
    t.set({2, 3, 4}, Rational(1, 2));
    CHECK(t.get({2, 3, 4}) == Rational(1, 2));
    CHECK(t.scaled(4).get({2, 3, 4}) == 2);
  }

  TEST_CASE("named forms") {
    auto ps = named_form(NamedObject::power_sum(3, 2));
    CHECK(ps.coeffs().size() == 2);
    CHECK(ps.get({3, 0}) == 1);
    CHECK(ps.get({0, 3}) == 1);
    auto pr = named_form(NamedObject::product(3));
    CHECK(pr.coeffs().size() == 1);
    CHECK(pr.get({1, 1, 1}) == 1);
    auto det2 = named_form(NamedObject::determinant(2));
    CHECK(det2.coeffs().size() == 2);
    CHECK(det2.get({1, 0, 0, 1}) == 1);
    CHECK(det2.get({0, 1, 1, 0}) == -1);
    CHECK_THROWS_AS(named_form(NamedObject::unit_tensor(2)), InvalidInput);
  }

  TEST_CASE("determinant and permanent are supported on permutation matrices") {
    for (int n = 1; n <= 4; ++n) {
      auto perms = permutation_matrices(n);
      CHECK(support(named_form(NamedObject::determinant(n))) == perms);
      CHECK(support(named_form(NamedObject::permanent(n))) == perms);
    }
  }

  TEST_CASE("form to tensor conversion") {
    SparseForm f(2, 2);
    f.set({1, 1}, 1);
    auto t = form_to_tensor(f);
    CHECK(t.entries().size() == 2);
    CHECK(t.get({1, 2}) == Rational(1, 2));
    CHECK(t.get({2, 1}) == Rational(1, 2));

    auto ps = form_to_tensor(named_form(NamedObject::power_sum(4, 3)));
    CHECK(ps.entries().size() == 3);
    for (int i = 1; i <= 3; ++i) CHECK(ps.get({i, i, i, i}) == 1);

    SparseForm sq(1, 2);
    sq.set({2}, 1);
    CHECK(form_to_tensor(sq).get({1, 1}) == 1);
  }

  TEST_CASE("converted tensors are symmetric and orderings sum to the coefficient") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
      const int m = 3, D = 3;
      SparseForm f(m, D);
      std::uniform_int_distribution<int> var(0, m - 1), val(-4, 4);
      for (int k = 0; k < 4; ++k) {
        Index a(m, 0);
        for (int j = 0; j < D; ++j) ++a[var(rng)];
        f.set(a, val(rng));
      }
      auto t = form_to_tensor(f);
      std::map<Index, Rational> sums;
      for (const auto& [idx, v] : t.entries()) {
        Index p = idx;
        std::sort(p.begin(), p.end());
        do {
          CHECK(t.get(p) == v);
        } while (std::next_permutation(p.begin(), p.end()));
        Index alpha(m, 0);
        for (int x : idx) ++alpha[x - 1];
        sums[alpha] += v;
      }
      for (const auto& [alpha, c] : f.coeffs()) CHECK(sums[alpha] == c);
      CHECK(tensor_to_form(t) == f);
    }
  }

  TEST_CASE("named tensors") {
    auto u2 = named_tensor(NamedObject::unit_tensor(2));
    CHECK(u2.entries().size() == 2);
    CHECK(u2.get({1, 1, 1}) == 1);
    CHECK(u2.get({2, 2, 2}) == 1);
    CHECK(named_tensor(NamedObject::unit_tensor(5)).entries().size() == 5);
    auto mm = named_tensor(NamedObject::matmul_tensor(2));
    CHECK(mm.entries().size() == 8);
    auto pair = [](int a, int b) { return (a - 1) * 2 + b; };
    for (int i = 1; i <= 2; ++i) {
      for (int j = 1; j <= 2; ++j) {
        for (int k = 1; k <= 2; ++k) CHECK(mm.get({pair(i, j), pair(j, k), pair(k, i)}) == 1);
      }
    }
    for (const auto& [idx, v] : mm.entries()) CHECK(v == 1);
  }

  TEST_CASE("group action") {
    std::mt19937_64 rng(5);
    auto u2 = named_tensor(NamedObject::unit_tensor(2));
    CHECK(apply_action(u2, identity_matrix(2)) == u2);
    Matrix c3 = identity_matrix(2);
    c3[0][0] = c3[1][1] = 3;
    CHECK(apply_action(u2, c3) == u2.scaled(27));
    for (int trial = 0; trial < 10; ++trial) {
      auto v = oracle::random_tensor3(rng, {2, 3, 2}, 4);
      Matrix g1 = oracle::random_matrix(rng, 2), g2 = oracle::random_matrix(rng, 3), g3 = oracle::random_matrix(rng, 2);
      auto w = apply_action(v, g1, g2, g3);
      CHECK(w == oracle::action_expand(v, {g1, g2, g3}));
      CHECK(apply_action(w, matrix_inverse(g1), matrix_inverse(g2), matrix_inverse(g3)) == v);
    }
    auto v4 = oracle::random_tensor(rng, 2, 4, 5);
    Matrix g = oracle::random_matrix(rng, 2);
    CHECK(apply_action(v4, g) == oracle::action_expand(v4, {g, g, g, g}));
    CHECK_THROWS_AS(apply_action(v4, identity_matrix(3)), InvalidInput);
  }

  TEST_CASE("determinant and inverse") {
    std::mt19937_64 rng(9);
    for (int n = 1; n <= 5; ++n) {
      Matrix a = oracle::random_matrix(rng, n, 4, false);
      CHECK(determinant(a) == oracle::leibniz_det(a));
      if (determinant(a) != 0) {
        Matrix inv = matrix_inverse(a);
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) {
            Rational s = 0;
            for (int k = 0; k < n; ++k) s += a[i][k] * inv[k][j];
            CHECK(s == (i == j ? 1 : 0));
          }
        }
      }
    }
  }

  TEST_CASE("relabel invariance detection") {
    CHECK(is_relabel_invariant(named_tensor(NamedObject::unit_tensor(3))));
    CHECK(is_relabel_invariant(form_to_tensor(named_form(NamedObject::product(4)))));
    SparseTensor t = SparseTensor::cubic(2, 3);
    t.set({1, 1, 1}, 1);
    CHECK_FALSE(is_relabel_invariant(t));
  }

  TEST_CASE("named object validation") {
    CHECK_THROWS_AS(NamedObject::product(0).validate(), InvalidInput);
    CHECK_THROWS_AS(NamedObject::determinant(0).validate(), InvalidInput);
    CHECK(parse_kind("det") == NamedKind::determinant);
    CHECK(parse_kind("matmul") == NamedKind::matmul_tensor);
    CHECK_THROWS_AS(parse_kind("circle"), InvalidInput);
  }
}

TEST_SUITE("text-io") {
  TEST_CASE("form round trip is byte identical after canonicalization") {
    std::string messy = "# a binary cubic\nform 2 3\n0 3 : 2/4\n\n3 0 : 1   # leading term\n";
    auto f = parse_form(messy);
    std::string canon = serialize_form(f);
    CHECK(canon == "form 2 3\n0 3 : 1/2\n3 0 : 1\n");
    CHECK(serialize_form(parse_form(canon)) == canon);
  }

  TEST_CASE("tensor round trip") {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 5; ++trial) {
      auto t = oracle::random_tensor(rng, 3, 3, 6, 5, true);
      std::string s = serialize_tensor(t);
      CHECK(parse_tensor(s) == t);
      CHECK(serialize_tensor(parse_tensor(s)) == s);
      auto c = oracle::random_tensor(rng, 2, 4, 4);
      CHECK(parse_tensor(serialize_tensor(c)) == c);
    }
    CHECK(serialize_tensor(parse_tensor("tensor 1 2 3\n1 2 3 : -5/10\n")) == "tensor 1 2 3\n1 2 3 : -1/2\n");
  }

  TEST_CASE("tableau round trip") {
    std::string s = "tableau 3 4\n1 2 3 4\n4 1 2 3\n3 4 1 2\n";
    CHECK(serialize_tableau(parse_tableau(s)) == s);
  }

  TEST_CASE("malformed inputs report line numbers") {
    auto line_of = [](auto fn) {
      try {
        fn();
      } catch (const ParseError& e) {
        return e.line();
      }
      return -1;
    };
    CHECK(line_of([] { parse_form("form 2 2\n2 0 : 1\n2 0 : 3\n"); }) == 3);
    CHECK(line_of([] { parse_form("form 2 2\n1 0 : 1\n"); }) == 2);
    CHECK(line_of([] { parse_form("# c\n\nfrom 2 2\n"); }) == 3);
    CHECK(line_of([] { parse_form("form 2 2\n2 0 : 1/0\n"); }) == 2);
    CHECK(line_of([] { parse_tensor("tensor 2 2 2\n1 1 : 1\n"); }) == 2);
    CHECK(line_of([] { parse_tensor("tensor 2 2 2\n1 1 3 : 1\n"); }) == 2);
    CHECK(line_of([] { parse_tableau("tableau 2 2\n1 2\n1 2\n"); }) == 3);
    CHECK(line_of([] { parse_tableau("tableau 2 2\n1 2\n"); }) == 2);
  }

  TEST_CASE("missing keys are zero and the zero form is legal") {
    auto f = parse_form("form 3 2\n");
    CHECK(f.is_zero());
    CHECK(f.get({1, 1, 0}) == 0);
  }
}
