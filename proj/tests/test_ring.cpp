#include "bott/ring.hpp"

#include "generators.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace bott;
using namespace bott::testing;

namespace {

BottMatrix m2(int a21) { return BottMatrix::from_rows(2, {{}, {a21}}); }
BottMatrix h3() { return BottMatrix::from_rows(3, {{}, {1}, {1, 0}}); }

CohClass x(const BottMatrix& a, std::initializer_list<int> idx, Integer c = 1) {
  return CohClass::monomial(a, IndexSet(idx), c);
}

CohClass lin(const BottMatrix& a, IntVector t) { return CohClass::from_class2(Class2(a, std::move(t))); }

// Library normal form as the oracle's exponent-vector map.
oracle::Poly as_poly(const CohClass& c, int n) {
  oracle::Poly p;
  for (const auto& [idx, coeff] : c.terms()) {
    oracle::Exps e(static_cast<std::size_t>(n), 0);
    for (int i : idx) e[i - 1] = 1;
    p[e] = static_cast<oracle::i64>(coeff);
  }
  return p;
}

IntVector random_vector(Rng& rng, int n, int bound) {
  IntVector v;
  for (int i = 0; i < n; ++i) v.push_back(uniform(rng, -bound, bound));
  return v;
}

// A random element mixing degrees 0, 2 and 4.
CohClass random_element(Rng& rng, const BottMatrix& a) {
  const int n = a.n();
  CohClass c = Integer(uniform(rng, -3, 3)) * CohClass::one(a);
  c = c + lin(a, random_vector(rng, n, 5));
  c = c + multiply(lin(a, random_vector(rng, n, 2)), lin(a, random_vector(rng, n, 2)));
  return c;
}

}  // namespace

TEST_CASE("matrix construction and shape errors") {
  BottMatrix p1 = BottMatrix::from_rows(1, {{}});
  CHECK(p1.n() == 1);
  CHECK(p1 == BottMatrix());

  BottMatrix h = h3();
  CHECK(h.at(2, 1) == 1);
  CHECK(h.at(3, 1) == 1);
  CHECK(h.at(3, 2) == 0);
  CHECK(h.at(1, 3) == 0);
  CHECK(h.at(2, 2) == 0);
  CHECK(h.alpha(3).coeffs() == IntVector{1, 0, 0});

  CHECK_THROWS_AS(BottMatrix::from_rows(2, {{}, {5, 3}}), ShapeError);
  CHECK_THROWS_AS(BottMatrix::from_rows(3, {{}, {1}}), ShapeError);
  CHECK_THROWS_AS(BottMatrix::from_rows(0, {}), ShapeError);
  CHECK_THROWS_AS(Class2(h, IntVector{1, 2}), ShapeError);
}

TEST_CASE("reduce applies x_i^2 -> alpha_i x_i") {
  BottMatrix a = m2(5);
  auto x1 = RawPolynomial::variable(2, 1), x2 = RawPolynomial::variable(2, 2);
  CHECK(reduce(x1 * x1, a).is_zero());
  CHECK(reduce(x2 * x2, a) == x(a, {1, 2}, 5));

  BottMatrix b = m2(2);
  auto s = RawPolynomial::linear({1, 1});
  CHECK(reduce(s * s, b) == x(b, {1, 2}, 4));

  // Idempotent on normal forms, linear in the input.
  Rng rng(11);
  for (int t = 0; t < 100; ++t) {
    const int n = uniform(rng, 1, 5);
    BottMatrix m = random_matrix(rng, n, 3);
    auto p = RawPolynomial::linear(random_vector(rng, n, 4)) * RawPolynomial::linear(random_vector(rng, n, 4)) *
             RawPolynomial::linear(random_vector(rng, n, 4));
    auto q = RawPolynomial::linear(random_vector(rng, n, 4)) * RawPolynomial::linear(random_vector(rng, n, 4));
    CohClass rp = reduce(p, m);
    CHECK(reduce(p + q, m) == rp + reduce(q, m));
    RawPolynomial again(n);
    for (const auto& [idx, c] : rp.terms()) {
      RawPolynomial::Exponents e(static_cast<std::size_t>(n), 0);
      for (int i : idx) e[i - 1] = 1;
      again.add_term(e, c);
    }
    CHECK(reduce(again, m) == rp);
  }
}

TEST_CASE("multiply examples") {
  BottMatrix a = m2(3);
  CHECK(multiply(x(a, {1}), x(a, {1})).is_zero());
  CHECK(multiply(x(a, {2}), x(a, {2})) == x(a, {1, 2}, 3));
  CohClass z = lin(a, {-3, 2});
  CHECK(multiply(z, z).is_zero());
  CHECK_THROWS_AS(multiply(x(a, {1}), x(m2(1), {1})), ContextMismatch);
}

TEST_CASE("normal forms agree with the expansion oracle") {
  Rng rng(12);
  for (int t = 0; t < 300; ++t) {
    const int n = uniform(rng, 1, 6);
    BottMatrix a = random_matrix(rng, n, 3);
    const auto am = oracle::lower(a);
    IntVector s = random_vector(rng, n, 5), u = random_vector(rng, n, 5), v = random_vector(rng, n, 5);
    CohClass lib = multiply(multiply(lin(a, s), lin(a, u)), lin(a, v));
    auto ref = oracle::normal_form(
        oracle::mul(oracle::mul(oracle::linear(oracle::to_vec(s)), oracle::linear(oracle::to_vec(u))),
                    oracle::linear(oracle::to_vec(v))),
        am);
    REQUIRE(as_poly(lib, n) == ref);
    auto raw = RawPolynomial::linear(s) * RawPolynomial::linear(u) * RawPolynomial::linear(v);
    CHECK(reduce(raw, a) == lib);
  }
}

TEST_CASE("ring axioms on random triples") {
  Rng rng(13);
  for (int t = 0; t < 500; ++t) {
    const int n = uniform(rng, 1, 6);
    BottMatrix a = random_matrix(rng, n, 3);
    CohClass p = random_element(rng, a), q = random_element(rng, a), r = random_element(rng, a);
    REQUIRE(multiply(p, q) == multiply(q, p));
    REQUIRE(multiply(multiply(p, q), r) == multiply(p, multiply(q, r)));
    REQUIRE(multiply(p, q + r) == multiply(p, q) + multiply(p, r));
    REQUIRE(multiply(CohClass::one(a), p) == p);
  }
}

TEST_CASE("degree-4 closed form") {
  Rng rng(14);
  for (int t = 0; t < 300; ++t) {
    const int n = uniform(rng, 2, 6);
    BottMatrix a = random_matrix(rng, n, 3);
    IntVector s = random_vector(rng, n, 5), u = random_vector(rng, n, 5);
    IntVector packed = product_degree4(a, s, u);
    CohClass full = multiply(lin(a, s), lin(a, u));
    // Supported on {x_j x_i : j < i} only.
    for (const auto& [idx, c] : full.terms()) REQUIRE(idx.size() == 2);
    for (int i = 2; i <= n; ++i) {
      for (int j = 1; j < i; ++j) {
        const Integer& got = packed[static_cast<std::size_t>((i - 1) * (i - 2) / 2 + (j - 1))];
        REQUIRE(got == full.coeff({j, i}));
        REQUIRE(got == s[i - 1] * u[i - 1] * a.at(i, j) + s[i - 1] * u[j - 1] + s[j - 1] * u[i - 1]);
      }
    }
    CHECK(product_vanishes(a, s, u) == full.is_zero());
    // Square: t_i^2 a_ij + 2 t_i t_j.
    IntVector sq = product_degree4(a, s, s);
    for (int i = 2; i <= n; ++i) {
      for (int j = 1; j < i; ++j) {
        REQUIRE(sq[static_cast<std::size_t>((i - 1) * (i - 2) / 2 + (j - 1))] ==
                s[i - 1] * s[i - 1] * a.at(i, j) + 2 * s[i - 1] * s[j - 1]);
      }
    }
  }
}

TEST_CASE("height") {
  BottMatrix a = BottMatrix::zero(4);
  CHECK(height(Class2::zero(a)) == 0);
  CHECK(height(Class2(a, {-7, 0, 1, 0})) == 3);
  BottMatrix h = m2(1);
  CHECK(height(2 * Class2::generator(h, 2) - h.alpha(2)) == 2);
}

TEST_CASE("sub_hat and sub_bar") {
  BottMatrix h = h3();
  CHECK(sub_hat(h, 1) == BottMatrix::zero(1));
  CHECK(sub_bar(h, 1) == BottMatrix::zero(2));
  BottMatrix a = BottMatrix::from_rows(4, {{}, {1}, {2, 3}, {4, 5, 6}});
  CHECK(sub_hat(a, 3) == BottMatrix::from_rows(3, {{}, {1}, {2, 3}}));
  CHECK(sub_bar(a, 2) == BottMatrix::from_rows(2, {{}, {6}}));
  CHECK_THROWS_AS(sub_bar(a, 4), RangeError);
  CHECK_THROWS_AS(sub_hat(a, 0), RangeError);
}

TEST_CASE("half-integers") {
  Half h = Half::from_twice(3);
  CHECK_FALSE(h.is_integral());
  CHECK(h.numerator() == 3);
  CHECK(h.denominator() == 2);
  CHECK_THROWS_AS(h.to_integer(), NotIntegral);
  CHECK(Half::from_twice(-4).to_integer() == -2);

  HalfClass2 v = HalfClass2::from_twice({2, -4, 6});
  CHECK(v.is_integral());
  CHECK(v.to_integral() == IntVector{1, -2, 3});
  HalfClass2 w = HalfClass2::from_twice({1, 2});
  CHECK(w.denominator() == 2);
  CHECK(w.twice() == IntVector{1, 2});
  CHECK_THROWS_AS(w.to_integral(), NotIntegral);
}

TEST_CASE("large integers survive arithmetic") {
  BottMatrix a = BottMatrix::from_rows(2, {{}, {parse_integer("123456789012345678901234567890")}});
  CohClass sq = multiply(x(a, {2}), x(a, {2}));
  CHECK(sq.coeff({1, 2}) == parse_integer("123456789012345678901234567890"));
}
