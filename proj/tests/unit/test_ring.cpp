#include <doctest.h>

#include <compare>
#include <random>

#include "helpers.hpp"

using namespace cmreg;
using namespace testutil;

namespace {

// Hand-written grevlex table in k[x,y,z]: degree-2 monomials, largest first.
const std::vector<std::vector<int>> kDegreeTwoDescending = {
    {2, 0, 0}, {1, 1, 0}, {0, 2, 0}, {1, 0, 1}, {0, 1, 1}, {0, 0, 2}};

}  // namespace

TEST_CASE("grevlex agrees with a hand table") {
  CHECK(monomial_compare(Monomial{2, 0, 0}, Monomial{1, 1, 0}) == std::strong_ordering::greater);
  CHECK(monomial_compare(Monomial{1, 0, 1}, Monomial{0, 2, 0}) == std::strong_ordering::less);
  CHECK(monomial_compare(Monomial{1, 1, 1}, Monomial{1, 1, 1}) == std::strong_ordering::equal);
  for (std::size_t i = 0; i < kDegreeTwoDescending.size(); ++i)
    for (std::size_t j = 0; j < kDegreeTwoDescending.size(); ++j) {
      auto a = Monomial::from_exponents(kDegreeTwoDescending[i]);
      auto b = Monomial::from_exponents(kDegreeTwoDescending[j]);
      auto expect = i < j ? std::strong_ordering::greater : i == j ? std::strong_ordering::equal : std::strong_ordering::less;
      CHECK(monomial_compare(a, b) == expect);
    }
  CHECK_THROWS_AS(monomial_compare(Monomial{1, 0}, Monomial{1, 0, 0}), DimensionError);
}

TEST_CASE("grevlex is multiplicative with 1 minimal") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> e(0, 3);
  auto rnd = [&] { return Monomial{e(rng), e(rng), e(rng)}; };
  Monomial one{0, 0, 0};
  for (int k = 0; k < 500; ++k) {
    auto a = rnd(), b = rnd(), c = rnd();
    if (monomial_compare(a, b) == std::strong_ordering::greater)
      CHECK(monomial_compare(a * c, b * c) == std::strong_ordering::greater);
    if (!a.is_one()) CHECK(monomial_compare(a, one) == std::strong_ordering::greater);
  }
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> v(-1000, 1000);
  for (Field f : {Field::rationals(), Field::prime(32003), Field::prime(7)}) {
    for (int k = 0; k < 200; ++k) {
      Scalar a = f.from_rational(mpq_class(v(rng), 1 + std::abs(v(rng)) % 6));
      Scalar b = f.from_int(v(rng)), c = f.from_int(v(rng));
      CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
      CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      CHECK(f.is_zero(f.add(a, f.neg(a))));
      if (!f.is_zero(a)) CHECK(f.mul(a, f.inv(a)) == 1);
    }
  }
  CHECK_THROWS_AS(Field::prime(2), PreconditionError);
  CHECK_THROWS_AS(Field::prime(9), PreconditionError);
}

TEST_CASE("polynomial products") {
  auto r = qring({"x", "y"});
  auto x = var(r, 0), y = var(r, 1);
  CHECK((x + y) * (x - y) == x * x - y * y);
  CHECK((x * Polynomial(r)).is_zero());
  auto r3 = PolynomialRing::create(Field::prime(3), {"x", "y"});
  auto x3 = var(r3, 0), y3 = var(r3, 1);
  auto sq = (x3 + y3).pow(2);
  CHECK(sq == x3 * x3 + (x3 * y3).scaled(2) + y3 * y3);
  CHECK(sq.to_string() == "x^2 + 2*x*y + y^2");
  CHECK_THROWS_AS(poly_mul(x, x3), RingMismatch);
}

TEST_CASE("polynomial product laws on random samples") {
  auto r = qring({"a", "b", "c"});
  std::mt19937_64 rng(5);
  for (int k = 0; k < 50; ++k) {
    auto f = random_form(r, 2, rng, 3), g = random_form(r, 1, rng, 3), h = random_form(r, 3, rng, 4);
    CHECK(f * g == g * f);
    CHECK((f * g) * h == f * (g * h));
    if (!f.is_zero() && !g.is_zero()) CHECK((f * g).degree() == f.degree() + g.degree());
  }
}

TEST_CASE("element degree") {
  auto r = qring({"x", "y"});
  auto x = var(r, 0), y = var(r, 1);
  CHECK(element_degree(FreeModuleElement(GradedFreeModule(r, {1, 0}), {x * x, Polynomial(r)})) == 3);
  CHECK(element_degree(FreeModuleElement(GradedFreeModule(r, {0, 0}), {x, y})) == 1);
  CHECK_FALSE(element_degree(FreeModuleElement(GradedFreeModule(r, {0, 0}), {x * x, y})).has_value());
  CHECK_THROWS_AS(element_degree(FreeModuleElement(GradedFreeModule(r, {0, 0}))), PreconditionError);
}

TEST_CASE("module orders are multiplicative on samples") {
  auto top = ModuleOrder::term_over_position({0, 1});
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> e(0, 3), c(0, 1);
  for (int k = 0; k < 300; ++k) {
    Monomial a{e(rng), e(rng)}, b{e(rng), e(rng)}, m{e(rng), e(rng)};
    int ca = c(rng), cb = c(rng);
    int s = top->compare(a, ca, b, cb);
    if (s > 0) CHECK(top->compare(a * m, ca, b * m, cb) > 0);
    CHECK(top->compare(b, cb, a, ca) == -s);
  }
}
