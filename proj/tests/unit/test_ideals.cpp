#include <doctest.h>

#include <random>

#include "cmreg/ideals.hpp"
#include "helpers.hpp"

using namespace cmreg;
using namespace testutil;

namespace {

struct XYZ {
  RingPtr r = qring({"x", "y", "z"});
  Polynomial x = var(r, 0), y = var(r, 1), z = var(r, 2);
  Ideal I(std::vector<Polynomial> g) const { return Ideal(r, std::move(g)); }
};

}  // namespace

TEST_CASE("sums and products") {
  XYZ s;
  CHECK(sum(s.I({s.x}), s.I({s.y})) == s.I({s.x, s.y}));
  CHECK(product(s.I({s.x, s.y}), s.I({s.x, s.z})) == s.I({s.x * s.x, s.x * s.z, s.x * s.y, s.y * s.z}));
  auto I = s.I({s.x * s.y, s.z * s.z});
  CHECK(product(I, Ideal::unit(s.r)) == I);
  CHECK(power(Ideal::maximal(s.r), 2).gb().size() == 6);
}

TEST_CASE("intersections") {
  XYZ s;
  CHECK(intersect(s.I({s.x}), s.I({s.y})) == s.I({s.x * s.y}));
  auto c = intersect(s.I({s.x, s.y}), s.I({s.x, s.z}));
  CHECK(c == s.I({s.x, s.y * s.z}));
  CHECK(s.I({s.x, s.y}).contains(c));
  CHECK(c.contains(s.I({s.x, s.y * s.z})));
  auto I = s.I({s.x * s.x, s.y * s.z});
  CHECK(intersect(I, Ideal::unit(s.r)) == I);
  CHECK(intersect(I, Ideal::zero(s.r)).is_zero());
  CHECK_THROWS_AS(intersect(I, Ideal(qring({"a", "b"}), {})), RingMismatch);
}

TEST_CASE("colon and saturation") {
  XYZ s;
  auto A = s.I({s.x * s.x, s.x * s.y});
  CHECK(colon(A, s.I({s.x})) == s.I({s.x, s.y}));
  CHECK(colon(A, Ideal::unit(s.r)) == A);
  CHECK(colon(s.I({s.x * s.y}), s.I({s.y})) == s.I({s.x}));
  CHECK_THROWS_AS(colon(A, Ideal::zero(s.r)), PreconditionError);
  // In three variables the embedded prime (x, y) is not the maximal ideal.
  CHECK(saturate(A, Ideal::maximal(s.r)) == A);
  CHECK(saturate(A, s.I({s.x, s.y})) == s.I({s.x}));
  auto r2 = qring({"x", "y"});
  auto x = var(r2, 0), y = var(r2, 1);
  CHECK(saturate(Ideal(r2, {x * x, x * y}), Ideal::maximal(r2)) == Ideal(r2, {x}));
  CHECK(saturate(s.I({s.x * s.y}), Ideal::maximal(s.r)) == s.I({s.x * s.y}));
  CHECK(saturate(Ideal::zero(s.r), Ideal::maximal(s.r)).is_zero());
}

TEST_CASE("module intersection and colon") {
  XYZ s;
  GradedFreeModule F(s.r, {0, 0});
  Submodule A(F, {FreeModuleElement(F, {s.x, Polynomial(s.r)}), FreeModuleElement(F, {Polynomial(s.r), s.y})});
  Submodule B(F, {FreeModuleElement(F, {s.y, Polynomial(s.r)}), FreeModuleElement(F, {Polynomial(s.r), s.x})});
  auto C = intersect(A, B);
  CHECK(C == Submodule(F, {FreeModuleElement(F, {s.x * s.y, Polynomial(s.r)}),
                           FreeModuleElement(F, {Polynomial(s.r), s.x * s.y})}));
  auto D = colon(A, s.I({s.x, s.y}));
  CHECK(D == Submodule(F, {FreeModuleElement(F, {s.x, Polynomial(s.r)}), FreeModuleElement(F, {Polynomial(s.r), s.y})}));
  CHECK(colon(A, s.I({s.x})) ==
        Submodule(F, {FreeModuleElement(F, {Polynomial::constant(s.r, 1), Polynomial(s.r)}),
                      FreeModuleElement(F, {Polynomial(s.r), s.y})}));
}

TEST_CASE("randomized ideal identities") {
  XYZ s;
  std::mt19937_64 rng(99);
  auto linear_ideal = [&] {
    std::uniform_int_distribution<int> k(1, 2);
    std::vector<Polynomial> g;
    int count = k(rng);
    for (int i = 0; i < count; ++i) g.push_back(random_form(s.r, 1, rng, 3));
    return s.I(g);
  };
  for (int inst = 0; inst < 20; ++inst) {
    auto A = product(linear_ideal(), linear_ideal());
    auto B = sum(product(linear_ideal(), linear_ideal()), linear_ideal());
    if (A.is_zero() || B.is_zero()) continue;
    auto C = intersect(A, B);
    CHECK(A.contains(C));
    CHECK(B.contains(C));
    CHECK(C.contains(product(A, B)));
    auto Q = colon(A, B);
    CHECK(A.contains(product(B, Q)));
    auto m = Ideal::maximal(s.r);
    auto sat = saturate(A, m);
    CHECK(saturate(sat, m) == sat);
    for (auto& g : C.generators()) CHECK(g.is_homogeneous());
  }
}
