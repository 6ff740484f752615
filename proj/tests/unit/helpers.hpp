#pragma once

#include <random>
#include <string>
#include <vector>

#include "cmreg/ring.hpp"

namespace testutil {

using namespace cmreg;

inline RingPtr qring(std::vector<std::string> names) { return PolynomialRing::create(Field::rationals(), std::move(names)); }

// Builds a polynomial from (coefficient, exponent vector) pairs.
inline Polynomial poly(const RingPtr& r, std::vector<std::pair<long, std::vector<int>>> terms) {
  std::vector<Term> ts;
  for (auto& [c, e] : terms) ts.push_back(Term{Scalar(c), Monomial::from_exponents(e)});
  return Polynomial(r, std::move(ts));
}

inline Polynomial var(const RingPtr& r, std::size_t i) { return Polynomial::variable(r, i); }

inline Polynomial random_form(const RingPtr& r, int degree, std::mt19937_64& rng, int terms, int bound = 5) {
  std::uniform_int_distribution<int> coeff(-bound, bound);
  std::uniform_int_distribution<std::size_t> pick(0, r->num_vars() - 1);
  std::vector<Term> ts;
  for (int k = 0; k < terms; ++k) {
    std::vector<int> e(r->num_vars(), 0);
    for (int d = 0; d < degree; ++d) ++e[pick(rng)];
    ts.push_back(Term{r->field().from_int(coeff(rng)), Monomial::from_exponents(e)});
  }
  return Polynomial(r, std::move(ts));
}

}  // namespace testutil
