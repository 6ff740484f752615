// Acceptance suite: one PASS/FAIL line per criterion, each with a runtime
// budget. Pass criterion numbers as arguments to run a subset.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "../oracle/linear_oracle.hpp"
#include "cmreg/arrangements.hpp"
#include "cmreg/combinations.hpp"
#include "cmreg/invariants.hpp"
#include "cmreg/script.hpp"

using namespace cmreg;

namespace {

// ------------------------------------------------------------------ helpers

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void fail(std::string why) {
    pass = false;
    if (failures.size() < 5) failures.push_back(std::move(why));
  }
};

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

RingPtr ring_of(std::size_t n, Field field = Field::rationals()) {
  static const char* const kNames[] = {"x", "y", "z", "w"};
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.emplace_back(kNames[i]);
  return PolynomialRing::create(field, names);
}

Polynomial var(const RingPtr& r, std::size_t i) { return Polynomial::variable(r, i); }

Polynomial random_linear(const RingPtr& r, std::mt19937_64& rng, int bound) {
  Polynomial f(r);
  for (std::size_t v = 0; v < r->num_vars(); ++v) f += var(r, v).scaled(r->field().from_int(uniform(rng, -bound, bound)));
  return f;
}

LinearIdeal random_linear_ideal(const RingPtr& r, int codim, std::mt19937_64& rng, int bound = 3) {
  for (;;) {
    std::vector<Polynomial> gens;
    for (int i = 0; i < codim; ++i) gens.push_back(random_linear(r, rng, bound));
    try {
      return LinearIdeal(r, gens);
    } catch (const PreconditionError&) {
    }
  }
}

// Nonzero form of the given degree with up to `terms` random monomials.
Polynomial random_form(const RingPtr& r, int degree, int terms, std::mt19937_64& rng, int bound = 4) {
  for (;;) {
    std::vector<Term> ts;
    for (int k = 0; k < terms; ++k) {
      std::vector<int> e(r->num_vars(), 0);
      for (int d = 0; d < degree; ++d) ++e[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(r->num_vars()) - 1))];
      ts.push_back(Term{r->field().from_int(uniform(rng, -bound, bound)), Monomial::from_exponents(e)});
    }
    Polynomial f(r, std::move(ts));
    if (!f.is_zero()) return f;
  }
}

Ideal random_ideal(const RingPtr& r, std::mt19937_64& rng, int max_gens, int max_degree) {
  std::vector<Polynomial> gens;
  const int k = uniform(rng, 1, max_gens);
  for (int i = 0; i < k; ++i) gens.push_back(random_form(r, uniform(rng, 1, max_degree), uniform(rng, 1, 3), rng));
  return Ideal(r, gens);
}

CombinationExpr random_expr(const std::vector<LinearIdeal>& atoms, int leaves, std::mt19937_64& rng) {
  if (leaves <= 1) return CombinationExpr::atom(atoms[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(atoms.size()) - 1))]);
  const int l = uniform(rng, 1, leaves - 1);
  auto a = random_expr(atoms, l, rng);
  auto b = random_expr(atoms, leaves - l, rng);
  switch (uniform(rng, 0, 2)) {
    case 0:
      return CombinationExpr::sum(a, b);
    case 1:
      return CombinationExpr::product(a, b);
    default:
      return CombinationExpr::meet(a, b);
  }
}

std::vector<FreeModuleElement> as_elements(const std::vector<Polynomial>& ps) {
  std::vector<FreeModuleElement> out;
  for (const auto& p : ps) out.push_back(FreeModuleElement::from_poly(p));
  return out;
}

std::size_t oracle_rank(const std::vector<FreeModuleElement>& gens, int d, const RingPtr& r) {
  return oracle::degree_piece(gens, d, r->field(), r->num_vars()).rank();
}

bool contains_ideal(const std::vector<Ideal>& list, const Ideal& i) {
  return std::any_of(list.begin(), list.end(), [&](const Ideal& j) { return j == i; });
}

// Random expressions shared by the systems, bounds and associated-prime
// criteria: at most 4 distinct atoms, grammar degree at most 5, 2 to 4
// variables over Q.
const std::vector<CombinationExpr>& expression_sample() {
  static const std::vector<CombinationExpr> sample = [] {
    std::mt19937_64 rng(20240601);
    std::vector<CombinationExpr> out;
    while (out.size() < 240) {
      auto r = ring_of(static_cast<std::size_t>(uniform(rng, 2, 4)));
      const int n = static_cast<int>(r->num_vars());
      std::vector<LinearIdeal> atoms;
      const int count = uniform(rng, 1, 4);
      for (int k = 0; k < count; ++k) atoms.push_back(random_linear_ideal(r, uniform(rng, 1, n), rng));
      auto e = random_expr(atoms, uniform(rng, 1, 6), rng);
      if (grammar_degree(e) > 5 || e.distinct_atoms().size() > 4) continue;
      out.push_back(e);
    }
    return out;
  }();
  return sample;
}

bool atoms_span_maximal(const CombinationExpr& e) {
  Ideal s = Ideal::zero(e.ring());
  for (const auto& a : e.distinct_atoms()) s = sum(s, a.ideal());
  return s == Ideal::maximal(e.ring());
}

// ------------------------------------------------------------ criterion 1

Outcome class_example() {
  Outcome out;
  auto r = ring_of(2);
  auto x = var(r, 0), y = var(r, 1);
  auto I = [&](std::vector<Polynomial> g) { return Ideal(r, std::move(g)); };
  std::vector<LinearIdeal> atoms{LinearIdeal(r, {x}), LinearIdeal(r, {y})};
  auto c1 = enumerate_Cr(atoms, 1, r);
  std::vector<Ideal> want1{Ideal::zero(r), I({x}), I({y}), I({x, y}), Ideal::unit(r)};
  if (c1.size() != want1.size()) out.fail("C1 has " + std::to_string(c1.size()) + " ideals");
  for (const auto& i : want1)
    if (!contains_ideal(c1, i)) out.fail("C1 misses " + i.to_string());
  auto c2 = enumerate_Cr(atoms, 2, r);
  std::vector<Ideal> fresh;
  for (const auto& i : c2)
    if (!contains_ideal(c1, i)) fresh.push_back(i);
  std::vector<Ideal> want2{I({x * y}), I({x * x}), I({x * x, y}), I({y * y}), I({y * y, x}),
                           I({x * x, x * y, y * y}), I({x * x, x * y}), I({x * y, y * y})};
  if (fresh.size() != want2.size()) out.fail("C2 - C1 has " + std::to_string(fresh.size()) + " ideals");
  for (const auto& i : want2)
    if (!contains_ideal(fresh, i)) out.fail("C2 - C1 misses " + i.to_string());
  out.detail = "|C1| = " + std::to_string(c1.size()) + ", |C2 - C1| = " + std::to_string(fresh.size());
  return out;
}

// ------------------------------------------------------------ criterion 2

Outcome systems_theorem() {
  Outcome out;
  int pairs = 0;
  std::map<int, int> by_degree;
  for (const auto& e : expression_sample()) {
    const int deg = grammar_degree(e);
    ++by_degree[deg];
    const Regularity reg = regularity(e.eval());
    if (reg > Regularity(deg)) out.fail(e.to_string() + ": reg " + reg.to_string() + " > " + std::to_string(deg));
    try {
      for (const auto& p : decompose(e)) {
        ++pairs;
        const Ideal ji = p.approximant.eval();
        if (!e.eval().contains(product(p.atom.ideal(), ji)) || !ji.contains(e.eval()) ||
            grammar_degree(p.approximant) > deg - 1)
          out.fail(e.to_string() + ": decomposition pair " + p.atom.to_string() + " violates an inclusion");
      }
    } catch (const InternalConsistencyError& err) {
      out.fail(e.to_string() + ": " + err.what());
    }
  }
  std::string hist;
  for (auto [d, c] : by_degree) hist += (hist.empty() ? "" : " ") + std::to_string(d) + ":" + std::to_string(c);
  out.detail = std::to_string(expression_sample().size()) + " expressions (count by grammar degree " + hist + "), " +
               std::to_string(pairs) + " decomposition pairs";
  return out;
}

// ------------------------------------------------------------ criterion 3

Outcome products_exact() {
  Outcome out;
  std::mt19937_64 rng(31);
  int count = 0;
  for (int d = 2; d <= 5; ++d)
    for (int inst = 0; inst < 24; ++inst) {
      auto r = ring_of(static_cast<std::size_t>(2 + inst % 3));
      const int n = static_cast<int>(r->num_vars());
      Ideal p = Ideal::unit(r);
      std::vector<std::vector<Polynomial>> factors;
      for (int k = 0; k < d; ++k) {
        auto li = random_linear_ideal(r, uniform(rng, 1, n), rng);
        factors.push_back(li.generators());
        p = product(p, li.ideal());
      }
      ++count;
      const Regularity reg = regularity(p);
      if (reg != Regularity(d)) out.fail("product of " + std::to_string(d) + " linear ideals has reg " + reg.to_string());
      // Degree-d piece: spanned by the products of one generator per factor.
      std::vector<Polynomial> prods{Polynomial::constant(r, Scalar(1))};
      for (const auto& f : factors) {
        std::vector<Polynomial> next;
        for (const auto& a : prods)
          for (const auto& b : f) next.push_back(a * b);
        prods = std::move(next);
      }
      const std::size_t expected = oracle_rank(as_elements(prods), d, r);
      const std::size_t total = oracle::monomials_of_degree(r->num_vars(), d).size();
      if (total - hilbert_function(PresentedModule::quotient(p), d) != expected) out.fail("degree-d piece mismatch");
    }
  out.detail = std::to_string(count) + " products, d = 2..5 in 2..4 variables";
  return out;
}

// ------------------------------------------------------------ criterion 4

// Basis of the common zero set of linear forms, by row reduction.
std::vector<std::vector<Scalar>> kernel_basis(const std::vector<Polynomial>& forms, const RingPtr& r) {
  const Field& k = r->field();
  const std::size_t n = r->num_vars();
  std::vector<std::vector<Scalar>> rows;
  for (const auto& f : forms) {
    std::vector<Scalar> row(n, Scalar(0));
    for (const auto& t : f.terms())
      for (std::size_t i = 0; i < n; ++i)
        if (t.mono[i] == 1) row[i] = t.coeff;
    rows.push_back(row);
  }
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < n && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && Field::is_zero(rows[p][c])) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    const Scalar inv = k.inv(rows[rank][c]);
    for (auto& v : rows[rank]) v = k.mul(v, inv);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != rank && !Field::is_zero(rows[i][c])) {
        const Scalar m = rows[i][c];
        for (std::size_t j = 0; j < n; ++j) k.sub_mul(rows[i][j], m, rows[rank][j]);
      }
    pivots.push_back(c);
    ++rank;
  }
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (std::find(pivots.begin(), pivots.end(), f) != pivots.end()) continue;
    std::vector<Scalar> v(n, Scalar(0));
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = k.neg(rows[i][f]);
    basis.push_back(v);
  }
  return basis;
}

// dim of the degree-e piece of the ideal of the union of the subspaces,
// from the restriction maps f -> f(parametrization of each subspace).
std::size_t union_ideal_dimension(const SubspaceArrangement& a, int e) {
  const RingPtr& r = a.ring();
  const auto monos = oracle::monomials_of_degree(r->num_vars(), e);
  std::vector<oracle::SparseVec> images(monos.size());
  for (std::size_t c = 0; c < a.size(); ++c) {
    auto basis = kernel_basis(a.components()[c].generators(), r);
    if (basis.empty()) {  // the origin: only constants survive
      if (e == 0) images[0][{{}, c}] = 1;
      continue;
    }
    std::vector<std::string> tn;
    for (std::size_t k = 0; k < basis.size(); ++k) tn.push_back("t" + std::to_string(k));
    auto t = PolynomialRing::create(r->field(), tn);
    std::vector<Polynomial> coord;
    for (std::size_t j = 0; j < r->num_vars(); ++j) {
      Polynomial p(t);
      for (std::size_t k = 0; k < basis.size(); ++k) p += Polynomial::variable(t, k).scaled(basis[k][j]);
      coord.push_back(p);
    }
    for (std::size_t m = 0; m < monos.size(); ++m) {
      Polynomial p = Polynomial::constant(t, Scalar(1));
      for (std::size_t j = 0; j < monos[m].size(); ++j) p = p * coord[j].pow(static_cast<unsigned>(monos[m][j]));
      for (const auto& term : p.terms()) images[m][{term.mono.exponents(), c}] = term.coeff;
    }
  }
  oracle::Echelon ech(r->field());
  for (auto& v : images) ech.insert(v);
  return monos.size() - ech.rank();
}

Outcome subspace_bound() {
  Outcome out;
  std::mt19937_64 rng(47);
  int count = 0, max_reg = 0;
  for (int inst = 0; inst < 60; ++inst) {
    auto r = ring_of(static_cast<std::size_t>(2 + inst % 3));
    const int d = uniform(rng, 1, 5);
    auto a = SubspaceArrangement::random(r, static_cast<std::size_t>(d), rng);
    const Ideal i = vanishing_ideal(a);
    const Regularity reg = regularity(i);
    ++count;
    if (reg.is_finite()) max_reg = std::max(max_reg, reg.value());
    if (reg > Regularity(d)) out.fail(std::to_string(d) + " subspaces with reg " + reg.to_string());
    const auto quotient = PresentedModule::quotient(i);
    for (int e = 0; e <= d + 1; ++e) {
      const std::size_t total = oracle::monomials_of_degree(r->num_vars(), e).size();
      if (total - hilbert_function(quotient, e) != union_ideal_dimension(a, e))
        out.fail("vanishing ideal differs from the restriction oracle in degree " + std::to_string(e));
    }
  }
  out.detail = std::to_string(count) + " arrangements, max reg " + std::to_string(max_reg);
  return out;
}

// ------------------------------------------------------------ criterion 5

struct Pair {
  Ideal a, b;
};

Pair random_nested_pair(const RingPtr& r, std::mt19937_64& rng) {
  Ideal b = random_ideal(r, rng, 3, 2);
  Ideal c = random_ideal(r, rng, 2, 2);
  switch (uniform(rng, 0, 2)) {
    case 0:
      return {product(b, c), b};
    case 1:
      return {intersect(b, c), b};
    default: {
      auto g = b.generators();
      return {sum(Ideal(r, {g.front()}), product(b, c)), b};
    }
  }
}

Outcome exact_sequences() {
  Outcome out;
  std::mt19937_64 rng(53);
  int sequences = 0;
  auto check = [&](const std::string& what, Regularity ra, Regularity rb, Regularity rc) {
    ++sequences;
    if (ra > max(rb, rc + 1)) out.fail(what + ": (a) fails");
    if (rb > max(ra, rc)) out.fail(what + ": (b) fails");
    if (rc > max(ra - 1, rb)) out.fail(what + ": (c) fails");
  };
  for (int inst = 0; inst < 110; ++inst) {
    auto r = ring_of(static_cast<std::size_t>(2 + inst % 2));
    auto [a, b] = random_nested_pair(r, rng);
    if (!b.contains(a)) {
      out.fail("generated pair is not nested");
      continue;
    }
    const auto c = PresentedModule::subquotient(b.as_submodule(), a.as_submodule());
    for (int e = 0; e <= 5; ++e) {
      const std::size_t want = oracle_rank(as_elements(b.generators()), e, r) - oracle_rank(as_elements(a.generators()), e, r);
      if (hilbert_function(c, e) != want) out.fail("B/A has the wrong Hilbert function in degree " + std::to_string(e));
    }
    const Regularity ra = regularity(a), rb = regularity(b), rc = regularity(c);
    check("0 -> A -> B -> B/A -> 0", ra, rb, rc);
    check("0 -> B/A -> S/A -> S/B -> 0", rc, regularity(PresentedModule::quotient(a)),
          regularity(PresentedModule::quotient(b)));
  }
  out.detail = std::to_string(sequences) + " sequences from 110 pairs";
  return out;
}

// ------------------------------------------------------------ criterion 6

PresentedModule random_module(int kind, std::mt19937_64& rng) {
  auto r = ring_of(static_cast<std::size_t>(uniform(rng, 2, 3)));
  switch (kind) {
    case 0:
      return PresentedModule::quotient(random_ideal(r, rng, 4, 3));
    case 1:
      return PresentedModule::of_ideal(random_ideal(r, rng, 3, 2));
    case 2: {
      auto [a, b] = random_nested_pair(r, rng);
      return PresentedModule::subquotient(b.as_submodule(), a.as_submodule());
    }
    default: {
      GradedFreeModule f(r, {0, 1});
      std::vector<FreeModuleElement> rel;
      const int k = uniform(rng, 1, 3);
      for (int i = 0; i < k; ++i) {
        const int deg = uniform(rng, 2, 3);
        rel.push_back(FreeModuleElement(f, {random_form(r, deg, 2, rng), random_form(r, deg - 1, 2, rng)}));
      }
      return PresentedModule(f, Submodule(f, rel));
    }
  }
}

Outcome hypersurface_identity() {
  Outcome out;
  std::mt19937_64 rng(61);
  int count = 0, with_finite_part = 0;
  for (int inst = 0; inst < 120; ++inst) {
    const auto m = random_module(inst % 4, rng);
    std::optional<Polynomial> z;
    for (int t = 0; t < 50 && !z; ++t) {
      auto cand = random_linear_form(m.ring(), rng);
      if (!cand.is_zero() && is_filter_regular(cand, m)) z = cand;
    }
    if (!z) {
      out.fail("no filter-regular linear form found in 50 draws");
      continue;
    }
    const auto rep = verify_hypersurface_identity(m, *z);
    ++count;
    if (rep.finite_part.is_finite()) ++with_finite_part;
    if (!rep.equal || rep.regularity != regularity(m))
      out.fail("reg " + rep.regularity.to_string() + " vs right side " + rep.right_side.to_string());
  }
  out.detail = std::to_string(count) + " pairs, " + std::to_string(with_finite_part) + " with nonzero finite part";
  return out;
}

// ------------------------------------------------------------ criterion 7

Outcome bound_theorems() {
  Outcome out;
  std::mt19937_64 rng(71);
  int approx = 0, nested = 0, steps = 0, coapprox = 0, skipped = 0;
  auto check = [&](const BoundReport& rep, Regularity actual, const std::string& what) {
    if (rep.actual_regularity != actual) out.fail(what + ": reported regularity differs");
    if (rep.certified_bound < actual || !rep.ok)
      out.fail(what + ": bound " + rep.certified_bound.to_string() + " < " + actual.to_string());
  };

  // Systems produced by decompose; the theorems need the atoms to span m.
  std::vector<CombinationExpr> exprs = expression_sample();
  while (exprs.size() < 300) {
    auto r = ring_of(static_cast<std::size_t>(uniform(rng, 2, 3)));
    const int n = static_cast<int>(r->num_vars());
    std::vector<LinearIdeal> atoms;
    for (int k = uniform(rng, 2, 4); k > 0; --k) atoms.push_back(random_linear_ideal(r, uniform(rng, 1, n), rng));
    auto e = random_expr(atoms, uniform(rng, 2, 5), rng);
    if (grammar_degree(e) <= 5 && atoms_span_maximal(e)) exprs.push_back(e);
  }
  for (const auto& e : exprs) {
    if (!atoms_span_maximal(e)) {
      ++skipped;
      continue;
    }
    auto sys = approximation_system(e);
    if (!verify_approximation_system(sys).ok) {
      out.fail(e.to_string() + ": decompose produced an invalid system");
      continue;
    }
    check(certified_regularity_bound(sys), regularity(sys.base), "regapprox " + e.to_string());
    ++approx;
    check(certified_regularity_bound(nested_system(e)), regularity(e.eval()), "nested " + e.to_string());
    ++nested;
    if (steps < 40) {
      for (int t = 0; t < 20; ++t) {
        try {
          check(certified_regularity_bound_step(sys, random_linear_form(e.ring(), rng)), regularity(sys.base),
                "step " + e.to_string());
          ++steps;
          break;
        } catch (const PreconditionError&) {
        }
      }
    }
  }

  // Co-approximations M_i = x_i M of random ideals.
  for (int inst = 0; inst < 60; ++inst) {
    auto r = ring_of(static_cast<std::size_t>(2 + inst % 2));
    Ideal i = random_ideal(r, rng, 3, 3);
    CoApproximationSystem co{i.as_submodule(), {}, {}, 1};
    for (std::size_t v = 0; v < r->num_vars(); ++v) {
      Ideal xv(r, {var(r, v)});
      co.ideals.push_back(xv);
      co.approximants.push_back(product(xv, i.as_submodule()));
    }
    check(certified_regularity_bound(co), regularity(i), "coapprox " + i.to_string());
    ++coapprox;
  }

  // Worked example: (x^2, xy) approximated by m, (x), (x).
  auto r = ring_of(2);
  auto x = var(r, 0), y = var(r, 1);
  auto N = [&](std::vector<Polynomial> g) { return Ideal(r, std::move(g)).as_submodule(); };
  NestedSystem worked{N({x * x, x * y}), {N({x, y}), N({x}), N({x})}, {Ideal(r, {x}), Ideal(r, {x}), Ideal(r, {y})}};
  const auto wrep = certified_regularity_bound(worked);
  if (wrep.certified_bound != Regularity(2) || regularity(Ideal(r, {x * x, x * y})) != Regularity(2))
    out.fail("worked example: bound " + wrep.certified_bound.to_string());

  if (steps + coapprox < 50) out.fail("too few hand-built instances");
  out.detail = std::to_string(approx) + " decompose systems (+" + std::to_string(nested) + " nested), " +
               std::to_string(steps) + " step and " + std::to_string(coapprox) + " co-approximation instances, " +
               std::to_string(skipped) + " sampled expressions with non-spanning atoms skipped";
  return out;
}

// ------------------------------------------------------------ criterion 8

Outcome associated_primes() {
  Outcome out;
  std::mt19937_64 rng(83);
  int exprs = 0, confirmed = 0, probes = 0;
  auto check_witness = [&](const Ideal& j, const AssVerdict& v) {
    if (!v.witness) {
      out.fail("confirmed prime without witness");
      return;
    }
    const Polynomial w = (*v.witness)[0];
    if (j.contains(w)) out.fail("witness lies in the ideal");
    for (const auto& g : v.prime.generators())
      if (!j.contains(g * w)) out.fail("prime does not annihilate its witness");
    if (!v.prime.contains(colon(j, Ideal(j.ring(), {w})))) out.fail("annihilator of the witness exceeds the prime");
  };
  for (const auto& e : expression_sample()) {
    ++exprs;
    const Ideal j = e.eval();
    auto atoms = e.distinct_atoms();
    std::vector<Ideal> sums{Ideal::maximal(e.ring())};
    for (unsigned mask = 1; mask < (1u << atoms.size()); ++mask) {
      Ideal s = Ideal::zero(e.ring());
      for (std::size_t k = 0; k < atoms.size(); ++k)
        if (mask & (1u << k)) s = sum(s, atoms[k].ideal());
      sums.push_back(s);
    }
    const auto res = ass_candidates(e);
    if (!res.report.exhausted) out.fail(e.to_string() + ": saturation does not exhaust");
    for (const auto& v : res.report.verdicts) {
      if (!v.confirmed) continue;
      ++confirmed;
      if (!contains_ideal(sums, v.prime)) out.fail(e.to_string() + ": " + v.prime.to_string() + " is not a subset sum");
      check_witness(j, v);
    }
    // Probes: random linear primes containing an atom but equal to no subset sum.
    std::vector<Ideal> extra;
    for (int t = 0; t < 4 && extra.size() < 2; ++t) {
      const auto& atom = atoms[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(atoms.size()) - 1))];
      auto gens = atom.generators();
      gens.push_back(random_linear(e.ring(), rng, 3));
      Ideal p(e.ring(), gens);
      if (p.is_unit() || contains_ideal(sums, p) || contains_ideal(extra, p)) continue;
      extra.push_back(p);
    }
    if (extra.empty()) continue;
    const auto probe = ass_containment_check(PresentedModule::quotient(j), extra);
    for (const auto& v : probe.verdicts)
      if (!v.maximal && v.confirmed) out.fail(e.to_string() + ": non-candidate " + v.prime.to_string() + " confirmed");
    probes += static_cast<int>(extra.size());
  }

  auto r = ring_of(2);
  auto x = var(r, 0), y = var(r, 1);
  const Ideal j(r, {x * x, x * y});
  const auto rep = ass_containment_check(PresentedModule::quotient(j), {Ideal(r, {x}), Ideal(r, {y})});
  std::vector<Ideal> got;
  for (const auto& v : rep.verdicts)
    if (v.confirmed) {
      got.push_back(v.prime);
      check_witness(j, v);
    }
  if (got.size() != 2 || !contains_ideal(got, Ideal(r, {x})) || !contains_ideal(got, Ideal::maximal(r)) || !rep.exhausted)
    out.fail("Ass(S/(x^2, xy)) fixture");

  out.detail = std::to_string(exprs) + " expressions, " + std::to_string(confirmed) + " confirmed primes, " +
               std::to_string(probes) + " non-candidate probes";
  return out;
}

// ------------------------------------------------------------ criterion 9

Outcome derivations() {
  Outcome out;
  std::mt19937_64 rng(97);
  int arrangements = 0, deletions = 0;
  auto run_bound = [&](const HyperplaneArrangement& a) {
    const auto rep = verify_derivation_bound(a);
    ++arrangements;
    if (rep.regularity > Regularity(static_cast<int>(a.size()) - 1) || !rep.euler_member || !rep.ok)
      out.fail(a.to_string() + ": bound report fails");
    for (const auto& del : rep.deletions) {
      ++deletions;
      if (!del.ok()) out.fail(a.to_string() + ": deletion inclusion fails");
    }
    return rep;
  };

  for (std::size_t n = 0; n <= 3; ++n) {
    auto a = HyperplaneArrangement::boolean(ring_of(n + 1));
    const Regularity reg = regularity(derivation_module(a).module);
    if (reg != Regularity(1)) out.fail("boolean arrangement with n = " + std::to_string(n) + " has reg " + reg.to_string());
    if (a.size() >= 2) run_bound(a);
  }

  const std::pair<int, int> general[] = {{3, 2}, {4, 2}, {5, 2}, {4, 3}, {5, 3}};
  for (auto [d, n] : general)
    for (int inst = 0; inst < 3; ++inst) {
      auto r = ring_of(static_cast<std::size_t>(n + 1));
      auto a = HyperplaneArrangement::random(r, static_cast<std::size_t>(d), rng);
      const auto cls = classify(a);
      if (!cls.linearly_general || !*cls.linearly_general || !cls.essential) {
        --inst;
        continue;
      }
      const auto rep = run_bound(a);
      if (rep.regularity != Regularity(d - n))
        out.fail("general (" + std::to_string(d) + ", " + std::to_string(n) + "): reg " + rep.regularity.to_string());
    }

  for (int inst = 0; inst < 60; ++inst) {
    auto r = ring_of(static_cast<std::size_t>(uniform(rng, 2, 4)));
    run_bound(HyperplaneArrangement::random(r, static_cast<std::size_t>(uniform(rng, 2, 6)), rng));
  }

  auto r = ring_of(2);
  auto cone = verify_cone(HyperplaneArrangement(r, {var(r, 0), var(r, 1), var(r, 0) + var(r, 1)}));
  if (!cone.ok) out.fail("cone fixture");

  out.detail = std::to_string(arrangements) + " arrangements, " + std::to_string(deletions) + " deletions, cone fixture " +
               (cone.ok ? "ok" : "failed");
  return out;
}

// ----------------------------------------------------------- criterion 10

// dim of the intersection of the coset spans, as sum of dims minus the rank
// of (u_1, ..., u_k) -> (u_1 - u_2, ..., u_1 - u_k).
std::size_t span_intersection_dimension(const DiagonalAction& action, const std::vector<std::vector<GroupElement>>& cosets) {
  const std::size_t n = action.num_vars();
  const Field& k = action.field();
  std::vector<std::vector<oracle::SparseVec>> bases;
  std::size_t total = 0;
  for (const auto& coset : cosets) {
    oracle::Echelon ech(k);
    std::vector<oracle::SparseVec> basis;
    for (const auto& h : coset)
      for (std::size_t j = 0; j < n; ++j) {
        oracle::SparseVec v;
        v[{{static_cast<int>(j)}, 0}] = 1;
        const Scalar c = action.character_value(action.characters()[j], h);
        if (!Field::is_zero(c)) v[{{static_cast<int>(n + j)}, 0}] = c;
        if (ech.insert(v)) basis.push_back(v);
      }
    total += basis.size();
    bases.push_back(std::move(basis));
  }
  oracle::Echelon image(k);
  for (std::size_t i = 0; i < bases.size(); ++i)
    for (const auto& v : bases[i]) {
      oracle::SparseVec w;
      for (const auto& [key, c] : v)
        for (std::size_t b = 1; b < bases.size(); ++b)
          if (i == 0 || i == b) w[{key.first, b}] = i == 0 ? c : k.neg(c);
      image.insert(w);
    }
  return total - image.rank();
}

Outcome invariants() {
  Outcome out;
  int sweep = 0, trivial = 0, z2 = 0;

  {
    auto act = DiagonalAction::create({2}, {"x"}, {{1}});
    const auto rep = invariant_report(act);
    const auto& d = act.doubled_ring();
    const auto x = var(d, 0), y = var(d, 1);
    if (!(rep.b == Ideal(d, {x * x - y * y}))) out.fail("Z/2: b = " + rep.b.to_string());
    if (!(rep.hilbert == Ideal(act.base_ring(), {var(act.base_ring(), 0).pow(2)}))) out.fail("Z/2: J = " + rep.hilbert.to_string());
    if (rep.rho != 2) out.fail("Z/2: rho");
  }
  {
    auto act = DiagonalAction::create({3}, {"x"}, {{1}}, Field::prime(7), std::vector<long>{2});
    const auto rep = invariant_report(act);
    const auto& d = act.doubled_ring();
    const auto x = var(d, 0), y = var(d, 1);
    if (!(rep.b == Ideal(d, {y.pow(3) - x.pow(3)}))) out.fail("Z/3: b = " + rep.b.to_string());
    if (rep.rho != 3) out.fail("Z/3: rho");
  }

  // (Z/2)^n: coordinate flips plus random character choices.
  std::mt19937_64 rng(101);
  for (int n = 1; n <= 3; ++n)
    for (int inst = 0; inst < 6; ++inst) {
      const int dim = inst == 0 ? n : uniform(rng, 1, 3);
      std::vector<std::string> vars;
      std::vector<GroupElement> chars;
      for (int j = 0; j < dim; ++j) {
        vars.push_back("x" + std::to_string(j + 1));
        GroupElement chi(static_cast<std::size_t>(n), 0);
        if (inst == 0) chi[static_cast<std::size_t>(j)] = 1;
        else
          for (auto& c : chi) c = uniform(rng, 0, 1);
        chars.push_back(chi);
      }
      auto act = DiagonalAction::create(std::vector<int>(static_cast<std::size_t>(n), 2), vars, chars);
      const auto rep = z2n_certificate(act);
      ++z2;
      const Regularity reg_b = regularity(graph_ideal(act));
      const int r = rho(hilbert_ideal(graph_ideal(act), act.base_ring()));
      if (reg_b > Regularity(n + 1) || rep.reg_b != reg_b) out.fail(act.to_string() + ": reg(b) = " + reg_b.to_string());
      if (r > (1 << n) || rep.rho != r) out.fail(act.to_string() + ": rho = " + std::to_string(r));
      if (!rep.chain_ok || !rep.approximation_ok || !*rep.approximation_ok) out.fail(act.to_string() + ": chain");
    }

  // Lemma sweep: every diagonal action of dimension <= 3 of the groups of
  // order <= 8, every pair of cosets, and every triple when |G| <= 4.
  const std::vector<std::vector<int>> groups{{1}, {2}, {3}, {4}, {5}, {6}, {7}, {8}, {2, 2}, {2, 4}, {2, 2, 2}};
  for (const auto& divisors : groups) {
    auto probe = DiagonalAction::create(divisors, {"x1"}, {GroupElement(divisors.size(), 0)});
    const auto elements = probe.elements();
    std::vector<std::vector<GroupElement>> coset_sets;
    std::vector<CosetSpec> cosets;
    for (const auto& h : all_subgroups(probe))
      for (const auto& g : elements) {
        std::vector<GroupElement> set;
        for (const auto& e : h) set.push_back(probe.add(g, e));
        std::sort(set.begin(), set.end());
        if (std::find(coset_sets.begin(), coset_sets.end(), set) != coset_sets.end()) continue;
        coset_sets.push_back(set);
        cosets.push_back(CosetSpec{g, h});
      }
    const std::size_t m = elements.size();
    for (int dim = 1; dim <= 3; ++dim) {
      std::vector<std::size_t> idx(static_cast<std::size_t>(dim), 0);
      for (;;) {  // nondecreasing index tuples = multisets of characters
        std::vector<std::string> vars;
        std::vector<GroupElement> chars;
        for (int j = 0; j < dim; ++j) {
          vars.push_back("x" + std::to_string(j + 1));
          chars.push_back(elements[idx[static_cast<std::size_t>(j)]]);
        }
        auto act = DiagonalAction::create(divisors, vars, chars);
        auto run = [&](const std::vector<std::size_t>& pick) {
          std::vector<CosetSpec> specs;
          std::vector<std::vector<GroupElement>> sets;
          for (auto p : pick) {
            specs.push_back(cosets[p]);
            sets.push_back(coset_sets[p]);
          }
          ++sweep;
          try {
            const bool meets_in_zero = coset_span_intersection_test(act, specs);
            trivial += meets_in_zero;
            if (meets_in_zero != (span_intersection_dimension(act, sets) == 0))
              out.fail(act.to_string() + ": criterion differs from the span oracle");
          } catch (const InternalConsistencyError& e) {
            out.fail(e.what());
          }
        };
        for (std::size_t a = 0; a < cosets.size(); ++a)
          for (std::size_t b = a + 1; b < cosets.size(); ++b) {
            run({a, b});
            if (m <= 4)
              for (std::size_t c = b + 1; c < cosets.size(); ++c) run({a, b, c});
          }
        int pos = dim - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == m - 1) --pos;
        if (pos < 0) break;
        const std::size_t v = idx[static_cast<std::size_t>(pos)] + 1;
        for (auto q = static_cast<std::size_t>(pos); q < idx.size(); ++q) idx[q] = v;
      }
    }
  }

  out.detail = "fixtures, " + std::to_string(z2) + " (Z/2)^n actions, " + std::to_string(sweep) + " coset lists in the sweep (" +
               std::to_string(trivial) + " meeting only in 0)";
  return out;
}

// ----------------------------------------------------------- criterion 11

Outcome kernel_oracles() {
  Outcome out;
  std::mt19937_64 rng(113);
  int instances = 0, memberships = 0;
  for (int inst = 0; inst < 120; ++inst) {
    const Field field = inst % 5 == 4 ? Field::prime(32003) : Field::rationals();
    auto r = ring_of(static_cast<std::size_t>(1 + inst % 3), field);
    const bool module_case = inst % 3 == 2;
    GradedFreeModule f = module_case ? GradedFreeModule(r, {0, 1}) : GradedFreeModule::rank_one(r);
    std::vector<FreeModuleElement> gens;
    const int k = uniform(rng, 1, 4);
    for (int i = 0; i < k; ++i) {
      const int deg = uniform(rng, 1, 3);
      std::vector<Polynomial> comps{random_form(r, deg, uniform(rng, 1, 3), rng)};
      if (module_case) comps.push_back(uniform(rng, 0, 1) ? random_form(r, deg - 1, 2, rng) : Polynomial(r));
      gens.emplace_back(f, comps);
    }
    ++instances;
    const Submodule sub(f, gens);
    const auto syz = syzygies(f, gens);
    for (const auto& s : syz.syzygies) {
      FreeModuleElement total(f);
      for (std::size_t i = 0; i < gens.size(); ++i) total = total + gens[i] * s[i];
      if (!total.is_zero()) out.fail("syzygy does not vanish");
    }
    for (int d = 0; d <= 6; ++d) {
      const auto piece = oracle::degree_piece(gens, d, field, r->num_vars());
      // Membership of random elements and of random combinations of generators.
      for (int t = 0; t < 3; ++t) {
        FreeModuleElement v(f);
        if (t < 2) {
          std::vector<Polynomial> comps;
          for (std::size_t j = 0; j < f.rank(); ++j)
            comps.push_back(d - f.shift(j) >= 0 ? random_form(r, d - f.shift(j), uniform(rng, 1, 3), rng) : Polynomial(r));
          v = FreeModuleElement(f, comps);
        }
        if (t >= 1)
          for (const auto& g : gens) {
            const int dg = oracle::shifted_degree(g);
            if (dg <= d) v = v + g * random_form(r, d - dg, 2, rng);
            if (dg == d) v = v + g * Polynomial::constant(r, field.from_int(uniform(rng, 1, 5)));
          }
        ++memberships;
        if (sub.contains(v) != piece.contains(oracle::to_sparse(v))) out.fail("membership disagrees in degree " + std::to_string(d));
      }
      // Relation module, degree by degree.
      const std::size_t syz_dim = oracle::degree_piece(syz.syzygies, d, field, r->num_vars()).rank();
      if (syz_dim != oracle::syzygy_dimension(gens, d, field, r->num_vars()))
        out.fail("syzygy dimension disagrees in degree " + std::to_string(d));
    }
  }
  out.detail = std::to_string(instances) + " generator sets, " + std::to_string(memberships) + " membership tests";
  return out;
}

// ----------------------------------------------------------- criterion 12

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome cli_golden() {
  Outcome out;
  const std::string dir = std::string(CMREG_SOURCE_DIR) + "/tests/golden/";
  RunOptions opts;
  opts.seed = 7;
  opts.format = RunOptions::Format::Json;
  const auto rep = run_script_text(slurp(dir + "acceptance.cmreg"), opts);
  const std::string got = rep.to_json();
  const std::string want = slurp(dir + "acceptance.expected.json");
  if (rep.exit_code != 0) out.fail("script exit code " + std::to_string(rep.exit_code));
  if (got != want) out.fail("JSON output differs from the golden file");
  out.detail = std::to_string(rep.results.size()) + " commands, " + std::to_string(got.size()) + " bytes";
  return out;
}

// ----------------------------------------------------------------- driver

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "class enumeration example", 5, class_example},
      {2, "r-regularity of combinations", 600, systems_theorem},
      {3, "products of linear ideals", 300, products_exact},
      {4, "subspace arrangement bound", 300, subspace_bound},
      {5, "short exact sequences", 300, exact_sequences},
      {6, "hypersurface identity", 600, hypersurface_identity},
      {7, "approximation bounds", 600, bound_theorems},
      {8, "associated primes", 300, associated_primes},
      {9, "derivation modules", 900, derivations},
      {10, "invariant degree bounds", 600, invariants},
      {11, "kernel oracles", 600, kernel_oracles},
      {12, "CLI golden output", 120, cli_golden},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

  int failed = 0, ran = 0;
  for (const auto& c : criteria) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    ++ran;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_seconds) o.fail("over the time budget");
    if (!o.pass) ++failed;
    std::printf("%s %2d %s: %s (%.2f s of %.0f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                c.budget_seconds);
    for (const auto& f : o.failures) std::printf("       %s\n", f.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", ran - failed, ran);
  return failed == 0 ? 0 : 1;
}
