#include "cmreg/invariants.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <json.hpp>

#include "cmreg/linalg.hpp"
#include "cmreg/parse.hpp"

namespace cmreg {

namespace {

Scalar field_pow(const Field& k, const Scalar& a, long e) {
  Scalar r = k.from_int(1);
  for (long i = 0; i < e; ++i) r = k.mul(r, a);
  return r;
}

std::vector<long> prime_factors(long n) {
  std::vector<long> out;
  for (long q = 2; q * q <= n; ++q)
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  if (n > 1) out.push_back(n);
  return out;
}

bool has_exact_order(const Field& k, const Scalar& z, long d) {
  if (Field::is_zero(z)) return false;
  if (field_pow(k, z, d) != k.from_int(1)) return false;
  for (long q : prime_factors(d))
    if (field_pow(k, z, d / q) == k.from_int(1)) return false;
  return true;
}

long smallest_primitive_root(long p) {
  const Field k = Field::prime(static_cast<std::uint32_t>(p));
  for (long g = 2; g < p; ++g)
    if (has_exact_order(k, k.from_int(g), p - 1)) return g;
  throw InternalConsistencyError("no primitive root mod " + std::to_string(p));
}

std::string y_name(const std::string& x) { return !x.empty() && x[0] == 'x' ? "y" + x.substr(1) : "y_" + x; }

nlohmann::ordered_json reg_json(const Regularity& r) {
  if (!r.is_finite()) return "-inf";
  return r.value();
}

}  // namespace

Field default_action_field(const std::vector<int>& divisors) {
  long l = 1;
  for (int d : divisors) l = std::lcm(l, static_cast<long>(d));
  if (l <= 2) return Field::rationals();
  for (long p = 101;; ++p)
    if (p % l == 1 && is_prime(static_cast<std::uint64_t>(p))) return Field::prime(static_cast<std::uint32_t>(p));
}

// ---------------------------------------------------------------- actions

DiagonalAction DiagonalAction::create(std::vector<int> divisors, std::vector<std::string> variables,
                                      std::vector<GroupElement> characters, std::optional<Field> field,
                                      std::optional<std::vector<long>> roots) {
  DiagonalAction a;
  for (int d : divisors)
    if (d < 1) throw PreconditionError("elementary divisors must be positive");
  if (variables.empty()) throw PreconditionError("an action needs at least one variable");
  if (characters.size() != variables.size()) throw DimensionError("one character per variable is required");
  for (auto& chi : characters) {
    if (chi.size() != divisors.size()) throw DimensionError("character length differs from the number of divisors");
    for (std::size_t i = 0; i < chi.size(); ++i) chi[i] = ((chi[i] % divisors[i]) + divisors[i]) % divisors[i];
  }
  a.field_ = field ? *field : default_action_field(divisors);
  const Field& k = a.field_;
  if (roots) {
    if (roots->size() != divisors.size()) throw DimensionError("one root of unity per divisor is required");
    for (std::size_t i = 0; i < divisors.size(); ++i) {
      Scalar z = k.from_int((*roots)[i]);
      if (!has_exact_order(k, z, divisors[i]))
        throw PreconditionError(std::to_string((*roots)[i]) + " is not a primitive " + std::to_string(divisors[i]) +
                                "-th root of unity in " + k.name());
      a.roots_.push_back(z);
    }
  } else {
    for (int d : divisors) {
      if (k.is_rational()) {
        if (d > 2) throw PreconditionError("Q has no primitive " + std::to_string(d) + "-th root of unity");
        a.roots_.push_back(Scalar(d == 2 ? -1 : 1));
        continue;
      }
      const long p = k.characteristic();
      if ((p - 1) % d != 0)
        throw PreconditionError(k.name() + " has no primitive " + std::to_string(d) + "-th root of unity");
      Scalar g = k.from_int(smallest_primitive_root(p));
      a.roots_.push_back(field_pow(k, g, (p - 1) / d));
    }
  }
  std::vector<std::string> names = variables;
  for (const auto& v : variables) {
    std::string y = y_name(v);
    while (std::find(names.begin(), names.end(), y) != names.end()) y += "_";
    names.push_back(y);
  }
  a.divisors_ = std::move(divisors);
  a.variables_ = std::move(variables);
  a.characters_ = std::move(characters);
  a.base_ = PolynomialRing::create(k, a.variables_);
  a.doubled_ = PolynomialRing::create(k, names);
  return a;
}

DiagonalAction DiagonalAction::parse(std::string_view text, std::optional<Field> field) {
  TokenStream ts(tokenize(text));
  DiagonalAction a = parse(ts, field);
  if (!ts.at_end()) ts.fail("action statement");
  return a;
}

DiagonalAction DiagonalAction::parse(TokenStream& ts, std::optional<Field> field) {
  const Token start = ts.peek();
  std::optional<std::vector<int>> divisors;
  std::optional<std::vector<std::string>> vars;
  std::vector<std::pair<Token, GroupElement>> chars;
  std::optional<Field> text_field;
  std::optional<std::vector<long>> roots;
  while (!ts.at_end() && !ts.at_punct("}")) {
    Token kw = ts.expect_ident();
    if (kw.text == "group") {
      divisors.emplace();
      do divisors->push_back(static_cast<int>(ts.expect_integer()));
      while (ts.accept(","));
    } else if (kw.text == "vars") {
      vars.emplace();
      do vars->push_back(ts.expect_ident().text);
      while (ts.accept(","));
    } else if (kw.text == "char") {
      Token name = ts.expect_ident();
      ts.expect("=");
      ts.expect("(");
      GroupElement chi;
      do {
        bool neg = ts.accept("-");
        long v = ts.expect_integer();
        chi.push_back(static_cast<int>(neg ? -v : v));
      } while (ts.accept(","));
      ts.expect(")");
      chars.emplace_back(name, chi);
    } else if (kw.text == "field") {
      text_field = parse_field(ts);
    } else if (kw.text == "roots") {
      roots.emplace();
      do {
        bool neg = ts.accept("-");
        long v = ts.expect_integer();
        roots->push_back(neg ? -v : v);
      } while (ts.accept(","));
    } else {
      throw SyntaxError("unknown action statement '" + kw.text + "'", kw.line, kw.column);
    }
    ts.expect(";");
  }
  if (!divisors) throw SyntaxError("missing 'group' statement", start.line, start.column);
  if (!vars) throw SyntaxError("missing 'vars' statement", start.line, start.column);
  std::vector<std::optional<GroupElement>> by_var(vars->size());
  for (auto& [tok, chi] : chars) {
    auto it = std::find(vars->begin(), vars->end(), tok.text);
    if (it == vars->end()) throw SyntaxError("undeclared variable '" + tok.text + "'", tok.line, tok.column);
    auto& slot = by_var[static_cast<std::size_t>(it - vars->begin())];
    if (slot) throw SyntaxError("character of '" + tok.text + "' given twice", tok.line, tok.column);
    slot = chi;
  }
  std::vector<GroupElement> characters;
  for (std::size_t i = 0; i < by_var.size(); ++i) {
    if (!by_var[i]) throw SyntaxError("no character for variable '" + (*vars)[i] + "'", start.line, start.column);
    characters.push_back(*by_var[i]);
  }
  return create(*divisors, *vars, characters, field ? field : text_field, field ? std::nullopt : roots);
}

std::size_t DiagonalAction::order() const {
  std::size_t n = 1;
  for (int d : divisors_) n *= static_cast<std::size_t>(d);
  return n;
}

std::vector<GroupElement> DiagonalAction::elements() const {
  std::vector<GroupElement> out;
  GroupElement g(divisors_.size(), 0);
  for (;;) {
    out.push_back(g);
    std::size_t i = g.size();
    while (i > 0) {
      --i;
      if (++g[i] < divisors_[i]) break;
      g[i] = 0;
      if (i == 0) return out;
    }
    if (g.empty()) return out;
  }
}

GroupElement DiagonalAction::add(const GroupElement& a, const GroupElement& b) const {
  GroupElement c(divisors_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = (a[i] + b[i]) % divisors_[i];
  return c;
}

Scalar DiagonalAction::character_value(const GroupElement& chi, const GroupElement& g) const {
  Scalar v = field_.from_int(1);
  for (std::size_t i = 0; i < divisors_.size(); ++i)
    v = field_.mul(v, field_pow(field_, roots_[i], (static_cast<long>(chi[i]) * g[i]) % divisors_[i]));
  return v;
}

bool DiagonalAction::is_faithful() const {
  std::size_t kernel = 0;
  for (const auto& g : elements())
    if (std::all_of(characters_.begin(), characters_.end(),
                    [&](const GroupElement& chi) { return character_value(chi, g) == field_.from_int(1); }))
      ++kernel;
  return kernel == 1;
}

std::string DiagonalAction::to_string() const {
  auto join = [](const auto& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) s += ",";
      if constexpr (std::is_same_v<std::decay_t<decltype(xs[i])>, std::string>)
        s += xs[i];
      else
        s += std::to_string(xs[i]);
    }
    return s;
  };
  std::string s = "group " + join(divisors_) + "; vars " + join(variables_) + ";";
  for (std::size_t j = 0; j < variables_.size(); ++j) s += " char " + variables_[j] + " = (" + join(characters_[j]) + ");";
  if (!field_.is_rational()) {
    std::vector<long> rs;
    for (const auto& z : roots_) rs.push_back(z.get_num().get_si());
    s += " field GF(" + std::to_string(field_.characteristic()) + ");";
    if (!rs.empty()) s += " roots " + join(rs) + ";";
  }
  return s;
}

// ---------------------------------------------------------------- graph ideal

LinearIdeal graph_component(const DiagonalAction& action, const GroupElement& g) {
  const RingPtr& r = action.doubled_ring();
  const std::size_t n = action.num_vars();
  std::vector<Polynomial> gens;
  for (std::size_t j = 0; j < n; ++j) {
    Scalar c = action.character_value(action.characters()[j], g);
    gens.push_back(Polynomial::variable(r, n + j) - Polynomial::variable(r, j).scaled(c));
  }
  return LinearIdeal(r, std::move(gens));
}

CombinationExpr graph_expression(const DiagonalAction& action) {
  std::vector<LinearIdeal> comps;
  std::set<std::vector<std::string>> seen;
  for (const auto& g : action.elements()) {
    std::vector<std::string> key;
    for (const auto& chi : action.characters()) key.push_back(action.character_value(chi, g).get_str());
    if (seen.insert(key).second) comps.push_back(graph_component(action, g));
  }
  CombinationExpr e = CombinationExpr::atom(comps.front());
  for (std::size_t i = 1; i < comps.size(); ++i) e = CombinationExpr::meet(e, CombinationExpr::atom(comps[i]));
  return e;
}

Ideal graph_ideal(const DiagonalAction& action) { return graph_expression(action).eval(); }

Ideal hilbert_ideal(const Ideal& b, const RingPtr& base) {
  const std::size_t n = base->num_vars();
  const std::size_t total = b.ring()->num_vars();
  if (total < n) throw DimensionError("base ring has more variables than the ideal's ring");
  std::vector<int> index(total, -1);
  for (std::size_t i = 0; i < n; ++i) index[i] = static_cast<int>(i);
  std::vector<Polynomial> gens;
  for (const auto& f : b.gb_polynomials()) gens.push_back(map_variables(f, base, index));
  return Ideal(base, std::move(gens)).canonical();
}

int rho(const Ideal& j) {
  const RingPtr& r = j.ring();
  auto gb = j.gb_polynomials();
  for (std::size_t i = 0; i < r->num_vars(); ++i) {
    bool pure = std::any_of(gb.begin(), gb.end(), [&](const Polynomial& g) {
      const Monomial& m = g.leading().mono;
      return m.degree() > 0 && m[i] == m.degree();
    });
    if (!pure) throw PreconditionError("S/J has infinite length: no power of " + r->names()[i] + " lies in J");
  }
  for (int d = 1;; ++d) {
    auto monos = monomials_of_degree(r->num_vars(), d);
    if (std::all_of(monos.begin(), monos.end(),
                    [&](const Monomial& m) { return j.contains(Polynomial::monomial(r, m, Scalar(1))); }))
      return d;
  }
}

// ---------------------------------------------------------------- subgroups

std::vector<GroupElement> subgroup_closure(const DiagonalAction& action, const std::vector<GroupElement>& generators) {
  for (const auto& g : generators)
    if (g.size() != action.divisors().size()) throw DimensionError("group element of the wrong length");
  std::set<GroupElement> seen{GroupElement(action.divisors().size(), 0)};
  std::vector<GroupElement> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<GroupElement> next;
    for (const auto& h : frontier)
      for (const auto& g : generators) {
        GroupElement s = action.add(h, g);
        if (seen.insert(s).second) next.push_back(s);
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

std::vector<std::vector<GroupElement>> all_subgroups(const DiagonalAction& action) {
  std::vector<std::vector<GroupElement>> out{subgroup_closure(action, {})};
  const auto elems = action.elements();
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& g : elems) {
      if (std::binary_search(out[i].begin(), out[i].end(), g)) continue;
      auto gens = out[i];
      gens.push_back(g);
      auto h = subgroup_closure(action, gens);
      if (std::find(out.begin(), out.end(), h) == out.end()) out.push_back(std::move(h));
    }
  return out;
}

namespace {

std::vector<GroupElement> coset_elements(const DiagonalAction& action, const CosetSpec& c) {
  std::vector<GroupElement> out;
  for (const auto& h : subgroup_closure(action, c.subgroup)) out.push_back(action.add(c.g, h));
  std::sort(out.begin(), out.end());
  return out;
}

// Coefficient vectors of the linear forms on V x V vanishing on the span.
Matrix coset_annihilator(const DiagonalAction& action, const CosetSpec& c) {
  const std::size_t n = action.num_vars();
  const Field& k = action.field();
  Matrix span;
  for (const auto& h : coset_elements(action, c))
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Scalar> row(2 * n, Scalar(0));
      row[j] = k.from_int(1);
      row[n + j] = action.character_value(action.characters()[j], h);
      span.push_back(std::move(row));
    }
  return nullspace(std::move(span), 2 * n, k);
}

}  // namespace

Ideal coset_span_ideal(const DiagonalAction& action, const CosetSpec& coset) {
  std::vector<Polynomial> gens;
  for (const auto& c : coset_annihilator(action, coset)) gens.push_back(linear_form(action.doubled_ring(), c));
  return Ideal(action.doubled_ring(), std::move(gens));
}

Ideal coset_union_ideal(const DiagonalAction& action, const CosetSpec& coset) {
  auto elems = coset_elements(action, coset);
  Ideal out = graph_component(action, elems.front()).ideal();
  for (std::size_t i = 1; i < elems.size(); ++i) out = intersect(out, graph_component(action, elems[i]).ideal());
  return out;
}

bool coset_span_intersection_test(const DiagonalAction& action, const std::vector<CosetSpec>& cosets) {
  const Field& k = action.field();
  const Scalar one = k.from_int(1);
  std::vector<GroupElement> distinct;
  for (const auto& chi : action.characters())
    if (std::find(distinct.begin(), distinct.end(), chi) == distinct.end()) distinct.push_back(chi);
  bool criterion = true;
  for (const auto& chi : distinct) {
    std::vector<std::size_t> trivial_on_h;
    for (std::size_t i = 0; i < cosets.size(); ++i)
      if (std::all_of(cosets[i].subgroup.begin(), cosets[i].subgroup.end(),
                      [&](const GroupElement& h) { return action.character_value(chi, h) == one; }))
        trivial_on_h.push_back(i);
    bool found = false;
    for (std::size_t a = 0; a < trivial_on_h.size() && !found; ++a)
      for (std::size_t b = a + 1; b < trivial_on_h.size() && !found; ++b)
        found = action.character_value(chi, cosets[trivial_on_h[a]].g) !=
                action.character_value(chi, cosets[trivial_on_h[b]].g);
    if (!found) {
      criterion = false;
      break;
    }
  }
  Matrix all;
  for (const auto& c : cosets)
    for (auto& row : coset_annihilator(action, c)) all.push_back(std::move(row));
  const bool direct = rank(std::move(all), k) == 2 * action.num_vars();
  if (direct != criterion)
    throw InternalConsistencyError("character criterion and span computation disagree for " + action.to_string());
  return criterion;
}

// ---------------------------------------------------------------- (Z/2)^n

namespace {

void require_elementary_two(const DiagonalAction& action) {
  for (int d : action.divisors())
    if (d != 1 && d != 2) throw PreconditionError("expected an elementary abelian 2-group");
}

}  // namespace

DiagonalAction faithful_quotient(const DiagonalAction& action) {
  require_elementary_two(action);
  std::vector<GroupElement> basis;
  std::vector<GroupElement> span{GroupElement(action.divisors().size(), 0)};
  auto xor_add = [](const GroupElement& a, const GroupElement& b) {
    GroupElement c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = (a[i] + b[i]) % 2;
    return c;
  };
  for (const auto& chi : action.characters()) {
    if (std::find(span.begin(), span.end(), chi) != span.end()) continue;
    basis.push_back(chi);
    const std::size_t old = span.size();
    for (std::size_t i = 0; i < old; ++i) span.push_back(xor_add(span[i], chi));
  }
  // span[m] is the sum of the basis vectors in the binary digits of m.
  std::vector<GroupElement> coords;
  for (const auto& chi : action.characters()) {
    std::size_t m = static_cast<std::size_t>(std::find(span.begin(), span.end(), chi) - span.begin());
    GroupElement c(basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) c[k] = static_cast<int>((m >> k) & 1);
    coords.push_back(std::move(c));
  }
  return DiagonalAction::create(std::vector<int>(basis.size(), 2), action.variables(), coords, action.field());
}

std::string InvariantReport::to_json() const {
  nlohmann::ordered_json j;
  j["group_order"] = group_order;
  j["b"] = b.to_string();
  j["hilbert_ideal"] = hilbert.to_string();
  if (rho)
    j["rho"] = *rho;
  else
    j["rho"] = nullptr;
  j["reg_b"] = reg_json(reg_b);
  j["cg_bound"] = cg_bound;
  if (certificate)
    j["certificate"] = certificate->to_string();
  else
    j["certificate"] = nullptr;
  j["reduced"] = reduced;
  if (approximation_ok)
    j["approximation_ok"] = *approximation_ok;
  else
    j["approximation_ok"] = nullptr;
  j["chain_ok"] = chain_ok;
  return j.dump();
}

InvariantReport invariant_report(const DiagonalAction& action) {
  CombinationExpr expr = graph_expression(action);
  Ideal b = expr.eval().canonical();
  Ideal J = hilbert_ideal(b, action.base_ring());
  InvariantReport rep{b, J, std::nullopt, regularity(b), action.order(), grammar_degree(expr), expr, false,
                      std::nullopt, false};
  try {
    rep.rho = rho(J);
  } catch (const PreconditionError&) {
  }
  const Regularity bound(rep.cg_bound);
  rep.chain_ok = rep.reg_b <= bound && (!rep.rho || *rep.rho <= rep.cg_bound) &&
                 static_cast<std::size_t>(rep.cg_bound) <= rep.group_order;
  return rep;
}

namespace {

// Checks, for every index-2 subgroup H with a chosen g outside H, that the
// ideals of Psi_H and Psi_{gH}, with annihilators the ideals of the spans
// Delta_{gH} and Delta_H, form a degree-1 approximation system for k[V x V]/b.
bool index_two_approximation(const DiagonalAction& action) {
  const std::size_t n = action.divisors().size();
  if (n == 0) return true;
  const auto elems = action.elements();
  std::vector<CosetSpec> cosets;
  std::vector<Approximant> approximants;
  for (const auto& lambda : elems) {
    if (std::all_of(lambda.begin(), lambda.end(), [](int v) { return v == 0; })) continue;
    auto pairing = [&](const GroupElement& g) {
      int s = 0;
      for (std::size_t i = 0; i < n; ++i) s += lambda[i] * g[i];
      return s % 2;
    };
    std::vector<GroupElement> h_gens;
    GroupElement outside;
    for (const auto& g : elems) {
      if (pairing(g) == 0)
        h_gens.push_back(g);
      else if (outside.empty())
        outside = g;
    }
    CosetSpec h{GroupElement(n, 0), h_gens};
    CosetSpec gh{outside, h_gens};
    cosets.push_back(h);
    cosets.push_back(gh);
    approximants.push_back(Approximant{coset_union_ideal(action, h).as_submodule(), coset_span_ideal(action, gh)});
    approximants.push_back(Approximant{coset_union_ideal(action, gh).as_submodule(), coset_span_ideal(action, h)});
  }
  if (!coset_span_intersection_test(action, cosets)) return false;
  ApproximationSystem sys{PresentedModule::quotient(graph_ideal(action)), std::move(approximants), 1};
  return verify_approximation_system(sys).ok;
}

}  // namespace

InvariantReport z2n_certificate(const DiagonalAction& action, bool allow_reduction) {
  require_elementary_two(action);
  if (action.divisors().size() > 3) throw PreconditionError("the (Z/2)^n certificate is limited to n <= 3");
  const bool faithful = action.is_faithful();
  if (!faithful && !allow_reduction) throw PreconditionError("the action is not faithful and reduction is disabled");
  DiagonalAction act = faithful ? action : faithful_quotient(action);
  InvariantReport rep = invariant_report(act);
  rep.reduced = !faithful;
  rep.group_order = act.order();
  const int n = static_cast<int>(act.divisors().size());
  rep.cg_bound = std::min(rep.cg_bound, n + 1);
  if (rep.certificate && grammar_degree(*rep.certificate) > rep.cg_bound) rep.certificate.reset();

  // Variables with trivial character split off as a linear factor; the
  // approximation argument runs on the rest.
  std::vector<std::string> vars;
  std::vector<GroupElement> chars;
  for (std::size_t j = 0; j < act.num_vars(); ++j)
    if (std::any_of(act.characters()[j].begin(), act.characters()[j].end(), [](int v) { return v != 0; })) {
      vars.push_back(act.variables()[j]);
      chars.push_back(act.characters()[j]);
    }
  rep.approximation_ok =
      vars.empty() || index_two_approximation(DiagonalAction::create(act.divisors(), vars, chars, act.field()));

  const Regularity bound(rep.cg_bound);
  rep.chain_ok = rep.reg_b <= bound && (!rep.rho || *rep.rho <= rep.cg_bound) &&
                 static_cast<std::size_t>(rep.cg_bound) <= rep.group_order && *rep.approximation_ok;
  return rep;
}

}  // namespace cmreg
