#include "cmreg/combinations.hpp"

#include <algorithm>
#include <mutex>
#include <optional>
#include <set>

#include "cmreg/linalg.hpp"

namespace cmreg {

// ---------------------------------------------------------------- LinearIdeal

LinearIdeal::LinearIdeal(RingPtr ring, std::vector<Polynomial> generators)
    : generators_(std::move(generators)), ideal_(ring, generators_) {
  if (generators_.empty()) throw PreconditionError("a linear ideal needs at least one generator");
  Matrix m;
  for (const auto& g : generators_) {
    if (!same_ring(g.ring(), ring)) throw RingMismatch("generator from a different ring");
    if (g.is_zero() || g.degree() != 1 || !g.is_homogeneous())
      throw PreconditionError("not a nonzero linear form: " + g.to_string());
    m.push_back(linear_coefficients(g));
  }
  if (rank(m, ring->field()) != generators_.size()) throw PreconditionError("linear generators are dependent");
}

std::string LinearIdeal::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < generators_.size(); ++i) s += (i ? ", " : "") + generators_[i].to_string();
  return s + ")";
}

// ---------------------------------------------------------------- expressions

struct CombinationExpr::Node {
  Kind kind;
  RingPtr ring;
  std::optional<LinearIdeal> atom;
  std::optional<CombinationExpr> left;
  std::optional<CombinationExpr> right;
  mutable std::once_flag once;
  mutable std::optional<Ideal> value;
};

CombinationExpr::Kind CombinationExpr::kind() const { return node_->kind; }
const RingPtr& CombinationExpr::ring() const { return node_->ring; }

CombinationExpr CombinationExpr::make(Kind kind, RingPtr ring, std::optional<LinearIdeal> atom,
                                      const CombinationExpr* left, const CombinationExpr* right) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->ring = std::move(ring);
  n->atom = std::move(atom);
  if (left) n->left = *left;
  if (right) n->right = *right;
  return CombinationExpr(std::move(n));
}

CombinationExpr CombinationExpr::zero(RingPtr ring) {
  return make(Kind::Zero, std::move(ring), std::nullopt, nullptr, nullptr);
}

CombinationExpr CombinationExpr::unit(RingPtr ring) {
  return make(Kind::Unit, std::move(ring), std::nullopt, nullptr, nullptr);
}

CombinationExpr CombinationExpr::atom(LinearIdeal ideal) {
  RingPtr ring = ideal.ring();
  return make(Kind::Atom, std::move(ring), std::move(ideal), nullptr, nullptr);
}

namespace {

void require_same_ring(const CombinationExpr& a, const CombinationExpr& b) {
  if (!same_ring(a.ring(), b.ring())) throw RingMismatch("expression operands live in different rings");
}

}  // namespace

CombinationExpr CombinationExpr::sum(const CombinationExpr& a, const CombinationExpr& b) {
  require_same_ring(a, b);
  return make(Kind::Sum, a.ring(), std::nullopt, &a, &b);
}

CombinationExpr CombinationExpr::product(const CombinationExpr& a, const CombinationExpr& b) {
  require_same_ring(a, b);
  return make(Kind::Product, a.ring(), std::nullopt, &a, &b);
}

CombinationExpr CombinationExpr::meet(const CombinationExpr& a, const CombinationExpr& b) {
  require_same_ring(a, b);
  return make(Kind::Meet, a.ring(), std::nullopt, &a, &b);
}

CombinationExpr CombinationExpr::from_ast(const ExprAst& ast, const RingPtr& ring) {
  switch (ast.kind) {
    case ExprAst::Kind::Zero: return zero(ring);
    case ExprAst::Kind::Unit: return unit(ring);
    case ExprAst::Kind::Atom: return atom(LinearIdeal(ring, ast.generators));
    case ExprAst::Kind::Sum: return sum(from_ast(*ast.left, ring), from_ast(*ast.right, ring));
    case ExprAst::Kind::Product: return product(from_ast(*ast.left, ring), from_ast(*ast.right, ring));
    case ExprAst::Kind::Meet: return meet(from_ast(*ast.left, ring), from_ast(*ast.right, ring));
  }
  throw InternalConsistencyError("unknown expression kind");
}

CombinationExpr CombinationExpr::parse(std::string_view text, const RingPtr& ring) {
  return from_ast(*parse_expression(text, ring), ring);
}

const CombinationExpr& CombinationExpr::left() const {
  if (!node_->left) throw PreconditionError("leaf expression has no children");
  return *node_->left;
}

const CombinationExpr& CombinationExpr::right() const {
  if (!node_->right) throw PreconditionError("leaf expression has no children");
  return *node_->right;
}

const LinearIdeal& CombinationExpr::atom() const {
  if (!node_->atom) throw PreconditionError("expression is not an atom");
  return *node_->atom;
}

namespace {

int precedence(CombinationExpr::Kind k) {
  switch (k) {
    case CombinationExpr::Kind::Sum: return 1;
    case CombinationExpr::Kind::Meet: return 2;
    case CombinationExpr::Kind::Product: return 3;
    default: return 4;
  }
}

}  // namespace

std::string CombinationExpr::to_string() const {
  switch (kind()) {
    case Kind::Zero: return "(0)";
    case Kind::Unit: return "(1)";
    case Kind::Atom: return atom().to_string();
    default: break;
  }
  const int p = precedence(kind());
  auto wrap = [](const std::string& s, bool paren) { return paren ? "(" + s + ")" : s; };
  std::string l = wrap(left().to_string(), precedence(left().kind()) < p);
  std::string r = wrap(right().to_string(), precedence(right().kind()) <= p);
  const char* op = kind() == Kind::Sum ? " + " : kind() == Kind::Meet ? " ^ " : " * ";
  return l + op + r;
}

bool CombinationExpr::operator==(const CombinationExpr& o) const {
  if (kind() != o.kind() || !same_ring(ring(), o.ring())) return false;
  switch (kind()) {
    case Kind::Zero:
    case Kind::Unit: return true;
    case Kind::Atom: return atom().generators() == o.atom().generators();
    default: return left() == o.left() && right() == o.right();
  }
}

const Ideal& CombinationExpr::eval() const {
  std::call_once(node_->once, [&] {
    switch (kind()) {
      case Kind::Zero: node_->value.emplace(Ideal::zero(ring())); break;
      case Kind::Unit: node_->value.emplace(Ideal::unit(ring())); break;
      case Kind::Atom: node_->value.emplace(atom().ideal()); break;
      case Kind::Sum: node_->value.emplace(cmreg::sum(left().eval(), right().eval()).canonical()); break;
      case Kind::Product: node_->value.emplace(cmreg::product(left().eval(), right().eval()).canonical()); break;
      case Kind::Meet: node_->value.emplace(intersect(left().eval(), right().eval())); break;
    }
  });
  return *node_->value;
}

std::vector<LinearIdeal> CombinationExpr::occurrences() const {
  if (kind() == Kind::Atom) return {atom()};
  if (kind() == Kind::Zero || kind() == Kind::Unit) return {};
  auto out = left().occurrences();
  auto r = right().occurrences();
  out.insert(out.end(), r.begin(), r.end());
  return out;
}

std::vector<LinearIdeal> CombinationExpr::distinct_atoms() const {
  std::vector<LinearIdeal> out;
  for (auto& a : occurrences())
    if (std::none_of(out.begin(), out.end(), [&](const LinearIdeal& b) { return b == a; })) out.push_back(a);
  return out;
}

int grammar_degree(const CombinationExpr& e) {
  using K = CombinationExpr::Kind;
  switch (e.kind()) {
    case K::Zero:
    case K::Unit: return 0;
    case K::Atom: return 1;
    case K::Meet:
    case K::Product: return grammar_degree(e.left()) + grammar_degree(e.right());
    case K::Sum: {
      int a = grammar_degree(e.left()), b = grammar_degree(e.right());
      return std::min(a, b) <= 1 ? std::max(a, b) : a + b - 1;
    }
  }
  throw InternalConsistencyError("unknown expression kind");
}

CombinationExpr simplify(const CombinationExpr& e) {
  using K = CombinationExpr::Kind;
  if (e.kind() == K::Zero || e.kind() == K::Unit || e.kind() == K::Atom) return e;
  CombinationExpr l = simplify(e.left());
  CombinationExpr r = simplify(e.right());
  switch (e.kind()) {
    case K::Sum:
      if (l.kind() == K::Unit || r.kind() == K::Unit) return CombinationExpr::unit(e.ring());
      if (l.kind() == K::Zero) return r;
      if (r.kind() == K::Zero) return l;
      return CombinationExpr::sum(l, r);
    default:
      if (l.kind() == K::Zero || r.kind() == K::Zero) return CombinationExpr::zero(e.ring());
      if (l.kind() == K::Unit) return r;
      if (r.kind() == K::Unit) return l;
      return e.kind() == K::Meet ? CombinationExpr::meet(l, r) : CombinationExpr::product(l, r);
  }
}

// ---------------------------------------------------------------- decompose

namespace {

using Pairs = std::vector<std::pair<LinearIdeal, CombinationExpr>>;

CombinationExpr rebuild(CombinationExpr::Kind k, const CombinationExpr& l, const CombinationExpr& r) {
  using K = CombinationExpr::Kind;
  CombinationExpr e = k == K::Sum ? CombinationExpr::sum(l, r) : k == K::Meet ? CombinationExpr::meet(l, r)
                                                                               : CombinationExpr::product(l, r);
  return simplify(e);
}

// Expects a simplified expression: Zero and Unit occur only at the root.
Pairs decompose_rec(const CombinationExpr& e) {
  using K = CombinationExpr::Kind;
  Pairs out;
  if (grammar_degree(e) <= 1) {
    for (auto& a : e.occurrences()) out.emplace_back(a, CombinationExpr::unit(e.ring()));
    return out;
  }
  const CombinationExpr& l = e.left();
  const CombinationExpr& r = e.right();
  const bool absorb_right = e.kind() == K::Sum && grammar_degree(r) <= 1;
  const bool absorb_left = e.kind() == K::Sum && grammar_degree(l) <= 1;
  if (absorb_left) {
    for (auto& a : l.occurrences()) out.emplace_back(a, CombinationExpr::unit(e.ring()));
  } else {
    for (auto& [a, li] : decompose_rec(l)) out.emplace_back(a, rebuild(e.kind(), li, r));
  }
  if (absorb_right) {
    for (auto& a : r.occurrences()) out.emplace_back(a, CombinationExpr::unit(e.ring()));
  } else {
    for (auto& [a, ri] : decompose_rec(r)) out.emplace_back(a, rebuild(e.kind(), l, ri));
  }
  return out;
}

}  // namespace

std::vector<DecompositionPair> decompose(const CombinationExpr& e) {
  const Ideal& J = e.eval();
  if (J.is_zero() || J.is_unit()) return {};
  const int r = grammar_degree(e);
  std::vector<DecompositionPair> out;
  for (auto& [atom, approx] : decompose_rec(simplify(e))) {
    const std::string key = approx.to_string();
    bool dup = std::any_of(out.begin(), out.end(), [&](const DecompositionPair& p) {
      return p.atom == atom && p.approximant.to_string() == key;
    });
    if (dup) continue;
    const Ideal& Ji = approx.eval();
    if (!J.contains(product(atom.ideal(), Ji)) || !Ji.contains(J))
      throw InternalConsistencyError("decomposition inclusions fail for atom " + atom.to_string());
    if (grammar_degree(approx) > r - 1)
      throw InternalConsistencyError("decomposition approximant does not lower the degree");
    out.push_back(DecompositionPair{atom, approx, true});
  }
  return out;
}

SystemsReport verify_r_regularity(const CombinationExpr& e) {
  SystemsReport rep{grammar_degree(e), regularity(e.eval()), false};
  rep.ok = rep.regularity <= Regularity(rep.grammar_degree);
  return rep;
}

ApproximationSystem approximation_system(const CombinationExpr& e) {
  ApproximationSystem sys{PresentedModule::quotient(e.eval()), {}, 1};
  for (auto& p : decompose(e)) sys.approximants.push_back(Approximant{p.approximant.eval().as_submodule(), p.atom.ideal()});
  return sys;
}

NestedSystem nested_system(const CombinationExpr& e) {
  NestedSystem sys{e.eval().as_submodule(), {}, {}};
  for (auto& p : decompose(e)) {
    sys.approximants.push_back(p.approximant.eval().as_submodule());
    sys.ideals.push_back(p.atom.ideal());
  }
  return sys;
}

// ---------------------------------------------------------------- Ass

AssCandidates ass_candidates(const CombinationExpr& e) {
  const Ideal& J = e.eval();
  if (J.is_unit()) throw PreconditionError("the expression evaluates to the unit ideal");
  auto atoms = e.distinct_atoms();
  if (atoms.size() > kMaxAssAtoms) throw PreconditionError("too many distinct atoms for subset enumeration");
  AssCandidates out;
  if (J.is_zero()) {
    // S is a domain: its only associated prime is (0), the empty subset sum.
    Ideal zero = Ideal::zero(e.ring());
    out.candidates.push_back(zero);
    AssVerdict v{zero};
    v.confirmed = true;
    v.witness = FreeModuleElement::from_poly(Polynomial::constant(e.ring(), Scalar(1)));
    out.report.verdicts.push_back(std::move(v));
    out.report.exhausted = true;
    return out;
  }
  const std::size_t k = atoms.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
    Ideal s = Ideal::zero(e.ring());
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (std::size_t{1} << i)) s = sum(s, atoms[i].ideal());
    s = s.canonical();
    if (std::none_of(out.candidates.begin(), out.candidates.end(), [&](const Ideal& c) { return c == s; }))
      out.candidates.push_back(s);
  }
  out.report = ass_containment_check(approximation_system(e), out.candidates);
  return out;
}

// ---------------------------------------------------------------- enumeration

namespace {

std::string ideal_key(const Ideal& i) {
  std::string k;
  for (const auto& g : i.gb_polynomials()) k += g.to_string() + ";";
  return k;
}

void insert_unique(std::vector<Ideal>& level, std::set<std::string>& seen, Ideal i) {
  if (seen.insert(ideal_key(i)).second) level.push_back(std::move(i));
}

}  // namespace

std::vector<Ideal> enumerate_Cr(const std::vector<LinearIdeal>& atoms, int r, const RingPtr& ring) {
  if (r < 0 || r > 3) throw PreconditionError("enumeration is limited to r <= 3");
  if (ring->num_vars() > 3) throw PreconditionError("enumeration is limited to rings with at most 3 variables");
  if (atoms.size() > 3) throw PreconditionError("enumeration is limited to at most 3 atoms");
  for (const auto& a : atoms)
    if (!same_ring(a.ring(), ring)) throw RingMismatch("atom from a different ring");

  std::vector<std::vector<Ideal>> C;
  std::set<std::string> seen0;
  C.emplace_back();
  insert_unique(C[0], seen0, Ideal::zero(ring));
  insert_unique(C[0], seen0, Ideal::unit(ring).canonical());
  if (r == 0) return C[0];

  C.push_back(C[0]);
  std::set<std::string> seen1 = seen0;
  for (std::size_t mask = 1; mask < (std::size_t{1} << atoms.size()); ++mask) {
    Ideal s = Ideal::zero(ring);
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (mask & (std::size_t{1} << i)) s = sum(s, atoms[i].ideal());
    insert_unique(C[1], seen1, s.canonical());
  }

  for (int level = 2; level <= r; ++level) {
    std::vector<Ideal> next;
    std::set<std::string> seen;
    for (int a = 1; a < level; ++a) {
      const int b = level - a;
      for (std::size_t i = 0; i < C[static_cast<std::size_t>(a)].size(); ++i)
        for (std::size_t j = 0; j < C[static_cast<std::size_t>(b)].size(); ++j) {
          const Ideal& x = C[static_cast<std::size_t>(a)][i];
          const Ideal& y = C[static_cast<std::size_t>(b)][j];
          for (const Ideal& base : {intersect(x, y), product(x, y).canonical()})
            for (const Ideal& c : C[1]) insert_unique(next, seen, sum(base, c).canonical());
        }
    }
    for (int a = 2; a + 1 < level + 1; ++a) {
      const int b = level + 1 - a;
      if (b < 2) continue;
      for (const Ideal& x : C[static_cast<std::size_t>(a)])
        for (const Ideal& y : C[static_cast<std::size_t>(b)]) insert_unique(next, seen, sum(x, y).canonical());
    }
    C.push_back(std::move(next));
  }
  // Each level contains the previous one (intersect with S), so the last
  // level is the union.
  return C.back();
}

}  // namespace cmreg
