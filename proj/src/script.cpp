#include "cmreg/script.hpp"

#include <map>
#include <random>
#include <variant>
#include <json.hpp>

#include "cmreg/arrangements.hpp"
#include "cmreg/invariants.hpp"

namespace cmreg {

using ojson = nlohmann::ordered_json;

namespace {

std::string field_text(const Field& f) { return f.is_rational() ? "Q" : "GF(" + std::to_string(f.characteristic()) + ")"; }

std::string join(const std::vector<std::string>& xs, const char* sep = ", ") {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
  return s;
}

}  // namespace

// ---------------------------------------------------------------- printing

std::string Statement::to_string() const {
  using K = Kind;
  switch (kind) {
    case K::Ring: return "ring " + verb + "[" + join(items) + "];";
    case K::Ideal:
      if (verb == "random product") return "ideal " + name + " = random product " + std::to_string(numbers.at(0)) + ";";
      return "ideal " + name + " = " + items.at(0) + ";";
    case K::Expr: return "expr " + name + " = " + items.at(0) + ";";
    case K::Arrangement:
      if (verb == "boolean") return "arrangement " + name + " = boolean;";
      if (verb == "random") return "arrangement " + name + " = random " + std::to_string(numbers.at(0)) + ";";
      return "arrangement " + name + " = {" + join(items) + "};";
    case K::Subspaces: return "subspaces " + name + " = {" + join(items) + "};";
    case K::Action: return "action " + name + " = {" + items.at(0) + "};";
    case K::Show:
      if (verb == "classes") return "show classes {" + join(items) + "} " + std::to_string(numbers.at(0)) + ";";
      return "show " + verb + " " + name + ";";
    case K::Assert: {
      std::string args = name;
      for (std::size_t i = 0; i + 1 < numbers.size(); ++i) args += ", " + std::to_string(numbers[i]);
      return "assert " + verb + "(" + args + ") " + op + " " + std::to_string(numbers.back()) + ";";
    }
    case K::Verify: return "verify " + verb + " " + name + ";";
  }
  return {};
}

std::string Script::to_string() const {
  std::string s;
  for (const auto& st : statements) s += st.to_string() + "\n";
  return s;
}

// ---------------------------------------------------------------- parsing

namespace {

enum class NameKind { Ideal, Arrangement, Action };

struct NameInfo {
  NameKind kind;
  bool has_expr;
  std::size_t ring;
};

class Parser {
 public:
  Parser(std::string_view text, std::optional<Field> override) : ts_(tokenize(text)), override_(override) {}

  Script run() {
    Script s;
    while (!ts_.at_end()) s.statements.push_back(statement());
    return s;
  }

 private:
  [[noreturn]] void semantic(const Token& at, const std::string& msg) { throw SemanticError(msg, at.line, at.column); }

  const RingPtr& ring(const Token& at) {
    if (!ring_) semantic(at, "no ring declared");
    return ring_;
  }

  void declare(const Token& name, NameKind kind, bool has_expr) {
    if (names_.count(name.text)) semantic(name, "name '" + name.text + "' is already declared");
    names_[name.text] = NameInfo{kind, has_expr, ring_index_};
  }

  const NameInfo& lookup(const Token& name) {
    auto it = names_.find(name.text);
    if (it == names_.end()) semantic(name, "undeclared name '" + name.text + "'");
    return it->second;
  }

  long signed_integer() {
    bool neg = ts_.accept("-");
    long v = ts_.expect_integer();
    return neg ? -v : v;
  }

  // Atom-by-atom linearity check for expression declarations.
  bool linear_atoms(const ExprAst& e) {
    if (e.kind == ExprAst::Kind::Atom) {
      try {
        LinearIdeal(ring_, e.generators);
        return true;
      } catch (const PreconditionError&) {
        return false;
      }
    }
    if (e.kind == ExprAst::Kind::Zero || e.kind == ExprAst::Kind::Unit) return true;
    return linear_atoms(*e.left) && linear_atoms(*e.right);
  }

  std::string linear_atom_text(const Token& at) {
    auto ast = parse_expression(ts_, ring(at));
    if (ast->kind != ExprAst::Kind::Atom) semantic(at, "expected a single linear ideal");
    try {
      return LinearIdeal(ring_, ast->generators).to_string();
    } catch (const PreconditionError& e) {
      semantic(at, e.what());
    }
  }

  Statement statement() {
    const Token kw = ts_.expect_ident();
    Statement st{};
    st.line = kw.line;
    st.column = kw.column;
    using K = Statement::Kind;
    if (kw.text == "ring") {
      st.kind = K::Ring;
      Field f = parse_field(ts_);
      if (override_) f = *override_;
      st.verb = field_text(f);
      ts_.expect("[");
      do {
        Token v = ts_.expect_ident();
        if (std::find(st.items.begin(), st.items.end(), v.text) != st.items.end())
          semantic(v, "variable '" + v.text + "' repeated");
        st.items.push_back(v.text);
      } while (ts_.accept(","));
      ts_.expect("]");
      if (st.items.size() > kMaxVariables) semantic(kw, "too many variables");
      ring_ = PolynomialRing::create(f, st.items);
      ++ring_index_;
    } else if (kw.text == "ideal" || kw.text == "expr") {
      st.kind = kw.text == "ideal" ? K::Ideal : K::Expr;
      Token name = ts_.expect_ident();
      st.name = name.text;
      ts_.expect("=");
      const RingPtr& r = ring(kw);
      if (st.kind == K::Ideal && ts_.at_ident("random")) {
        ts_.next();
        Token what = ts_.expect_ident();
        if (what.text != "product") semantic(what, "unknown random ideal '" + what.text + "'");
        st.verb = "random product";
        const Token at = ts_.peek();
        st.numbers.push_back(ts_.expect_integer());
        if (st.numbers[0] < 1) semantic(at, "a product needs at least one factor");
        declare(name, NameKind::Ideal, true);
      } else {
        const Token at = ts_.peek();
        auto ast = parse_expression(ts_, r);
        bool linear = linear_atoms(*ast);
        if (st.kind == K::Expr && !linear) semantic(at, "expression atoms must be independent linear forms");
        st.verb = "expr";
        st.items.push_back(cmreg::to_string(*ast));
        declare(name, NameKind::Ideal, linear);
      }
    } else if (kw.text == "arrangement") {
      st.kind = K::Arrangement;
      Token name = ts_.expect_ident();
      st.name = name.text;
      ts_.expect("=");
      const RingPtr& r = ring(kw);
      if (ts_.at_ident("boolean")) {
        ts_.next();
        st.verb = "boolean";
      } else if (ts_.at_ident("random")) {
        ts_.next();
        st.verb = "random";
        const Token at = ts_.peek();
        st.numbers.push_back(ts_.expect_integer());
        if (st.numbers[0] < 1) semantic(at, "an arrangement needs at least one hyperplane");
      } else {
        st.verb = "forms";
        const Token at = ts_.expect("{");
        std::vector<Polynomial> forms;
        do forms.push_back(parse_polynomial(ts_, r));
        while (ts_.accept(","));
        ts_.expect("}");
        try {
          HyperplaneArrangement a(r, forms);
          for (const auto& f : a.forms()) st.items.push_back(f.to_string());
        } catch (const PreconditionError& e) {
          semantic(at, e.what());
        }
      }
      declare(name, NameKind::Arrangement, false);
    } else if (kw.text == "subspaces") {
      st.kind = K::Subspaces;
      Token name = ts_.expect_ident();
      st.name = name.text;
      ts_.expect("=");
      const Token at = ts_.expect("{");
      do st.items.push_back(linear_atom_text(ts_.peek()));
      while (ts_.accept(","));
      ts_.expect("}");
      std::vector<LinearIdeal> atoms;
      for (const auto& t : st.items) atoms.emplace_back(ring_, parse_expression(t, ring_)->generators);
      for (std::size_t i = 0; i < atoms.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
          if (atoms[i] == atoms[j]) semantic(at, "repeated subspace " + st.items[i]);
      declare(name, NameKind::Ideal, true);
    } else if (kw.text == "action") {
      st.kind = K::Action;
      Token name = ts_.expect_ident();
      st.name = name.text;
      ts_.expect("=");
      const Token at = ts_.expect("{");
      try {
        st.items.push_back(DiagonalAction::parse(ts_).to_string());
      } catch (const PreconditionError& e) {
        semantic(at, e.what());
      } catch (const DimensionError& e) {
        semantic(at, e.what());
      }
      ts_.expect("}");
      declare(name, NameKind::Action, false);
    } else if (kw.text == "show") {
      st.kind = K::Show;
      Token what = ts_.expect_ident();
      st.verb = what.text;
      if (st.verb == "classes") {
        ring(kw);
        ts_.expect("{");
        if (!ts_.at_punct("}")) {
          do st.items.push_back(linear_atom_text(ts_.peek()));
          while (ts_.accept(","));
        }
        ts_.expect("}");
        const Token at = ts_.peek();
        st.numbers.push_back(ts_.expect_integer());
        if (st.numbers[0] > 3) semantic(at, "class enumeration is limited to r <= 3");
      } else if (st.verb == "betti" || st.verb == "reg" || st.verb == "gens") {
        Token name = ts_.expect_ident();
        lookup(name);
        st.name = name.text;
      } else {
        semantic(what, "unknown show command '" + what.text + "'");
      }
    } else if (kw.text == "assert") {
      st.kind = K::Assert;
      Token fn = ts_.expect_ident();
      st.verb = fn.text;
      if (fn.text != "reg" && fn.text != "rho" && fn.text != "degree" && fn.text != "betti")
        semantic(fn, "unknown assertion function '" + fn.text + "'");
      ts_.expect("(");
      Token name = ts_.expect_ident();
      const NameInfo& info = lookup(name);
      st.name = name.text;
      if (fn.text == "betti") {
        ts_.expect(",");
        st.numbers.push_back(ts_.expect_integer());
        ts_.expect(",");
        st.numbers.push_back(ts_.expect_integer());
      }
      ts_.expect(")");
      if (fn.text == "degree" && !info.has_expr) semantic(name, "'" + name.text + "' is not a combination expression");
      if (fn.text == "rho" && info.kind == NameKind::Arrangement) semantic(name, "rho needs an ideal or an action");
      const Token op = ts_.peek();
      if (!(ts_.at_punct("<=") || ts_.at_punct(">=") || ts_.at_punct("==") || ts_.at_punct("<") || ts_.at_punct(">")))
        ts_.fail("comparison operator");
      st.op = ts_.next().text;
      st.numbers.push_back(signed_integer());
    } else if (kw.text == "verify") {
      st.kind = K::Verify;
      Token what = ts_.expect_ident();
      st.verb = what.text;
      Token name = ts_.expect_ident();
      const NameInfo& info = lookup(name);
      st.name = name.text;
      static const std::map<std::string, NameKind> needs{
          {"hypersurface", NameKind::Ideal}, {"systems", NameKind::Ideal},   {"approx", NameKind::Ideal},
          {"nested", NameKind::Ideal},       {"assprimes", NameKind::Ideal}, {"coapprox", NameKind::Ideal},
          {"derivation_bound", NameKind::Arrangement}, {"rho_chain", NameKind::Action}};
      auto it = needs.find(what.text);
      if (it == needs.end()) semantic(what, "unknown theorem '" + what.text + "'");
      if (it->second != info.kind) semantic(name, "'" + name.text + "' has the wrong kind for verify " + what.text);
      bool expr_needed = what.text == "systems" || what.text == "approx" || what.text == "nested" || what.text == "assprimes";
      if (expr_needed && !info.has_expr) semantic(name, "'" + name.text + "' is not a combination expression");
    } else {
      semantic(kw, "unknown statement '" + kw.text + "'");
    }
    ts_.expect(";");
    return st;
  }

  TokenStream ts_;
  std::optional<Field> override_;
  RingPtr ring_;
  std::size_t ring_index_ = 0;
  std::map<std::string, NameInfo> names_;
};

}  // namespace

Script parse_script(std::string_view text, std::optional<Field> field_override) {
  return Parser(text, field_override).run();
}

// ---------------------------------------------------------------- running

namespace {

struct IdealValue {
  Ideal ideal;
  std::optional<CombinationExpr> expr;
};

struct ArrangementValue {
  HyperplaneArrangement arrangement;
  std::optional<DerivationModule> derivations;
  const DerivationModule& der() {
    if (!derivations) derivations = derivation_module(arrangement);
    return *derivations;
  }
};

struct ActionValue {
  DiagonalAction action;
  std::optional<Ideal> b;
  const Ideal& graph() {
    if (!b) b = graph_ideal(action).canonical();
    return *b;
  }
};

using Value = std::variant<IdealValue, ArrangementValue, ActionValue>;

ojson reg_json(const Regularity& r) {
  if (!r.is_finite()) return "-inf";
  return r.value();
}

CombinationExpr product_expr(const std::vector<LinearIdeal>& atoms) {
  CombinationExpr e = CombinationExpr::atom(atoms.front());
  for (std::size_t i = 1; i < atoms.size(); ++i) e = CombinationExpr::product(e, CombinationExpr::atom(atoms[i]));
  return e;
}

CombinationExpr meet_expr(const std::vector<LinearIdeal>& atoms) {
  CombinationExpr e = CombinationExpr::atom(atoms.front());
  for (std::size_t i = 1; i < atoms.size(); ++i) e = CombinationExpr::meet(e, CombinationExpr::atom(atoms[i]));
  return e;
}

std::vector<std::string> gb_strings(const Ideal& i) {
  std::vector<std::string> out;
  for (const auto& g : i.gb_polynomials()) out.push_back(g.to_string());
  return out;
}

class Runner {
 public:
  Runner(const RunOptions& opt, RunReport& rep) : opt_(opt), rep_(rep), rng_(rep.seed) {}

  void execute(const Statement& st) {
    using K = Statement::Kind;
    switch (st.kind) {
      case K::Ring:
        ring_ = PolynomialRing::create(parse_field(st.verb), st.items);
        return;
      case K::Ideal:
      case K::Expr: return declare_ideal(st);
      case K::Arrangement: return declare_arrangement(st);
      case K::Subspaces: {
        std::vector<LinearIdeal> atoms;
        for (const auto& t : st.items) atoms.emplace_back(ring_, parse_expression(t, ring_)->generators);
        SubspaceArrangement a(ring_, atoms);
        env_.insert_or_assign(st.name, IdealValue{vanishing_ideal(a).canonical(), meet_expr(atoms)});
        return;
      }
      case K::Action:
        env_.insert_or_assign(st.name, ActionValue{DiagonalAction::parse(st.items.at(0)), std::nullopt});
        return;
      case K::Show: return show(st);
      case K::Assert: return assertion(st);
      case K::Verify: return verify(st);
    }
  }

 private:
  void emit(const Statement& st, ojson j, std::string text) {
    rep_.results.push_back(CommandResult{st.line, j.dump(), std::move(text)});
  }

  Value& value(const std::string& name) { return env_.at(name); }

  void declare_ideal(const Statement& st) {
    if (st.verb == "random product") {
      auto atoms = SubspaceArrangement::random(ring_, static_cast<std::size_t>(st.numbers[0]), rng_).components();
      auto e = product_expr(atoms);
      env_.insert_or_assign(st.name, IdealValue{e.eval().canonical(), e});
      return;
    }
    auto ast = parse_expression(st.items.at(0), ring_);
    try {
      auto e = CombinationExpr::from_ast(*ast, ring_);
      env_.insert_or_assign(st.name, IdealValue{e.eval().canonical(), e});
    } catch (const PreconditionError&) {
      env_.insert_or_assign(st.name, IdealValue{evaluate(*ast).canonical(), std::nullopt});
    }
  }

  Ideal evaluate(const ExprAst& e) {
    switch (e.kind) {
      case ExprAst::Kind::Zero: return Ideal::zero(ring_);
      case ExprAst::Kind::Unit: return Ideal::unit(ring_);
      case ExprAst::Kind::Atom: return Ideal(ring_, e.generators);
      case ExprAst::Kind::Sum: return sum(evaluate(*e.left), evaluate(*e.right));
      case ExprAst::Kind::Product: return product(evaluate(*e.left), evaluate(*e.right));
      case ExprAst::Kind::Meet: return intersect(evaluate(*e.left), evaluate(*e.right));
    }
    throw InternalConsistencyError("unknown expression kind");
  }

  void declare_arrangement(const Statement& st) {
    if (st.verb == "boolean") {
      env_.insert_or_assign(st.name, ArrangementValue{HyperplaneArrangement::boolean(ring_), std::nullopt});
    } else if (st.verb == "random") {
      env_.insert_or_assign(
          st.name,
          ArrangementValue{HyperplaneArrangement::random(ring_, static_cast<std::size_t>(st.numbers[0]), rng_), std::nullopt});
    } else {
      std::vector<Polynomial> forms;
      for (const auto& t : st.items) forms.push_back(parse_polynomial(t, ring_));
      env_.insert_or_assign(st.name, ArrangementValue{HyperplaneArrangement(ring_, forms), std::nullopt});
    }
  }

  // The module behind a name: S/I for ideals, D(A) for arrangements and the
  // coordinate ring of B for actions.
  PresentedModule module_of(Value& v) {
    if (auto* i = std::get_if<IdealValue>(&v)) return PresentedModule::quotient(i->ideal);
    if (auto* a = std::get_if<ArrangementValue>(&v)) return PresentedModule::of_submodule(a->der().module);
    return PresentedModule::quotient(std::get<ActionValue>(v).graph());
  }

  // reg(I) for ideals and actions (the ideal of B), reg(D) for arrangements.
  Regularity reg_of(Value& v) {
    if (auto* i = std::get_if<IdealValue>(&v)) return regularity(i->ideal);
    if (auto* a = std::get_if<ArrangementValue>(&v)) return regularity(a->der().module);
    return regularity(std::get<ActionValue>(v).graph());
  }

  std::vector<std::string> gens_of(Value& v) {
    if (auto* i = std::get_if<IdealValue>(&v)) return gb_strings(i->ideal);
    if (auto* a = std::get_if<ArrangementValue>(&v)) {
      std::vector<std::string> out;
      for (const auto& g : a->der().module.generators()) out.push_back(g.to_string());
      return out;
    }
    return gb_strings(std::get<ActionValue>(v).graph());
  }

  void show(const Statement& st) {
    if (st.verb == "classes") return show_classes(st);
    Value& v = value(st.name);
    ojson j;
    j["command"] = "show " + st.verb;
    j["name"] = st.name;
    if (st.verb == "betti") {
      BettiTable b = betti(module_of(v));
      j["betti"] = ojson::parse(b.to_json())["betti"];
      emit(st, j, "betti " + st.name + ":\n" + b.to_text());
    } else if (st.verb == "reg") {
      Regularity r = reg_of(v);
      j["reg"] = reg_json(r);
      emit(st, j, st.name + ": reg = " + r.to_string());
    } else {
      auto g = gens_of(v);
      j["gens"] = g;
      emit(st, j, st.name + " = (" + join(g) + ")");
    }
  }

  void show_classes(const Statement& st) {
    std::vector<LinearIdeal> atoms;
    for (const auto& t : st.items) atoms.emplace_back(ring_, parse_expression(t, ring_)->generators);
    ojson j;
    j["command"] = "show classes";
    j["atoms"] = st.items;
    j["r"] = st.numbers[0];
    j["levels"] = ojson::array();
    std::string text = "classes {" + join(st.items) + "}:";
    std::vector<Ideal> prev;
    for (int r = 0; r <= st.numbers[0]; ++r) {
      auto cur = enumerate_Cr(atoms, r, ring_);
      std::vector<std::string> fresh;
      for (const auto& i : cur)
        if (std::none_of(prev.begin(), prev.end(), [&](const Ideal& p) { return p == i; }))
          fresh.push_back(i.canonical().to_string());
      ojson level;
      level["r"] = r;
      level["size"] = cur.size();
      level["new"] = fresh;
      j["levels"].push_back(level);
      text += "\n  C_" + std::to_string(r) + ": " + std::to_string(cur.size()) + " ideals; new: " + join(fresh);
      prev = std::move(cur);
    }
    emit(st, j, text);
  }

  void assertion(const Statement& st) {
    Value& v = value(st.name);
    Regularity value;
    if (st.verb == "reg") {
      value = reg_of(v);
    } else if (st.verb == "rho") {
      if (auto* a = std::get_if<ActionValue>(&v))
        value = rho(hilbert_ideal(a->graph(), a->action.base_ring()));
      else
        value = rho(std::get<IdealValue>(v).ideal);
    } else if (st.verb == "degree") {
      value = grammar_degree(*std::get<IdealValue>(v).expr);
    } else {
      value = betti(module_of(v)).at(static_cast<int>(st.numbers[0]), static_cast<int>(st.numbers[1]));
    }
    const Regularity bound(static_cast<int>(st.numbers.back()));
    bool passed = st.op == "<=" ? value <= bound : st.op == ">=" ? value >= bound : st.op == "==" ? value == bound
                : st.op == "<"  ? value < bound  : value > bound;
    std::string text = st.to_string();
    text = text.substr(7, text.size() - 8);
    ojson j;
    j["command"] = "assert";
    j["assertion"] = text;
    j["value"] = reg_json(value);
    j["passed"] = passed;
    if (!passed) rep_.exit_code = std::max(rep_.exit_code, 1);
    emit(st, j, "assert " + text + ": " + (passed ? "passed" : "FAILED") + " (value " + value.to_string() + ")");
  }

  [[noreturn]] void violated(const std::string& what) { throw InternalConsistencyError(what); }

  void verify(const Statement& st) {
    Value& v = value(st.name);
    ojson j;
    j["command"] = "verify " + st.verb;
    j["name"] = st.name;
    const std::string head = "verify " + st.verb + " " + st.name + ": ";
    if (st.verb == "derivation_bound") {
      auto rep = verify_derivation_bound(std::get<ArrangementValue>(v).arrangement);
      j["ok"] = rep.ok;
      j["report"] = ojson::parse(rep.to_json());
      emit(st, j, head + (rep.ok ? "ok" : "VIOLATED") + ", reg = " + rep.regularity.to_string() +
                      " <= d-1 = " + std::to_string(rep.bound));
      if (!rep.ok) violated("derivation bound violated for " + st.name);
      return;
    }
    if (st.verb == "rho_chain") {
      auto& a = std::get<ActionValue>(v).action;
      bool two = a.divisors().size() <= 3 &&
                 std::all_of(a.divisors().begin(), a.divisors().end(), [](int d) { return d == 1 || d == 2; });
      auto rep = two ? z2n_certificate(a) : invariant_report(a);
      j["ok"] = rep.chain_ok;
      j["report"] = ojson::parse(rep.to_json());
      emit(st, j, head + (rep.chain_ok ? "ok" : "VIOLATED") + ", rho = " + (rep.rho ? std::to_string(*rep.rho) : "undefined") +
                      ", reg(b) = " + rep.reg_b.to_string() + ", c_G <= " + std::to_string(rep.cg_bound) +
                      ", |G| = " + std::to_string(rep.group_order));
      if (!rep.chain_ok) violated("invariant chain violated for " + st.name);
      return;
    }
    auto& iv = std::get<IdealValue>(v);
    if (st.verb == "hypersurface") {
      PresentedModule M = PresentedModule::quotient(iv.ideal);
      std::optional<Polynomial> z;
      for (int t = 0; t < opt_.trials && !z; ++t) {
        Polynomial c = random_linear_form(ring_of(iv), rng_);
        if (!c.is_zero() && is_filter_regular(c, M)) z = c;
      }
      if (!z) throw GenericityFailure("no filter-regular linear form found in " + std::to_string(opt_.trials) + " trials");
      auto rep = verify_hypersurface_identity(M, *z);
      j["ok"] = rep.equal;
      j["form"] = z->to_string();
      j["regularity"] = reg_json(rep.regularity);
      j["finite_part"] = reg_json(rep.finite_part);
      j["quotient"] = reg_json(rep.quotient);
      j["right_side"] = reg_json(rep.right_side);
      emit(st, j, head + (rep.equal ? "ok" : "VIOLATED") + ", reg = " + rep.regularity.to_string() +
                      " = max{" + rep.finite_part.to_string() + ", " + rep.quotient.to_string() + "}");
      if (!rep.equal) violated("hypersurface identity failed for " + st.name);
      return;
    }
    if (st.verb == "coapprox") {
      const Submodule M = iv.ideal.as_submodule();
      CoApproximationSystem sys{M, {}, {}, 1};
      for (std::size_t i = 0; i < ring_of(iv)->num_vars(); ++i) {
        Ideal xi(ring_of(iv), {Polynomial::variable(ring_of(iv), i)});
        sys.approximants.push_back(product(xi, M));
        sys.ideals.push_back(xi);
      }
      return bound_result(st, j, head, certified_regularity_bound(sys));
    }
    const CombinationExpr& e = *iv.expr;
    if (st.verb == "systems") {
      auto rep = verify_r_regularity(e);
      auto pairs = decompose(e);
      j["ok"] = rep.ok;
      j["grammar_degree"] = rep.grammar_degree;
      j["regularity"] = reg_json(rep.regularity);
      j["decomposition_pairs"] = pairs.size();
      emit(st, j, head + (rep.ok ? "ok" : "VIOLATED") + ", r = " + std::to_string(rep.grammar_degree) +
                      ", reg = " + rep.regularity.to_string());
      if (!rep.ok) violated("r-regularity violated for " + st.name);
    } else if (st.verb == "approx") {
      bound_result(st, j, head, certified_regularity_bound(approximation_system(e)));
    } else if (st.verb == "nested") {
      bound_result(st, j, head, certified_regularity_bound(nested_system(e)));
    } else {
      auto ac = ass_candidates(e);
      auto confirmed = ac.report.confirmed();
      const Ideal m = Ideal::maximal(ring_of(iv));
      bool inside = std::all_of(confirmed.begin(), confirmed.end(), [&](const Ideal& p) {
        return p == m || std::any_of(ac.candidates.begin(), ac.candidates.end(), [&](const Ideal& c) { return c == p; });
      });
      bool ok = inside && ac.report.exhausted;
      std::vector<std::string> names;
      for (const auto& p : confirmed) names.push_back(p.canonical().to_string());
      j["ok"] = ok;
      j["confirmed"] = names;
      j["report"] = ojson::parse(ac.report.to_json());
      emit(st, j, head + (ok ? "ok" : "VIOLATED") + ", associated primes " + join(names));
      if (!ok) violated("associated primes escape the candidates for " + st.name);
    }
  }

  void bound_result(const Statement& st, ojson& j, const std::string& head, const BoundReport& rep) {
    j["ok"] = rep.ok;
    j["report"] = ojson::parse(rep.to_json());
    emit(st, j, head + (rep.ok ? "ok" : "VIOLATED") + ", reg = " + rep.actual_regularity.to_string() +
                    " <= " + rep.certified_bound.to_string());
    if (!rep.ok) violated("certified bound violated for " + st.name);
  }

  static const RingPtr& ring_of(const IdealValue& v) { return v.ideal.ring(); }

  const RunOptions& opt_;
  RunReport& rep_;
  std::mt19937_64 rng_;
  RingPtr ring_;
  std::map<std::string, Value> env_;
};

void record_error(RunReport& rep, int code, std::string kind, const std::string& msg, int line, int col) {
  rep.exit_code = code;
  rep.error_kind = std::move(kind);
  rep.error_message = msg;
  rep.error_line = line;
  rep.error_column = col;
}

std::uint64_t pick_seed(const RunOptions& o) {
  if (o.seed) return *o.seed;
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

}  // namespace

RunReport run_script(const Script& script, const RunOptions& options) {
  RunReport rep;
  rep.seed = pick_seed(options);
  Runner runner(options, rep);
  for (const auto& st : script.statements) {
    try {
      runner.execute(st);
    } catch (const InternalConsistencyError& e) {
      record_error(rep, 3, "internal", e.what(), st.line, st.column);
      break;
    } catch (const Error& e) {
      record_error(rep, 2, "module", e.what(), st.line, st.column);
      break;
    }
  }
  return rep;
}

RunReport run_script_text(std::string_view text, const RunOptions& options, std::optional<Field> field_override) {
  try {
    return run_script(parse_script(text, field_override), options);
  } catch (const SyntaxError& e) {
    RunReport rep;
    rep.seed = pick_seed(options);
    record_error(rep, 2, "syntax", e.what(), e.line(), e.column());
    return rep;
  } catch (const SemanticError& e) {
    RunReport rep;
    rep.seed = pick_seed(options);
    record_error(rep, 2, "semantic", e.what(), e.line(), e.column());
    return rep;
  }
}

std::string RunReport::to_json() const {
  ojson j;
  j["seed"] = seed;
  j["results"] = ojson::array();
  for (const auto& r : results) j["results"].push_back(ojson::parse(r.json));
  j["exit_code"] = exit_code;
  j["status"] = exit_code == 0 ? "ok" : exit_code == 1 ? "assertion failed" : "error";
  if (!error_kind.empty()) {
    ojson e;
    e["kind"] = error_kind;
    e["message"] = error_message;
    e["line"] = error_line;
    e["column"] = error_column;
    j["error"] = e;
  }
  return j.dump(2) + "\n";
}

std::string RunReport::to_text() const {
  std::string s;
  for (const auto& r : results) s += r.text + (r.text.empty() || r.text.back() != '\n' ? "\n" : "");
  if (!error_kind.empty()) s += error_kind + " error: " + error_message + "\n";
  s += "status: " + std::string(exit_code == 0 ? "ok" : exit_code == 1 ? "assertion failed" : "error") +
       " (seed " + std::to_string(seed) + ")\n";
  return s;
}

}  // namespace cmreg
