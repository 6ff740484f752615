#include "cmreg/regularity_lab.hpp"

#include <json.hpp>

#include "cmreg/linalg.hpp"

namespace cmreg {

Polynomial random_linear_form(const RingPtr& ring, std::mt19937_64& rng) {
  const Field& f = ring->field();
  std::vector<Scalar> coeffs;
  if (f.is_rational()) {
    std::uniform_int_distribution<long> d(-100, 100);
    for (std::size_t i = 0; i < ring->num_vars(); ++i) coeffs.push_back(f.from_int(d(rng)));
  } else {
    std::uniform_int_distribution<long> d(0, static_cast<long>(f.characteristic()) - 1);
    for (std::size_t i = 0; i < ring->num_vars(); ++i) coeffs.push_back(f.from_int(d(rng)));
  }
  return linear_form(ring, coeffs);
}

namespace {

Submodule saturated_relations(const PresentedModule& m) {
  return saturate(m.relations(), Ideal::maximal(m.ring()));
}

nlohmann::ordered_json reg_json(const Regularity& r) {
  if (r.is_finite()) return r.value();
  return "-inf";
}

Regularity max_generator_degree(const PresentedModule& m) {
  Regularity top = Regularity::minus_infinity();
  const BettiTable table = betti(m);
  for (const auto& [k, v] : table.entries())
    if (k.first == 0) top = max(top, Regularity(k.second));
  return top;
}

Regularity max_of(const std::vector<Regularity>& v) {
  Regularity r = Regularity::minus_infinity();
  for (const auto& x : v) r = max(r, x);
  return r;
}

std::string name_of(std::size_t i) { return std::to_string(i + 1); }

}  // namespace

PresentedModule finite_part(const PresentedModule& m) {
  return PresentedModule::subquotient(saturated_relations(m), m.relations(), m.label());
}

PresentedModule without_finite_part(const PresentedModule& m) {
  return PresentedModule(m.target(), saturated_relations(m), m.label());
}

bool is_filter_regular(const Polynomial& z, const PresentedModule& m) {
  if (!same_ring(z.ring(), m.ring())) throw RingMismatch("form and module live in different rings");
  if (z.is_zero()) throw PreconditionError("the zero form is never filter-regular");
  if (!z.is_homogeneous() || z.degree() < 1) throw PreconditionError("filter-regular test needs a homogeneous form of positive degree");
  Submodule sat = saturated_relations(m);
  return colon(sat, z) == sat;
}

FilterRegularSequence find_filter_regular_sequence(const std::vector<PresentedModule>& modules, int trials,
                                                   std::mt19937_64& rng) {
  if (modules.empty()) throw PreconditionError("need at least one module");
  const RingPtr& ring = modules.front().ring();
  for (const auto& m : modules)
    if (!same_ring(m.ring(), ring)) throw RingMismatch("modules live in different rings");
  FilterRegularSequence seq;
  Matrix coeffs;
  const std::size_t n = ring->num_vars();
  for (std::size_t pos = 0; pos < n; ++pos) {
    bool found = false;
    for (int attempt = 1; attempt <= trials && !found; ++attempt) {
      Polynomial z = random_linear_form(ring, rng);
      Matrix trial = coeffs;
      trial.push_back(linear_coefficients(z));
      if (rank(trial, ring->field()) != pos + 1) continue;
      Ideal prefix(ring, seq.forms);
      bool regular = true;
      for (const auto& m : modules) {
        PresentedModule q = seq.forms.empty() ? m : m.modulo(prefix);
        if (!is_filter_regular(z, q)) {
          regular = false;
          break;
        }
      }
      if (!regular) continue;
      seq.forms.push_back(z);
      seq.attempts.push_back(attempt);
      coeffs = std::move(trial);
      found = true;
    }
    if (!found) throw GenericityFailure("no filter-regular linear form found in " + std::to_string(trials) + " trials");
  }
  return seq;
}

HypersurfaceReport verify_hypersurface_identity(const PresentedModule& m, const Polynomial& x) {
  if (!is_filter_regular(x, m)) throw PreconditionError("form is not filter-regular on the module");
  HypersurfaceReport rep;
  rep.regularity = regularity(m);
  rep.finite_part = regularity(finite_part(m));
  rep.quotient = regularity(m.modulo(Ideal(m.ring(), {x})));
  rep.degree = x.degree();
  rep.right_side = max(rep.finite_part, rep.quotient - rep.degree + 1);
  rep.equal = rep.regularity == rep.right_side;
  return rep;
}

namespace {

bool power_of_m_inside(const Ideal& sum_ideal, int t) {
  for (const auto& mono : monomials_of_degree(sum_ideal.ring()->num_vars(), t))
    if (!sum_ideal.contains(Polynomial::monomial(sum_ideal.ring(), mono, Scalar(1)))) return false;
  return true;
}

Ideal sum_of(const RingPtr& ring, const std::vector<Ideal>& ideals) {
  Ideal out = Ideal::zero(ring);
  for (const auto& i : ideals) out = sum(out, i);
  return out;
}

}  // namespace

SystemCheck verify_approximation_system(const ApproximationSystem& sys) {
  SystemCheck out;
  out.degree = sys.degree;
  auto fail = [&](std::string why) {
    out.ok = false;
    out.violation = std::move(why);
    return out;
  };
  if (sys.degree < 1) return fail("degree must be positive");
  const Submodule& N = sys.base.relations();
  std::vector<Ideal> ideals;
  for (std::size_t i = 0; i < sys.approximants.size(); ++i) {
    const auto& a = sys.approximants[i];
    if (!(a.relations.ambient() == N.ambient())) return fail("approximant " + name_of(i) + " has a different ambient module");
    if (a.annihilator.is_unit()) return fail("I_" + name_of(i) + " is not proper");
    if (!a.relations.contains(N)) return fail("N not inside N_" + name_of(i));
    if (!N.contains(product(a.annihilator, a.relations))) return fail("I_" + name_of(i) + " N_" + name_of(i) + " not inside N");
    ideals.push_back(a.annihilator);
  }
  if (!power_of_m_inside(sum_of(sys.base.ring(), ideals), sys.degree))
    return fail("m^" + std::to_string(sys.degree) + " not inside the sum of the I_i");
  return out;
}

std::string BoundReport::to_json() const {
  nlohmann::ordered_json j;
  j["theorem"] = theorem;
  j["hypotheses"] = hypotheses;
  j["certified_bound"] = reg_json(certified_bound);
  j["actual_regularity"] = reg_json(actual_regularity);
  j["ok"] = ok;
  return j.dump();
}

namespace {

std::vector<Regularity> approximant_regs(const ApproximationSystem& sys, std::optional<std::vector<Regularity>> given) {
  if (given) {
    if (given->size() != sys.approximants.size()) throw DimensionError("one regularity per approximant required");
    return *given;
  }
  std::vector<Regularity> out;
  for (const auto& a : sys.approximants) out.push_back(regularity(PresentedModule(sys.base.target(), a.relations)));
  return out;
}

void require_valid(const ApproximationSystem& sys) {
  auto check = verify_approximation_system(sys);
  if (!check.ok) throw PreconditionError("invalid approximation system: " + check.violation);
}

void finish(BoundReport& rep, Regularity actual) {
  rep.actual_regularity = actual;
  rep.ok = actual <= rep.certified_bound;
}

}  // namespace

BoundReport certified_regularity_bound(const ApproximationSystem& sys,
                                       std::optional<std::vector<Regularity>> approximant_regularities,
                                       std::optional<int> target) {
  require_valid(sys);
  const int slack = (sys.degree - 1) * static_cast<int>(sys.base.ring()->num_vars());
  auto regs = approximant_regs(sys, std::move(approximant_regularities));
  Regularity gen = max_generator_degree(sys.base);
  Regularity need = max(gen, max_of(regs) + 1) + slack;
  if (target && need > Regularity(*target))
    throw NoBound("target " + std::to_string(*target) + " below the smallest certifiable bound " + need.to_string());

  BoundReport rep;
  rep.theorem = "regapprox";
  rep.certified_bound = target ? Regularity(*target) : need;
  rep.hypotheses.push_back("approximation system of degree " + std::to_string(sys.degree));
  rep.hypotheses.push_back("generated in degree <= " + gen.to_string());
  for (std::size_t i = 0; i < regs.size(); ++i) rep.hypotheses.push_back("reg(M_" + name_of(i) + ") = " + regs[i].to_string());
  finish(rep, regularity(sys.base));
  return rep;
}

BoundReport certified_regularity_bound_step(const ApproximationSystem& sys, const Polynomial& y) {
  require_valid(sys);
  if (!is_filter_regular(y, sys.base)) throw PreconditionError("y is not filter-regular on M");
  std::vector<Regularity> regs;
  for (std::size_t i = 0; i < sys.approximants.size(); ++i) {
    PresentedModule mi(sys.base.target(), sys.approximants[i].relations);
    if (!is_filter_regular(y, mi)) throw PreconditionError("y is not filter-regular on M_" + name_of(i));
    regs.push_back(regularity(mi));
  }
  Regularity quotient = regularity(sys.base.modulo(Ideal(y.ring(), {y})));
  BoundReport rep;
  rep.theorem = "m^k approx";
  rep.certified_bound = max(max_of(regs) + sys.degree, quotient + (sys.degree - 1));
  rep.hypotheses.push_back("approximation system of degree " + std::to_string(sys.degree));
  rep.hypotheses.push_back("y filter-regular on M and every M_i");
  for (std::size_t i = 0; i < regs.size(); ++i) rep.hypotheses.push_back("reg(M_" + name_of(i) + ") = " + regs[i].to_string());
  rep.hypotheses.push_back("reg(M/yM) = " + quotient.to_string());
  finish(rep, regularity(sys.base));
  return rep;
}

BoundReport certified_regularity_bound(const NestedSystem& sys,
                                       std::optional<std::vector<Regularity>> approximant_regularities) {
  if (sys.approximants.size() != sys.ideals.size()) throw DimensionError("one ideal per approximant required");
  const RingPtr& ring = sys.module.ring();
  BoundReport rep;
  rep.theorem = "Cor M";
  for (std::size_t i = 0; i < sys.approximants.size(); ++i) {
    const Submodule& mi = sys.approximants[i];
    if (!mi.contains(sys.module)) throw PreconditionError("M not inside M_" + name_of(i));
    if (!sys.module.contains(product(sys.ideals[i], mi)))
      throw PreconditionError("I_" + name_of(i) + " M_" + name_of(i) + " not inside M");
  }
  if (!(sum_of(ring, sys.ideals) == Ideal::maximal(ring))) throw PreconditionError("the I_i do not sum to m");
  std::vector<Regularity> regs;
  if (approximant_regularities) {
    if (approximant_regularities->size() != sys.approximants.size())
      throw DimensionError("one regularity per approximant required");
    regs = *approximant_regularities;
  } else {
    for (const auto& mi : sys.approximants) regs.push_back(regularity(mi));
  }
  rep.certified_bound = max(Regularity(2), max_of(regs) + 1);
  rep.hypotheses.push_back("I_i M_i inside M inside M_i");
  rep.hypotheses.push_back("sum of I_i = m");
  for (std::size_t i = 0; i < regs.size(); ++i) rep.hypotheses.push_back("reg(M_" + name_of(i) + ") = " + regs[i].to_string());
  finish(rep, regularity(sys.module));
  return rep;
}

BoundReport certified_regularity_bound(const CoApproximationSystem& sys,
                                       std::optional<std::vector<Regularity>> approximant_regularities) {
  if (sys.approximants.size() != sys.ideals.size()) throw DimensionError("one ideal per approximant required");
  if (sys.degree < 1) throw PreconditionError("degree must be positive");
  const RingPtr& ring = sys.module.ring();
  for (std::size_t i = 0; i < sys.approximants.size(); ++i) {
    const Submodule& mi = sys.approximants[i];
    if (!sys.module.contains(mi)) throw PreconditionError("M_" + name_of(i) + " not inside M");
    if (!mi.contains(product(sys.ideals[i], sys.module)))
      throw PreconditionError("I_" + name_of(i) + " M not inside M_" + name_of(i));
  }
  if (!power_of_m_inside(sum_of(ring, sys.ideals), sys.degree))
    throw PreconditionError("m^" + std::to_string(sys.degree) + " not inside the sum of the I_i");
  std::vector<Regularity> regs;
  if (approximant_regularities) {
    if (approximant_regularities->size() != sys.approximants.size())
      throw DimensionError("one regularity per approximant required");
    regs = *approximant_regularities;
  } else {
    for (const auto& mi : sys.approximants) regs.push_back(regularity(mi));
  }
  const int n = static_cast<int>(ring->num_vars()) - 1;
  BoundReport rep;
  rep.theorem = "coapprox";
  rep.certified_bound = max_of(regs) + (sys.degree - 1) * n;
  rep.hypotheses.push_back("I_i M inside M_i inside M");
  rep.hypotheses.push_back("m^" + std::to_string(sys.degree) + " inside the sum of I_i");
  for (std::size_t i = 0; i < regs.size(); ++i) rep.hypotheses.push_back("reg(M_" + name_of(i) + ") = " + regs[i].to_string());
  finish(rep, regularity(sys.module));
  return rep;
}

Ideal annihilator(const Submodule& n, const FreeModuleElement& f) {
  if (!(f.ambient() == n.ambient())) throw RingMismatch("element outside the ambient module");
  if (f.is_zero()) return Ideal::unit(n.ring());
  std::vector<FreeModuleElement> gens{f};
  gens.insert(gens.end(), n.generators().begin(), n.generators().end());
  std::vector<int> shifts;
  for (const auto& g : gens) shifts.push_back(*element_degree(g));
  auto syz = syzygies(n.ambient(), gens, shifts);
  std::vector<Polynomial> out;
  for (const auto& s : syz.syzygies)
    if (!s[0].is_zero()) out.push_back(s[0]);
  return Ideal(n.ring(), std::move(out)).canonical();
}

namespace {

std::optional<FreeModuleElement> find_witness(const Submodule& n, const Ideal& p) {
  Submodule c = colon(n, p);
  for (const auto& f : c.generators()) {
    if (n.contains(f)) continue;
    if (annihilator(n, f) == p) return f;
  }
  return std::nullopt;
}

}  // namespace

std::vector<Ideal> AssReport::confirmed() const {
  std::vector<Ideal> out;
  for (const auto& v : verdicts)
    if (v.confirmed) out.push_back(v.prime);
  return out;
}

std::string AssReport::to_json() const {
  nlohmann::ordered_json j;
  j["candidates"] = nlohmann::ordered_json::array();
  for (const auto& v : verdicts) {
    nlohmann::ordered_json c;
    c["prime"] = v.prime.to_string();
    c["verdict"] = v.confirmed ? "confirmed" : "no-witness-found";
    if (v.witness) c["witness"] = v.witness->to_string();
    c["explained_by_approximants"] = v.explained_by_approximants;
    j["candidates"].push_back(c);
  }
  j["exhausted"] = exhausted;
  return j.dump();
}

namespace {

AssReport ass_check(const PresentedModule& m, const std::vector<Ideal>& candidates,
                    const std::vector<Submodule>& approximants) {
  const RingPtr& ring = m.ring();
  const Ideal maximal = Ideal::maximal(ring);
  std::vector<Ideal> tests;
  for (const auto& p : candidates) {
    if (!same_ring(p.ring(), ring)) throw RingMismatch("candidate prime from a different ring");
    for (const auto& g : p.generators())
      if (g.degree() != 1) throw PreconditionError("candidate primes must be generated by linear forms");
    bool dup = false;
    for (const auto& q : tests) dup = dup || q == p;
    if (!dup && !p.is_unit() && !p.is_zero()) tests.push_back(p.canonical());
  }
  bool has_m = false;
  for (const auto& q : tests) has_m = has_m || q == maximal;
  if (!has_m) tests.push_back(maximal.canonical());

  AssReport rep;
  const Submodule& N = m.relations();
  for (const auto& p : tests) {
    AssVerdict v{p};
    v.maximal = p == maximal;
    v.witness = find_witness(N, p);
    v.confirmed = v.witness.has_value();
    v.explained_by_approximants = v.maximal;
    for (const auto& a : approximants)
      if (!v.explained_by_approximants && v.confirmed) v.explained_by_approximants = find_witness(a, p).has_value();
    rep.verdicts.push_back(std::move(v));
  }
  Submodule cur = N;
  for (const auto& v : rep.verdicts)
    if (v.confirmed && !v.maximal) cur = saturate(cur, v.prime);
  cur = saturate(cur, maximal);
  rep.exhausted = cur.is_everything();
  return rep;
}

}  // namespace

AssReport ass_containment_check(const PresentedModule& m, const std::vector<Ideal>& candidates) {
  return ass_check(m, candidates, {});
}

AssReport ass_containment_check(const ApproximationSystem& sys, const std::vector<Ideal>& candidates) {
  std::vector<Submodule> approximants;
  for (const auto& a : sys.approximants) approximants.push_back(a.relations);
  return ass_check(sys.base, candidates, approximants);
}

}  // namespace cmreg
