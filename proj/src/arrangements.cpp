#include "cmreg/arrangements.hpp"

#include <algorithm>
#include <json.hpp>

#include "cmreg/linalg.hpp"

namespace cmreg {

namespace {

bool proportional(const Polynomial& f, const Polynomial& g) {
  return rank(Matrix{linear_coefficients(f), linear_coefficients(g)}, f.ring()->field()) < 2;
}

Polynomial random_integer_form(const RingPtr& ring, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coeff(-10, 10);
  std::vector<Scalar> c;
  for (std::size_t i = 0; i < ring->num_vars(); ++i) c.push_back(ring->field().from_int(coeff(rng)));
  return linear_form(ring, c);
}

// Index subsets of {0..n-1} of size k, visited in lexicographic order.
template <class F>
bool all_subsets(std::size_t n, std::size_t k, F&& pred) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    if (!pred(idx)) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

nlohmann::ordered_json reg_json(const Regularity& r) {
  if (!r.is_finite()) return "-inf";
  return r.value();
}

}  // namespace

// ---------------------------------------------------------------- hyperplanes

HyperplaneArrangement::HyperplaneArrangement(RingPtr ring, std::vector<Polynomial> forms)
    : ring_(std::move(ring)), forms_(std::move(forms)), defining_(Polynomial::constant(ring_, Scalar(1))) {
  if (forms_.empty()) throw PreconditionError("an arrangement needs at least one hyperplane");
  for (std::size_t i = 0; i < forms_.size(); ++i) {
    const Polynomial& f = forms_[i];
    if (!same_ring(f.ring(), ring_)) throw RingMismatch("hyperplane from a different ring");
    if (f.is_zero() || f.degree() != 1 || !f.is_homogeneous())
      throw PreconditionError("not a nonzero linear form: " + f.to_string());
    for (std::size_t j = 0; j < i; ++j)
      if (proportional(f, forms_[j]))
        throw PreconditionError("hyperplanes " + forms_[j].to_string() + " and " + f.to_string() + " coincide");
    defining_ = defining_ * f;
  }
}

HyperplaneArrangement HyperplaneArrangement::boolean(const RingPtr& ring) {
  std::vector<Polynomial> forms;
  for (std::size_t i = 0; i < ring->num_vars(); ++i) forms.push_back(Polynomial::variable(ring, i));
  return HyperplaneArrangement(ring, std::move(forms));
}

HyperplaneArrangement HyperplaneArrangement::random(const RingPtr& ring, std::size_t d, std::mt19937_64& rng) {
  std::vector<Polynomial> forms;
  while (forms.size() < d) {
    Polynomial f = random_integer_form(ring, rng);
    if (f.is_zero()) continue;
    if (std::any_of(forms.begin(), forms.end(), [&](const Polynomial& g) { return proportional(f, g); })) continue;
    forms.push_back(std::move(f));
  }
  return HyperplaneArrangement(ring, std::move(forms));
}

HyperplaneArrangement HyperplaneArrangement::parse(std::string_view text, const RingPtr& ring) {
  std::vector<Polynomial> forms;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) forms.push_back(parse_polynomial(line, ring));
    start = end + 1;
  }
  return HyperplaneArrangement(ring, std::move(forms));
}

std::string HyperplaneArrangement::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < forms_.size(); ++i) s += (i ? ", " : "") + forms_[i].to_string();
  return s + "}";
}

FreeModuleElement DerivationModule::euler() const {
  const RingPtr& r = source.ring();
  std::vector<Polynomial> comps;
  for (std::size_t i = 0; i < r->num_vars(); ++i) comps.push_back(Polynomial::variable(r, i));
  return FreeModuleElement(module.ambient(), std::move(comps));
}

DerivationModule derivation_module(const HyperplaneArrangement& a) {
  const RingPtr& r = a.ring();
  const std::size_t n1 = r->num_vars();
  const int d = static_cast<int>(a.size());
  const Field& k = r->field();
  if (!k.is_rational() && k.characteristic() <= static_cast<std::uint32_t>(d))
    throw PreconditionError("derivations over " + k.name() + " need a characteristic above " + std::to_string(d));
  const Polynomial& F = a.defining_polynomial();
  auto S = GradedFreeModule::rank_one(r);
  std::vector<FreeModuleElement> gens;
  std::vector<int> shifts;
  for (std::size_t j = 0; j < n1; ++j) {
    gens.push_back(FreeModuleElement(S, {F.derivative(j)}));
    shifts.push_back(d - 1);
  }
  gens.push_back(FreeModuleElement(S, {F}));
  shifts.push_back(d);
  SyzygyModule syz = syzygies(S, gens, shifts);
  Submodule kernel(syz.ambient, syz.syzygies);
  std::vector<std::size_t> comps(n1);
  for (std::size_t j = 0; j < n1; ++j) comps[j] = j;
  GradedFreeModule target(r, std::vector<int>(n1, 0));
  return DerivationModule{project(kernel, comps, target).canonical(), a};
}

HyperplaneArrangement deletion(const HyperplaneArrangement& a, std::size_t i) {
  if (a.size() < 2) throw PreconditionError("deletion needs at least two hyperplanes");
  if (i >= a.size()) throw DimensionError("hyperplane index out of range");
  auto forms = a.forms();
  forms.erase(forms.begin() + static_cast<std::ptrdiff_t>(i));
  return HyperplaneArrangement(a.ring(), std::move(forms));
}

ArrangementClass classify(const HyperplaneArrangement& a) {
  const Field& k = a.ring()->field();
  Matrix all;
  for (const auto& f : a.forms()) all.push_back(linear_coefficients(f));
  ArrangementClass out;
  out.essential = rank(all, k) == a.ring()->num_vars();
  if (a.size() <= kMaxGeneralityCheck) {
    const std::size_t size = std::min(a.size(), a.ring()->num_vars());
    out.linearly_general = all_subsets(a.size(), size, [&](const std::vector<std::size_t>& idx) {
      Matrix m;
      for (std::size_t i : idx) m.push_back(all[i]);
      return rank(m, k) == size;
    });
  }
  return out;
}

std::string DerivationBoundReport::to_json() const {
  nlohmann::ordered_json j;
  j["d"] = d;
  j["n"] = n;
  j["regularity"] = reg_json(regularity);
  j["bound"] = bound;
  j["euler_member"] = euler_member;
  j["deletions_ok"] = std::all_of(deletions.begin(), deletions.end(), [](const DeletionCheck& c) { return c.ok(); });
  j["essential"] = classification.essential;
  if (classification.linearly_general)
    j["linearly_general"] = *classification.linearly_general;
  else
    j["linearly_general"] = nullptr;
  if (general_position_value)
    j["general_position_value"] = *general_position_value;
  else
    j["general_position_value"] = nullptr;
  j["ok"] = ok;
  return j.dump();
}

DerivationBoundReport verify_derivation_bound(const HyperplaneArrangement& a) {
  if (a.size() < 2) throw PreconditionError("the derivation bound needs at least two hyperplanes");
  DerivationModule D = derivation_module(a);
  DerivationBoundReport rep{a.size(), a.dimension(), regularity(D.module), static_cast<int>(a.size()) - 1,
                            D.contains(D.euler()), {}, classify(a), std::nullopt, false};
  for (std::size_t i = 0; i < a.size(); ++i) {
    DerivationModule Di = derivation_module(deletion(a, i));
    Ideal fi(a.ring(), {a.forms()[i]});
    rep.deletions.push_back(DeletionCheck{i, D.module.contains(product(fi, Di.module)), Di.module.contains(D.module)});
  }
  const int d = static_cast<int>(rep.d), n = static_cast<int>(rep.n);
  if (rep.classification.essential && rep.classification.linearly_general.value_or(false))
    rep.general_position_value = d - n;
  rep.ok = rep.regularity <= Regularity(rep.bound) && rep.euler_member &&
           std::all_of(rep.deletions.begin(), rep.deletions.end(), [](const DeletionCheck& c) { return c.ok(); }) &&
           (!rep.general_position_value || rep.regularity == Regularity(*rep.general_position_value));
  return rep;
}

ConeCheck verify_cone(const HyperplaneArrangement& a) {
  const RingPtr& r = a.ring();
  const std::size_t n1 = r->num_vars();
  std::vector<std::string> names = r->names();
  std::string fresh = "x" + std::to_string(n1);
  while (r->variable_index(fresh)) fresh += "_";
  names.push_back(fresh);
  RingPtr big = PolynomialRing::create(r->field(), names);
  std::vector<int> embed(n1);
  for (std::size_t i = 0; i < n1; ++i) embed[i] = static_cast<int>(i);
  std::vector<Polynomial> forms;
  for (const auto& f : a.forms()) forms.push_back(map_variables(f, big, embed));
  HyperplaneArrangement cone(big, std::move(forms));

  DerivationModule D = derivation_module(a);
  GradedFreeModule target(big, std::vector<int>(n1 + 1, 0));
  std::vector<FreeModuleElement> gens;
  for (const auto& g : D.module.generators()) {
    std::vector<Polynomial> comps;
    for (std::size_t j = 0; j < n1; ++j) comps.push_back(map_variables(g[j], big, embed));
    comps.push_back(Polynomial(big));
    gens.push_back(FreeModuleElement(target, std::move(comps)));
  }
  gens.push_back(FreeModuleElement::basis(target, n1));
  Submodule expected(target, std::move(gens));
  bool ok = derivation_module(cone).module == expected;
  return ConeCheck{std::move(cone), ok};
}

// ---------------------------------------------------------------- subspaces

SubspaceArrangement::SubspaceArrangement(RingPtr ring, std::vector<LinearIdeal> components)
    : ring_(std::move(ring)), components_(std::move(components)) {
  if (components_.empty()) throw PreconditionError("a subspace arrangement needs at least one component");
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (!same_ring(components_[i].ring(), ring_)) throw RingMismatch("component from a different ring");
    for (std::size_t j = 0; j < i; ++j)
      if (components_[i] == components_[j]) throw PreconditionError("repeated component " + components_[i].to_string());
  }
}

SubspaceArrangement SubspaceArrangement::random(const RingPtr& ring, std::size_t count, std::mt19937_64& rng) {
  const std::size_t n1 = ring->num_vars();
  std::uniform_int_distribution<std::size_t> codim(1, n1);
  std::vector<LinearIdeal> comps;
  while (comps.size() < count) {
    const std::size_t c = codim(rng);
    std::vector<Polynomial> forms;
    Matrix m;
    while (forms.size() < c) {
      Polynomial f = random_integer_form(ring, rng);
      Matrix trial = m;
      if (!f.is_zero()) trial.push_back(linear_coefficients(f));
      if (f.is_zero() || rank(trial, ring->field()) != trial.size()) continue;
      m = std::move(trial);
      forms.push_back(std::move(f));
    }
    LinearIdeal li(ring, std::move(forms));
    if (std::none_of(comps.begin(), comps.end(), [&](const LinearIdeal& o) { return o == li; }))
      comps.push_back(std::move(li));
  }
  return SubspaceArrangement(ring, std::move(comps));
}

Ideal vanishing_ideal(const SubspaceArrangement& a) {
  Ideal out = a.components().front().ideal();
  for (std::size_t i = 1; i < a.size(); ++i) out = intersect(out, a.components()[i].ideal());
  return out;
}

}  // namespace cmreg
