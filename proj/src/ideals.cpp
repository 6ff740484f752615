#include "cmreg/ideals.hpp"

#include <algorithm>

namespace cmreg {

namespace {

void require_same(const GradedFreeModule& a, const GradedFreeModule& b) {
  if (!same_ring(a.ring(), b.ring())) throw RingMismatch("operands live in different rings");
  if (!(a == b)) throw RingMismatch("operands live in different ambient modules");
}

}  // namespace

// ---------------------------------------------------------------- Submodule

Submodule::Submodule(GradedFreeModule ambient, std::vector<FreeModuleElement> generators)
    : ambient_(std::move(ambient)), cache_(std::make_shared<Cache>()) {
  for (auto& g : generators) {
    if (!(g.ambient() == ambient_)) throw RingMismatch("generator outside the ambient module");
    if (g.is_zero()) continue;
    if (!g.is_homogeneous()) throw PreconditionError("generator is not homogeneous: " + g.to_string());
    generators_.push_back(std::move(g));
  }
}

Submodule Submodule::zero(GradedFreeModule ambient) { return Submodule(std::move(ambient), {}); }

Submodule Submodule::whole(GradedFreeModule ambient) {
  std::vector<FreeModuleElement> gens;
  for (std::size_t i = 0; i < ambient.rank(); ++i) gens.push_back(FreeModuleElement::basis(ambient, i));
  return Submodule(std::move(ambient), std::move(gens));
}

const GroebnerBasis& Submodule::gb() const {
  std::call_once(cache_->once, [&] { cache_->gb.emplace(buchberger(ambient_, generators_)); });
  return *cache_->gb;
}

bool Submodule::contains(const Submodule& other) const {
  require_same(ambient_, other.ambient_);
  const auto& basis = gb();
  return std::all_of(other.generators_.begin(), other.generators_.end(),
                     [&](const FreeModuleElement& g) { return basis.contains(g); });
}

bool Submodule::operator==(const Submodule& other) const {
  require_same(ambient_, other.ambient_);
  const auto& a = gb().raw();
  const auto& b = other.gb().raw();
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return false;
    for (std::size_t k = 0; k < a[i].size(); ++k)
      if (a[i][k].comp != b[i][k].comp || !(a[i][k].mono == b[i][k].mono) || a[i][k].coeff != b[i][k].coeff)
        return false;
  }
  return true;
}

Submodule Submodule::canonical() const {
  Submodule out(ambient_, gb().elements());
  std::call_once(out.cache_->once, [&] { out.cache_->gb.emplace(gb()); });
  return out;
}

// ---------------------------------------------------------------- Ideal

Ideal::Ideal(RingPtr ring, std::vector<Polynomial> generators)
    : module_([&] {
        GradedFreeModule s = GradedFreeModule::rank_one(ring);
        std::vector<FreeModuleElement> gens;
        for (auto& f : generators) {
          if (!same_ring(f.ring(), ring)) throw RingMismatch("generator from a different ring");
          gens.push_back(FreeModuleElement(s, {f}));
        }
        return Submodule(s, std::move(gens));
      }()) {}

Ideal::Ideal(Submodule rank_one) : module_(std::move(rank_one)) {
  if (module_.ambient().rank() != 1 || module_.ambient().shift(0) != 0)
    throw DimensionError("an ideal is a submodule of S with shift 0");
}

Ideal Ideal::unit(RingPtr ring) { return Ideal(ring, {Polynomial::constant(ring, Scalar(1))}); }

Ideal Ideal::maximal(RingPtr ring) {
  std::vector<Polynomial> gens;
  for (std::size_t i = 0; i < ring->num_vars(); ++i) gens.push_back(Polynomial::variable(ring, i));
  return Ideal(ring, std::move(gens));
}

std::vector<Polynomial> Ideal::generators() const {
  std::vector<Polynomial> out;
  for (const auto& g : module_.generators()) out.push_back(g[0]);
  return out;
}

std::vector<Polynomial> Ideal::gb_polynomials() const {
  std::vector<Polynomial> out;
  for (const auto& g : gb().elements()) out.push_back(g[0]);
  return out;
}

std::string Ideal::to_string() const {
  auto gens = generators();
  if (gens.empty()) return "(0)";
  std::string s = "(";
  for (std::size_t i = 0; i < gens.size(); ++i) s += (i ? ", " : "") + gens[i].to_string();
  return s + ")";
}

// ---------------------------------------------------------------- arithmetic

Submodule sum(const Submodule& a, const Submodule& b) {
  require_same(a.ambient(), b.ambient());
  std::vector<FreeModuleElement> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return Submodule(a.ambient(), std::move(gens));
}

Ideal sum(const Ideal& a, const Ideal& b) { return Ideal(sum(a.as_submodule(), b.as_submodule())); }

Submodule product(const Ideal& a, const Submodule& m) {
  if (!same_ring(a.ring(), m.ring())) throw RingMismatch("operands live in different rings");
  std::vector<FreeModuleElement> gens;
  for (const auto& f : a.generators())
    for (const auto& g : m.generators()) gens.push_back(g * f);
  return Submodule(m.ambient(), std::move(gens));
}

Ideal product(const Ideal& a, const Ideal& b) { return Ideal(product(a, b.as_submodule())); }

Ideal power(const Ideal& a, unsigned k) {
  Ideal out = Ideal::unit(a.ring());
  for (unsigned i = 0; i < k; ++i) out = product(out, a);
  return out;
}

namespace {

// S[t] with t appended as the last variable.
RingPtr with_auxiliary(const RingPtr& ring) {
  std::vector<std::string> names = ring->names();
  std::string t = "t";
  while (ring->variable_index(t)) t += "_";
  names.push_back(t);
  return PolynomialRing::create(ring->field(), std::move(names));
}

std::vector<int> identity_map(std::size_t n) {
  std::vector<int> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = static_cast<int>(i);
  return m;
}

}  // namespace

Submodule intersect(const Submodule& a, const Submodule& b) {
  require_same(a.ambient(), b.ambient());
  if (a.is_zero() || b.is_zero()) return Submodule::zero(a.ambient());
  const RingPtr& ring = a.ring();
  const std::size_t n = ring->num_vars();
  RingPtr big = with_auxiliary(ring);
  GradedFreeModule F(big, a.ambient().shifts());
  auto up = identity_map(n);
  auto lift = [&](const FreeModuleElement& v, const Polynomial& factor) {
    std::vector<Polynomial> comps;
    for (const auto& c : v.components()) comps.push_back(map_variables(c, big, up) * factor);
    return FreeModuleElement(F, std::move(comps));
  };
  Polynomial t = Polynomial::variable(big, n);
  Polynomial one_minus_t = Polynomial::constant(big, Scalar(1)) - t;
  std::vector<FreeModuleElement> gens;
  for (const auto& g : a.generators()) gens.push_back(lift(g, t));
  for (const auto& g : b.generators()) gens.push_back(lift(g, one_minus_t));
  auto gb = buchberger(F, gens, ModuleOrder::term_over_position(F.shifts(), true));

  std::vector<int> down = identity_map(n);
  down.push_back(-1);
  std::vector<FreeModuleElement> kept;
  for (const auto& g : gb.raw()) {
    if (g.front().mono[n] != 0) continue;
    std::vector<Polynomial> comps;
    FreeModuleElement e = engine::from_modvec(g, F);
    for (const auto& c : e.components()) comps.push_back(map_variables(c, ring, down));
    kept.push_back(FreeModuleElement(a.ambient(), std::move(comps)));
  }
  return Submodule(a.ambient(), std::move(kept)).canonical();
}

Ideal intersect(const Ideal& a, const Ideal& b) { return Ideal(intersect(a.as_submodule(), b.as_submodule())); }

Submodule colon(const Submodule& a, const Polynomial& b) {
  if (!same_ring(a.ring(), b.ring())) throw RingMismatch("operands live in different rings");
  if (b.is_zero()) throw PreconditionError("colon by the zero ideal");
  if (!b.is_homogeneous()) throw PreconditionError("colon by a non-homogeneous element");
  const GradedFreeModule& F = a.ambient();
  const std::size_t r = F.rank();
  const std::size_t k = a.generators().size();
  if (k == 0) return Submodule::zero(F);
  // Relations among a_1..a_k, b e_1..b e_r; the last r coordinates of each
  // relation form an element v with b v in A.
  std::vector<FreeModuleElement> gens = a.generators();
  std::vector<int> shifts;
  for (const auto& g : gens) shifts.push_back(*element_degree(g));
  for (std::size_t j = 0; j < r; ++j) {
    gens.push_back(FreeModuleElement::basis(F, j) * b);
    shifts.push_back(F.shift(j) + b.degree());
  }
  auto syz = syzygies(F, gens, shifts);
  std::vector<FreeModuleElement> out;
  for (const auto& s : syz.syzygies) {
    std::vector<Polynomial> comps(s.components().begin() + static_cast<std::ptrdiff_t>(k), s.components().end());
    FreeModuleElement v(F, std::move(comps));
    if (!v.is_zero()) out.push_back(std::move(v));
  }
  return Submodule(F, std::move(out)).canonical();
}

Submodule colon(const Submodule& a, const Ideal& b) {
  if (!same_ring(a.ring(), b.ring())) throw RingMismatch("operands live in different rings");
  auto gens = b.gb_polynomials();
  if (gens.empty()) throw PreconditionError("colon by the zero ideal");
  std::optional<Submodule> out;
  for (const auto& g : gens) {
    Submodule c = colon(a, g);
    out = out ? intersect(*out, c) : c;
  }
  return *out;
}

Ideal colon(const Ideal& a, const Ideal& b) { return Ideal(colon(a.as_submodule(), b)); }

Submodule saturate(const Submodule& a, const Ideal& b) {
  Submodule cur = colon(a, b);
  if (cur == a) return a.canonical();
  for (;;) {
    Submodule next = colon(cur, b);
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

Ideal saturate(const Ideal& a, const Ideal& b) { return Ideal(saturate(a.as_submodule(), b)); }

Submodule project(const Submodule& a, const std::vector<std::size_t>& components, const GradedFreeModule& target) {
  if (components.size() != target.rank()) throw DimensionError("projection target rank mismatch");
  std::vector<FreeModuleElement> out;
  for (const auto& g : a.generators()) {
    std::vector<Polynomial> comps;
    for (std::size_t c : components) {
      if (c >= g.rank()) throw DimensionError("projection component out of range");
      comps.push_back(g[c]);
    }
    out.push_back(FreeModuleElement(target, std::move(comps)));
  }
  return Submodule(target, std::move(out));
}

}  // namespace cmreg
