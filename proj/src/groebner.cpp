#include "cmreg/groebner.hpp"

#include <algorithm>
#include <tuple>

namespace cmreg {
namespace engine {

ModVec to_modvec(const FreeModuleElement& v, const ModuleOrder& order) {
  ModVec out;
  for (std::size_t j = 0; j < v.rank(); ++j)
    for (const auto& t : v[j].terms()) out.push_back(ModTerm{t.coeff, t.mono, static_cast<int>(j)});
  std::sort(out.begin(), out.end(), [&](const ModTerm& a, const ModTerm& b) {
    return order.compare(a.mono, a.comp, b.mono, b.comp) > 0;
  });
  return out;
}

FreeModuleElement from_modvec(const ModVec& v, const GradedFreeModule& ambient) {
  std::vector<std::vector<Term>> parts(ambient.rank());
  for (const auto& t : v) {
    if (t.comp < 0 || static_cast<std::size_t>(t.comp) >= ambient.rank())
      throw DimensionError("term component outside the ambient module");
    parts[static_cast<std::size_t>(t.comp)].push_back(Term{t.coeff, t.mono});
  }
  std::vector<Polynomial> comps;
  comps.reserve(parts.size());
  for (auto& p : parts) comps.emplace_back(ambient.ring(), std::move(p));
  return FreeModuleElement(ambient, std::move(comps));
}

void normalize(ModVec& v, const ModuleOrder& order, const Field& field) {
  std::sort(v.begin(), v.end(), [&](const ModTerm& a, const ModTerm& b) {
    return order.compare(a.mono, a.comp, b.mono, b.comp) > 0;
  });
  ModVec out;
  out.reserve(v.size());
  for (auto& t : v) {
    if (!out.empty() && out.back().comp == t.comp && out.back().mono == t.mono) {
      out.back().coeff = field.add(out.back().coeff, t.coeff);
      if (Field::is_zero(out.back().coeff)) out.pop_back();
    } else if (!Field::is_zero(t.coeff)) {
      out.push_back(std::move(t));
    }
  }
  v = std::move(out);
}

void make_monic(ModVec& v, const Field& field) {
  if (v.empty() || v.front().coeff == 1) return;
  Scalar inv = field.inv(v.front().coeff);
  for (auto& t : v) t.coeff = field.mul(t.coeff, inv);
}

namespace {

// Returns p[pos..] - c * m * g, merged in order.
ModVec sub_mul(const ModVec& p, std::size_t pos, const Scalar& c, const Monomial& m, const ModVec& g,
               const ModuleOrder& order, const Field& field) {
  ModVec out;
  out.reserve(p.size() - pos + g.size());
  std::size_t i = pos, j = 0;
  Monomial gm;
  bool have_gm = false;
  while (i < p.size() || j < g.size()) {
    if (j == g.size()) {
      out.push_back(p[i++]);
      continue;
    }
    if (!have_gm) {
      gm = g[j].mono * m;
      have_gm = true;
    }
    int cmp = i == p.size() ? -1 : order.compare(p[i].mono, p[i].comp, gm, g[j].comp);
    if (cmp > 0) {
      out.push_back(p[i++]);
    } else if (cmp < 0) {
      out.push_back(ModTerm{field.neg(field.mul(c, g[j].coeff)), gm, g[j].comp});
      ++j;
      have_gm = false;
    } else {
      Scalar s = p[i].coeff;
      field.sub_mul(s, c, g[j].coeff);
      if (!Field::is_zero(s)) out.push_back(ModTerm{std::move(s), gm, g[j].comp});
      ++i, ++j;
      have_gm = false;
    }
  }
  return out;
}

int find_reducer(const ModTerm& t, std::span<const ModVec> basis) {
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const ModVec& g = basis[k];
    if (g.empty()) continue;
    if (g.front().comp == t.comp && g.front().mono.divides(t.mono)) return static_cast<int>(k);
  }
  return -1;
}

template <class OnStep>
ModVec reduce_impl(ModVec p, std::span<const ModVec> basis, const ModuleOrder& order, const Field& field,
                   OnStep&& on_step) {
  ModVec rem;
  std::size_t pos = 0;
  while (pos < p.size()) {
    int k = find_reducer(p[pos], basis);
    if (k < 0) {
      rem.push_back(std::move(p[pos]));
      ++pos;
      continue;
    }
    const ModVec& g = basis[static_cast<std::size_t>(k)];
    Scalar c = field.div(p[pos].coeff, g.front().coeff);
    Monomial m = p[pos].mono / g.front().mono;
    on_step(c, m, k);
    p = sub_mul(p, pos, c, m, g, order, field);
    pos = 0;
  }
  return rem;
}

}  // namespace

ModVec normal_form(ModVec v, std::span<const ModVec> basis, const ModuleOrder& order, const Field& field) {
  return reduce_impl(std::move(v), basis, order, field, [](const Scalar&, const Monomial&, int) {});
}

ModVec normal_form_tracked(ModVec v, std::span<const ModVec> basis, const ModuleOrder& order,
                           const Field& field, std::vector<QuotientTerm>& quotients) {
  return reduce_impl(std::move(v), basis, order, field, [&](const Scalar& c, const Monomial& m, int k) {
    quotients.push_back(QuotientTerm{c, m, k});
  });
}

ModVec s_vector(const ModVec& a, const ModVec& b, const ModuleOrder& order, const Field& field) {
  Monomial l = lcm(a.front().mono, b.front().mono);
  Monomial ma = l / a.front().mono;
  Scalar ca = field.inv(a.front().coeff);
  ModVec p;
  p.reserve(a.size());
  for (const auto& t : a) p.push_back(ModTerm{field.mul(t.coeff, ca), t.mono * ma, t.comp});
  return sub_mul(p, 0, field.inv(b.front().coeff), l / b.front().mono, b, order, field);
}

namespace {

struct Pair {
  int i;
  int j;
  Monomial lcm;
  int comp;
  int degree;
};

class Buchberger {
 public:
  Buchberger(const ModuleOrder& order, const Field& field)
      : order_(order), field_(field), ideal_case_(order.rank() == 1) {}

  std::vector<ModVec> run(std::vector<ModVec> gens) {
    for (auto& g : gens) normalize(g, order_, field_);
    std::erase_if(gens, [](const ModVec& g) { return g.empty(); });
    std::stable_sort(gens.begin(), gens.end(), [&](const ModVec& a, const ModVec& b) {
      return order_.degree(a.front().mono, a.front().comp) < order_.degree(b.front().mono, b.front().comp);
    });
    for (auto& g : gens) add(normal_form(std::move(g), reducers_, order_, field_));
    while (!pairs_.empty()) {
      auto best = std::min_element(pairs_.begin(), pairs_.end(), [&](const Pair& a, const Pair& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        int c = order_.compare(a.lcm, a.comp, b.lcm, b.comp);
        if (c != 0) return c < 0;
        return std::tie(a.j, a.i) < std::tie(b.j, b.i);
      });
      Pair p = *best;
      *best = pairs_.back();
      pairs_.pop_back();
      ModVec s = s_vector(polys_[static_cast<std::size_t>(p.i)], polys_[static_cast<std::size_t>(p.j)], order_, field_);
      add(normal_form(std::move(s), reducers_, order_, field_));
    }
    return finish();
  }

 private:
  void add(ModVec h) {
    if (h.empty()) return;
    make_monic(h, field_);
    const int t = static_cast<int>(polys_.size());
    const ModTerm lead = h.front();

    struct Candidate {
      int i;
      Monomial lcm;
      bool coprime;
    };
    std::vector<Candidate> cands;
    for (std::size_t i = 0; i < polys_.size(); ++i) {
      if (!active_[i]) continue;
      const ModTerm& li = polys_[i].front();
      if (li.comp != lead.comp) continue;
      cands.push_back({static_cast<int>(i), lcm(li.mono, lead.mono), ideal_case_ && coprime(li.mono, lead.mono)});
    }
    std::vector<Candidate> kept;
    for (std::size_t k = 0; k < cands.size(); ++k) {
      const Candidate& c = cands[k];
      bool keep = c.coprime;
      if (!keep) {
        keep = true;
        for (std::size_t m = k + 1; m < cands.size() && keep; ++m)
          if (cands[m].lcm.divides(c.lcm)) keep = false;
        for (const auto& d : kept)
          if (keep && d.lcm.divides(c.lcm)) keep = false;
      }
      if (keep) kept.push_back(c);
    }

    std::erase_if(pairs_, [&](const Pair& p) {
      if (p.comp != lead.comp || !lead.mono.divides(p.lcm)) return false;
      const Monomial& li = polys_[static_cast<std::size_t>(p.i)].front().mono;
      const Monomial& lj = polys_[static_cast<std::size_t>(p.j)].front().mono;
      return !(lcm(li, lead.mono) == p.lcm) && !(lcm(lj, lead.mono) == p.lcm);
    });
    for (const auto& c : kept) {
      if (c.coprime) continue;
      pairs_.push_back(Pair{c.i, t, c.lcm, lead.comp, order_.degree(c.lcm, lead.comp)});
    }

    for (std::size_t i = 0; i < polys_.size(); ++i) {
      if (!active_[i]) continue;
      const ModTerm& li = polys_[i].front();
      if (li.comp == lead.comp && lead.mono.divides(li.mono)) active_[i] = false;
    }
    polys_.push_back(std::move(h));
    active_.push_back(true);
    rebuild_reducers();
  }

  void rebuild_reducers() {
    reducers_.clear();
    for (std::size_t i = 0; i < polys_.size(); ++i)
      if (active_[i]) reducers_.push_back(polys_[i]);
  }

  std::vector<ModVec> finish() {
    std::vector<ModVec> basis = reducers_;
    std::vector<ModVec> out;
    out.reserve(basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) {
      ModVec tail(basis[k].begin() + 1, basis[k].end());
      ModVec reduced = normal_form(std::move(tail), basis, order_, field_);
      ModVec g;
      g.reserve(reduced.size() + 1);
      g.push_back(basis[k].front());
      for (auto& t : reduced) g.push_back(std::move(t));
      make_monic(g, field_);
      out.push_back(std::move(g));
    }
    std::sort(out.begin(), out.end(), [&](const ModVec& a, const ModVec& b) {
      return order_.compare(a.front().mono, a.front().comp, b.front().mono, b.front().comp) > 0;
    });
    return out;
  }

  const ModuleOrder& order_;
  const Field& field_;
  bool ideal_case_;
  std::vector<ModVec> polys_;
  std::vector<bool> active_;
  std::vector<ModVec> reducers_;
  std::vector<Pair> pairs_;
};

}  // namespace

std::vector<ModVec> buchberger(std::vector<ModVec> gens, const ModuleOrder& order, const Field& field) {
  return Buchberger(order, field).run(std::move(gens));
}

}  // namespace engine

ModuleOrder::Ptr canonical_order(const GradedFreeModule& ambient) {
  return ModuleOrder::term_over_position(ambient.shifts());
}

GroebnerBasis::GroebnerBasis(GradedFreeModule ambient, ModuleOrder::Ptr order, std::vector<ModVec> raw)
    : ambient_(std::move(ambient)), order_(std::move(order)), raw_(std::move(raw)) {
  elements_.reserve(raw_.size());
  for (const auto& g : raw_) elements_.push_back(engine::from_modvec(g, ambient_));
}

bool GroebnerBasis::is_everything() const {
  std::vector<bool> hit(ambient_.rank(), false);
  for (const auto& g : raw_)
    if (g.front().mono.is_one()) hit[static_cast<std::size_t>(g.front().comp)] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

FreeModuleElement GroebnerBasis::reduce(const FreeModuleElement& v) const {
  if (!(v.ambient() == ambient_)) throw RingMismatch("element outside the basis' ambient module");
  ModVec r = engine::normal_form(engine::to_modvec(v, *order_), raw_, *order_, ambient_.ring()->field());
  return engine::from_modvec(r, ambient_);
}

bool GroebnerBasis::contains(const FreeModuleElement& v) const {
  if (!(v.ambient() == ambient_)) throw RingMismatch("element outside the basis' ambient module");
  return engine::normal_form(engine::to_modvec(v, *order_), raw_, *order_, ambient_.ring()->field()).empty();
}

bool GroebnerBasis::contains(const Polynomial& f) const {
  if (ambient_.rank() != 1) throw DimensionError("polynomial membership needs a rank-1 ambient");
  return contains(FreeModuleElement(ambient_, {f}));
}

namespace {

void check_ambient(const GradedFreeModule& ambient, std::span<const FreeModuleElement> gens) {
  for (const auto& g : gens)
    if (!(g.ambient() == ambient)) throw RingMismatch("generator outside the ambient module");
}

}  // namespace

GroebnerBasis buchberger(const GradedFreeModule& ambient, std::span<const FreeModuleElement> gens) {
  return buchberger(ambient, gens, canonical_order(ambient));
}

GroebnerBasis buchberger(const GradedFreeModule& ambient, std::span<const FreeModuleElement> gens,
                         ModuleOrder::Ptr order) {
  check_ambient(ambient, gens);
  if (order->rank() != ambient.rank()) throw DimensionError("order rank differs from module rank");
  std::vector<ModVec> raw;
  raw.reserve(gens.size());
  for (const auto& g : gens) raw.push_back(engine::to_modvec(g, *order));
  auto basis = engine::buchberger(std::move(raw), *order, ambient.ring()->field());
  return GroebnerBasis(ambient, std::move(order), std::move(basis));
}

GroebnerBasis buchberger(std::span<const Polynomial> gens) {
  if (gens.empty()) throw PreconditionError("cannot infer the ring of an empty generator list");
  GradedFreeModule ambient = GradedFreeModule::rank_one(gens.front().ring());
  std::vector<FreeModuleElement> vs;
  for (const auto& f : gens) vs.push_back(FreeModuleElement(ambient, {f}));
  return buchberger(ambient, vs);
}

FreeModuleElement normal_form(const FreeModuleElement& v, std::span<const FreeModuleElement> basis,
                              const ModuleOrder::Ptr& order) {
  check_ambient(v.ambient(), basis);
  std::vector<ModVec> raw;
  for (const auto& b : basis) {
    ModVec r = engine::to_modvec(b, *order);
    if (!r.empty()) raw.push_back(std::move(r));
  }
  const Field& field = v.ring()->field();
  return engine::from_modvec(engine::normal_form(engine::to_modvec(v, *order), raw, *order, field), v.ambient());
}

Polynomial normal_form(const Polynomial& f, std::span<const Polynomial> basis) {
  GradedFreeModule ambient = GradedFreeModule::rank_one(f.ring());
  std::vector<FreeModuleElement> vs;
  for (const auto& b : basis) vs.push_back(FreeModuleElement(ambient, {b}));
  return normal_form(FreeModuleElement(ambient, {f}), vs, canonical_order(ambient))[0];
}

bool satisfies_buchberger_criterion(const GroebnerBasis& gb) {
  const auto& raw = gb.raw();
  const Field& field = gb.ambient().ring()->field();
  for (std::size_t i = 0; i < raw.size(); ++i)
    for (std::size_t j = i + 1; j < raw.size(); ++j) {
      if (raw[i].front().comp != raw[j].front().comp) continue;
      ModVec s = engine::s_vector(raw[i], raw[j], *gb.order(), field);
      if (!engine::normal_form(std::move(s), raw, *gb.order(), field).empty()) return false;
    }
  return true;
}

SyzygyModule syzygies(const GradedFreeModule& ambient, std::span<const FreeModuleElement> gens,
                      std::optional<std::vector<int>> shifts) {
  check_ambient(ambient, gens);
  std::vector<int> tag_shifts;
  if (shifts) {
    if (shifts->size() != gens.size()) throw DimensionError("one shift per generator required");
    tag_shifts = *shifts;
  } else {
    for (const auto& g : gens) {
      if (g.is_zero()) throw PreconditionError("zero generator needs an explicit shift");
      auto d = element_degree(g);
      if (!d) throw PreconditionError("syzygies require homogeneous generators");
      tag_shifts.push_back(*d);
    }
  }
  for (std::size_t k = 0; k < gens.size(); ++k) {
    if (gens[k].is_zero()) continue;
    auto d = element_degree(gens[k]);
    if (!d || *d != tag_shifts[k]) throw PreconditionError("syzygies require homogeneous generators");
  }

  const int r = static_cast<int>(ambient.rank());
  auto order = ModuleOrder::block(canonical_order(ambient), ModuleOrder::term_over_position(tag_shifts));
  std::vector<ModVec> rows;
  rows.reserve(gens.size());
  Monomial one(ambient.ring()->num_vars());
  for (std::size_t k = 0; k < gens.size(); ++k) {
    ModVec row = engine::to_modvec(gens[k], *order);
    row.push_back(ModTerm{Scalar(1), one, r + static_cast<int>(k)});
    engine::normalize(row, *order, ambient.ring()->field());
    rows.push_back(std::move(row));
  }
  auto basis = engine::buchberger(std::move(rows), *order, ambient.ring()->field());

  GradedFreeModule syz_ambient(ambient.ring(), tag_shifts);
  SyzygyModule out{std::vector<FreeModuleElement>(gens.begin(), gens.end()), syz_ambient, {}};
  for (auto& g : basis) {
    if (g.front().comp < r) continue;
    for (auto& t : g) t.comp -= r;
    out.syzygies.push_back(engine::from_modvec(g, syz_ambient));
  }
  return out;
}

SyzygyModule syzygies(std::span<const Polynomial> gens) {
  if (gens.empty()) throw PreconditionError("cannot infer the ring of an empty generator list");
  GradedFreeModule ambient = GradedFreeModule::rank_one(gens.front().ring());
  std::vector<FreeModuleElement> vs;
  for (const auto& f : gens) vs.push_back(FreeModuleElement(ambient, {f}));
  return syzygies(ambient, vs);
}

}  // namespace cmreg
