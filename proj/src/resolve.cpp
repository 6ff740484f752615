#include "cmreg/resolve.hpp"

#include <algorithm>
#include <sstream>

#include "cmreg/linalg.hpp"

namespace cmreg {

// ---------------------------------------------------------------- Regularity

int Regularity::value() const {
  if (!finite_) throw PreconditionError("regularity of the zero module is minus infinity");
  return value_;
}

std::string Regularity::to_string() const { return finite_ ? std::to_string(value_) : "-inf"; }

std::strong_ordering Regularity::operator<=>(const Regularity& o) const {
  if (finite_ != o.finite_) return finite_ ? std::strong_ordering::greater : std::strong_ordering::less;
  if (!finite_) return std::strong_ordering::equal;
  return value_ <=> o.value_;
}

Regularity max(Regularity a, Regularity b) { return a < b ? b : a; }
Regularity operator+(Regularity a, int k) { return a.is_finite() ? Regularity(a.value() + k) : a; }
Regularity operator-(Regularity a, int k) { return a + (-k); }

// ---------------------------------------------------------------- modules

PresentedModule::PresentedModule(GradedFreeModule target, Submodule relations, std::string label)
    : target_(std::move(target)), relations_(std::move(relations)), label_(std::move(label)) {
  if (!(relations_.ambient() == target_)) throw RingMismatch("relations live outside the target module");
}

PresentedModule PresentedModule::quotient(const Ideal& i, std::string label) {
  return PresentedModule(i.as_submodule().ambient(), i.as_submodule(), std::move(label));
}

PresentedModule PresentedModule::free(GradedFreeModule f, std::string label) {
  Submodule zero = Submodule::zero(f);
  return PresentedModule(std::move(f), std::move(zero), std::move(label));
}

PresentedModule PresentedModule::subquotient(const Submodule& b, const Submodule& a, std::string label) {
  if (!b.contains(a)) throw PreconditionError("subquotient B/A needs A inside B");
  const auto& bg = b.generators();
  std::vector<int> shifts;
  for (const auto& g : bg) shifts.push_back(*element_degree(g));
  GradedFreeModule target(b.ring(), shifts);
  if (bg.empty()) return free(target, std::move(label));
  std::vector<FreeModuleElement> gens = bg;
  gens.insert(gens.end(), a.generators().begin(), a.generators().end());
  for (const auto& g : a.generators()) shifts.push_back(*element_degree(g));
  auto syz = syzygies(b.ambient(), gens, shifts);
  std::vector<std::size_t> first(bg.size());
  for (std::size_t k = 0; k < first.size(); ++k) first[k] = k;
  Submodule all(syz.ambient, syz.syzygies);
  return PresentedModule(target, project(all, first, target), std::move(label));
}

PresentedModule PresentedModule::of_submodule(const Submodule& m, std::string label) {
  return subquotient(m, Submodule::zero(m.ambient()), std::move(label));
}

PresentedModule PresentedModule::of_ideal(const Ideal& i, std::string label) {
  return of_submodule(i.as_submodule(), std::move(label));
}

PresentedModule PresentedModule::modulo(const Ideal& i) const {
  return PresentedModule(target_, sum(relations_, product(i, Submodule::whole(target_))), label_);
}

// ---------------------------------------------------------------- resolution

namespace {

// Same lead component first, then lexicographically larger lead monomials.
// This ordering makes the iterated Schreyer syzygies terminate within the
// syzygy-theorem bound.
void sort_for_schreyer(std::vector<ModVec>& elems) {
  std::stable_sort(elems.begin(), elems.end(), [](const ModVec& a, const ModVec& b) {
    const ModTerm& x = a.front();
    const ModTerm& y = b.front();
    if (x.comp != y.comp) return x.comp < y.comp;
    for (std::size_t i = 0; i < x.mono.num_vars(); ++i)
      if (x.mono[i] != y.mono[i]) return x.mono[i] > y.mono[i];
    return false;
  });
}

PolyMatrix to_columns(const std::vector<ModVec>& elems, const GradedFreeModule& f) {
  PolyMatrix m(f.rank(), std::vector<Polynomial>(elems.size(), Polynomial(f.ring())));
  for (std::size_t c = 0; c < elems.size(); ++c) {
    FreeModuleElement e = engine::from_modvec(elems[c], f);
    for (std::size_t r = 0; r < f.rank(); ++r) m[r][c] = e[r];
  }
  return m;
}

std::vector<ModVec> schreyer_syzygies(const std::vector<ModVec>& g, const ModuleOrder::Ptr& next,
                                      const ModuleOrder& order, const Field& field) {
  std::vector<ModVec> out;
  const Monomial one(g.empty() ? 0 : g.front().front().mono.num_vars());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const ModTerm& li = g[i].front();
    std::vector<std::pair<std::size_t, Monomial>> cands;
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      const ModTerm& lj = g[j].front();
      if (lj.comp != li.comp) continue;
      cands.emplace_back(j, lcm(li.mono, lj.mono) / li.mono);
    }
    for (std::size_t a = 0; a < cands.size(); ++a) {
      bool minimal = true;
      for (std::size_t b = 0; b < cands.size() && minimal; ++b) {
        if (a == b || !cands[b].second.divides(cands[a].second)) continue;
        if (!(cands[b].second == cands[a].second) || b < a) minimal = false;
      }
      if (!minimal) continue;
      const std::size_t j = cands[a].first;
      const ModTerm& lj = g[j].front();
      Monomial l = lcm(li.mono, lj.mono);
      ModVec s = engine::s_vector(g[i], g[j], order, field);
      std::vector<engine::QuotientTerm> q;
      ModVec rem = engine::normal_form_tracked(std::move(s), g, order, field, q);
      if (!rem.empty()) throw InternalConsistencyError("S-vector of a Groebner basis did not reduce to zero");
      ModVec syz;
      syz.push_back(ModTerm{field.inv(li.coeff), l / li.mono, static_cast<int>(i)});
      syz.push_back(ModTerm{field.neg(field.inv(lj.coeff)), l / lj.mono, static_cast<int>(j)});
      for (auto& t : q) syz.push_back(ModTerm{field.neg(t.coeff), t.mono, t.index});
      engine::normalize(syz, *next, field);
      engine::make_monic(syz, field);
      out.push_back(std::move(syz));
    }
  }
  return out;
}

}  // namespace

Resolution schreyer_resolution(const PresentedModule& m) {
  Resolution res;
  res.modules.push_back(m.target());
  const Field& field = m.ring()->field();
  const std::size_t n = m.ring()->num_vars();
  if (m.relations().is_zero()) return res;

  ModuleOrder::Ptr order = m.relations().gb().order();
  std::vector<ModVec> level = m.relations().gb().raw();
  while (!level.empty()) {
    if (res.modules.size() > n + 2) throw InternalConsistencyError("Schreyer resolution exceeded the syzygy bound");
    sort_for_schreyer(level);
    std::vector<int> shifts;
    std::vector<Monomial> monos;
    std::vector<int> comps;
    for (const auto& g : level) {
      shifts.push_back(order->degree(g.front().mono, g.front().comp));
      monos.push_back(g.front().mono);
      comps.push_back(g.front().comp);
    }
    res.differentials.push_back(to_columns(level, res.modules.back()));
    res.modules.emplace_back(m.ring(), shifts);
    ModuleOrder::Ptr next = ModuleOrder::schreyer(order, std::move(monos), std::move(comps));
    level = schreyer_syzygies(level, next, *order, field);
    order = next;
  }
  return res;
}

namespace {

template <class T>
void erase_index(std::vector<T>& v, std::size_t i) {
  v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
}

void erase_column(PolyMatrix& m, std::size_t c) {
  for (auto& row : m) erase_index(row, c);
}

bool find_unit(const Resolution& r, std::size_t& k, std::size_t& row, std::size_t& col) {
  for (k = 0; k < r.differentials.size(); ++k) {
    const PolyMatrix& d = r.differentials[k];
    for (row = 0; row < d.size(); ++row)
      for (col = 0; col < d[row].size(); ++col) {
        const Polynomial& p = d[row][col];
        if (!p.is_zero() && p.is_constant()) return true;
      }
  }
  return false;
}

}  // namespace

Resolution minimalize(Resolution r) {
  std::size_t k, j, i;
  while (find_unit(r, k, j, i)) {
    const Field& field = r.modules[k].ring()->field();
    PolyMatrix& d = r.differentials[k];
    Scalar uinv = field.inv(d[j][i].constant_term());
    for (std::size_t c = 0; c < d[j].size(); ++c) {
      if (c == i || d[j][c].is_zero()) continue;
      Polynomial factor = d[j][c].scaled(uinv);
      for (std::size_t row = 0; row < d.size(); ++row)
        if (!d[row][i].is_zero()) d[row][c] -= factor * d[row][i];
    }
    erase_index(d, j);
    erase_column(d, i);
    if (k > 0) erase_column(r.differentials[k - 1], j);
    if (k + 1 < r.differentials.size()) erase_index(r.differentials[k + 1], i);

    std::vector<int> sk = r.modules[k].shifts();
    erase_index(sk, j);
    r.modules[k] = GradedFreeModule(r.modules[k].ring(), sk);
    std::vector<int> sk1 = r.modules[k + 1].shifts();
    erase_index(sk1, i);
    r.modules[k + 1] = GradedFreeModule(r.modules[k + 1].ring(), sk1);
  }
  while (r.modules.size() > 1 && r.modules.back().rank() == 0) {
    r.modules.pop_back();
    r.differentials.pop_back();
  }
  r.minimal = true;
  return r;
}

Resolution free_resolution(const PresentedModule& m) { return minimalize(schreyer_resolution(m)); }

// ---------------------------------------------------------------- Betti

BettiTable::BettiTable(std::map<std::pair<int, int>, int> entries) {
  for (auto& [k, v] : entries)
    if (v != 0) entries_.emplace(k, v);
}

int BettiTable::at(int i, int j) const {
  auto it = entries_.find({i, j});
  return it == entries_.end() ? 0 : it->second;
}

Regularity BettiTable::regularity() const {
  Regularity r = Regularity::minus_infinity();
  for (const auto& [k, v] : entries_) r = max(r, Regularity(k.second - k.first));
  return r;
}

std::vector<int> BettiTable::totals() const {
  std::vector<int> t;
  for (const auto& [k, v] : entries_) {
    if (static_cast<std::size_t>(k.first) >= t.size()) t.resize(static_cast<std::size_t>(k.first) + 1, 0);
    t[static_cast<std::size_t>(k.first)] += v;
  }
  return t;
}

std::string BettiTable::to_text() const {
  if (entries_.empty()) return "zero module\n";
  const auto totals_row = totals();
  const int cols = static_cast<int>(totals_row.size());
  int lo = entries_.begin()->first.second - entries_.begin()->first.first, hi = lo;
  for (const auto& [k, v] : entries_) {
    lo = std::min(lo, k.second - k.first);
    hi = std::max(hi, k.second - k.first);
  }
  std::vector<std::string> labels{"", "total:"};
  for (int row = lo; row <= hi; ++row) labels.push_back(std::to_string(row) + ":");
  std::vector<std::vector<std::string>> cells(labels.size(), std::vector<std::string>(static_cast<std::size_t>(cols)));
  for (int c = 0; c < cols; ++c) {
    auto cu = static_cast<std::size_t>(c);
    cells[0][cu] = std::to_string(c);
    cells[1][cu] = std::to_string(totals_row[cu]);
    for (int row = lo; row <= hi; ++row) {
      int v = at(c, row + c);
      cells[static_cast<std::size_t>(row - lo + 2)][cu] = v ? std::to_string(v) : ".";
    }
  }
  std::size_t label_width = 0;
  for (const auto& l : labels) label_width = std::max(label_width, l.size());
  std::vector<std::size_t> widths(static_cast<std::size_t>(cols), 0);
  for (const auto& row : cells)
    for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
  std::ostringstream out;
  for (std::size_t r = 0; r < cells.size(); ++r) {
    std::string line = std::string(label_width - labels[r].size(), ' ') + labels[r];
    for (std::size_t c = 0; c < cells[r].size(); ++c)
      line += " " + std::string(widths[c] - cells[r][c].size(), ' ') + cells[r][c];
    out << line << "\n";
  }
  return out.str();
}

std::string BettiTable::to_json() const {
  std::string s = "{\"betti\": [";
  bool first = true;
  for (const auto& [k, v] : entries_) {
    s += (first ? "" : ", ") + ("[" + std::to_string(k.first) + ", " + std::to_string(k.second) + ", " +
                                std::to_string(v) + "]");
    first = false;
  }
  return s + "]}";
}

BettiTable betti(const Resolution& r) {
  if (!r.minimal) throw PreconditionError("Betti numbers need a minimal resolution");
  std::map<std::pair<int, int>, int> e;
  for (std::size_t i = 0; i < r.modules.size(); ++i)
    for (int s : r.modules[i].shifts()) ++e[{static_cast<int>(i), s}];
  return BettiTable(std::move(e));
}

BettiTable betti(const PresentedModule& m) { return betti(free_resolution(m)); }
Regularity regularity(const PresentedModule& m) { return betti(m).regularity(); }
Regularity regularity(const Ideal& i) { return regularity(PresentedModule::of_ideal(i)); }
Regularity regularity(const Submodule& m) { return regularity(PresentedModule::of_submodule(m)); }

// ---------------------------------------------------------------- Hilbert

namespace {

bool is_standard(const Monomial& m, int comp, const std::vector<ModVec>& gb) {
  for (const auto& g : gb)
    if (g.front().comp == comp && g.front().mono.divides(m)) return false;
  return true;
}

}  // namespace

std::size_t hilbert_function(const PresentedModule& m, int d) {
  const auto& gb = m.relations().gb().raw();
  const std::size_t n = m.ring()->num_vars();
  std::size_t count = 0;
  for (std::size_t c = 0; c < m.target().rank(); ++c)
    for (const auto& mono : monomials_of_degree(n, d - m.target().shift(c)))
      count += is_standard(mono, static_cast<int>(c), gb);
  return count;
}

namespace {

// Per component, the smallest pure-power exponent of every variable among
// lead terms, or nullopt when some variable has none.
std::optional<std::vector<std::vector<int>>> pure_powers(const PresentedModule& m) {
  const auto& gb = m.relations().gb().raw();
  const std::size_t n = m.ring()->num_vars();
  std::vector<std::vector<int>> out(m.target().rank(), std::vector<int>(n, -1));
  for (const auto& g : gb) {
    const Monomial& lm = g.front().mono;
    auto& slot = out[static_cast<std::size_t>(g.front().comp)];
    if (lm.is_one()) {
      std::fill(slot.begin(), slot.end(), 0);
      continue;
    }
    for (std::size_t v = 0; v < n; ++v)
      if (lm[v] == lm.degree() && (slot[v] < 0 || lm[v] < slot[v])) slot[v] = lm[v];
  }
  for (const auto& comp : out)
    for (int e : comp)
      if (e < 0) return std::nullopt;
  return out;
}

}  // namespace

bool has_finite_length(const PresentedModule& m) { return pure_powers(m).has_value(); }

Regularity top_degree(const PresentedModule& m) {
  auto powers = pure_powers(m);
  if (!powers) throw PreconditionError("module does not have finite length");
  const auto& gb = m.relations().gb().raw();
  const std::size_t n = m.ring()->num_vars();
  Regularity top = Regularity::minus_infinity();
  for (std::size_t c = 0; c < m.target().rank(); ++c) {
    const auto& p = (*powers)[c];
    if (std::any_of(p.begin(), p.end(), [](int e) { return e == 0; })) continue;
    int bound = 0;
    for (int e : p) bound += e - 1;
    for (int e = bound; e >= 0; --e) {
      bool found = false;
      for (const auto& mono : monomials_of_degree(n, e))
        if (is_standard(mono, static_cast<int>(c), gb)) {
          found = true;
          break;
        }
      if (found) {
        top = max(top, Regularity(e + m.target().shift(c)));
        break;
      }
    }
  }
  return top;
}

}  // namespace cmreg
