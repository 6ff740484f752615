#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cmreg/ring.hpp"

namespace cmreg {

/// One term c * m * e_comp of a free-module element.
struct ModTerm {
  Scalar coeff;
  Monomial mono;
  int comp;
};

/// Free-module element as a term list, strictly descending in some
/// ModuleOrder. This is the representation the Buchberger engine works on.
using ModVec = std::vector<ModTerm>;

namespace engine {

ModVec to_modvec(const FreeModuleElement& v, const ModuleOrder& order);
FreeModuleElement from_modvec(const ModVec& v, const GradedFreeModule& ambient);
/// Sorts descending, merges equal terms and drops zeros.
void normalize(ModVec& v, const ModuleOrder& order, const Field& field);
void make_monic(ModVec& v, const Field& field);

/// Quotient record c * m * (basis element `index`).
struct QuotientTerm {
  Scalar coeff;
  Monomial mono;
  int index;
};

ModVec normal_form(ModVec v, std::span<const ModVec> basis, const ModuleOrder& order, const Field& field);
/// Full reduction recording every reduction step in `quotients`, so that
/// v = sum(quotients) + remainder.
ModVec normal_form_tracked(ModVec v, std::span<const ModVec> basis, const ModuleOrder& order,
                           const Field& field, std::vector<QuotientTerm>& quotients);
ModVec s_vector(const ModVec& a, const ModVec& b, const ModuleOrder& order, const Field& field);

/// Reduced Groebner basis (monic, tail-reduced), sorted descending by lead
/// term. Normal selection strategy with the Gebauer-Moeller update; the
/// coprime criterion is applied only in rank 1.
std::vector<ModVec> buchberger(std::vector<ModVec> gens, const ModuleOrder& order, const Field& field);

}  // namespace engine

/// The default order of a free module: term-over-position with its shifts.
ModuleOrder::Ptr canonical_order(const GradedFreeModule& ambient);

class GroebnerBasis {
 public:
  GroebnerBasis(GradedFreeModule ambient, ModuleOrder::Ptr order, std::vector<ModVec> raw);

  const GradedFreeModule& ambient() const { return ambient_; }
  const ModuleOrder::Ptr& order() const { return order_; }
  const std::vector<FreeModuleElement>& elements() const { return elements_; }
  const std::vector<ModVec>& raw() const { return raw_; }
  std::size_t size() const { return raw_.size(); }
  bool reduced() const { return true; }
  /// The basis generates the whole ambient module.
  bool is_everything() const;

  FreeModuleElement reduce(const FreeModuleElement& v) const;
  bool contains(const FreeModuleElement& v) const;
  bool contains(const Polynomial& f) const;

 private:
  GradedFreeModule ambient_;
  ModuleOrder::Ptr order_;
  std::vector<ModVec> raw_;
  std::vector<FreeModuleElement> elements_;
};

GroebnerBasis buchberger(const GradedFreeModule& ambient, std::span<const FreeModuleElement> gens);
GroebnerBasis buchberger(const GradedFreeModule& ambient, std::span<const FreeModuleElement> gens,
                         ModuleOrder::Ptr order);
GroebnerBasis buchberger(std::span<const Polynomial> gens);

FreeModuleElement normal_form(const FreeModuleElement& v, std::span<const FreeModuleElement> basis,
                              const ModuleOrder::Ptr& order);
Polynomial normal_form(const Polynomial& f, std::span<const Polynomial> basis);

/// Every S-vector of the basis reduces to zero.
bool satisfies_buchberger_criterion(const GroebnerBasis& gb);

struct SyzygyModule {
  std::vector<FreeModuleElement> sources;
  /// S^s with shift d_k = degree of source k.
  GradedFreeModule ambient;
  std::vector<FreeModuleElement> syzygies;
};

/// Generators of all relations among `gens` (a reduced Groebner basis of the
/// relation module). Generators must be homogeneous; zero generators need an
/// explicit shift and contribute the corresponding unit vector.
SyzygyModule syzygies(const GradedFreeModule& ambient, std::span<const FreeModuleElement> gens,
                      std::optional<std::vector<int>> shifts = std::nullopt);
SyzygyModule syzygies(std::span<const Polynomial> gens);

}  // namespace cmreg
