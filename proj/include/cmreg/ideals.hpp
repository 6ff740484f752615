#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "cmreg/groebner.hpp"

namespace cmreg {

/// Graded submodule of a free module, given by homogeneous generators. The
/// reduced Groebner basis under the canonical order is computed on first use
/// and shared between copies.
class Submodule {
 public:
  /// Zero generators are dropped; non-homogeneous ones are rejected.
  Submodule(GradedFreeModule ambient, std::vector<FreeModuleElement> generators);
  static Submodule zero(GradedFreeModule ambient);
  static Submodule whole(GradedFreeModule ambient);

  const GradedFreeModule& ambient() const { return ambient_; }
  const RingPtr& ring() const { return ambient_.ring(); }
  const std::vector<FreeModuleElement>& generators() const { return generators_; }
  const GroebnerBasis& gb() const;

  bool is_zero() const { return generators_.empty(); }
  bool is_everything() const { return gb().is_everything(); }
  bool contains(const FreeModuleElement& v) const { return gb().contains(v); }
  /// other is a subset of this.
  bool contains(const Submodule& other) const;
  /// Equality of reduced Groebner bases.
  bool operator==(const Submodule& other) const;
  /// A copy generated by this module's reduced Groebner basis.
  Submodule canonical() const;

 private:
  struct Cache {
    std::once_flag once;
    std::optional<GroebnerBasis> gb;
  };

  GradedFreeModule ambient_;
  std::vector<FreeModuleElement> generators_;
  std::shared_ptr<Cache> cache_;
};

/// Homogeneous ideal of a polynomial ring: a submodule of S with shift 0.
class Ideal {
 public:
  Ideal(RingPtr ring, std::vector<Polynomial> generators);
  explicit Ideal(Submodule rank_one);
  static Ideal zero(RingPtr ring) { return Ideal(std::move(ring), {}); }
  static Ideal unit(RingPtr ring);
  static Ideal maximal(RingPtr ring);

  const RingPtr& ring() const { return module_.ring(); }
  std::vector<Polynomial> generators() const;
  const Submodule& as_submodule() const { return module_; }
  const GroebnerBasis& gb() const { return module_.gb(); }
  /// Reduced Groebner basis as polynomials, sorted descending by lead term.
  std::vector<Polynomial> gb_polynomials() const;

  bool is_zero() const { return module_.is_zero(); }
  bool is_unit() const { return module_.is_everything(); }
  bool contains(const Polynomial& f) const { return module_.gb().contains(f); }
  bool contains(const Ideal& other) const { return module_.contains(other.module_); }
  bool operator==(const Ideal& other) const { return module_ == other.module_; }
  Ideal canonical() const { return Ideal(module_.canonical()); }
  /// Generators in the ring's text syntax, e.g. "(x^2, x*y)".
  std::string to_string() const;

 private:
  Submodule module_;
};

Ideal sum(const Ideal& a, const Ideal& b);
Ideal product(const Ideal& a, const Ideal& b);
Ideal power(const Ideal& a, unsigned k);
Submodule sum(const Submodule& a, const Submodule& b);
Submodule product(const Ideal& a, const Submodule& m);

/// A intersected with B, by elimination of an auxiliary variable t from
/// t*A + (1-t)*B.
Ideal intersect(const Ideal& a, const Ideal& b);
Submodule intersect(const Submodule& a, const Submodule& b);

/// (A : b) = {v : b v in A}. Throws PreconditionError if b = 0.
Submodule colon(const Submodule& a, const Polynomial& b);
/// (A : B), the intersection of (A : b) over generators b of B. Throws
/// PreconditionError if B = 0.
Submodule colon(const Submodule& a, const Ideal& b);
Ideal colon(const Ideal& a, const Ideal& b);

/// (A : B^infinity), iterated colon until the Groebner basis stabilizes.
Submodule saturate(const Submodule& a, const Ideal& b);
Ideal saturate(const Ideal& a, const Ideal& b);

/// Image of a submodule of S^r under the coordinate projection onto the
/// listed components.
Submodule project(const Submodule& a, const std::vector<std::size_t>& components,
                  const GradedFreeModule& target);

}  // namespace cmreg
