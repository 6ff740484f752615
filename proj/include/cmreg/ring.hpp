#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "cmreg/errors.hpp"

namespace cmreg {

using Scalar = mpq_class;

/// Exact coefficient field: the rationals or a prime field GF(p), p > 2.
/// GF(p) elements are stored as canonical integers in [0, p).
class Field {
 public:
  static Field rationals() { return Field(0); }
  static Field prime(std::uint32_t p);

  bool is_rational() const { return p_ == 0; }
  std::uint32_t characteristic() const { return p_; }
  std::string name() const;

  Scalar from_int(long v) const;
  /// Maps a rational into the field; throws if the denominator vanishes mod p.
  Scalar from_rational(const mpq_class& q) const;

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  Scalar inv(const Scalar& a) const;
  Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }
  /// a -= b * c, in place.
  void sub_mul(Scalar& a, const Scalar& b, const Scalar& c) const;
  static bool is_zero(const Scalar& a) { return sgn(a) == 0; }

  bool operator==(const Field&) const = default;

 private:
  explicit Field(std::uint32_t p) : p_(p) {}
  void reduce(Scalar& a) const;

  std::uint32_t p_;
};

bool is_prime(std::uint64_t n);

inline constexpr std::size_t kMaxVariables = 16;

/// Dense exponent vector with cached total degree.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t num_vars);
  Monomial(std::initializer_list<int> exponents);
  static Monomial from_exponents(std::span<const int> exponents);
  static Monomial variable(std::size_t num_vars, std::size_t index, int power = 1);

  std::size_t num_vars() const { return nvars_; }
  int degree() const { return degree_; }
  int operator[](std::size_t i) const { return exps_[i]; }
  void set(std::size_t i, int e);
  std::vector<int> exponents() const;

  bool divides(const Monomial& other) const;
  bool is_one() const { return degree_ == 0; }
  Monomial operator*(const Monomial& other) const;
  /// Exact quotient; caller guarantees `other.divides(*this)`.
  Monomial operator/(const Monomial& other) const;

  bool operator==(const Monomial& other) const {
    return nvars_ == other.nvars_ && exps_ == other.exps_;
  }
  std::size_t hash() const;

 private:
  std::array<std::uint16_t, kMaxVariables> exps_{};
  std::uint8_t nvars_ = 0;
  std::int32_t degree_ = 0;
};

Monomial lcm(const Monomial& a, const Monomial& b);
bool coprime(const Monomial& a, const Monomial& b);

/// Graded reverse lexicographic comparison. Throws DimensionError if the
/// variable counts differ.
std::strong_ordering monomial_compare(const Monomial& a, const Monomial& b);

/// Unchecked grevlex comparison used in inner loops.
inline int grevlex_cmp(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
  for (std::size_t i = a.num_vars(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

class PolynomialRing;
using RingPtr = std::shared_ptr<const PolynomialRing>;
class Polynomial;

class PolynomialRing {
 public:
  static RingPtr create(Field field, std::vector<std::string> names);

  const Field& field() const { return field_; }
  std::size_t num_vars() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> variable_index(const std::string& name) const;

  bool same_as(const PolynomialRing& other) const {
    return this == &other || (field_ == other.field_ && names_ == other.names_);
  }
  std::string to_string() const;

 private:
  PolynomialRing(Field field, std::vector<std::string> names)
      : field_(field), names_(std::move(names)) {}

  Field field_;
  std::vector<std::string> names_;
};

inline bool same_ring(const RingPtr& a, const RingPtr& b) { return a->same_as(*b); }

struct Term {
  Scalar coeff;
  Monomial mono;
};

/// Sparse polynomial; terms strictly descending in grevlex, no zero
/// coefficients.
class Polynomial {
 public:
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}
  /// Builds from arbitrary terms: sorts, merges duplicates, drops zeros.
  Polynomial(RingPtr ring, std::vector<Term> terms);

  static Polynomial constant(RingPtr ring, const Scalar& c);
  static Polynomial variable(RingPtr ring, std::size_t index);
  static Polynomial monomial(RingPtr ring, const Monomial& m, const Scalar& c);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Term& leading() const { return terms_.front(); }

  /// Highest total degree; -1 for zero.
  int degree() const;
  /// All terms share one total degree. The zero polynomial is homogeneous.
  bool is_homogeneous() const;
  bool is_constant() const { return is_zero() || (size() == 1 && terms_[0].mono.is_one()); }
  /// Coefficient of the degree-0 term (zero if none).
  Scalar constant_term() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(const Scalar& c) const;
  Polynomial times(const Monomial& m, const Scalar& c) const;
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial pow(unsigned e) const;
  Polynomial derivative(std::size_t var) const;
  /// Divides by the leading coefficient.
  Polynomial monic() const;

  bool operator==(const Polynomial& o) const;
  std::string to_string() const;

 private:
  RingPtr ring_;
  std::vector<Term> terms_;
};

/// Polynomial product; throws RingMismatch across rings.
Polynomial poly_mul(const Polynomial& f, const Polynomial& g);

/// Re-expresses `f` in `target`: variable i of f's ring goes to variable
/// `index_map[i]`, or is set to zero when the entry is negative.
Polynomial map_variables(const Polynomial& f, const RingPtr& target,
                         std::span<const int> index_map);

/// The module S(-d_1) + ... + S(-d_l).
class GradedFreeModule {
 public:
  GradedFreeModule(RingPtr ring, std::vector<int> shifts)
      : ring_(std::move(ring)), shifts_(std::move(shifts)) {}
  static GradedFreeModule rank_one(RingPtr ring, int shift = 0) {
    return GradedFreeModule(std::move(ring), {shift});
  }

  const RingPtr& ring() const { return ring_; }
  std::size_t rank() const { return shifts_.size(); }
  const std::vector<int>& shifts() const { return shifts_; }
  int shift(std::size_t i) const { return shifts_[i]; }

  bool operator==(const GradedFreeModule& o) const {
    return same_ring(ring_, o.ring_) && shifts_ == o.shifts_;
  }

 private:
  RingPtr ring_;
  std::vector<int> shifts_;
};

class FreeModuleElement {
 public:
  explicit FreeModuleElement(GradedFreeModule ambient);
  FreeModuleElement(GradedFreeModule ambient, std::vector<Polynomial> components);
  static FreeModuleElement basis(GradedFreeModule ambient, std::size_t i);
  static FreeModuleElement from_poly(const Polynomial& f, int shift = 0);

  const GradedFreeModule& ambient() const { return ambient_; }
  const RingPtr& ring() const { return ambient_.ring(); }
  std::size_t rank() const { return components_.size(); }
  const Polynomial& operator[](std::size_t i) const { return components_[i]; }
  const std::vector<Polynomial>& components() const { return components_; }
  bool is_zero() const;
  bool is_homogeneous() const;

  FreeModuleElement operator+(const FreeModuleElement& o) const;
  FreeModuleElement operator-(const FreeModuleElement& o) const;
  FreeModuleElement operator*(const Polynomial& f) const;

  bool operator==(const FreeModuleElement& o) const;
  std::string to_string() const;

 private:
  GradedFreeModule ambient_;
  std::vector<Polynomial> components_;
};

/// Common shifted degree of a homogeneous element, nullopt when the element
/// mixes degrees. Throws PreconditionError on the zero element.
std::optional<int> element_degree(const FreeModuleElement& v);

/// Orders on the terms (monomial, component) of a graded free module.
///
/// * term-over-position: (degree + shift), then grevlex on the monomial, then
///   lower component index first; optionally the last variable is an
///   elimination block compared before everything else and carries weight 0.
/// * Schreyer: m e_i > n e_j iff m*lt(g_i) > n*lt(g_j) in the base order, ties
///   broken by i < j.
/// * block: every term of the upper block beats every term of the lower one.
class ModuleOrder {
 public:
  using Ptr = std::shared_ptr<const ModuleOrder>;

  static Ptr term_over_position(std::vector<int> shifts, bool eliminate_last = false);
  static Ptr schreyer(Ptr base, std::vector<Monomial> lead_monos, std::vector<int> lead_comps);
  static Ptr block(Ptr upper, Ptr lower);

  std::size_t rank() const { return rank_; }
  int compare(const Monomial& a, int ca, const Monomial& b, int cb) const;
  int degree(const Monomial& m, int c) const;
  bool eliminates_last() const;

 private:
  struct Top {
    std::vector<int> shifts;
    bool eliminate_last;
  };
  struct Schreyer {
    Ptr base;
    std::vector<Monomial> monos;
    std::vector<int> comps;
    std::vector<int> degrees;
  };
  struct Block {
    Ptr upper;
    Ptr lower;
  };

  explicit ModuleOrder(std::variant<Top, Schreyer, Block> kind, std::size_t rank)
      : kind_(std::move(kind)), rank_(rank) {}

  std::variant<Top, Schreyer, Block> kind_;
  std::size_t rank_;
};

}  // namespace cmreg

template <>
struct std::hash<cmreg::Monomial> {
  std::size_t operator()(const cmreg::Monomial& m) const noexcept { return m.hash(); }
};
