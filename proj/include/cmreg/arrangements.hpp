#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cmreg/combinations.hpp"

namespace cmreg {

/// Distinct hyperplanes through the origin of k^{n+1}, n + 1 = number of
/// variables, given by pairwise non-proportional linear forms.
class HyperplaneArrangement {
 public:
  HyperplaneArrangement(RingPtr ring, std::vector<Polynomial> forms);

  /// The coordinate hyperplanes x_0 ... x_n.
  static HyperplaneArrangement boolean(const RingPtr& ring);
  /// d forms with integer coefficients in [-10, 10]; proportional draws are
  /// rejected and redrawn.
  static HyperplaneArrangement random(const RingPtr& ring, std::size_t d, std::mt19937_64& rng);
  /// One linear form per line, '#' starts a comment.
  static HyperplaneArrangement parse(std::string_view text, const RingPtr& ring);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& forms() const { return forms_; }
  std::size_t size() const { return forms_.size(); }
  /// n, the projective dimension.
  std::size_t dimension() const { return ring_->num_vars() - 1; }
  /// F = f_1 ... f_d.
  const Polynomial& defining_polynomial() const { return defining_; }
  /// "{x0, x1, x0 + x1}".
  std::string to_string() const;

 private:
  RingPtr ring_;
  std::vector<Polynomial> forms_;
  Polynomial defining_;
};

/// {theta in S^{n+1} : sum theta_j dF/dx_j in (F)}, every basis vector of
/// S^{n+1} in degree 0.
struct DerivationModule {
  Submodule module;
  HyperplaneArrangement source;

  bool contains(const FreeModuleElement& theta) const { return module.contains(theta); }
  /// The Euler derivation (x_0, ..., x_n).
  FreeModuleElement euler() const;
};

/// Throws PreconditionError over GF(p) with p <= d.
DerivationModule derivation_module(const HyperplaneArrangement& a);

/// The arrangement without hyperplane i. Needs d >= 2.
HyperplaneArrangement deletion(const HyperplaneArrangement& a, std::size_t i);

inline constexpr std::size_t kMaxGeneralityCheck = 12;

struct ArrangementClass {
  /// Every min(d, n+1) of the forms are independent; unset above
  /// kMaxGeneralityCheck forms.
  std::optional<bool> linearly_general;
  /// The forms span the space of linear forms.
  bool essential = false;
};

ArrangementClass classify(const HyperplaneArrangement& a);

struct DeletionCheck {
  std::size_t index;
  bool lower;  ///< f_i D_i inside D
  bool upper;  ///< D inside D_i
  bool ok() const { return lower && upper; }
};

struct DerivationBoundReport {
  std::size_t d;
  std::size_t n;
  Regularity regularity;
  int bound;  ///< d - 1
  bool euler_member;
  std::vector<DeletionCheck> deletions;
  ArrangementClass classification;
  /// d - n when the arrangement is linearly general and essential.
  std::optional<int> general_position_value;
  bool ok;

  std::string to_json() const;
};

/// reg(D) <= d - 1, Euler membership, deletion inclusions for every i and,
/// for linearly general essential arrangements, reg(D) = d - n. Needs d >= 2.
DerivationBoundReport verify_derivation_bound(const HyperplaneArrangement& a);

struct ConeCheck {
  /// The arrangement viewed in one more variable.
  HyperplaneArrangement cone;
  /// D(cone) equals D(a) extended by zero plus the new coordinate vector.
  bool ok;
};

ConeCheck verify_cone(const HyperplaneArrangement& a);

/// Finite union of linear subspaces, given by their (distinct) ideals.
class SubspaceArrangement {
 public:
  SubspaceArrangement(RingPtr ring, std::vector<LinearIdeal> components);
  /// `count` components of random codimension 1..n+1 with coefficients in
  /// [-10, 10], redrawn until distinct.
  static SubspaceArrangement random(const RingPtr& ring, std::size_t count, std::mt19937_64& rng);

  const RingPtr& ring() const { return ring_; }
  const std::vector<LinearIdeal>& components() const { return components_; }
  std::size_t size() const { return components_.size(); }

 private:
  RingPtr ring_;
  std::vector<LinearIdeal> components_;
};

/// Intersection of the component ideals.
Ideal vanishing_ideal(const SubspaceArrangement& a);

}  // namespace cmreg
