#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cmreg/combinations.hpp"
#include "cmreg/parse.hpp"

namespace cmreg {

/// Element of Z/d_1 x ... x Z/d_l as its exponent tuple; also used for
/// characters, where a = (a_1..a_l) acts by zeta_1^{a_1} ... zeta_l^{a_l}.
using GroupElement = std::vector<int>;

/// Q when every d_i <= 2, otherwise GF(p) for the smallest prime p >= 101
/// with p = 1 mod lcm(d_i).
Field default_action_field(const std::vector<int>& divisors);

/// Finite abelian group acting diagonally on V = k^n.
class DiagonalAction {
 public:
  /// Roots of unity default to powers of the smallest primitive root (or -1
  /// over Q); explicit roots must have exact order d_i in the field.
  static DiagonalAction create(std::vector<int> divisors, std::vector<std::string> variables,
                               std::vector<GroupElement> characters, std::optional<Field> field = std::nullopt,
                               std::optional<std::vector<long>> roots = std::nullopt);
  /// `group 2,2; vars x1,x2; char x1 = (1,0); char x2 = (0,1);` with optional
  /// `field GF(7);` and `roots 2;` statements. `field` overrides the text.
  static DiagonalAction parse(std::string_view text, std::optional<Field> field = std::nullopt);
  /// Reads statements up to the end of input or an unconsumed '}'.
  static DiagonalAction parse(TokenStream& ts, std::optional<Field> field = std::nullopt);

  const std::vector<int>& divisors() const { return divisors_; }
  const std::vector<std::string>& variables() const { return variables_; }
  const std::vector<GroupElement>& characters() const { return characters_; }
  const Field& field() const { return field_; }
  const std::vector<Scalar>& roots() const { return roots_; }
  std::size_t order() const;
  std::size_t num_vars() const { return variables_.size(); }

  /// All elements in lexicographic order of their tuples.
  std::vector<GroupElement> elements() const;
  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  /// chi(g) in the field.
  Scalar character_value(const GroupElement& chi, const GroupElement& g) const;
  bool is_faithful() const;

  /// k[x_1..x_n].
  const RingPtr& base_ring() const { return base_; }
  /// k[x_1..x_n, y_1..y_n].
  const RingPtr& doubled_ring() const { return doubled_; }

  /// Action text; over GF(p) the field and roots are included.
  std::string to_string() const;

 private:
  DiagonalAction() = default;

  std::vector<int> divisors_;
  std::vector<std::string> variables_;
  std::vector<GroupElement> characters_;
  Field field_ = Field::rationals();
  std::vector<Scalar> roots_;
  RingPtr base_;
  RingPtr doubled_;
};

/// Ideal of g . Delta(V): (y_j - chi_j(g) x_j : j).
LinearIdeal graph_component(const DiagonalAction& action, const GroupElement& g);
/// Intersection of the distinct components g . Delta(V) as an expression.
CombinationExpr graph_expression(const DiagonalAction& action);
/// The ideal of B = union of g . Delta(V).
Ideal graph_ideal(const DiagonalAction& action);

/// J = (f(x, 0) : f in the reduced Groebner basis of b); `base` holds the
/// first base->num_vars() variables of b's ring.
Ideal hilbert_ideal(const Ideal& b, const RingPtr& base);

/// Smallest d with every degree-d monomial in J. Throws PreconditionError,
/// naming a variable with no pure power in J, if S/J has infinite length.
int rho(const Ideal& j);

/// Subgroup generated by `generators`, in lexicographic order.
std::vector<GroupElement> subgroup_closure(const DiagonalAction& action, const std::vector<GroupElement>& generators);
/// Every subgroup, each listed by its elements.
std::vector<std::vector<GroupElement>> all_subgroups(const DiagonalAction& action);

struct CosetSpec {
  GroupElement g;
  /// Generators of H.
  std::vector<GroupElement> subgroup;
};

/// Span of h . Delta(V) over h in gH, as the linear ideal of forms vanishing
/// on it (the zero ideal when the span is all of V x V).
Ideal coset_span_ideal(const DiagonalAction& action, const CosetSpec& coset);
/// Ideal of the union of h . Delta(V) over h in gH.
Ideal coset_union_ideal(const DiagonalAction& action, const CosetSpec& coset);

/// Whether the spans Delta_{g_i H_i}(V) meet only in 0, by the character
/// criterion. The intersection is also computed directly and a disagreement
/// throws InternalConsistencyError.
bool coset_span_intersection_test(const DiagonalAction& action, const std::vector<CosetSpec>& cosets);

/// The faithful action of G / ker on the same variables; only for
/// elementary abelian 2-groups.
DiagonalAction faithful_quotient(const DiagonalAction& action);

struct InvariantReport {
  Ideal b;
  Ideal hilbert;
  std::optional<int> rho;
  Regularity reg_b;
  std::size_t group_order = 0;
  /// Certified upper bound on c_G(V).
  int cg_bound = 0;
  /// Expression of degree cg_bound evaluating to b, when one was built.
  std::optional<CombinationExpr> certificate;
  /// The action was replaced by its faithful quotient.
  bool reduced = false;
  /// Every index-2 subgroup passed the approximation checks (only for
  /// elementary abelian 2-groups).
  std::optional<bool> approximation_ok;
  /// reg(b) <= cg_bound, rho <= cg_bound <= |G|.
  bool chain_ok = false;

  std::string to_json() const;
};

/// b, J, rho and the bound c_G <= |G| certified by graph_expression.
InvariantReport invariant_report(const DiagonalAction& action);

/// For (Z/2)^n, n <= 3, over Q: reduces to the faithful quotient (throws
/// PreconditionError when that is needed but disallowed), checks the
/// approximation of b by the ideals of Psi_H and Psi_{gH} over all index-2
/// subgroups H, and certifies c_G <= n + 1 together with reg(b) <= n + 1.
InvariantReport z2n_certificate(const DiagonalAction& action, bool allow_reduction = true);

}  // namespace cmreg
