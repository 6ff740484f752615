#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cmreg/parse.hpp"
#include "cmreg/regularity_lab.hpp"

namespace cmreg {

/// Ideal generated by linearly independent linear forms.
class LinearIdeal {
 public:
  /// Throws PreconditionError if a generator is not a linear form or the
  /// generators are dependent.
  LinearIdeal(RingPtr ring, std::vector<Polynomial> generators);

  const RingPtr& ring() const { return ideal_.ring(); }
  const std::vector<Polynomial>& generators() const { return generators_; }
  const Ideal& ideal() const { return ideal_; }
  bool operator==(const LinearIdeal& o) const { return ideal_ == o.ideal_; }
  /// "(x0, x1 + x2)".
  std::string to_string() const;

 private:
  std::vector<Polynomial> generators_;
  Ideal ideal_;
};

/// Expression tree of sums, products and intersections of linear ideals.
class CombinationExpr {
 public:
  enum class Kind { Zero, Unit, Atom, Sum, Product, Meet };

  static CombinationExpr zero(RingPtr ring);
  static CombinationExpr unit(RingPtr ring);
  static CombinationExpr atom(LinearIdeal ideal);
  static CombinationExpr sum(const CombinationExpr& a, const CombinationExpr& b);
  static CombinationExpr product(const CombinationExpr& a, const CombinationExpr& b);
  static CombinationExpr meet(const CombinationExpr& a, const CombinationExpr& b);

  /// Text form, e.g. "(x0, x1) * ((x0) + (x2)) ^ (x1, x2)". Throws
  /// SyntaxError on bad input and PreconditionError on non-linear atoms.
  static CombinationExpr parse(std::string_view text, const RingPtr& ring);
  static CombinationExpr from_ast(const ExprAst& ast, const RingPtr& ring);

  Kind kind() const;
  const RingPtr& ring() const;
  const CombinationExpr& left() const;
  const CombinationExpr& right() const;
  const LinearIdeal& atom() const;

  /// Canonical text with minimal parentheses; parse(to_string()) rebuilds
  /// the same tree.
  std::string to_string() const;
  /// Structural equality.
  bool operator==(const CombinationExpr& o) const;

  /// The ideal the expression denotes (computed once per node).
  const Ideal& eval() const;
  /// Atom occurrences, left to right.
  std::vector<LinearIdeal> occurrences() const;
  /// Distinct atoms (by ideal equality), in order of first occurrence.
  std::vector<LinearIdeal> distinct_atoms() const;

 private:
  struct Node;
  static CombinationExpr make(Kind kind, RingPtr ring, std::optional<LinearIdeal> atom,
                              const CombinationExpr* left, const CombinationExpr* right);
  explicit CombinationExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Cost of the expression under the clauses of the class C_r: atoms cost 1,
/// Zero and Unit 0, intersections and products add, and a sum costs the max
/// when one side costs at most 1 and a + b - 1 otherwise.
int grammar_degree(const CombinationExpr& e);

/// Removes Zero and Unit below the root: 0 + x = x, S + x = S, S * x = S ^ x
/// = x, 0 * x = 0 ^ x = 0.
CombinationExpr simplify(const CombinationExpr& e);

struct DecompositionPair {
  LinearIdeal atom;
  CombinationExpr approximant;
  bool verified = false;
};

/// One pair (I, J_I) per atom occurrence with I J_I inside J inside J_I and
/// grammar_degree(J_I) <= grammar_degree(J) - 1; equal pairs are merged.
/// Empty when the expression evaluates to (0) or S. Throws
/// InternalConsistencyError if an inclusion fails.
std::vector<DecompositionPair> decompose(const CombinationExpr& e);

struct SystemsReport {
  int grammar_degree;
  Regularity regularity;
  bool ok;
};

/// reg(eval(e)) <= grammar_degree(e).
SystemsReport verify_r_regularity(const CombinationExpr& e);

/// Degree-1 approximation system for S/eval(e) built from decompose(e).
ApproximationSystem approximation_system(const CombinationExpr& e);
/// The same data in nested form: eval(J_I), I, around eval(e).
NestedSystem nested_system(const CombinationExpr& e);

struct AssCandidates {
  std::vector<Ideal> candidates;
  AssReport report;
};

inline constexpr std::size_t kMaxAssAtoms = 12;

/// Sums over nonempty subsets of the distinct atoms (deduplicated), tested
/// for association with S/eval(e). Throws PreconditionError beyond
/// kMaxAssAtoms atoms or when eval(e) is not proper.
AssCandidates ass_candidates(const CombinationExpr& e);

/// Distinct ideals of grammar degree at most r over the atoms A. Limited to
/// r <= 3, rings with at most 3 variables and at most 3 atoms.
std::vector<Ideal> enumerate_Cr(const std::vector<LinearIdeal>& atoms, int r, const RingPtr& ring);

}  // namespace cmreg
