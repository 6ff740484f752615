#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cmreg/ideals.hpp"

namespace cmreg {

/// Regularity value; the zero module gets minus infinity, which sorts below
/// every integer.
class Regularity {
 public:
  /// Minus infinity.
  Regularity() : finite_(false), value_(0) {}
  Regularity(int v) : finite_(true), value_(v) {}  // NOLINT(google-explicit-constructor)
  static Regularity minus_infinity() { return Regularity(); }

  bool is_finite() const { return finite_; }
  /// Throws PreconditionError for minus infinity.
  int value() const;
  std::string to_string() const;

  std::strong_ordering operator<=>(const Regularity& o) const;
  bool operator==(const Regularity& o) const = default;

 private:
  bool finite_;
  int value_;
};

Regularity max(Regularity a, Regularity b);
Regularity operator+(Regularity a, int k);
Regularity operator-(Regularity a, int k);

/// Graded module F / N given by a free module F and a submodule N.
class PresentedModule {
 public:
  PresentedModule(GradedFreeModule target, Submodule relations, std::string label = {});
  /// S/I.
  static PresentedModule quotient(const Ideal& i, std::string label = {});
  /// The free module F itself.
  static PresentedModule free(GradedFreeModule f, std::string label = {});
  /// B/A for submodules A of B of a common free module, presented on the
  /// generators of B. With A = 0 this is B as an abstract module.
  static PresentedModule subquotient(const Submodule& b, const Submodule& a, std::string label = {});
  static PresentedModule of_submodule(const Submodule& m, std::string label = {});
  static PresentedModule of_ideal(const Ideal& i, std::string label = {});

  const GradedFreeModule& target() const { return target_; }
  const Submodule& relations() const { return relations_; }
  const RingPtr& ring() const { return target_.ring(); }
  const std::string& label() const { return label_; }
  bool is_zero() const { return relations_.is_everything(); }

  /// M / I M.
  PresentedModule modulo(const Ideal& i) const;

 private:
  GradedFreeModule target_;
  Submodule relations_;
  std::string label_;
};

/// Dense matrix of polynomials: entries[row][col].
using PolyMatrix = std::vector<std::vector<Polynomial>>;

/// Free complex F_0 <- F_1 <- ... <- F_l; differentials[k] is the map
/// F_{k+1} -> F_k with one column per basis element of F_{k+1}.
struct Resolution {
  std::vector<GradedFreeModule> modules;
  std::vector<PolyMatrix> differentials;
  bool minimal = false;

  std::size_t length() const { return modules.empty() ? 0 : modules.size() - 1; }
};

/// Iterated Schreyer syzygies; not minimal in general.
Resolution schreyer_resolution(const PresentedModule& m);
/// Cancels unit entries until none remain.
Resolution minimalize(Resolution r);
/// Minimal graded free resolution.
Resolution free_resolution(const PresentedModule& m);

class BettiTable {
 public:
  BettiTable() = default;
  explicit BettiTable(std::map<std::pair<int, int>, int> entries);

  /// beta_{i,j}, zero when absent.
  int at(int i, int j) const;
  const std::map<std::pair<int, int>, int>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  /// max{j - i : beta_{i,j} != 0}.
  Regularity regularity() const;
  std::vector<int> totals() const;

  std::string to_text() const;
  std::string to_json() const;
  bool operator==(const BettiTable&) const = default;

 private:
  std::map<std::pair<int, int>, int> entries_;
};

/// Throws PreconditionError on a non-minimal resolution.
BettiTable betti(const Resolution& r);
BettiTable betti(const PresentedModule& m);
Regularity regularity(const PresentedModule& m);
Regularity regularity(const Ideal& i);
Regularity regularity(const Submodule& m);

/// dim_k M_d, by counting standard monomials of the relation module.
std::size_t hilbert_function(const PresentedModule& m, int d);
bool has_finite_length(const PresentedModule& m);
/// Largest d with M_d != 0 (minus infinity for the zero module). Throws
/// PreconditionError unless M has finite length.
Regularity top_degree(const PresentedModule& m);

}  // namespace cmreg
