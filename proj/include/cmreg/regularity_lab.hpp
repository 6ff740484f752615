#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cmreg/resolve.hpp"

namespace cmreg {

/// Random linear form: integer coefficients in [-100, 100] over Q, uniform
/// field elements over GF(p).
Polynomial random_linear_form(const RingPtr& ring, std::mt19937_64& rng);

/// (0 :_M m^infinity) = sat(N, m) / N for M = F/N.
PresentedModule finite_part(const PresentedModule& m);
/// M / (0 :_M m^infinity) = F / sat(N, m).
PresentedModule without_finite_part(const PresentedModule& m);

/// z is a nonzerodivisor on M / (0 :_M m^infinity). z must be a nonzero
/// homogeneous form of positive degree.
bool is_filter_regular(const Polynomial& z, const PresentedModule& m);

struct FilterRegularSequence {
  std::vector<Polynomial> forms;
  /// Number of random draws spent on each position.
  std::vector<int> attempts;
};

/// n+1 linear forms spanning m, each filter-regular on every module modulo the
/// previous forms. Each position gets up to `trials` random draws; throws
/// GenericityFailure when they run out.
FilterRegularSequence find_filter_regular_sequence(const std::vector<PresentedModule>& modules, int trials,
                                                   std::mt19937_64& rng);

struct HypersurfaceReport {
  Regularity regularity;          // reg(M)
  Regularity finite_part;         // reg((0 :_M m^infinity))
  Regularity quotient;            // reg(M / xM)
  int degree;                     // deg x
  Regularity right_side;          // max{finite_part, quotient - degree + 1}
  bool equal;
};

/// Computes both sides of reg(M) = max{reg(0 :_M m^inf), reg(M/xM) - deg x + 1}
/// independently. Throws PreconditionError unless x is filter-regular on M.
HypersurfaceReport verify_hypersurface_identity(const PresentedModule& m, const Polynomial& x);

/// Approximation system for M = F/N: approximants F/N_i with N inside N_i and
/// I_i N_i inside N, and m^t inside the sum of the I_i.
struct Approximant {
  Submodule relations;
  Ideal annihilator;
};

struct ApproximationSystem {
  PresentedModule base;
  std::vector<Approximant> approximants;
  int degree = 1;
};

struct SystemCheck {
  bool ok = true;
  int degree = 0;
  std::string violation;
};

/// Exact structural check; violations are reported, not thrown.
SystemCheck verify_approximation_system(const ApproximationSystem& sys);

/// Data of the nested form: I_i M_i inside M inside M_i, all submodules of
/// one free module, sum of the I_i equal to m.
struct NestedSystem {
  Submodule module;
  std::vector<Submodule> approximants;
  std::vector<Ideal> ideals;
};

/// I_i M inside M_i inside M, sum of the I_i containing m^t.
struct CoApproximationSystem {
  Submodule module;
  std::vector<Submodule> approximants;
  std::vector<Ideal> ideals;
  int degree = 1;
};

struct BoundReport {
  std::string theorem;
  std::vector<std::string> hypotheses;
  Regularity certified_bound = Regularity::minus_infinity();
  Regularity actual_regularity = Regularity::minus_infinity();
  bool ok = false;

  std::string to_json() const;
};

/// Smallest r with M generated in degree <= r - (t-1)(n+1) and
/// reg(M_i) <= r - (t-1)(n+1) - 1. With `target`, throws NoBound unless the
/// target itself satisfies the hypotheses. Throws PreconditionError if the
/// system is invalid.
BoundReport certified_regularity_bound(const ApproximationSystem& sys,
                                       std::optional<std::vector<Regularity>> approximant_regularities = std::nullopt,
                                       std::optional<int> target = std::nullopt);

/// Single step: y filter-regular on M and every M_i, then
/// r = max{reg(M_i) + t, reg(M/yM) + t - 1}. Throws PreconditionError if y is
/// not filter-regular on all of them.
BoundReport certified_regularity_bound_step(const ApproximationSystem& sys, const Polynomial& y);

/// r = max{2, reg(M_i) + 1}.
BoundReport certified_regularity_bound(const NestedSystem& sys,
                                       std::optional<std::vector<Regularity>> approximant_regularities = std::nullopt);

/// r = max reg(M_i) + (t-1) n, where S = k[x_0..x_n].
BoundReport certified_regularity_bound(const CoApproximationSystem& sys,
                                       std::optional<std::vector<Regularity>> approximant_regularities = std::nullopt);

/// {a in S : a f in N}.
Ideal annihilator(const Submodule& n, const FreeModuleElement& f);

struct AssVerdict {
  Ideal prime;
  bool maximal = false;
  bool confirmed = false;
  std::optional<FreeModuleElement> witness;
  /// Confirmed in some approximant as well (always true for m).
  bool explained_by_approximants = false;
};

struct AssReport {
  std::vector<AssVerdict> verdicts;
  /// Successive saturation at all confirmed primes and m reaches F.
  bool exhausted = false;

  std::vector<Ideal> confirmed() const;
  std::string to_json() const;
};

/// Witness search for associated primes of F/N among the candidates; m is
/// always tested as well.
AssReport ass_containment_check(const PresentedModule& m, const std::vector<Ideal>& candidates);
AssReport ass_containment_check(const ApproximationSystem& sys, const std::vector<Ideal>& candidates);

}  // namespace cmreg
