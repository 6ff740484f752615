#pragma once

#include <vector>

#include "cmreg/ring.hpp"

namespace cmreg {

using Matrix = std::vector<std::vector<Scalar>>;

/// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> row_reduce(Matrix& m, const Field& field);
std::size_t rank(Matrix m, const Field& field);
/// Basis of {v : m v = 0}; `cols` is needed when m has no rows.
Matrix nullspace(Matrix m, std::size_t cols, const Field& field);

/// Coefficient vector of a linear form (throws PreconditionError otherwise).
std::vector<Scalar> linear_coefficients(const Polynomial& f);
/// Linear form with the given coefficients.
Polynomial linear_form(const RingPtr& ring, const std::vector<Scalar>& coeffs);

/// Monomials of total degree d in the ring's variables, descending in grevlex.
std::vector<Monomial> monomials_of_degree(std::size_t num_vars, int d);

}  // namespace cmreg
