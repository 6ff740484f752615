#include "cmreg/linalg.hpp"

#include <algorithm>

namespace cmreg {

std::vector<std::size_t> row_reduce(Matrix& m, const Field& field) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t cols = m.front().size();
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t p = row;
    while (p < m.size() && Field::is_zero(m[p][c])) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    Scalar inv = field.inv(m[row][c]);
    for (auto& v : m[row]) v = field.mul(v, inv);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || Field::is_zero(m[r][c])) continue;
      Scalar f = m[r][c];
      for (std::size_t k = c; k < cols; ++k) field.sub_mul(m[r][k], f, m[row][k]);
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

std::size_t rank(Matrix m, const Field& field) { return row_reduce(m, field).size(); }

Matrix nullspace(Matrix m, std::size_t cols, const Field& field) {
  auto pivots = row_reduce(m, field);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  Matrix out;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(cols, Scalar(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = field.neg(m[r][free]);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Scalar> linear_coefficients(const Polynomial& f) {
  std::vector<Scalar> out(f.ring()->num_vars(), Scalar(0));
  for (const auto& t : f.terms()) {
    if (t.mono.degree() != 1) throw PreconditionError("not a linear form: " + f.to_string());
    for (std::size_t i = 0; i < out.size(); ++i)
      if (t.mono[i] == 1) out[i] = t.coeff;
  }
  return out;
}

Polynomial linear_form(const RingPtr& ring, const std::vector<Scalar>& coeffs) {
  if (coeffs.size() != ring->num_vars()) throw DimensionError("one coefficient per variable required");
  std::vector<Term> terms;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    terms.push_back(Term{coeffs[i], Monomial::variable(ring->num_vars(), i)});
  return Polynomial(ring, std::move(terms));
}

std::vector<Monomial> monomials_of_degree(std::size_t num_vars, int d) {
  std::vector<Monomial> out;
  if (d < 0 || num_vars == 0) {
    if (d == 0) out.emplace_back(num_vars);
    return out;
  }
  Monomial m(num_vars);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == num_vars) {
      m.set(i, left);
      out.push_back(m);
      return;
    }
    for (int k = left; k >= 0; --k) {
      m.set(i, k);
      self(self, i + 1, left - k);
    }
  };
  rec(rec, 0, d);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return grevlex_cmp(a, b) > 0; });
  return out;
}

}  // namespace cmreg
