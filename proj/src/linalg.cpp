#include "fdopt/linalg.hpp"

#include <stdexcept>
#include <string>
#include <utility>

#include "fdopt/errors.hpp"

namespace fdopt {

namespace {

struct LuFactor {
  Matrix lu;                     // L below the diagonal (unit), U on and above
  std::vector<std::size_t> perm; // row permutation
};

LuFactor factor(Matrix a) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    Real best = abs(a(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      const Real mag = abs(a(r, col));
      if (mag > best) {
        best = mag;
        piv = r;
      }
    }
    if (best == 0) {
      throw SingularSystem("pivot vanished in column " + std::to_string(col));
    }
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
      std::swap(perm[piv], perm[col]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const Real mult = a(r, col) / a(col, col);
      a(r, col) = mult;
      for (std::size_t j = col + 1; j < n; ++j) a(r, j) -= mult * a(col, j);
    }
  }
  return LuFactor{std::move(a), std::move(perm)};
}

std::vector<Real> solve_factored(const LuFactor& f, const std::vector<Real>& b) {
  const std::size_t n = f.lu.rows();
  std::vector<Real> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    Real acc = b[f.perm[i]];
    for (std::size_t j = 0; j < i; ++j) acc -= f.lu(i, j) * y[j];
    y[i] = acc;
  }
  std::vector<Real> x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    Real acc = y[ii];
    for (std::size_t j = ii + 1; j < n; ++j) acc -= f.lu(ii, j) * x[j];
    x[ii] = acc / f.lu(ii, ii);
  }
  return x;
}

}  // namespace

Real norm_inf(const std::vector<Real>& v) {
  Real out = 0;
  for (const auto& e : v) {
    const Real mag = abs(e);
    if (mag > out) out = mag;
  }
  return out;
}

Real matrix_norm_inf(const Matrix& a) {
  Real out = 0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Real row = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) row += abs(a(i, j));
    if (row > out) out = row;
  }
  return out;
}

std::vector<Real> matvec(const Matrix& a, const std::vector<Real>& x) {
  std::vector<Real> out(a.rows(), Real(0));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Real acc = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
    out[i] = acc;
  }
  return out;
}

LinearSolution lu_solve(const Matrix& a, const std::vector<Real>& b) {
  if (a.rows() != a.cols() || a.rows() != b.size()) {
    throw std::invalid_argument("lu_solve: system must be square and match the right-hand side");
  }
  const std::size_t n = a.rows();
  const LuFactor f = factor(a);

  std::vector<Real> x = solve_factored(f, b);

  // One refinement pass against the original matrix.
  std::vector<Real> r(n);
  {
    const std::vector<Real> ax = matvec(a, x);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - ax[i];
    const std::vector<Real> d = solve_factored(f, r);
    for (std::size_t i = 0; i < n; ++i) x[i] += d[i];
  }

  const std::vector<Real> ax = matvec(a, x);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - ax[i];
  const Real na = matrix_norm_inf(a);
  const Real denom = na * norm_inf(x) + norm_inf(b);
  const Real residual = denom > 0 ? Real(norm_inf(r) / denom) : Real(0);

  // Explicit inverse, column by column.
  Matrix inv(n, n);
  std::vector<Real> unit(n, Real(0));
  for (std::size_t j = 0; j < n; ++j) {
    unit[j] = 1;
    const std::vector<Real> col = solve_factored(f, unit);
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
    unit[j] = 0;
  }
  const Real cond = na * matrix_norm_inf(inv);

  return LinearSolution{std::move(x), residual, cond};
}

}  // namespace fdopt
