#pragma once

#include <cstddef>
#include <vector>

#include "fdopt/precision.hpp"

namespace fdopt {

// Dense row-major matrix of Real.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Real(0)) {}

  Real& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Real& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Real> data_;
};

struct LinearSolution {
  std::vector<Real> x;
  Real residual_norm;       // ||b - Ax||_inf / (||A||_inf ||x||_inf + ||b||_inf)
  Real condition_estimate;  // ||A||_inf ||A^-1||_inf via the explicit inverse
};

Real norm_inf(const std::vector<Real>& v);
Real matrix_norm_inf(const Matrix& a);

std::vector<Real> matvec(const Matrix& a, const std::vector<Real>& x);

// Gaussian elimination with partial pivoting (deterministic scan order: the
// first row of maximal pivot magnitude wins) followed by one step of
// iterative refinement. The systems here are at most a few dozen unknowns,
// so the condition number is taken from the explicit inverse rather than
// estimated. Throws SingularSystem when a pivot vanishes.
LinearSolution lu_solve(const Matrix& a, const std::vector<Real>& b);

}  // namespace fdopt
