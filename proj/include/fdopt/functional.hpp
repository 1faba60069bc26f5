#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "fdopt/linalg.hpp"
#include "fdopt/precision.hpp"

namespace fdopt {

// Grid parameters: smoothness order m, grid density N (h = 1/N) and step
// count k. Node beta lives at h*beta for beta = 0..k.
struct FormulaParams {
  int m = 3;
  int N = 10;
  int k = 5;

  Real h() const { return Real(1) / N; }

  // Throws std::invalid_argument naming the violated invariant.
  void validate() const;
};

// A finite-difference formula: left coefficients C and derivative
// coefficients C1 on the grid nodes, both of length k+1.
struct FdFormula {
  FormulaParams params;
  std::vector<Real> C;
  std::vector<Real> C1;

  void validate_sizes() const;
};

// Test function with its exact analytic derivative (numerical
// differentiation never enters the library).
struct TestFunction {
  std::function<Real(const Real&)> value;
  std::function<Real(const Real&)> derivative;
  std::optional<Real> w_norm_hint;
};

// Test function able to produce any derivative order; order 0 is the value.
struct SmoothFunction {
  std::function<Real(int, const Real&)> derivative_of_order;
};

// l(phi) = sum_b C_b phi(h b) - h sum_b C1_b phi'(h b)
Real apply_functional(const FdFormula& f, const TestFunction& phi);

struct ConstraintReport {
  std::vector<Real> residuals;  // (l, x^a) for a = 0..m-2, then the exponential residual
  std::vector<Real> scales;     // same sums with every term in absolute value
};

ConstraintReport constraint_report(const FdFormula& f);

// Residuals of the exactness equations: (l, x^a) for a = 0..m-2 followed by
// g_exp - h sum C1_b e^{-h b}. All vanish iff the formula is admissible.
std::vector<Real> constraint_residuals(const FdFormula& f);

// Kernel Gram data for the norm evaluated once per (params, C); lets callers
// sweep many C1 vectors (perturbation tests) without re-evaluating kernels.
struct NormCache {
  int m = 3;
  Real h;
  Real s0;               // sum_{g,b} C_g C_b G_m(h g - h b)
  std::vector<Real> v;   // v_g = sum_b C_b G'_m(h g - h b)
  Matrix g2;             // G''_m(h g - h b)

  Real norm_squared(const std::vector<Real>& c1) const;
};

NormCache make_norm_cache(const FormulaParams& params, const std::vector<Real>& C);

// Square of the norm of the error functional. Only defined on the
// constrained set: throws AdmissibilityError when any constraint residual
// exceeds the admissibility tolerance relative to its scale.
Real norm_squared(const FdFormula& f);

// ||phi||^2 in the function space: integral over [0,1] of
// (phi^(m) + phi^(m-1))^2, by composite Gauss-Legendre refined until two
// successive panel counts agree to 1e-25 relative.
Real w_norm_sq(const SmoothFunction& phi, int m);

}  // namespace fdopt
