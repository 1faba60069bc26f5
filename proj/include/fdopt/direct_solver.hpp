#pragma once

#include <cstdint>
#include <vector>

#include "fdopt/functional.hpp"
#include "fdopt/linalg.hpp"

namespace fdopt {

// Explicit Adams-type specialization: the left coefficients are the
// two-point difference (C_k = 1, C_{k-1} = -1, else 0) and the derivative
// support is {0..k-1}, i.e. C1[k] = 0.
struct AdamsSpec {
  FormulaParams params;
};

enum class UnknownKind { Coefficient, PolyMultiplier, ExpMultiplier };

struct UnknownLabel {
  UnknownKind kind;
  int index;  // node beta for Coefficient, power for PolyMultiplier
};

// Square system for the derivative coefficients on the support plus the
// m-1 multipliers of the discrete-argument function (polynomial of degree
// m-3 and the exponential term).
struct SlaeSystem {
  Matrix matrix;
  std::vector<Real> rhs;
  std::vector<UnknownLabel> unknown_labels;
  FormulaParams params;
  std::vector<Real> C;
  std::vector<int> support;
};

struct OptimalFormula {
  FdFormula formula;
  std::vector<Real> multipliers;  // P_{m-3} coefficients ascending, then the exponential multiplier
  std::vector<int> support;       // nodes whose variational equations were imposed
  Real residual_norm;
  Real condition_estimate;
};

std::vector<Real> adams_left_coeffs(const FormulaParams& params);

// Right-hand sides of the variational and constraint rows. The generic
// forms sum the kernels against arbitrary left coefficients; the *_adams
// forms are the simplified closed forms valid for the Adams left
// coefficients. Both paths are kept; tests hold them against each other.
std::vector<Real> rhs_f(const FormulaParams& params, const std::vector<Real>& C);
Real rhs_f_adams(const FormulaParams& params, int beta);
Real rhs_g_alpha(const FormulaParams& params, const std::vector<Real>& C, int alpha);
Real rhs_g_alpha_adams(const FormulaParams& params, int alpha);
Real rhs_g_exp(const FormulaParams& params, const std::vector<Real>& C);
Real rhs_g_exp_adams(const FormulaParams& params);

SlaeSystem assemble(const AdamsSpec& spec);
SlaeSystem assemble_generic(const FormulaParams& params, const std::vector<Real>& C);

OptimalFormula solve(const SlaeSystem& system);
OptimalFormula solve_adams(const FormulaParams& params);

struct BabuskaReport {
  std::vector<Real> residuals;  // raw residual of the variational equation per support node
  std::vector<Real> scales;     // sum of absolute term magnitudes per node
};

// Re-evaluates the variational equations at every support node with fresh
// kernel evaluations (independent of the assembled matrix).
BabuskaReport babuska_report(const OptimalFormula& opt);
std::vector<Real> babuska_node_check(const OptimalFormula& opt);

// Constraint rows (moments then exponential) over the support, as used both
// by the solver and by the perturbation machinery.
Matrix constraint_matrix(const FormulaParams& params, const std::vector<int>& support);

// Orthonormal basis of the null space of a (rows x cols, rows < cols)
// constraint matrix, via modified Gram-Schmidt on the coordinate directions.
std::vector<std::vector<Real>> null_space_basis(const Matrix& a);

// Deterministic unit-norm direction in the span of `basis`; `seed` and
// `index` fully determine the result across platforms.
std::vector<Real> seeded_null_direction(const std::vector<std::vector<Real>>& basis,
                                        std::uint64_t seed, int index);

// Discrete-argument functions on a contiguous integer support: the
// assembly vocabulary for the convolution form of the system.
struct DiscreteFunction {
  int lo = 0;                // first integer node
  std::vector<Real> values;  // values at lo, lo+1, ...

  Real at(int beta) const;
  int hi() const { return lo + static_cast<int>(values.size()) - 1; }
};

Real discrete_inner_product(const DiscreteFunction& a, const DiscreteFunction& b);
DiscreteFunction discrete_convolution(const DiscreteFunction& a, const DiscreteFunction& b);

}  // namespace fdopt
