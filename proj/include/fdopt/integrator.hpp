#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fdopt/direct_solver.hpp"

namespace fdopt {

// Scalar initial-value problem on [0, 1]. The double-precision callables
// drive the default marching; the multiprecision variants back the
// full-precision mode used by exactness tests.
struct IvpProblem {
  std::string name;
  std::function<double(double, double)> rhs;
  double y0 = 0.0;
  std::function<double(double)> exact;  // empty when unknown
  std::function<Real(const Real&, const Real&)> rhs_mp;
  std::function<Real(const Real&)> exact_mp;

  bool has_exact() const { return static_cast<bool>(exact); }
};

enum class Startup { Exact, Rk4 };

struct Trajectory {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> error;  // |y - exact|, empty when no exact solution

  double max_abs_error() const;
};

// Marches y_n = y_{n-1} + h sum_b C1_b f(x_{n-k+b}, y_{n-k+b}) for n = k..N,
// the sliding-window application of the k-step rule. Startup values
// y_1..y_{k-1} come from the exact solution or from classical RK4 at the
// same h. The optimal coefficients are solved once at working precision and
// rounded to double unless `multiprecision` is set.
Trajectory integrate_optimal(const IvpProblem& problem, const OptimalFormula& opt, Startup startup,
                             bool multiprecision = false);
Trajectory integrate_optimal(const IvpProblem& problem, const FormulaParams& params, Startup startup,
                             bool multiprecision = false);

// Classical Adams-Bashforth weights for k_steps in 1..5, ascending node
// order (oldest first). Solved exactly from the monomial moment conditions
// over the rationals, not hard-coded.
std::vector<Real> adams_bashforth_weights(int k_steps);

Trajectory integrate_adams_bashforth(const IvpProblem& problem, int k_steps, int N, Startup startup);

struct ConvergenceRow {
  int N;
  double max_abs_error;
};

struct ConvergenceReport {
  std::string method;
  std::string problem;
  std::vector<ConvergenceRow> rows;
  std::optional<double> fitted_order;  // empty when the method reproduces the solution exactly
  bool exact_reproduction = false;
};

// Least-squares slope of -log(max error) against log N. Errors below the
// exact-reproduction floor (1e-13) yield an "exact" report instead of an
// order.
ConvergenceReport measure_order(const std::function<Trajectory(int)>& run, const std::string& method_name,
                                const std::string& problem_name, const std::vector<int>& n_list);

const std::vector<IvpProblem>& builtin_problems();
const IvpProblem* find_problem(const std::string& name);

}  // namespace fdopt
