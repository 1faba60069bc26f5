#pragma once

#include <functional>
#include <vector>

#include "fdopt/precision.hpp"

namespace fdopt {

// Gauss-Legendre rule on [-1, 1].
struct QuadratureRule {
  std::vector<Real> nodes;
  std::vector<Real> weights;
};

// Nodes by Newton iteration on the Legendre recurrence, computed at the
// working precision.
QuadratureRule gauss_legendre(unsigned order);

Real integrate_composite(const std::function<Real(const Real&)>& f, const Real& a, const Real& b,
                         const QuadratureRule& rule, unsigned panels);

// Doubles the panel count until two successive values agree to rel_tol.
// Throws NonConvergence when max_refinements is exhausted.
Real integrate_adaptive(const std::function<Real(const Real&)>& f, const Real& a, const Real& b,
                        unsigned order, const Real& rel_tol, unsigned max_refinements = 24);

}  // namespace fdopt
