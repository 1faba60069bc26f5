#include "fdopt/quadrature.hpp"

#include <algorithm>
#include <boost/math/constants/constants.hpp>
#include <stdexcept>
#include <utility>

#include "fdopt/errors.hpp"

namespace fdopt {

namespace {

// Legendre P_n and its derivative at x.
std::pair<Real, Real> legendre(unsigned n, const Real& x) {
  Real p0 = 1, p1 = x;
  for (unsigned j = 2; j <= n; ++j) {
    const Real p = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
    p0 = p1;
    p1 = p;
  }
  const Real dp = n * (x * p1 - p0) / (x * x - 1);
  return {p1, dp};
}

}  // namespace

QuadratureRule gauss_legendre(unsigned order) {
  if (order == 0) throw std::invalid_argument("gauss_legendre: order must be positive");
  QuadratureRule rule;
  rule.nodes.assign(order, Real(0));
  rule.weights.assign(order, Real(0));

  const Real pi = boost::math::constants::pi<Real>();
  const Real tol = working_epsilon() * 4;

  // Roots come in +/- pairs; compute the lower half and mirror.
  for (unsigned i = 1; i <= (order + 1) / 2; ++i) {
    Real x = cos(pi * (Real(i) - Real(0.25)) / (Real(order) + Real(0.5)));
    for (int iter = 0; iter < 200; ++iter) {
      const auto pd = legendre(order, x);
      const Real dx = pd.first / pd.second;
      x -= dx;
      if (abs(dx) <= tol * (abs(x) + 1)) break;
    }
    const Real dp = legendre(order, x).second;
    const Real w = 2 / ((1 - x * x) * dp * dp);
    rule.nodes[i - 1] = -x;  // ascending order
    rule.weights[i - 1] = w;
    rule.nodes[order - i] = x;
    rule.weights[order - i] = w;
  }
  // Odd order: the middle node is exactly zero.
  if (order % 2 == 1) rule.nodes[order / 2] = 0;
  return rule;
}

Real integrate_composite(const std::function<Real(const Real&)>& f, const Real& a, const Real& b,
                         const QuadratureRule& rule, unsigned panels) {
  const Real width = (b - a) / panels;
  Real total = 0;
  for (unsigned p = 0; p < panels; ++p) {
    const Real lo = a + width * p;
    const Real mid = lo + width / 2;
    const Real half = width / 2;
    Real panel = 0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      panel += rule.weights[i] * f(mid + half * rule.nodes[i]);
    }
    total += panel * half;
  }
  return total;
}

Real integrate_adaptive(const std::function<Real(const Real&)>& f, const Real& a, const Real& b,
                        unsigned order, const Real& rel_tol, unsigned max_refinements) {
  const QuadratureRule rule = gauss_legendre(order);
  Real prev = integrate_composite(f, a, b, rule, 1);
  unsigned panels = 2;
  for (unsigned r = 0; r < max_refinements; ++r, panels *= 2) {
    const Real cur = integrate_composite(f, a, b, rule, panels);
    const Real scale = std::max(abs(prev), abs(cur));
    if (abs(cur - prev) <= rel_tol * scale) return cur;
    prev = cur;
  }
  throw NonConvergence("quadrature refinement stalled before reaching the requested tolerance");
}

}  // namespace fdopt
