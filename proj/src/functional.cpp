#include "fdopt/functional.hpp"

#include <stdexcept>
#include <string>

#include "fdopt/errors.hpp"
#include "fdopt/kernel.hpp"
#include "fdopt/quadrature.hpp"

namespace fdopt {

namespace {

// (h*beta)^a with the 0^0 = 1 convention used throughout the moment rows.
Real grid_pow(const Real& x, int a) {
  if (a == 0) return Real(1);
  return pow(x, a);
}

}  // namespace

void FormulaParams::validate() const {
  if (m < 3) throw std::invalid_argument("m must be >= 3 (got " + std::to_string(m) + ")");
  if (N < 1) throw std::invalid_argument("N must be positive (got " + std::to_string(N) + ")");
  if (k < m) {
    throw std::invalid_argument("k must be >= m so the constraint system is under-determined (got k=" +
                                std::to_string(k) + ", m=" + std::to_string(m) + ")");
  }
  if (k > N) {
    throw std::invalid_argument("h*k must not exceed 1, i.e. k <= N (got k=" + std::to_string(k) +
                                ", N=" + std::to_string(N) + ")");
  }
}

void FdFormula::validate_sizes() const {
  const std::size_t want = static_cast<std::size_t>(params.k) + 1;
  if (C.size() != want || C1.size() != want) {
    throw std::invalid_argument("coefficient vectors must have length k+1");
  }
}

Real apply_functional(const FdFormula& f, const TestFunction& phi) {
  f.validate_sizes();
  const Real h = f.params.h();
  Real sum_c = 0, sum_c1 = 0;
  for (int b = 0; b <= f.params.k; ++b) {
    const Real x = h * b;
    sum_c += f.C[b] * phi.value(x);
    sum_c1 += f.C1[b] * phi.derivative(x);
  }
  return sum_c - h * sum_c1;
}

ConstraintReport constraint_report(const FdFormula& f) {
  f.validate_sizes();
  const int m = f.params.m;
  const int k = f.params.k;
  const Real h = f.params.h();

  ConstraintReport report;
  // (l, x^a) = sum C_b (h b)^a - h sum C1_b a (h b)^{a-1}
  for (int a = 0; a <= m - 2; ++a) {
    Real res = 0, scale = 0;
    for (int b = 0; b <= k; ++b) {
      const Real x = h * b;
      const Real t_value = f.C[b] * grid_pow(x, a);
      const Real t_deriv = (a == 0) ? Real(0) : Real(h * f.C1[b] * a * grid_pow(x, a - 1));
      res += t_value - t_deriv;
      scale += abs(t_value) + abs(t_deriv);
    }
    report.residuals.push_back(res);
    report.scales.push_back(scale);
  }
  // Exponential equation in constraint form: -sum C_b e^{-hb} - h sum C1_b e^{-hb}
  {
    Real res = 0, scale = 0;
    for (int b = 0; b <= k; ++b) {
      const Real e = exp(-h * b);
      const Real t_value = f.C[b] * e;
      const Real t_deriv = h * f.C1[b] * e;
      res -= t_value + t_deriv;
      scale += abs(t_value) + abs(t_deriv);
    }
    report.residuals.push_back(res);
    report.scales.push_back(scale);
  }
  return report;
}

std::vector<Real> constraint_residuals(const FdFormula& f) { return constraint_report(f).residuals; }

Real NormCache::norm_squared(const std::vector<Real>& c1) const {
  const std::size_t n = v.size();
  Real t1 = 0, t2 = 0;
  for (std::size_t g = 0; g < n; ++g) {
    t1 += c1[g] * v[g];
    Real row = 0;
    for (std::size_t b = 0; b < n; ++b) row += g2(g, b) * c1[b];
    t2 += c1[g] * row;
  }
  const Real bracket = s0 - 2 * h * t1 - h * h * t2;
  return (m % 2 == 0) ? bracket : -bracket;
}

NormCache make_norm_cache(const FormulaParams& params, const std::vector<Real>& C) {
  params.validate();
  const int k = params.k;
  const Real h = params.h();
  const KernelFamily kernel(params.m);

  NormCache cache;
  cache.m = params.m;
  cache.h = h;
  cache.v.assign(k + 1, Real(0));
  cache.g2 = Matrix(k + 1, k + 1);
  cache.s0 = 0;
  for (int g = 0; g <= k; ++g) {
    for (int b = 0; b <= k; ++b) {
      const Real x = h * g - h * b;
      cache.s0 += C[g] * C[b] * kernel.g(x);
      cache.v[g] += C[b] * kernel.g1(x);
      cache.g2(g, b) = kernel.g2(x);
    }
  }
  return cache;
}

Real norm_squared(const FdFormula& f) {
  f.validate_sizes();
  const ConstraintReport report = constraint_report(f);
  const Real tol = admissibility_tolerance();
  for (std::size_t i = 0; i < report.residuals.size(); ++i) {
    if (abs(report.residuals[i]) > tol * report.scales[i]) {
      const std::string which = i + 1 < report.residuals.size()
                                    ? "x^" + std::to_string(i)
                                    : std::string("e^-x");
      throw AdmissibilityError("constraint (l, " + which + ") violated beyond tolerance; the norm formula only holds on the constrained set");
    }
  }
  const NormCache cache = make_norm_cache(f.params, f.C);
  return cache.norm_squared(f.C1);
}

Real w_norm_sq(const SmoothFunction& phi, int m) {
  if (m < 3) throw std::invalid_argument("w_norm_sq: m must be >= 3");
  const auto integrand = [&](const Real& x) {
    const Real s = phi.derivative_of_order(m, x) + phi.derivative_of_order(m - 1, x);
    return s * s;
  };
  return integrate_adaptive(integrand, Real(0), Real(1), quadrature_order(), Real("1e-25"));
}

}  // namespace fdopt
