#include "fdopt/direct_solver.hpp"

#include <random>
#include <stdexcept>
#include <string>

#include "fdopt/errors.hpp"
#include "fdopt/kernel.hpp"

namespace fdopt {

namespace {

Real grid_pow(const Real& x, int a) {
  if (a == 0) return Real(1);
  return pow(x, a);
}

Real factorial(int n) {
  Real out = 1;
  for (int i = 2; i <= n; ++i) out *= i;
  return out;
}

std::vector<int> make_support(int lo, int hi) {
  std::vector<int> s;
  for (int b = lo; b <= hi; ++b) s.push_back(b);
  return s;
}

SlaeSystem assemble_impl(const FormulaParams& params, std::vector<Real> C, std::vector<int> support) {
  params.validate();
  const int m = params.m;
  const Real h = params.h();
  const KernelFamily kernel(m);

  const std::size_t ns = support.size();
  const std::size_t n_mult = static_cast<std::size_t>(m) - 1;
  if (ns < n_mult) {
    throw DimensionError("support too small: " + std::to_string(ns) + " variational rows cannot carry " +
                         std::to_string(n_mult) + " multipliers");
  }
  const std::size_t n = ns + n_mult;

  SlaeSystem sys;
  sys.params = params;
  sys.C = std::move(C);
  sys.support = std::move(support);
  sys.matrix = Matrix(n, n);
  sys.rhs.assign(n, Real(0));

  for (std::size_t i = 0; i < ns; ++i) {
    sys.unknown_labels.push_back({UnknownKind::Coefficient, sys.support[i]});
  }
  for (int a = 0; a <= m - 3; ++a) {
    sys.unknown_labels.push_back({UnknownKind::PolyMultiplier, a});
  }
  sys.unknown_labels.push_back({UnknownKind::ExpMultiplier, 0});

  const std::vector<Real> f = rhs_f(params, sys.C);

  // Variational rows, one per support node.
  for (std::size_t i = 0; i < ns; ++i) {
    const int beta = sys.support[i];
    const Real x = h * beta;
    for (std::size_t j = 0; j < ns; ++j) {
      sys.matrix(i, j) = h * kernel.g2(x - h * sys.support[j]);
    }
    for (int a = 0; a <= m - 3; ++a) {
      sys.matrix(i, ns + a) = grid_pow(x, a);
    }
    sys.matrix(i, ns + n_mult - 1) = exp(-x);
    sys.rhs[i] = f[beta];
  }

  // Moment rows alpha = 1..m-2, then the exponential row.
  std::size_t row = ns;
  for (int alpha = 1; alpha <= m - 2; ++alpha, ++row) {
    for (std::size_t j = 0; j < ns; ++j) {
      sys.matrix(row, j) = h * grid_pow(h * sys.support[j], alpha - 1);
    }
    sys.rhs[row] = rhs_g_alpha(params, sys.C, alpha);
  }
  for (std::size_t j = 0; j < ns; ++j) {
    sys.matrix(row, j) = h * exp(-h * sys.support[j]);
  }
  sys.rhs[row] = rhs_g_exp(params, sys.C);

  return sys;
}

}  // namespace

std::vector<Real> adams_left_coeffs(const FormulaParams& params) {
  if (params.k < 2) throw std::invalid_argument("adams_left_coeffs: k must be >= 2");
  std::vector<Real> C(params.k + 1, Real(0));
  C[params.k] = 1;
  C[params.k - 1] = -1;
  return C;
}

std::vector<Real> rhs_f(const FormulaParams& params, const std::vector<Real>& C) {
  const int k = params.k;
  const Real h = params.h();
  const KernelFamily kernel(params.m);
  std::vector<Real> out(k + 1, Real(0));
  for (int beta = 0; beta <= k; ++beta) {
    Real acc = 0;
    for (int g = 0; g <= k; ++g) acc += C[g] * kernel.g1(h * beta - h * g);
    out[beta] = -acc;
  }
  return out;
}

Real rhs_f_adams(const FormulaParams& params, int beta) {
  const int m = params.m;
  const int k = params.k;
  const Real h = params.h();
  if (beta == k) {
    // (1/2)(cosh h - sum_{j=1}^{m-1} h^{2j-2}/(2j-2)!)
    Real sum = 0;
    for (int j = 1; j <= m - 1; ++j) sum += grid_pow(h, 2 * j - 2) / factorial(2 * j - 2);
    return (cosh(h) - sum) / 2;
  }
  const Real x = h * beta - h * k;  // x <= -h < 0
  Real sum = 0;
  for (int j = 2; j <= m - 1; ++j) {
    sum += (grid_pow(x, 2 * j - 2) - grid_pow(x + h, 2 * j - 2)) / factorial(2 * j - 2);
  }
  return (exp(x) / 2 * (1 - exp(h)) + exp(-x) / 2 * (1 - exp(-h)) - sum) / 2;
}

Real rhs_g_alpha(const FormulaParams& params, const std::vector<Real>& C, int alpha) {
  if (alpha < 1 || alpha > params.m - 2) {
    throw std::invalid_argument("rhs_g_alpha: alpha must be in 1..m-2");
  }
  const Real h = params.h();
  Real acc = 0;
  for (int g = 0; g <= params.k; ++g) acc += C[g] * grid_pow(h * g, alpha);
  return acc / alpha;
}

Real rhs_g_alpha_adams(const FormulaParams& params, int alpha) {
  if (alpha < 1 || alpha > params.m - 2) {
    throw std::invalid_argument("rhs_g_alpha_adams: alpha must be in 1..m-2");
  }
  const Real h = params.h();
  const int k = params.k;
  return grid_pow(h, alpha) / alpha * (grid_pow(Real(k), alpha) - grid_pow(Real(k - 1), alpha));
}

Real rhs_g_exp(const FormulaParams& params, const std::vector<Real>& C) {
  const Real h = params.h();
  Real acc = 0;
  for (int g = 0; g <= params.k; ++g) acc += C[g] * exp(-h * g);
  return -acc;
}

Real rhs_g_exp_adams(const FormulaParams& params) {
  const Real h = params.h();
  const Real hk = h * params.k;
  return exp(-hk + h) - exp(-hk);
}

SlaeSystem assemble(const AdamsSpec& spec) {
  return assemble_impl(spec.params, adams_left_coeffs(spec.params), make_support(0, spec.params.k - 1));
}

SlaeSystem assemble_generic(const FormulaParams& params, const std::vector<Real>& C) {
  if (C.size() != static_cast<std::size_t>(params.k) + 1) {
    throw std::invalid_argument("assemble_generic: C must have length k+1");
  }
  return assemble_impl(params, C, make_support(0, params.k));
}

OptimalFormula solve(const SlaeSystem& system) {
  const LinearSolution sol = lu_solve(system.matrix, system.rhs);

  OptimalFormula out;
  out.formula.params = system.params;
  out.formula.C = system.C;
  out.formula.C1.assign(system.params.k + 1, Real(0));
  const std::size_t ns = system.support.size();
  for (std::size_t i = 0; i < ns; ++i) {
    out.formula.C1[system.support[i]] = sol.x[i];
  }
  out.multipliers.assign(sol.x.begin() + ns, sol.x.end());
  out.support = system.support;
  out.residual_norm = sol.residual_norm;
  out.condition_estimate = sol.condition_estimate;
  return out;
}

OptimalFormula solve_adams(const FormulaParams& params) { return solve(assemble(AdamsSpec{params})); }

BabuskaReport babuska_report(const OptimalFormula& opt) {
  const FormulaParams& params = opt.formula.params;
  const int m = params.m;
  const int k = params.k;
  const Real h = params.h();
  const KernelFamily kernel(m);

  BabuskaReport report;
  for (const int beta : opt.support) {
    const Real x = h * beta;
    Real lhs = 0, scale = 0;
    for (int g = 0; g <= k; ++g) {
      const Real term = h * opt.formula.C1[g] * kernel.g2(x - h * g);
      lhs += term;
      scale += abs(term);
    }
    for (int a = 0; a <= m - 3; ++a) {
      const Real term = opt.multipliers[a] * grid_pow(x, a);
      lhs += term;
      scale += abs(term);
    }
    {
      const Real term = opt.multipliers[m - 2] * exp(-x);
      lhs += term;
      scale += abs(term);
    }
    Real f = 0;
    for (int g = 0; g <= k; ++g) f -= opt.formula.C[g] * kernel.g1(x - h * g);
    scale += abs(f);
    report.residuals.push_back(lhs - f);
    report.scales.push_back(scale);
  }
  return report;
}

std::vector<Real> babuska_node_check(const OptimalFormula& opt) { return babuska_report(opt).residuals; }

Matrix constraint_matrix(const FormulaParams& params, const std::vector<int>& support) {
  const int m = params.m;
  const Real h = params.h();
  Matrix a(m - 1, support.size());
  for (int alpha = 1; alpha <= m - 2; ++alpha) {
    for (std::size_t j = 0; j < support.size(); ++j) {
      a(alpha - 1, j) = h * grid_pow(h * support[j], alpha - 1);
    }
  }
  for (std::size_t j = 0; j < support.size(); ++j) {
    a(m - 2, j) = h * exp(-h * support[j]);
  }
  return a;
}

std::vector<std::vector<Real>> null_space_basis(const Matrix& a) {
  const std::size_t rows = a.rows(), cols = a.cols();

  // Orthonormalize the constraint rows, then project the coordinate
  // directions and keep the independent remainders.
  std::vector<std::vector<Real>> ortho;
  auto project_out = [&](std::vector<Real> v) {
    for (const auto& q : ortho) {
      Real dot = 0;
      for (std::size_t i = 0; i < cols; ++i) dot += q[i] * v[i];
      for (std::size_t i = 0; i < cols; ++i) v[i] -= dot * q[i];
    }
    return v;
  };
  auto norm2 = [&](const std::vector<Real>& v) {
    Real acc = 0;
    for (const auto& e : v) acc += e * e;
    return sqrt(acc);
  };

  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<Real> v(cols);
    for (std::size_t j = 0; j < cols; ++j) v[j] = a(r, j);
    v = project_out(v);
    const Real len = norm2(v);
    if (len == 0) continue;  // dependent constraint row
    for (auto& e : v) e /= len;
    ortho.push_back(std::move(v));
  }
  const std::size_t rank = ortho.size();

  std::vector<std::vector<Real>> basis;
  const Real drop = ldexp(Real(1), -static_cast<int>(working_precision_bits()) / 2);
  for (std::size_t j = 0; j < cols && basis.size() < cols - rank; ++j) {
    std::vector<Real> v(cols, Real(0));
    v[j] = 1;
    v = project_out(v);
    const Real len = norm2(v);
    if (len <= drop) continue;  // coordinate direction already spanned
    for (auto& e : v) e /= len;
    ortho.push_back(v);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Real> seeded_null_direction(const std::vector<std::vector<Real>>& basis,
                                        std::uint64_t seed, int index) {
  if (basis.empty()) throw std::invalid_argument("seeded_null_direction: empty basis");
  std::mt19937_64 engine(seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(index + 1)));
  const std::size_t dim = basis.front().size();
  std::vector<Real> z(dim, Real(0));
  for (const auto& q : basis) {
    // Map the raw 64-bit draw to [-1, 1] without distribution objects so the
    // stream is identical across standard libraries.
    const double c = static_cast<double>(engine() >> 11) * 0x1p-52 - 1.0;
    for (std::size_t i = 0; i < dim; ++i) z[i] += Real(c) * q[i];
  }
  Real len = 0;
  for (const auto& e : z) len += e * e;
  len = sqrt(len);
  if (len == 0) return seeded_null_direction(basis, seed, index + 7919);
  for (auto& e : z) e /= len;
  return z;
}

Real DiscreteFunction::at(int beta) const {
  const int idx = beta - lo;
  if (idx < 0 || idx >= static_cast<int>(values.size())) return Real(0);
  return values[idx];
}

Real discrete_inner_product(const DiscreteFunction& a, const DiscreteFunction& b) {
  Real acc = 0;
  for (int beta = a.lo; beta <= a.hi(); ++beta) acc += a.at(beta) * b.at(beta);
  return acc;
}

DiscreteFunction discrete_convolution(const DiscreteFunction& a, const DiscreteFunction& b) {
  if (a.values.empty() || b.values.empty()) return {};
  DiscreteFunction out;
  out.lo = a.lo + b.lo;
  out.values.assign(a.values.size() + b.values.size() - 1, Real(0));
  for (int i = 0; i < static_cast<int>(a.values.size()); ++i) {
    for (int j = 0; j < static_cast<int>(b.values.size()); ++j) {
      out.values[i + j] += a.values[i] * b.values[j];
    }
  }
  return out;
}

}  // namespace fdopt
