#include "fdopt/spectral.hpp"

#include <algorithm>
#include <complex>
#include <stdexcept>
#include <string>

#include "fdopt/errors.hpp"
#include "fdopt/kernel.hpp"

namespace fdopt {

namespace {

Real factorial(int n) {
  Real out = 1;
  for (int i = 2; i <= n; ++i) out *= i;
  return out;
}

Cplx poly_eval_c(const RealPoly& p, const Cplx& z) {
  Cplx acc;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + Cplx(*it);
  return acc;
}

// All roots in double precision by Durand-Kerner simultaneous iteration;
// good to ~1e-12, which is plenty for the multiprecision Newton polish.
std::vector<std::complex<double>> seed_roots(const RealPoly& p) {
  const int deg = static_cast<int>(p.size()) - 1;
  double scale = 0;
  for (const auto& coeff : p) scale = std::max(scale, static_cast<double>(abs(coeff)));
  std::vector<std::complex<double>> c(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) c[i] = static_cast<double>(p[i] / scale);

  std::vector<std::complex<double>> z(deg);
  const std::complex<double> ratio(0.4, 0.9);  // conventional non-real seed spread
  std::complex<double> cur(1.0, 0.0);
  for (int i = 0; i < deg; ++i) {
    cur *= ratio;
    z[i] = cur;
  }
  auto eval = [&](std::complex<double> x) {
    std::complex<double> acc = 0;
    for (int i = deg; i >= 0; --i) acc = acc * x + c[i];
    return acc;
  };
  for (int iter = 0; iter < 400; ++iter) {
    double moved = 0;
    for (int i = 0; i < deg; ++i) {
      std::complex<double> denom = c[deg];
      for (int j = 0; j < deg; ++j) {
        if (j != i) denom *= z[i] - z[j];
      }
      const std::complex<double> delta = eval(z[i]) / denom;
      z[i] -= delta;
      moved = std::max(moved, std::abs(delta));
    }
    if (moved < 1e-14) break;
  }
  return z;
}

Cplx newton_polish(const RealPoly& p, const RealPoly& dp, Cplx z, unsigned bits) {
  const Real tol = ldexp(Real(1), -static_cast<int>(bits) + 6);
  for (int iter = 0; iter < 200; ++iter) {
    const Cplx val = poly_eval_c(p, z);
    const Cplx der = poly_eval_c(dp, z);
    const Cplx step = val / der;
    z -= step;
    if (abs(step) <= tol * (abs(z) + tol)) break;
  }
  return z;
}

}  // namespace

CharPolynomial build_char_poly(int m, const Real& h) {
  if (m < 3) throw std::invalid_argument("build_char_poly: m must be >= 3");
  if (!(h > 0) || h > 1) throw std::invalid_argument("build_char_poly: h must be in (0, 1]");

  const Real e_h = exp(h);
  const Real e_2h = exp(2 * h);
  const RealPoly one_minus{Real(1), Real(-1)};

  // (1 - e^{2h})(1 - t)^{2m-4}
  RealPoly p = poly_scale(poly_pow(one_minus, 2 * m - 4), 1 - e_2h);

  // bracket = sum_{s=0}^{m-3} h^{2s+1} (1 - t)^{2m-6-2s} E_{2s}(t) / (2s+1)!
  RealPoly bracket{Real(0)};
  for (int s = 0; s <= m - 3; ++s) {
    const IntPolynomial euler = euler_frobenius(2 * s);
    RealPoly ep(euler.coefficients.size());
    for (std::size_t i = 0; i < ep.size(); ++i) ep[i] = euler.coefficients[i];
    RealPoly term = poly_mul(poly_pow(one_minus, 2 * m - 6 - 2 * s), ep);
    term = poly_scale(term, pow(h, 2 * s + 1) / factorial(2 * s + 1));
    bracket = poly_add(bracket, term);
  }

  // t (e^{2h} + 1) - e^h (t^2 + 1)
  const RealPoly quad{-e_h, e_2h + 1, -e_h};

  p = poly_add(p, poly_scale(poly_mul(quad, bracket), Real(-2)));

  CharPolynomial out;
  out.coefficients = std::move(p);
  out.m = m;
  out.h = h;
  return out;
}

std::vector<Cplx> unit_disk_roots(const CharPolynomial& p) {
  const int deg = 2 * p.m - 4;
  if (static_cast<int>(p.coefficients.size()) != deg + 1) {
    throw std::invalid_argument("unit_disk_roots: polynomial degree mismatch");
  }
  const unsigned bits = working_precision_bits();
  const RealPoly dp = poly_derivative(p.coefficients);

  const auto seeds = seed_roots(p.coefficients);
  std::vector<Cplx> polished;
  polished.reserve(seeds.size());
  const Real snap = ldexp(Real(1), -static_cast<int>(3 * bits / 4));
  for (const auto& s : seeds) {
    Cplx z = newton_polish(p.coefficients, dp, Cplx(Real(s.real()), Real(s.imag())), bits);
    if (abs(z.im) <= snap * (abs(z.re) + 1)) z.im = 0;  // real root with residual noise
    polished.push_back(z);
  }

  const Real margin("1e-10");
  std::vector<Cplx> inside, outside;
  for (const auto& z : polished) {
    const Real mag = abs(z);
    if (mag > 1 - margin && mag < 1 + margin) {
      throw RootOnCircle("characteristic root within 1e-10 of the unit circle (degenerate step size h=" +
                         p.h.str(6) + ")");
    }
    (mag < 1 ? inside : outside).push_back(z);
  }
  if (static_cast<int>(inside.size()) != p.m - 2) {
    throw FitFailure("expected " + std::to_string(p.m - 2) + " unit-disk roots, found " +
                     std::to_string(inside.size()));
  }

  // Reciprocal pairing: every inside root must match an outside root.
  const Real pair_tol("1e-25");
  for (const auto& z : inside) {
    const Cplx rec = Cplx(Real(1)) / z;
    bool found = false;
    for (const auto& w : outside) {
      if (abs(w - rec) <= pair_tol * abs(rec)) {
        found = true;
        break;
      }
    }
    if (!found) {
      throw FitFailure("reciprocal pairing of characteristic roots failed");
    }
  }

  std::sort(inside.begin(), inside.end(), [](const Cplx& a, const Cplx& b) {
    const Real ma = abs(a), mb = abs(b);
    if (ma != mb) return ma < mb;
    return atan2(a.im, a.re) < atan2(b.im, b.re);
  });
  return inside;
}

SpectralRep fit_amplitudes(const OptimalFormula& opt, const std::vector<Cplx>& roots) {
  const FormulaParams& params = opt.formula.params;
  const int m = params.m;
  const int k = params.k;
  const int pairs = m - 2;
  if (k - 2 < 2 * pairs) {
    throw std::invalid_argument("fit_amplitudes requires k-2 >= 2(m-2) interior nodes (got k=" +
                                std::to_string(k) + ", m=" + std::to_string(m) + ")");
  }
  if (static_cast<int>(roots.size()) != pairs) {
    throw std::invalid_argument("fit_amplitudes: expected m-2 roots");
  }

  // Interpolation nodes nearest the two ends: beta = 1..m-2 and
  // beta = k-1-(m-2)..k-2.
  std::vector<int> nodes;
  for (int b = 1; b <= pairs; ++b) nodes.push_back(b);
  for (int b = k - 1 - pairs; b <= k - 2; ++b) nodes.push_back(b);

  const int n = 2 * pairs;
  std::vector<std::vector<Cplx>> a(n, std::vector<Cplx>(n));
  std::vector<Cplx> rhs(n);
  for (int i = 0; i < n; ++i) {
    const int beta = nodes[i];
    for (int j = 0; j < pairs; ++j) {
      a[i][j] = cpow(roots[j], beta);
      a[i][pairs + j] = cpow(roots[j], k - beta);
    }
    rhs[i] = Cplx(opt.formula.C1[beta]);
  }

  // Small complex Gaussian elimination with partial pivoting.
  for (int col = 0; col < n; ++col) {
    int piv = col;
    Real best = abs(a[col][col]);
    for (int r = col + 1; r < n; ++r) {
      if (abs(a[r][col]) > best) {
        best = abs(a[r][col]);
        piv = r;
      }
    }
    if (best == 0) throw FitFailure("amplitude interpolation matrix is singular");
    std::swap(a[piv], a[col]);
    std::swap(rhs[piv], rhs[col]);
    for (int r = col + 1; r < n; ++r) {
      const Cplx mult = a[r][col] / a[col][col];
      for (int j = col; j < n; ++j) a[r][j] -= mult * a[col][j];
      rhs[r] -= mult * rhs[col];
    }
  }
  std::vector<Cplx> sol(n);
  for (int i = n - 1; i >= 0; --i) {
    Cplx acc = rhs[i];
    for (int j = i + 1; j < n; ++j) acc -= a[i][j] * sol[j];
    sol[i] = acc / a[i][i];
  }

  SpectralRep rep;
  rep.params = params;
  rep.roots = roots;
  rep.M.assign(sol.begin(), sol.begin() + pairs);
  rep.N.assign(sol.begin() + pairs, sol.end());
  rep.C0 = 0;
  rep.Ck1 = 0;

  // Verify the representation at every interior node.
  const Real tol("1e-20");
  const Real imag_tol("1e-28");
  Real worst = 0;
  for (int beta = 1; beta <= k - 2; ++beta) {
    Cplx rec;
    for (int j = 0; j < pairs; ++j) {
      rec += rep.M[j] * cpow(roots[j], beta) + rep.N[j] * cpow(roots[j], k - beta);
    }
    const Real target = opt.formula.C1[beta];
    const Real scale = std::max(Real(1), abs(target));
    const Real res = abs(Cplx(rec.re - target, rec.im)) / scale;
    if (abs(rec.im) > imag_tol * scale) {
      throw FitFailure("reconstructed interior coefficient has a non-negligible imaginary part");
    }
    if (res > tol) {
      throw FitFailure("root-based representation failed verification at beta=" + std::to_string(beta) +
                       " (residual " + res.str(3) +
                       "); if this is systematic, suspect the Euler polynomial convention or the root set");
    }
    if (res > worst) worst = res;
  }
  rep.max_fit_residual = worst;
  return rep;
}

std::pair<Real, Real> boundary_coeffs(const SpectralRep& rep) {
  const int k = rep.params.k;
  const Real h = rep.params.h();
  const int pairs = static_cast<int>(rep.roots.size());

  const Real e_h = exp(h);
  const Real e_hk = exp(h * k);
  const Real e_hk_h = exp(h * k - h);
  const Real e_hk_2h = exp(h * k - 2 * h);
  const Real denom = e_hk_h - 1;

  Cplx sum0, sumk;
  for (int j = 0; j < pairs; ++j) {
    const Cplx& lam = rep.roots[j];
    const Cplx& mj = rep.M[j];
    const Cplx& nj = rep.N[j];
    const Cplx lam_k2 = cpow(lam, k - 2);
    const Cplx one(Real(1));

    const Cplx shared = (mj + nj * lam) * (one - lam_k2) * lam / (one - lam);

    const Cplx denom_j = (Cplx(e_h) - lam) * (lam * Cplx(e_h) - one);
    const Cplx num0 = mj * (Cplx(e_hk_2h) - lam_k2) * (lam * Cplx(e_h) - one) * lam * Cplx(e_h) +
                      nj * (lam_k2 * Cplx(e_hk_2h) - one) * (Cplx(e_h) - lam) * lam * lam * Cplx(e_h);
    sum0 += shared - num0 / denom_j;

    const Cplx numk = mj * (Cplx(e_hk_2h) - lam_k2) * (lam * Cplx(e_h) - one) * lam +
                      nj * (lam_k2 * Cplx(e_hk_2h) - one) * (Cplx(e_h) - lam) * lam * lam;
    sumk += shared - numk / (denom_j * Cplx(e_hk_2h));
  }

  const Cplx c0 = Cplx((e_h - h * e_h - 1) / (h * e_h * denom)) + sum0 / Cplx(denom);
  const Cplx ck1 = Cplx((h * e_hk - e_h + 1) / (h * e_h * denom)) - Cplx(e_hk_h / denom) * sumk;

  const Real imag_tol("1e-28");
  if (abs(c0.im) > imag_tol * (abs(c0.re) + 1) || abs(ck1.im) > imag_tol * (abs(ck1.re) + 1)) {
    throw FitFailure("boundary coefficient came out with a non-negligible imaginary part");
  }
  return {c0.re, ck1.re};
}

CrossValidation cross_validate(const FormulaParams& params) {
  params.validate();

  CrossValidation out;
  out.params = params;
  out.direct = solve_adams(params);

  const CharPolynomial cp = build_char_poly(params.m, params.h());
  {
    Real max_coeff = 0, worst = 0;
    const std::size_t n = cp.coefficients.size();
    for (std::size_t i = 0; i < n; ++i) {
      max_coeff = std::max(max_coeff, abs(cp.coefficients[i]));
      worst = std::max(worst, abs(cp.coefficients[i] - cp.coefficients[n - 1 - i]));
    }
    out.palindromy_residual = worst / max_coeff;
  }

  const std::vector<Cplx> roots = unit_disk_roots(cp);
  out.rep = fit_amplitudes(out.direct, roots);
  const auto [c0, ck1] = boundary_coeffs(out.rep);
  out.rep.C0 = c0;
  out.rep.Ck1 = ck1;
  out.max_fit_residual = out.rep.max_fit_residual;

  const Real& d0 = out.direct.formula.C1[0];
  const Real& dk = out.direct.formula.C1[params.k - 1];
  out.boundary_c0_discrepancy = abs(c0 - d0) / std::max(Real(1), abs(d0));
  out.boundary_ck1_discrepancy = abs(ck1 - dk) / std::max(Real(1), abs(dk));
  return out;
}

}  // namespace fdopt
