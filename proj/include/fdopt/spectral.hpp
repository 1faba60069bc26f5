#pragma once

#include <utility>
#include <vector>

#include "fdopt/complex.hpp"
#include "fdopt/direct_solver.hpp"
#include "fdopt/poly.hpp"

namespace fdopt {

// Characteristic polynomial of the interior coefficient recursion:
// self-reciprocal of degree 2m-4 with exactly m-2 roots strictly inside the
// unit disk (their reciprocals make up the rest).
struct CharPolynomial {
  RealPoly coefficients;  // ascending degree
  int m = 3;
  Real h;
};

// Root-based representation of the optimal derivative coefficients:
// interior nodes follow sum_j (M_j lambda_j^beta + N_j lambda_j^{k-beta}),
// and the two boundary coefficients have closed forms in the same data.
struct SpectralRep {
  std::vector<Cplx> roots;  // ascending |.|, ties by argument
  std::vector<Cplx> M;
  std::vector<Cplx> N;
  Real C0;
  Real Ck1;
  FormulaParams params;
  Real max_fit_residual;  // worst relative reconstruction residual over the interior
};

CharPolynomial build_char_poly(int m, const Real& h);

// The m-2 roots inside the unit disk, Newton-polished at working precision
// from double-precision simultaneous-iteration seeds. Deterministic order.
// Throws RootOnCircle when a root falls within 1e-10 of the circle.
std::vector<Cplx> unit_disk_roots(const CharPolynomial& p);

// Determines the amplitudes from the interior nodes nearest the two ends,
// then verifies the representation at every interior node (<= 1e-20
// relative). Requires k-2 >= 2(m-2); boundary coefficients are left unset.
SpectralRep fit_amplitudes(const OptimalFormula& opt, const std::vector<Cplx>& roots);

// Closed-form boundary coefficients from the fitted amplitudes.
std::pair<Real, Real> boundary_coeffs(const SpectralRep& rep);

struct CrossValidation {
  FormulaParams params;
  OptimalFormula direct;
  SpectralRep rep;
  Real palindromy_residual;         // relative to max |p_s|
  Real max_fit_residual;            // relative, over interior nodes
  Real boundary_c0_discrepancy;     // relative to max(1, |direct value|)
  Real boundary_ck1_discrepancy;
};

// Direct solve -> characteristic roots -> amplitude fit -> boundary
// closed forms, with every discrepancy measured against the direct path.
CrossValidation cross_validate(const FormulaParams& params);

}  // namespace fdopt
