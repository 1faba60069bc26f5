#pragma once

#include <vector>

#include "fdopt/precision.hpp"

namespace fdopt {

// Evaluators for the Green's function family of the operator
// d^{2m}/dx^{2m} - d^{2m-2}/dx^{2m-2} on the line:
//
//   G_m(x)  = sign(x)/2 (sinh x - sum_{j=1}^{m-1} x^{2j-1}/(2j-1)!)
//   G'_m(x) = sign(x)/2 (cosh x - sum_{j=1}^{m-1} x^{2j-2}/(2j-2)!)
//   G''_m(x)= sign(x)/2 (sinh x - sum_{j=1}^{m-2} x^{2j-1}/(2j-1)!)
//
// sign(0) = 0, so all three vanish at the origin. Everything is computed
// from |x| with the sign applied last, so the parity identities hold bit
// for bit. Below |x| = 1/2 the bracketed difference is summed as the tail
// of the sinh/cosh series; subtracting a partial sum from sinh/cosh there
// would cancel catastrophically.
class KernelFamily {
 public:
  explicit KernelFamily(int order);

  int order() const { return m_; }

  Real g(const Real& x) const;
  Real g1(const Real& x) const;
  Real g2(const Real& x) const;

 private:
  int m_;
};

Real green_g(int m, const Real& x);
Real green_g1(int m, const Real& x);
Real green_g2(int m, const Real& x);

// Polynomial with exact integer coefficients, ascending degree order.
struct IntPolynomial {
  std::vector<long long> coefficients;

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
};

// Euler-Frobenius polynomial E_n: E_0 = 1 and
// E_n(t) = (n t + 1) E_{n-1}(t) + t (1 - t) E'_{n-1}(t).
// Coefficients are the Eulerian numbers; they sum to (n+1)! and the list is
// palindromic. Valid for 0 <= n <= 19 (larger n overflows 64-bit integers).
IntPolynomial euler_frobenius(int n);

}  // namespace fdopt
