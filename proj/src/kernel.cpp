#include "fdopt/kernel.hpp"

#include <stdexcept>
#include <string>

namespace fdopt {

namespace {

int sign_of(const Real& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// sum_{j >= j0} a^{2j-1}/(2j-1)!  (odd-power tail of the sinh series)
Real sinh_tail(const Real& a, int j0) {
  Real term = 1;
  for (int i = 1; i <= 2 * j0 - 1; ++i) term *= a / i;
  Real sum = 0;
  for (int j = j0;; ++j) {
    const Real next = sum + term;
    if (next == sum) break;
    sum = next;
    term *= a * a / ((2 * j) * (2 * j + 1));
  }
  return sum;
}

// sum_{j >= j0} a^{2j-2}/(2j-2)!  (even-power tail of the cosh series)
Real cosh_tail(const Real& a, int j0) {
  Real term = 1;
  for (int i = 1; i <= 2 * j0 - 2; ++i) term *= a / i;
  Real sum = 0;
  for (int j = j0;; ++j) {
    const Real next = sum + term;
    if (next == sum) break;
    sum = next;
    term *= a * a / ((2 * j - 1) * (2 * j));
  }
  return sum;
}

// sinh(a) - sum_{j=1}^{jend} a^{2j-1}/(2j-1)!, a >= 0
Real sinh_minus_partial(const Real& a, int jend) {
  if (a <= Real(0.5)) return sinh_tail(a, jend + 1);
  Real partial = 0, term = a;
  for (int j = 1; j <= jend; ++j) {
    partial += term;
    term *= a * a / ((2 * j) * (2 * j + 1));
  }
  return sinh(a) - partial;
}

// cosh(a) - sum_{j=1}^{jend} a^{2j-2}/(2j-2)!, a >= 0
Real cosh_minus_partial(const Real& a, int jend) {
  if (a <= Real(0.5)) return cosh_tail(a, jend + 1);
  Real partial = 0, term = 1;
  for (int j = 1; j <= jend; ++j) {
    partial += term;
    term *= a * a / ((2 * j - 1) * (2 * j));
  }
  return cosh(a) - partial;
}

}  // namespace

KernelFamily::KernelFamily(int order) : m_(order) {
  if (order < 3) {
    throw std::invalid_argument("kernel order m must be >= 3, got " + std::to_string(order));
  }
}

Real KernelFamily::g(const Real& x) const {
  if (sign_of(x) == 0) return Real(0);
  return sinh_minus_partial(abs(x), m_ - 1) / 2;  // even in x
}

Real KernelFamily::g1(const Real& x) const {
  const int s = sign_of(x);
  if (s == 0) return Real(0);
  return s * cosh_minus_partial(abs(x), m_ - 1) / 2;  // odd in x
}

Real KernelFamily::g2(const Real& x) const {
  if (sign_of(x) == 0) return Real(0);
  return sinh_minus_partial(abs(x), m_ - 2) / 2;  // even in x
}

Real green_g(int m, const Real& x) { return KernelFamily(m).g(x); }
Real green_g1(int m, const Real& x) { return KernelFamily(m).g1(x); }
Real green_g2(int m, const Real& x) { return KernelFamily(m).g2(x); }

IntPolynomial euler_frobenius(int n) {
  if (n < 0) throw std::invalid_argument("euler_frobenius: degree must be >= 0");
  if (n > 19) throw std::overflow_error("euler_frobenius: coefficients exceed 64-bit range for n > 19");
  std::vector<long long> e{1};
  for (int i = 1; i <= n; ++i) {
    std::vector<long long> next(e.size() + 1, 0);
    for (std::size_t j = 0; j < e.size(); ++j) {
      next[j] += e[j];                                  // 1 * E_{i-1}
      next[j + 1] += static_cast<long long>(i) * e[j];  // i t * E_{i-1}
    }
    for (std::size_t j = 1; j < e.size(); ++j) {  // t (1 - t) E'_{i-1}
      const long long d = static_cast<long long>(j) * e[j];
      next[j] += d;
      next[j + 1] -= d;
    }
    e = std::move(next);
  }
  return IntPolynomial{std::move(e)};
}

}  // namespace fdopt
