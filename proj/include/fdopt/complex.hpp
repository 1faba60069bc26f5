#pragma once

#include <utility>

#include "fdopt/precision.hpp"

namespace fdopt {

// Minimal complex arithmetic over the multiprecision Real. std::complex is
// only specified for the builtin floating types, so root finding and the
// amplitude fit carry their own value type.
struct Cplx {
  Real re, im;

  Cplx() : re(0), im(0) {}
  Cplx(Real r) : re(std::move(r)), im(0) {}  // NOLINT: implicit by design
  Cplx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
};

inline Cplx operator+(const Cplx& a, const Cplx& b) { return {a.re + b.re, a.im + b.im}; }
inline Cplx operator-(const Cplx& a, const Cplx& b) { return {a.re - b.re, a.im - b.im}; }
inline Cplx operator-(const Cplx& a) { return {-a.re, -a.im}; }

inline Cplx operator*(const Cplx& a, const Cplx& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline Cplx operator/(const Cplx& a, const Cplx& b) {
  const Real d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

inline Cplx& operator+=(Cplx& a, const Cplx& b) { return a = a + b; }
inline Cplx& operator-=(Cplx& a, const Cplx& b) { return a = a - b; }
inline Cplx& operator*=(Cplx& a, const Cplx& b) { return a = a * b; }

inline Cplx conj(const Cplx& a) { return {a.re, -a.im}; }
inline Real abs(const Cplx& a) { return sqrt(a.re * a.re + a.im * a.im); }

// z^n for n >= 0 by binary exponentiation.
inline Cplx cpow(Cplx z, long n) {
  Cplx out(Real(1));
  while (n > 0) {
    if (n & 1) out *= z;
    z *= z;
    n >>= 1;
  }
  return out;
}

}  // namespace fdopt
