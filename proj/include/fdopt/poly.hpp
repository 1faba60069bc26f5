#pragma once

#include <vector>

#include "fdopt/precision.hpp"

namespace fdopt {

// Dense polynomial over Real, coefficients in ascending degree order.
// Degrees stay small (the characteristic polynomial has degree 2m-4), so
// naive arithmetic is fine.
using RealPoly = std::vector<Real>;

RealPoly poly_add(const RealPoly& a, const RealPoly& b);
RealPoly poly_mul(const RealPoly& a, const RealPoly& b);
RealPoly poly_scale(const RealPoly& a, const Real& s);
RealPoly poly_pow(const RealPoly& a, int n);
RealPoly poly_derivative(const RealPoly& a);
Real poly_eval(const RealPoly& a, const Real& x);

}  // namespace fdopt
