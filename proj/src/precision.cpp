#include "fdopt/precision.hpp"

#include <cmath>
#include <stdexcept>

namespace fdopt {

namespace {
thread_local unsigned g_bits = 0;
thread_local unsigned g_quadrature_order = 20;
}  // namespace

unsigned decimal_digits_for_bits(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398119521)) + 1;
}

void set_working_precision(unsigned bits) {
  if (bits < 53) {
    throw std::invalid_argument("mantissa_bits must be >= 53, got " + std::to_string(bits));
  }
  Real::default_precision(decimal_digits_for_bits(bits));
  g_bits = bits;
}

void apply(const PrecisionContext& ctx) {
  if (ctx.quadrature_order == 0) {
    throw std::invalid_argument("quadrature_order must be positive");
  }
  set_working_precision(ctx.mantissa_bits);
  g_quadrature_order = ctx.quadrature_order;
}

unsigned working_precision_bits() {
  if (g_bits == 0) set_working_precision(256);
  return g_bits;
}

unsigned quadrature_order() { return g_quadrature_order; }

Real admissibility_tolerance() {
  const Real exponent = Real(-8) - Real(12) * (int(working_precision_bits()) - 53) / 203;
  return pow(Real(10), exponent);
}

Real working_epsilon() {
  return ldexp(Real(1), 1 - static_cast<int>(working_precision_bits()));
}

}  // namespace fdopt
