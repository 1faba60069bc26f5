#pragma once

#include <boost/multiprecision/mpfr.hpp>

namespace fdopt {

// All real arithmetic in the library runs on MPFR floats whose precision is
// set once per run (or per PrecisionContext scope). Expression templates are
// disabled so every intermediate is rounded at the working precision, which
// keeps results reproducible bit for bit.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

struct PrecisionContext {
  unsigned mantissa_bits = 256;   // >= 53
  unsigned quadrature_order = 20; // Gauss-Legendre points per panel
};

// Decimal digits sufficient to carry `bits` of mantissa plus one guard digit.
unsigned decimal_digits_for_bits(unsigned bits);

// Sets the default precision of all subsequently constructed Real values.
// Throws std::invalid_argument for bits < 53.
void set_working_precision(unsigned bits);

void apply(const PrecisionContext& ctx);

// Bits currently in effect; initializes the default (256) on first use.
unsigned working_precision_bits();

unsigned quadrature_order();

// Relative tolerance below which constraint residuals count as zero at the
// current precision: 1e-8 at 53 bits, 1e-20 at 256 bits, log-linear between.
Real admissibility_tolerance();

// 2^-(bits-1): unit roundoff at the working precision.
Real working_epsilon();

}  // namespace fdopt
