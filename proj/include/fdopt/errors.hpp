#pragma once

#include <stdexcept>
#include <string>

namespace fdopt {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Formula violates the exactness constraints beyond tolerance; the norm
// formula is only defined on the constrained set.
struct AdmissibilityError : Error {
  using Error::Error;
};

// Quadrature refinement stalled before reaching the requested agreement.
struct NonConvergence : Error {
  using Error::Error;
};

// The variational/constraint system cannot be made square.
struct DimensionError : Error {
  using Error::Error;
};

// A pivot vanished: the parameter combination is outside the theory or the
// working precision is exhausted.
struct SingularSystem : Error {
  using Error::Error;
};

// A characteristic root sits on the unit circle (degenerate step size).
struct RootOnCircle : Error {
  using Error::Error;
};

// The root-based coefficient representation failed verification.
struct FitFailure : Error {
  using Error::Error;
};

// Exact startup was requested for a problem without a known solution.
struct StartupUnavailable : Error {
  using Error::Error;
};

}  // namespace fdopt
