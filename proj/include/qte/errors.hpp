#pragma once

#include <stdexcept>

namespace qte {

// Base class for everything thrown by this library, so callers can
// distinguish qte failures from generic std exceptions.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Matrix dimensions incompatible with the requested operation
// (non-square input, or a size that does not factor into the declared
// subsystem split).
struct BadDimension : Error {
  using Error::Error;
};

// Input failed the Hermiticity check: max |a(i,j) - conj(a(j,i))| above
// tolerance. Always a caller bug, never a numerical judgement call.
struct NotHermitian : Error {
  using Error::Error;
};

// Analytic spectrum requested for parameters outside the case's domain
// (e.g. the K = 0 closed forms with K != 0).
struct CaseMismatch : Error {
  using Error::Error;
};

// Gibbs state requested at T <= 0.
struct NonPositiveTemperature : Error {
  using Error::Error;
};

// Input to an entanglement criterion is not a density matrix; the message
// names the check that failed (hermiticity, trace, positivity).
struct InvalidDensityMatrix : Error {
  using Error::Error;
};

// Bisection bracket invalid: the detector does not change side between
// the two endpoints.
struct NotBracketed : Error {
  using Error::Error;
};

}  // namespace qte
