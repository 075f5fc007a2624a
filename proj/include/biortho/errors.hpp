#pragma once

#include <stdexcept>
#include <string>

namespace biortho {

// Base class for every error thrown by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Gamma-type pole hit (nonpositive integer argument).
struct PoleError : Error {
  using Error::Error;
};

// Argument outside the operation's domain (z = 0 in powers, z = 1 in the
// split representation, ...).
struct DomainError : Error {
  using Error::Error;
};

// A result left the double range; callers wanting large-n prefactors should
// work with the log-space helpers instead.
struct OverflowError : Error {
  using Error::Error;
};

// A hypergeometric denominator parameter hit a forbidden nonpositive integer.
struct ParameterPole : Error {
  using Error::Error;
};

// An iteration exceeded its budget without meeting its tolerance.
struct NonConvergence : Error {
  using Error::Error;
};

// Parameters outside the region where a representation is valid.
struct RegionError : Error {
  using Error::Error;
};

// The evaluation point lies on the branch ray of r_p.
struct RayError : Error {
  using Error::Error;
};

// An integrand produced NaN at a quadrature node.
struct IntegrandError : Error {
  using Error::Error;
};

// A charge configuration touches 0, 2*pi or a neighbouring charge.
struct BoundaryError : Error {
  using Error::Error;
};

// A computed polynomial root strayed from the unit circle.
struct OffCircleError : Error {
  using Error::Error;
};

// f'(z_j) vanished while forming the stationarity expression.
struct DegenerateError : Error {
  using Error::Error;
};

}  // namespace biortho
