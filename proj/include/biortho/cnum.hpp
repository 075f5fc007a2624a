#pragma once

#include <complex>

#include "biortho/errors.hpp"

namespace biortho {

using Cplx = std::complex<double>;

// Complex special-function kernels used by every other part of the library.
// All powers and logarithms are principal branch, arg z in (-pi, pi]; a
// negative real input counts as approached from the upper half plane, so
// arg(-1) = +pi regardless of the sign of a zero imaginary part.

// Principal-value logarithm with the convention above.
Cplx principal_log(Cplx z);

// Principal branch of ln Gamma(z). Lanczos (g = 607/128, 15 terms) for
// Re z >= 0.5, reflection formula below that. Throws PoleError at
// z in {0, -1, -2, ...}.
Cplx ln_gamma(Cplx z);

// ln Gamma restricted to positive real arguments.
double ln_gamma_real(double x);

// Gamma itself; overflows raise OverflowError.
Cplx gamma_fn(Cplx z);
double gamma_real(double x);

// Rising factorial (a)_k = a (a+1) ... (a+k-1), computed as the product so
// Gamma poles are harmless.
Cplx pochhammer(Cplx a, int k);
double pochhammer_real(double a, int k);

// Generalized binomial coefficient binom(a, k) = prod_{j=1..k} (a-j+1)/j,
// valid at every a including negative integers.
Cplx gen_binom(Cplx a, int k);

// Beta function B(a, b) = exp(lnGamma(a) + lnGamma(b) - lnGamma(a+b)).
Cplx beta_fn(Cplx a, Cplx b);

// Principal-branch power z^a. z = 0 throws DomainError unless zero_to_zero
// is set and Re(a) > 0, in which case the limit value 0 is returned.
Cplx cpow(Cplx z, Cplx a, bool zero_to_zero = false);

// Integer power by repeated squaring; k may be negative (z != 0).
Cplx ipow(Cplx z, long k);

// Overflow policy gate: non-finite values become OverflowError.
Cplx ensure_finite(Cplx v, const char* what);
double ensure_finite(double v, const char* what);

// Pushes a real z infinitesimally into the upper half plane (imag 1e-200
// scaled). Multi-factor branch assemblies on the cut segments of the real
// axis are evaluated as the coherent limit from above: every factor then
// lands on the edge dictated by the same one-sided continuation instead of
// mixing edges factor by factor.
Cplx toward_upper_half(Cplx z);

// True when z is real and lies in {0, -1, -2, ...}.
bool is_nonpositive_integer(Cplx z);

}  // namespace biortho
