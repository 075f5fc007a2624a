#pragma once

#include <vector>

#include "biortho/cnum.hpp"

namespace biortho {

// Parameter pair (alpha, beta) of the bi-orthogonal system.
struct Params {
  Cplx alpha;
  Cplx beta;

  // Region where the Euler integral representation converges:
  // Re(alpha+beta) > -1 and Re(alpha-beta) > 0.
  bool in_omega0() const {
    return (alpha + beta).real() > -1.0 && (alpha - beta).real() > 0.0;
  }

  // Positivity of the circle weight: alpha real, alpha > -1/2, beta purely
  // imaginary.
  bool weight_positive() const {
    return alpha.imag() == 0.0 && alpha.real() > -0.5 && beta.real() == 0.0;
  }
};

// Terminating Gauss series sum_{k=0}^{n} (-n)_k (a)_k / ((c)_k k!) x^k,
// summed by a forward recurrence on the term with compensated accumulation.
// Throws ParameterPole when c lies in {0, -1, ..., -(n-1)}.
Cplx f21_terminating(int n, Cplx a, Cplx c, Cplx x);

// P_n(z; alpha, beta), the degree-n polynomial of the system. Its value is
// the terminating 2F1 above with a = alpha+beta+1, c = 2 alpha + 1,
// x = 1 - z; for n >= 2 it is evaluated through the contiguous three-term
// recurrence in the degree, which is free of the catastrophic cancellation
// the alternating direct sum suffers at large n (see the module notes in
// the README). Ground-truth oracle for all expansions.
Cplx eval_P(int n, Cplx z, const Params& params);

// Q_n(z; alpha, beta) = P_n(z; alpha, -beta).
Cplx eval_Q(int n, Cplx z, const Params& params);

// Confluent series 1F1(a; c; x) by Maclaurin summation, stopping when three
// consecutive terms fall below tol * |partial sum|. Design limit |x| <= 50.
Cplx f11(Cplx a, Cplx c, Cplx x, double tol = 1e-14);

// Generalized Bernoulli polynomial B_m^(sigma)(x), the coefficient of
// z^m/m! in (z/(e^z-1))^sigma e^{xz}. Computed by truncated power-series
// arithmetic (series of (e^z-1)/z, log, scale by -sigma, add xz, exp).
// Design limit m <= 64.
Cplx gen_bernoulli(int m, Cplx sigma, Cplx x);

// All orders 0..m in one series pass; gen_bernoulli(m, ...) equals the
// back() of this row.
std::vector<Cplx> gen_bernoulli_row(int m, Cplx sigma, Cplx x);

}  // namespace biortho
