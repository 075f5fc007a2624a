#pragma once

#include <cstdint>
#include <vector>

#include "biortho/hyp.hpp"

namespace biortho {

// Circle-charge energy configuration: n unit charges, a fixed charge p at
// +1, and a rotational field of strength q.
struct EnergyConfig {
  int n = 1;       // number of unit charges, >= 1
  double p = 1.0;  // fixed charge at +1, > 0
  double q = 0.0;  // field strength
};

// Strictly increasing angles in the open interval (0, 2 pi).
struct ZeroConfiguration {
  std::vector<double> thetas;
  void validate() const;  // throws BoundaryError on violations
};

// Monic polynomial in the monomial basis, coeffs[k] multiplying z^k,
// coeffs.back() == 1 exactly.
struct PolyCoeffs {
  std::vector<Cplx> coeffs;
  int degree() const { return (int)coeffs.size() - 1; }
};

// Monic para-orthogonal polynomial of degree n:
//   (2a)_n/(a+b)_n 2F1(-n, a+b; 2a; 1-z)
// expanded into the monomial basis; the leading coefficient is renormalized
// to exactly 1. Requires alpha != 0 and the usual denominator-pole
// exclusions (ParameterPole otherwise).
PolyCoeffs para_poly(int n, const Params& params);

// All n roots by Aberth simultaneous iteration started from equispaced
// points on the unit circle (rotated by half a spacing). Each root must land
// within tol of the unit circle (OffCircleError otherwise); arguments are
// mapped to (0, 2 pi) and sorted.
ZeroConfiguration roots_on_circle(const PolyCoeffs& coeffs, double tol = 1e-10);

// E = sum over unordered pairs of -ln|e^{i th_k} - e^{i th_j}|
//     + p sum -ln|1 - e^{i th_j}| + q sum th_j.
// Throws BoundaryError when any angle is within 1e-12 of 0, 2 pi, or a
// neighbour.
double energy(const EnergyConfig& cfg, const ZeroConfiguration& thetas);

// Analytic gradient: component j is
//   sum_{k != j} Im(z_j/(z_j - z_k))
//   - Im((p/(1 - z_j) + ((n+p-1)/2 - i q)/z_j) z_j),  z_j = e^{i th_j}.
std::vector<double> energy_grad(const EnergyConfig& cfg,
                                const ZeroConfiguration& thetas);

// Max over j of |Im((z_j(1-z_j) f''(z_j) - (n+a-1-b-(n-a-b-1)z_j) f'(z_j))
// / (f'(z_j)(1-z_j)))| with f = prod (z - e^{i th_j}), a = p, b = 2iq.
// Vanishes exactly at the zeros of the para-orthogonal polynomial.
double stationarity_residual(const ZeroConfiguration& thetas,
                             const EnergyConfig& cfg);

// Projected gradient descent with Armijo halving; steps that would violate
// the ordering or leave (0, 2 pi) are halved until feasible. Terminates when
// the gradient infinity norm drops below tol.
ZeroConfiguration minimize_energy(const EnergyConfig& cfg,
                                  const ZeroConfiguration& init,
                                  double tol = 1e-10, int maxiter = 50000);

// Random strictly ordered interior configuration for multi-start runs.
ZeroConfiguration random_interior_configuration(int n, std::uint64_t seed);

// Left-hand side of the hypergeometric ODE satisfied by para_poly:
//   z(1-z) y'' - (a+n-b-1-(n-a-b-1)z) y' + n(a+b) y
// evaluated at z. Approximately 0 for every z.
Cplx ode_residual(int n, const Params& params, Cplx z);

}  // namespace biortho
