#pragma once

#include <vector>

#include "biortho/quad.hpp"

namespace biortho {

// Request for the compound factorial-series expansion of P_n.
struct ExpansionRequest {
  int n = 0;          // degree
  Cplx z;             // evaluation point, != 1
  Params params;      // must lie in Omega_0
  int p1 = 0;         // truncation of the first series (terms k = 0..p1)
  int p2 = 0;         // truncation of the second series
};

// Truncated expansion together with its certified remainder bounds.
// By construction
//   value = prefactor1 * sum(terms1) + prefactor2 * sum(terms2)
//   total_error_bound = |prefactor1| * bound_xi1 + |prefactor2| * bound_xi2
// and the certification contract is
//   |eval_P(n, z, params) - value| <= total_error_bound.
struct ExpansionResult {
  Cplx value;
  std::vector<Cplx> terms1;  // k = 0..p1
  std::vector<Cplx> terms2;  // k = 0..p2
  Cplx prefactor1;
  Cplx prefactor2;
  double bound_xi1 = 0.0;
  double bound_xi2 = 0.0;
  double total_error_bound = 0.0;
  // Set when a bound had to start from p = 1 because p + Re(alpha-beta)
  // was not positive (cannot happen inside Omega_0; kept as a guard).
  bool bound_fallback = false;
};

// Membership in Omega_1 = {|z| < |z-1|} intersected with {|z-1| > 1},
// the region where the expansion converges.
bool region_omega1(Cplx z);

// Remainder of the binomial series,
//   r_p(u; psi, gamma) = ((1+psi u)^gamma - sum_{k<=p} binom(gamma,k)(psi u)^k)
//                        / (psi u)^{p+1},
// with r_p = 0 for psi = 0 or gamma = 0 and the Taylor limit at u = 0.
// For |psi u| <= 0.8 the tail series is summed instead of the displayed
// quotient, which is the same function without the subtractive cancellation.
// Throws RayError on the closed ray where 1 + psi u is a nonpositive real.
Cplx rp_direct(Cplx u, Cplx psi, Cplx gamma, int p);

// Bound helpers of the remainder estimates.
double m1(Cplx z, Cplx gamma);
double m2(Cplx z, Cplx q, Cplx gamma);       // z != 1, -1 < Re gamma < 0
double m2_infinity(Cplx q, Cplx gamma);      // limit of m2 as z -> infinity
double m3(int p, Cplx gamma);                // Re gamma > -1

// k-th summand of each factorial series (prefactors excluded):
//   term1 = binom(a+b, k) (z/(1-z))^k (a-b)_k / (n+1+a-b)_k
//   term2 = binom(a-b-1, k) (z-1)^{-k} (a+b+1)_k / (n+2+a+b)_k
Cplx term1(int k, int n, Cplx z, const Params& params);
Cplx term2(int k, int n, Cplx z, const Params& params);

// Quadrature value of the defining integral of the remainder xi_1 (which=1)
// or xi_2 (which=2); the oracle used to verify the bounds. When the r_p ray
// is crossed (real z > 1 for xi_1, real z in (0,1) for xi_2) the value is
// recovered from the defining identity of the expansion instead.
Cplx xi_exact(int which, int n, int p, Cplx z, const Params& params,
              const QuadratureRule& rule);

// Certified bound on |xi_which| with the two-branch constants c_1, c_2
// assembled from m1/m2/m3.
double bound_xi(int which, int n, int p, Cplx z, const Params& params);

// Assembles the truncated expansion, prefactors in log space, and the
// certified bounds.
ExpansionResult expand_P(const ExpansionRequest& req);

// Same expansion for Q_n = P_n(.; alpha, -beta): a reflection wrapper whose
// region condition swaps to Re(alpha-beta) > -1, Re(alpha+beta) > 0.
ExpansionResult expand_Q(const ExpansionRequest& req);

// Convergent evaluation inside Omega_1: both series are extended until the
// certified bound drops below tol. Throws RegionError outside Omega_1 and
// NonConvergence past 1000 terms per series.
Cplx converge_P(int n, Cplx z, const Params& params, double tol);

}  // namespace biortho
