#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "biortho/hyp.hpp"

namespace biortho {

// Integrand over the open interval (0,1). The second argument is 1 - t
// computed without cancellation, which tanh-sinh rules need to resolve
// algebraic endpoint singularities: near t = 1 the node itself rounds to 1
// while its distance to the endpoint is still meaningful.
using Integrand01 = std::function<Cplx(double t, double one_minus_t)>;

struct QuadratureRule {
  enum class Kind { gauss_legendre, tanh_sinh };

  std::vector<double> nodes;     // in (0,1)
  std::vector<double> weights;   // positive
  std::vector<double> conodes;   // 1 - nodes, computed stably
  Kind kind = Kind::tanh_sinh;

  // Gauss-Legendre rule with n nodes mapped to (0,1).
  static QuadratureRule gauss_legendre(int n);

  // Truncated tanh-sinh (double exponential) rule with roughly `points`
  // nodes. Handles integrable algebraic endpoint singularities t^s, (1-t)^s
  // down to Re s of about -0.9 at full double accuracy.
  static QuadratureRule tanh_sinh(int points = 600);

  int size() const { return (int)nodes.size(); }
};

// Weighted sum of f over the rule's nodes. NaN from the integrand raises
// IntegrandError.
Cplx integrate_01(const Integrand01& f, const QuadratureRule& rule);

// Euler integral representation of P_n:
//   Gamma(2a+1)/(Gamma(a+b+1) Gamma(a-b)) *
//   int_0^1 t^(a+b) (1-t)^(a-b-1) (1 - t(1-z))^n dt,  (a,b) = (alpha,beta).
// Requires params in Omega_0 (RegionError otherwise).
Cplx euler_integral_P(int n, Cplx z, const Params& params,
                      const QuadratureRule& rule);

// The two summands of the split representation, including their z-dependent
// prefactors:
//   I1 = z^(n+a-b) (z-1)^(b-a) int_0^1 t^n (1-t)^(a-b-1) ((1-zt)/(1-z))^(a+b) dt
//   I2 = (1-z)^(-a-b-1)        int_0^1 t^n (1-t)^(a+b) ((z-t)/(z-1))^(a-b-1) dt
// Gamma(2a+1)/(Gamma(a-b) Gamma(a+b+1)) * (I1 + I2) reproduces eval_P.
// Throws DomainError at z = 1, RegionError outside Omega_0.
std::pair<Cplx, Cplx> split_integrals(int n, Cplx z, const Params& params,
                                      const QuadratureRule& rule);

// Representation along the path u -> (z^u - 1)/(z - 1):
//   Gamma(2a+1)/(Gamma(a+b+1) Gamma(a-b)) *
//   int_0^1 ((z^u-1)/(z-1))^(a+b) ((z-z^u)/(z-1))^(a-b-1)
//           e^(n u ln z) z^u/(z-1) ln z du.
// Throws DomainError at z in {0, 1}, RegionError outside Omega_0.
Cplx contour_integral_P(int n, Cplx z, const Params& params,
                        const QuadratureRule& rule);

// Bi-orthogonality inner product
//   (1/2pi) int_{-pi}^{pi} P_n(e^{i t}) Q_m(e^{-i t}) w(t) dt,
//   w(t) = (1 - e^{i t})^(a+b) (1 - e^{-i t})^(a-b),
// which equals Gamma(2a+1)/(Gamma(a+b+1) Gamma(a-b+1)) * n!/(2a+1)_n
// when n = m and 0 otherwise. npoints controls the quadrature resolution.
Cplx inner_product(int n, int m, const Params& params, int npoints);

// Closed-form diagonal value of the inner product above.
Cplx inner_product_closed_form(int n, const Params& params);

// Integral representation of the binomial-series remainder r_p:
//   sin(pi (gamma - p))/pi * int_0^1 t^(p-gamma) (1-t)^gamma / (1 + t u psi) dt.
// Requires Re(gamma) > -1, gamma != 0, p >= floor(Re gamma); RayError when
// 1 + t u psi vanishes on [0,1].
Cplx rp_integral(Cplx u, Cplx psi, Cplx gamma, int p,
                 const QuadratureRule& rule);

}  // namespace biortho
