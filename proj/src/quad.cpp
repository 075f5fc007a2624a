#include "biortho/quad.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace biortho {

namespace {

constexpr double kPi = std::numbers::pi;

struct KahanCplx {
  Cplx sum{0.0, 0.0};
  Cplx comp{0.0, 0.0};
  void add(Cplx t) {
    Cplx y = t - comp;
    Cplx s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  }
};

void check_omega0(const Params& params, const char* who) {
  if (!params.in_omega0())
    throw RegionError(std::string(who) + ": params outside Omega_0");
}

// exp(w) - 1 without the cancellation that makes exp(w) round to 1 for
// |w| below machine epsilon.
Cplx cexpm1(Cplx w) {
  if (std::abs(w) < 1e-4)
    return w * (1.0 + w * (0.5 + w * (1.0 / 6.0 + w * (1.0 / 24.0))));
  return std::exp(w) - 1.0;
}

}  // namespace

QuadratureRule QuadratureRule::gauss_legendre(int n) {
  if (n < 2) throw DomainError("gauss_legendre: need at least 2 nodes");
  QuadratureRule rule;
  rule.kind = Kind::gauss_legendre;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  rule.conodes.resize(n);
  // Newton iteration on the Legendre recurrence, standard-issue.
  int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    // Map (-1,1) to (0,1); symmetric partner fills the other half.
    rule.nodes[i] = 0.5 * (1.0 - x);
    rule.conodes[i] = 0.5 * (1.0 + x);
    rule.weights[i] = 0.5 * w;
    rule.nodes[n - 1 - i] = 0.5 * (1.0 + x);
    rule.conodes[n - 1 - i] = 0.5 * (1.0 - x);
    rule.weights[n - 1 - i] = 0.5 * w;
  }
  return rule;
}

QuadratureRule QuadratureRule::tanh_sinh(int points) {
  if (points < 2) throw DomainError("tanh_sinh: need at least 2 nodes");
  QuadratureRule rule;
  rule.kind = Kind::tanh_sinh;
  // Truncate where y = (pi/2) sinh(tau) reaches 340: endpoint distances
  // 1/(1+e^{2y}) stay inside the normal double range there.
  const double y_max = 340.0;
  const double tau_max = std::asinh(y_max / (kPi / 2));
  const double h = 2.0 * tau_max / (points - 1);
  int jmax = (int)std::floor(tau_max / h);
  for (int j = -jmax; j <= jmax; ++j) {
    double tau = j * h;
    double y = (kPi / 2) * std::sinh(tau);
    double w = h * (kPi / 4) * std::cosh(tau) / std::pow(std::cosh(y), 2);
    if (!(w > 0.0) || !std::isfinite(w)) continue;
    double far = 1.0 / (1.0 + std::exp(-2.0 * y));   // t
    double near = 1.0 / (1.0 + std::exp(2.0 * y));   // 1 - t
    rule.nodes.push_back(far);
    rule.conodes.push_back(near);
    rule.weights.push_back(w);
  }
  return rule;
}

Cplx integrate_01(const Integrand01& f, const QuadratureRule& rule) {
  KahanCplx acc;
  for (int i = 0; i < rule.size(); ++i) {
    Cplx v = f(rule.nodes[i], rule.conodes[i]);
    if (std::isnan(v.real()) || std::isnan(v.imag()))
      throw IntegrandError("integrate_01: integrand returned NaN");
    acc.add(rule.weights[i] * v);
  }
  return acc.sum;
}

Cplx euler_integral_P(int n, Cplx z, const Params& params,
                      const QuadratureRule& rule) {
  check_omega0(params, "euler_integral_P");
  Cplx a = params.alpha, b = params.beta;
  Cplx e1 = a + b;            // exponent of t
  Cplx e2 = a - b - 1.0;      // exponent of 1-t
  Cplx one_minus_z = 1.0 - z;
  Cplx integral = integrate_01(
      [&](double t, double tm) {
        Cplx base = 1.0 - t * one_minus_z;
        return cpow(Cplx(t, 0), e1) * cpow(Cplx(tm, 0), e2) * ipow(base, n);
      },
      rule);
  Cplx prefactor = std::exp(ln_gamma(2.0 * a + 1.0) - ln_gamma(a + b + 1.0) -
                            ln_gamma(a - b));
  return ensure_finite(prefactor * integral, "euler_integral_P");
}

namespace {

// Integrand in panel-local form around an interior singular point tc: it
// receives t, 1-t, and the signed distance d = t - tc computed from the
// panel coordinates, which stays meaningful when t itself rounds onto tc.
using PanelIntegrand = std::function<Cplx(double t, double tm, double d)>;

// Integrates over (0,1) split at tc with one tanh-sinh panel per side, so
// an algebraic singularity at tc sits at panel endpoints.
Cplx integrate_01_around(const PanelIntegrand& f, double tc,
                         const QuadratureRule& rule) {
  KahanCplx acc;
  for (int i = 0; i < rule.size(); ++i) {
    double s = rule.nodes[i], sm = rule.conodes[i];
    double tl = tc * s;
    double tr = tc + (1.0 - tc) * s;
    Cplx vl = f(tl, 1.0 - tl, -tc * sm);
    Cplx vr = f(tr, (1.0 - tc) * sm, (1.0 - tc) * s);
    if (std::isnan(vl.real()) || std::isnan(vl.imag()) ||
        std::isnan(vr.real()) || std::isnan(vr.imag()))
      throw IntegrandError("integrate_01_around: integrand returned NaN");
    acc.add(rule.weights[i] * (tc * vl + (1.0 - tc) * vr));
  }
  return acc.sum;
}

}  // namespace

std::pair<Cplx, Cplx> split_integrals(int n, Cplx z, const Params& params,
                                      const QuadratureRule& rule) {
  check_omega0(params, "split_integrals");
  if (z == Cplx(1.0, 0.0)) throw DomainError("split_integrals: z = 1");
  Cplx a = params.alpha, b = params.beta;
  Cplx apb = a + b, amb1 = a - b - 1.0;
  // Real z in (0,1) or (1,inf) puts factors of the two integrands on their
  // branch cuts with incompatible principal edges; the coherent limit from
  // the upper half plane keeps the recombination identity exact.
  Cplx ze = toward_upper_half(z);
  Cplx one_minus_z = 1.0 - ze;

  // Exact zero of a crossing factor at a quadrature node (possible only by
  // rounding collisions next to the panel split) contributes nothing.
  auto pow_or_zero = [](Cplx base, Cplx expo) {
    if (base == Cplx(0.0, 0.0)) return Cplx(0.0, 0.0);
    return cpow(base, expo);
  };

  Integrand01 f1 = [&](double t, double tm) {
    return std::pow(t, n) * cpow(Cplx(tm, 0), amb1) *
           pow_or_zero((1.0 - ze * t) / one_minus_z, apb);
  };
  Integrand01 f2 = [&](double t, double tm) {
    return std::pow(t, n) * cpow(Cplx(tm, 0), apb) *
           pow_or_zero((ze - t) / (ze - 1.0), amb1);
  };

  // Real z > 1 puts a zero of (1 - zt) inside the interval at t = 1/z; real
  // z in (0,1) does the same for (z - t) at t = z. Those integrals use one
  // panel per side with the vanishing factor rebuilt from the panel
  // distance, which avoids both the interior kink and the cancellation in
  // forming it near the crossing.
  bool split1 = z.imag() == 0.0 && z.real() > 1.0 &&
                rule.kind == QuadratureRule::Kind::tanh_sinh;
  bool split2 = z.imag() == 0.0 && z.real() > 0.0 && z.real() < 1.0 &&
                rule.kind == QuadratureRule::Kind::tanh_sinh;
  Cplx int1, int2;
  if (split1) {
    double zr = z.real();
    double tc = 1.0 / zr;
    double r0 = 1.0 - zr * tc;  // rounding residue of 1 - z*(1/z)
    double eps = ze.imag();
    int1 = integrate_01_around(
        [&](double t, double tm, double d) {
          Cplx one_minus_zt(r0 - zr * d, -eps * t);
          return std::pow(t, n) * cpow(Cplx(tm, 0), amb1) *
                 pow_or_zero(one_minus_zt / one_minus_z, apb);
        },
        tc, rule);
  } else {
    int1 = integrate_01(f1, rule);
  }
  if (split2) {
    double tc = z.real();
    double eps = ze.imag();
    int2 = integrate_01_around(
        [&](double t, double tm, double d) {
          Cplx z_minus_t(-d, eps);
          return std::pow(t, n) * cpow(Cplx(tm, 0), apb) *
                 pow_or_zero(z_minus_t / (ze - 1.0), amb1);
        },
        tc, rule);
  } else {
    int2 = integrate_01(f2, rule);
  }

  Cplx p1 = cpow(ze, Cplx(n, 0) + a - b) * cpow(ze - 1.0, b - a);
  Cplx p2 = cpow(one_minus_z, -a - b - 1.0);
  return {ensure_finite(p1 * int1, "split_integrals I1"),
          ensure_finite(p2 * int2, "split_integrals I2")};
}

Cplx contour_integral_P(int n, Cplx z, const Params& params,
                        const QuadratureRule& rule) {
  check_omega0(params, "contour_integral_P");
  if (z == Cplx(0.0, 0.0) || z == Cplx(1.0, 0.0))
    throw DomainError("contour_integral_P: z in {0, 1}");
  Cplx a = params.alpha, b = params.beta;
  Cplx apb = a + b, amb1 = a - b - 1.0;
  Cplx lnz = principal_log(z);
  Cplx zm1 = z - 1.0;
  Cplx integral = integrate_01(
      [&](double u, double um) {
        Cplx zu = std::exp(u * lnz);
        // z - z^u = z^u (z^{1-u} - 1); the right factor vanishes linearly in
        // 1-u, so it is computed from um = 1-u directly.
        Cplx t1 = cexpm1(u * lnz) / zm1;
        Cplx t2 = zu * cexpm1(um * lnz) / zm1;
        return cpow(t1, apb, true) * cpow(t2, amb1, true) *
               std::exp(Cplx(n, 0) * u * lnz) * zu / zm1 * lnz;
      },
      rule);
  Cplx prefactor = std::exp(ln_gamma(2.0 * a + 1.0) - ln_gamma(a + b + 1.0) -
                            ln_gamma(a - b));
  return ensure_finite(prefactor * integral, "contour_integral_P");
}

Cplx inner_product_closed_form(int n, const Params& params) {
  Cplx a = params.alpha, b = params.beta;
  Cplx c = std::exp(ln_gamma(2.0 * a + 1.0) - ln_gamma(a + b + 1.0) -
                    ln_gamma(a - b + 1.0));
  Cplx ratio = std::exp(ln_gamma(Cplx(n + 1, 0)) -
                        (ln_gamma(2.0 * a + 1.0 + Cplx(n, 0)) -
                         ln_gamma(2.0 * a + 1.0)));
  return c * ratio;  // Gamma factor times n!/(2 alpha + 1)_n
}

Cplx inner_product(int n, int m, const Params& params, int npoints) {
  if (params.alpha.real() <= -0.5)
    throw RegionError("inner_product: requires Re(alpha) > -1/2");
  Cplx a = params.alpha, b = params.beta;
  Cplx apb = a + b, amb = a - b;
  // The weight carries the |theta|^(2 Re alpha) factor at theta = 0, so the
  // interval is split there and each half handed to a double-exponential
  // rule; that stays spectrally accurate for non-integer 2*alpha, where a
  // plain Gauss rule on (-pi, pi) degrades to algebraic convergence.
  int half_points = std::clamp(npoints / 2, 200, 1500);
  QuadratureRule rule = QuadratureRule::tanh_sinh(half_points);
  auto weighted = [&](double theta) {
    Cplx eit = std::polar(1.0, theta);
    Cplx w = cpow(1.0 - eit, apb) * cpow(1.0 - std::conj(eit), amb);
    return eval_P(n, eit, params) * eval_Q(m, std::conj(eit), params) * w;
  };
  KahanCplx acc;
  for (int i = 0; i < rule.size(); ++i) {
    double t = rule.nodes[i];
    // theta = pi t on the right half, -pi t on the left half; the half-range
    // Jacobian pi and the 1/(2 pi) in front combine to 1/2.
    acc.add(rule.weights[i] * (weighted(kPi * t) + weighted(-kPi * t)));
  }
  return ensure_finite(0.5 * acc.sum, "inner_product");
}

Cplx rp_integral(Cplx u, Cplx psi, Cplx gamma, int p,
                 const QuadratureRule& rule) {
  if (gamma == Cplx(0.0, 0.0)) throw DomainError("rp_integral: gamma = 0");
  if (gamma.real() <= -1.0)
    throw DomainError("rp_integral: requires Re(gamma) > -1");
  if (p < (int)std::floor(gamma.real()))
    throw DomainError("rp_integral: requires p >= floor(Re gamma)");
  Cplx w = u * psi;
  // 1 + t w vanishes on [0,1] exactly when w is real and <= -1.
  if (w.imag() == 0.0 && w.real() <= -1.0)
    throw RayError("rp_integral: u lies on the ray of psi");
  Cplx e1 = Cplx(p, 0) - gamma;  // exponent of t
  Cplx integral = integrate_01(
      [&](double t, double tm) {
        return cpow(Cplx(t, 0), e1) * cpow(Cplx(tm, 0), gamma) /
               (1.0 + t * w);
      },
      rule);
  return ensure_finite(std::sin(kPi * (gamma - Cplx(p, 0))) / kPi * integral,
                       "rp_integral");
}

}  // namespace biortho
