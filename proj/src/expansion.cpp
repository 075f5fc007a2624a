#include "biortho/expansion.hpp"

#include <cmath>
#include <numbers>

namespace biortho {

namespace {

constexpr double kPi = std::numbers::pi;

// Upper-bound slack so a certification cannot fail on the rounding of the
// bound itself.
constexpr double kBoundSlack = 1.0 + 1e-12;

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

void check_request(int n, Cplx z, const Params& params, const char* who) {
  if (n < 0) throw DomainError(std::string(who) + ": n < 0");
  if (z == Cplx(1.0, 0.0)) throw DomainError(std::string(who) + ": z = 1");
  if (!params.in_omega0())
    throw RegionError(std::string(who) + ": params outside Omega_0");
}

// Smallest |1 + u psi| over u in [0,1]; quadrature of the xi integrands is
// trustworthy only when this stays away from zero.
double min_dist_to_ray(Cplx psi) {
  double a = psi.real(), b = psi.imag();
  double n2 = a * a + b * b;
  if (n2 == 0.0) return 1.0;
  double ustar = -a / n2;
  double best = std::min(1.0, std::abs(1.0 + psi));
  if (ustar > 0.0 && ustar < 1.0)
    best = std::min(best, std::abs(1.0 + ustar * psi));
  return best;
}

// Both prefactors are taken as the coherent limit from the upper half
// plane when z is real: their power factors sit on opposite sides of the
// cuts for z in (0,1) or (1,inf) and mixing principal edges breaks the
// defining identity there.
Cplx ln_prefactor1(int n, Cplx z, const Params& params) {
  Cplx a = params.alpha, b = params.beta;
  Cplx ze = toward_upper_half(z);
  return ln_gamma(2.0 * a + 1.0) - ln_gamma(a + b + 1.0) +
         ln_gamma(Cplx(n + 1, 0)) - ln_gamma(Cplx(n + 1, 0) + a - b) +
         (Cplx(n, 0) + a - b) * principal_log(ze) +
         (b - a) * principal_log(ze - 1.0);
}

Cplx ln_prefactor2(int n, Cplx z, const Params& params) {
  Cplx a = params.alpha, b = params.beta;
  Cplx ze = toward_upper_half(z);
  return ln_gamma(2.0 * a + 1.0) - ln_gamma(a - b) +
         ln_gamma(Cplx(n + 1, 0)) - ln_gamma(Cplx(n + 2, 0) + a + b) +
         (-a - b - 1.0) * principal_log(1.0 - ze);
}

}  // namespace

bool region_omega1(Cplx z) {
  double d = std::abs(z - 1.0);
  return std::abs(z) < d && d > 1.0;
}

Cplx rp_direct(Cplx u, Cplx psi, Cplx gamma, int p) {
  if (psi == Cplx(0.0, 0.0) || gamma == Cplx(0.0, 0.0)) return Cplx(0.0, 0.0);
  if (u == Cplx(0.0, 0.0)) return gen_binom(gamma, p + 1);
  Cplx w = u * psi;
  if (w.imag() == 0.0 && w.real() <= -1.0)
    throw RayError("rp_direct: u lies on the closed ray of psi");
  if (std::abs(w) <= 0.8) {
    // Tail of the binomial series: no cancellation against the partial sum.
    KahanCplx acc;
    Cplx coeff = gen_binom(gamma, p + 1);
    Cplx wpow(1.0, 0.0);
    int small_in_a_row = 0;
    for (int k = p + 1; k < p + 1 + 400; ++k) {
      Cplx t = coeff * wpow;
      acc.add(t);
      if (std::abs(t) <= 1e-18 * std::abs(acc.sum)) {
        if (++small_in_a_row >= 3) break;
      } else {
        small_in_a_row = 0;
      }
      coeff *= (gamma - Cplx(k, 0)) / Cplx(k + 1, 0);
      wpow *= w;
    }
    return ensure_finite(acc.sum, "rp_direct");
  }
  KahanCplx partial;
  Cplx wk(1.0, 0.0);
  for (int k = 0; k <= p; ++k) {
    partial.add(gen_binom(gamma, k) * wk);
    wk *= w;
  }
  Cplx num = cpow(1.0 + w, gamma) - partial.sum;
  return ensure_finite(num / ipow(w, p + 1), "rp_direct");
}

double m1(Cplx z, Cplx gamma) {
  double rg = gamma.real();
  return std::exp(kPi * std::abs(gamma.imag())) *
         std::max(std::pow(2.0, rg), std::pow(1.0 + std::abs(z), rg));
}

double m2(Cplx z, Cplx q, Cplx gamma) {
  if (z == Cplx(1.0, 0.0)) throw DomainError("m2: z = 1");
  double rg = gamma.real();
  double az = std::abs(z);
  double shape = std::pow(az + 1.0, 1.0 + rg) /
                 (std::abs(z - 1.0) * std::pow(az, rg));
  return std::exp(kPi * std::abs(gamma.imag())) * shape *
         (1.0 + 2.0 * std::abs((q + 1.0) / (gamma + 1.0)));
}

double m2_infinity(Cplx q, Cplx gamma) {
  return std::exp(kPi * std::abs(gamma.imag())) *
         (1.0 + 2.0 * std::abs((q + 1.0) / (gamma + 1.0)));
}

double m3(int p, Cplx gamma) {
  double first = std::exp(-kPi * gamma.imag()) *
                     std::abs(Cplx(p + 1, 0) - gamma) +
                 1.0 +
                 p * std::exp(std::norm(gamma) + gamma.real());
  double second =
      1.0 + std::abs(std::sin(kPi * gamma)) / (kPi * (1.0 + gamma.real()));
  return std::max(first, second);
}

Cplx term1(int k, int n, Cplx z, const Params& params) {
  Cplx a = params.alpha, b = params.beta;
  return gen_binom(a + b, k) * ipow(z / (1.0 - z), k) * pochhammer(a - b, k) /
         pochhammer(Cplx(n + 1, 0) + a - b, k);
}

Cplx term2(int k, int n, Cplx z, const Params& params) {
  Cplx a = params.alpha, b = params.beta;
  return gen_binom(a - b - 1.0, k) * ipow(z - 1.0, -k) *
         pochhammer(a + b + 1.0, k) / pochhammer(Cplx(n + 2, 0) + a + b, k);
}

double bound_xi_flagged(int which, int n, int p, Cplx z, const Params& params,
                        bool* used_fallback) {
  check_request(n, z, params, "bound_xi");
  Cplx a = params.alpha, b = params.beta;
  double r_amb = (a - b).real();
  double r_apb = (a + b).real();
  if (which == 1) {
    if (p + r_amb <= 0.0) {  // unreachable inside Omega_0; guard anyway
      p = 1;
      if (used_fallback) *used_fallback = true;
    }
    double front = gamma_real(p + r_amb) /
                   std::abs(std::exp(ln_gamma(a - b))) *
                   std::pow(std::abs(z / (1.0 - z)), p + 1) /
                   pochhammer_real(n + 1 + r_amb, p + 1);
    double c1;
    if (r_apb >= 0.0) {
      c1 = m1(z / (1.0 - z), a + b) +
           p * std::exp(std::norm(a + b) + r_apb) + 1.0;
    } else {
      double q_gamma_ratio =
          std::exp(ln_gamma_real(p + 1 - 2 * b.real()) -
                   ln_gamma_real(p + 1 + r_amb)) *
          std::exp(ln_gamma_real(n + p + 2 + r_amb) -
                   ln_gamma_real(n + p + 2 - 2 * b.real()));
      c1 = m2(z, Cplx(p, 0) - 2.0 * b, a + b) * q_gamma_ratio +
           m3(p, a + b);
    }
    return ensure_finite(front * c1, "bound_xi1");
  }
  if (which != 2) throw DomainError("bound_xi: which must be 1 or 2");
  double front = gamma_real(p + 2 + r_apb) /
                 std::abs(std::exp(ln_gamma(a + b + 1.0))) /
                 std::pow(std::abs(z - 1.0), p + 1) /
                 pochhammer_real(n + 2 + r_apb, p + 1);
  double c2;
  if (r_amb >= 1.0) {
    c2 = m1(1.0 / (z - 1.0), a - b - 1.0) +
         p * std::exp(std::norm(a - b - 1.0) + r_amb - 1.0) + 1.0;
  } else {
    double q_gamma_ratio =
        std::exp(ln_gamma_real(p + 2 * b.real() + 3) -
                 ln_gamma_real(p + r_apb + 2)) *
        std::exp(ln_gamma_real(n + p + 3 + r_apb) -
                 ln_gamma_real(n + p + 2 * b.real() + 4));
    double m2v = (z == Cplx(0.0, 0.0))
                     ? m2_infinity(Cplx(p + 2, 0) + 2.0 * b, a - b - 1.0)
                     : m2(1.0 / z, Cplx(p + 2, 0) + 2.0 * b, a - b - 1.0);
    c2 = m2v * q_gamma_ratio + m3(p, a - b + 1.0);
  }
  return ensure_finite(front * c2, "bound_xi2");
}

double bound_xi(int which, int n, int p, Cplx z, const Params& params) {
  return bound_xi_flagged(which, n, p, z, params, nullptr);
}

namespace {

// Quadrature of the defining integral of xi_1 / xi_2; valid away from the
// r_p ray.
Cplx xi_by_quadrature(int which, int n, int p, Cplx z, const Params& params,
                      const QuadratureRule& rule) {
  Cplx a = params.alpha, b = params.beta;
  Cplx psi = (which == 1) ? z / (1.0 - z) : 1.0 / (z - 1.0);
  Cplx gamma = (which == 1) ? a + b : a - b - 1.0;
  Cplx exp_tm = (which == 1) ? Cplx(p, 0) + a - b : Cplx(p + 1, 0) + a + b;
  Cplx integral = integrate_01(
      [&](double t, double tm) {
        return std::pow(t, n) * cpow(Cplx(tm, 0), exp_tm) *
               rp_direct(Cplx(tm, 0), psi, gamma, p);
      },
      rule);
  Cplx beta = (which == 1) ? beta_fn(Cplx(n + 1, 0), a - b)
                           : beta_fn(Cplx(n + 1, 0), a + b + 1.0);
  return ensure_finite(ipow(psi, p + 1) * integral / beta, "xi_exact");
}

}  // namespace

Cplx xi_exact(int which, int n, int p, Cplx z, const Params& params,
              const QuadratureRule& rule) {
  if (which != 1 && which != 2)
    throw DomainError("xi_exact: which must be 1 or 2");
  check_request(n, z, params, "xi_exact");
  Cplx psi = (which == 1) ? z / (1.0 - z) : 1.0 / (z - 1.0);

  if (min_dist_to_ray(psi) >= 1e-3)
    return xi_by_quadrature(which, n, p, z, params, rule);

  // The r_p ray cuts through the integration segment (real z > 1 for xi_1,
  // real z in (0,1) for xi_2). Recover this remainder from the defining
  // identity of the expansion; the companion remainder stays
  // quadrature-computable because the two rays are never crossed at once.
  int other = 3 - which;
  Cplx xi_other = xi_by_quadrature(other, n, p, z, params, rule);
  Cplx pref1 = std::exp(ln_prefactor1(n, z, params));
  Cplx pref2 = std::exp(ln_prefactor2(n, z, params));
  KahanCplx s1, s2;
  for (int k = 0; k <= p; ++k) {
    s1.add(term1(k, n, z, params));
    s2.add(term2(k, n, z, params));
  }
  Cplx pv = eval_P(n, z, params);
  if (which == 1)
    return (pv - pref2 * (s2.sum + xi_other) - pref1 * s1.sum) / pref1;
  return (pv - pref1 * (s1.sum + xi_other) - pref2 * s2.sum) / pref2;
}

ExpansionResult expand_P(const ExpansionRequest& req) {
  check_request(req.n, req.z, req.params, "expand_P");
  if (req.p1 < 0 || req.p2 < 0)
    throw DomainError("expand_P: truncation orders must be nonnegative");
  ExpansionResult res;
  Cplx lp1 = ln_prefactor1(req.n, req.z, req.params);
  Cplx lp2 = ln_prefactor2(req.n, req.z, req.params);
  res.prefactor1 = ensure_finite(std::exp(lp1), "expand_P prefactor1");
  res.prefactor2 = ensure_finite(std::exp(lp2), "expand_P prefactor2");

  res.terms1.reserve(req.p1 + 1);
  res.terms2.reserve(req.p2 + 1);
  KahanCplx s1, s2;
  for (int k = 0; k <= req.p1; ++k) {
    Cplx t = term1(k, req.n, req.z, req.params);
    res.terms1.push_back(t);
    s1.add(t);
  }
  for (int k = 0; k <= req.p2; ++k) {
    Cplx t = term2(k, req.n, req.z, req.params);
    res.terms2.push_back(t);
    s2.add(t);
  }
  res.value = ensure_finite(res.prefactor1 * s1.sum + res.prefactor2 * s2.sum,
                            "expand_P value");
  res.bound_xi1 =
      bound_xi_flagged(1, req.n, req.p1, req.z, req.params, &res.bound_fallback);
  res.bound_xi2 =
      bound_xi_flagged(2, req.n, req.p2, req.z, req.params, &res.bound_fallback);
  double ap1 = std::exp(lp1.real()) * kBoundSlack;
  double ap2 = std::exp(lp2.real()) * kBoundSlack;
  res.total_error_bound =
      ensure_finite(ap1 * res.bound_xi1 + ap2 * res.bound_xi2, "expand_P bound");
  return res;
}

ExpansionResult expand_Q(const ExpansionRequest& req) {
  ExpansionRequest reflected = req;
  reflected.params.beta = -req.params.beta;
  return expand_P(reflected);
}

Cplx converge_P(int n, Cplx z, const Params& params, double tol) {
  if (!region_omega1(z)) throw RegionError("converge_P: z outside Omega_1");
  check_request(n, z, params, "converge_P");
  Cplx lp1 = ln_prefactor1(n, z, params);
  Cplx lp2 = ln_prefactor2(n, z, params);
  Cplx pref1 = std::exp(lp1), pref2 = std::exp(lp2);
  double ap1 = std::exp(lp1.real()) * kBoundSlack;
  double ap2 = std::exp(lp2.real()) * kBoundSlack;
  KahanCplx s1, s2;
  for (int p = 0; p < 1000; ++p) {
    s1.add(term1(p, n, z, params));
    s2.add(term2(p, n, z, params));
    double total = ap1 * bound_xi(1, n, p, z, params) +
                   ap2 * bound_xi(2, n, p, z, params);
    if (total < tol)
      return ensure_finite(pref1 * s1.sum + pref2 * s2.sum, "converge_P");
  }
  throw NonConvergence("converge_P: 1000 terms exceeded");
}

}  // namespace biortho
