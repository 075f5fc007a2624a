#include "biortho/electro.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace biortho {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kBoundaryEps = 1e-12;

Cplx horner(const std::vector<Cplx>& coeffs, Cplx z) {
  Cplx v(0.0, 0.0);
  for (int k = (int)coeffs.size() - 1; k >= 0; --k) v = v * z + coeffs[k];
  return v;
}

std::vector<Cplx> derivative(const std::vector<Cplx>& coeffs) {
  std::vector<Cplx> d(std::max<size_t>(coeffs.size() - 1, 1), Cplx(0.0, 0.0));
  for (size_t k = 1; k < coeffs.size(); ++k) d[k - 1] = (double)k * coeffs[k];
  return d;
}

// Chord length |e^{i a} - e^{i b}| without cancellation.
double chord(double a, double b) {
  return 2.0 * std::abs(std::sin(0.5 * (a - b)));
}

void check_interior(const ZeroConfiguration& cfg) {
  const auto& th = cfg.thetas;
  for (size_t j = 0; j < th.size(); ++j) {
    if (th[j] < kBoundaryEps || th[j] > kTwoPi - kBoundaryEps)
      throw BoundaryError("energy: angle within 1e-12 of 0 or 2 pi");
    if (j > 0 && th[j] - th[j - 1] < kBoundaryEps)
      throw BoundaryError("energy: neighbouring angles within 1e-12");
  }
}

bool feasible(const std::vector<double>& th) {
  const double margin = 1e-9;
  for (size_t j = 0; j < th.size(); ++j) {
    if (th[j] < margin || th[j] > kTwoPi - margin) return false;
    if (j > 0 && th[j] - th[j - 1] < margin) return false;
  }
  return true;
}

}  // namespace

void ZeroConfiguration::validate() const {
  for (size_t j = 0; j < thetas.size(); ++j) {
    if (thetas[j] <= 0.0 || thetas[j] >= kTwoPi)
      throw BoundaryError("ZeroConfiguration: angle outside (0, 2 pi)");
    if (j > 0 && thetas[j] <= thetas[j - 1])
      throw BoundaryError("ZeroConfiguration: angles not strictly increasing");
  }
}

PolyCoeffs para_poly(int n, const Params& params) {
  Cplx a = params.alpha, b = params.beta;
  if (a == Cplx(0.0, 0.0)) throw ParameterPole("para_poly: alpha = 0");
  if (is_nonpositive_integer(2.0 * a) && 2.0 * a.real() > -(double)n)
    throw ParameterPole("para_poly: (2 alpha)_k vanishes below degree n");
  if (pochhammer(a + b, n) == Cplx(0.0, 0.0))
    throw ParameterPole("para_poly: (alpha+beta)_n = 0");

  // lead * sum_k (-n)_k (a+b)_k / ((2a)_k k!) (1-z)^k expanded binomially.
  std::vector<Cplx> mono(n + 1, Cplx(0.0, 0.0));
  Cplx coef = pochhammer(2.0 * a, n) / pochhammer(a + b, n);
  for (int k = 0; k <= n; ++k) {
    double binom = 1.0;
    for (int j = 0; j <= k; ++j) {
      mono[j] += coef * binom * ((j % 2 == 0) ? 1.0 : -1.0);
      binom = binom * (k - j) / (j + 1);
    }
    if (k < n)
      coef *= Cplx(-n + k, 0) * (a + b + Cplx(k, 0)) /
              ((2.0 * a + Cplx(k, 0)) * Cplx(k + 1, 0));
  }
  // The leading coefficient is 1 analytically; renormalizing absorbs the
  // accumulated roundoff.
  Cplx lead = mono[n];
  if (lead == Cplx(0.0, 0.0))
    throw ParameterPole("para_poly: leading coefficient vanished");
  PolyCoeffs out;
  out.coeffs.resize(n + 1);
  for (int j = 0; j < n; ++j) out.coeffs[j] = mono[j] / lead;
  out.coeffs[n] = Cplx(1.0, 0.0);
  return out;
}

ZeroConfiguration roots_on_circle(const PolyCoeffs& coeffs, double tol) {
  int n = coeffs.degree();
  if (n < 1) throw DomainError("roots_on_circle: degree must be >= 1");
  std::vector<Cplx> dcoeffs = derivative(coeffs.coeffs);
  // Equispaced starting points on the unit circle, rotated by half a spacing
  // to dodge symmetric stalls.
  std::vector<Cplx> roots(n);
  for (int i = 0; i < n; ++i)
    roots[i] = std::polar(1.0, kTwoPi * (i + 0.5) / n);

  bool converged = false;
  for (int sweep = 0; sweep < 500 && !converged; ++sweep) {
    double max_update = 0.0;
    for (int i = 0; i < n; ++i) {
      Cplx p = horner(coeffs.coeffs, roots[i]);
      Cplx d = horner(dcoeffs, roots[i]);
      if (p == Cplx(0.0, 0.0)) continue;
      if (d == Cplx(0.0, 0.0)) {
        roots[i] += Cplx(1e-8, 1e-8);
        max_update = 1.0;
        continue;
      }
      Cplx newton = p / d;
      Cplx repulsion(0.0, 0.0);
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        Cplx diff = roots[i] - roots[j];
        if (diff != Cplx(0.0, 0.0)) repulsion += 1.0 / diff;
      }
      Cplx w = newton / (1.0 - newton * repulsion);
      roots[i] -= w;
      max_update = std::max(max_update, std::abs(w));
    }
    converged = max_update < 1e-14;
  }
  if (!converged)
    throw NonConvergence("roots_on_circle: Aberth did not settle in 500 sweeps");

  ZeroConfiguration cfg;
  cfg.thetas.reserve(n);
  for (const Cplx& r : roots) {
    if (std::abs(std::abs(r) - 1.0) > tol)
      throw OffCircleError("roots_on_circle: root off the unit circle");
    double th = std::arg(r);
    if (th <= 0.0) th += kTwoPi;
    cfg.thetas.push_back(th);
  }
  std::sort(cfg.thetas.begin(), cfg.thetas.end());
  cfg.validate();
  return cfg;
}

double energy(const EnergyConfig& cfg, const ZeroConfiguration& zc) {
  check_interior(zc);
  const auto& th = zc.thetas;
  double e = 0.0;
  for (size_t j = 0; j < th.size(); ++j) {
    for (size_t k = j + 1; k < th.size(); ++k) e -= std::log(chord(th[k], th[j]));
    e -= cfg.p * std::log(2.0 * std::abs(std::sin(0.5 * th[j])));
    e += cfg.q * th[j];
  }
  return e;
}

std::vector<double> energy_grad(const EnergyConfig& cfg,
                                const ZeroConfiguration& zc) {
  check_interior(zc);
  const auto& th = zc.thetas;
  int n = (int)th.size();
  std::vector<Cplx> z(n);
  for (int j = 0; j < n; ++j) z[j] = std::polar(1.0, th[j]);
  std::vector<double> g(n, 0.0);
  Cplx field_const(0.5 * (n + cfg.p - 1.0), -cfg.q);
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int k = 0; k < n; ++k)
      if (k != j) s += (z[j] / (z[j] - z[k])).imag();
    Cplx fixed = (cfg.p / (1.0 - z[j]) + field_const / z[j]) * z[j];
    g[j] = s - fixed.imag();
  }
  return g;
}

double stationarity_residual(const ZeroConfiguration& zc,
                             const EnergyConfig& cfg) {
  const auto& th = zc.thetas;
  int n = (int)th.size();
  Cplx a(cfg.p, 0.0);
  Cplx b(0.0, 2.0 * cfg.q);
  std::vector<Cplx> z(n);
  for (int j = 0; j < n; ++j) z[j] = std::polar(1.0, th[j]);
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    // f'(z_j) = prod_{k != j} (z_j - z_k); f''(z_j) = 2 f'(z_j) sum 1/(z_j-z_k).
    Cplx fp(1.0, 0.0);
    Cplx s(0.0, 0.0);
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      Cplx diff = z[j] - z[k];
      if (diff == Cplx(0.0, 0.0))
        throw DegenerateError("stationarity_residual: coincident charges");
      fp *= diff;
      s += 1.0 / diff;
    }
    if (fp == Cplx(0.0, 0.0))
      throw DegenerateError("stationarity_residual: f'(z_j) = 0");
    Cplx fpp = 2.0 * fp * s;
    Cplx lin = Cplx(n, 0) + a - 1.0 - b - (Cplx(n, 0) - a - b - 1.0) * z[j];
    Cplx expr = (z[j] * (1.0 - z[j]) * fpp - lin * fp) / (fp * (1.0 - z[j]));
    worst = std::max(worst, std::abs(expr.imag()));
  }
  return worst;
}

ZeroConfiguration minimize_energy(const EnergyConfig& cfg,
                                  const ZeroConfiguration& init, double tol,
                                  int maxiter) {
  init.validate();
  if ((int)init.thetas.size() != cfg.n)
    throw DomainError("minimize_energy: init size differs from cfg.n");
  if (cfg.p <= 0.0) throw DomainError("minimize_energy: p must be > 0");
  ZeroConfiguration cur = init;
  double e_cur = energy(cfg, cur);
  double step = 1.0;
  const double armijo = 1e-4;
  std::vector<double> prev_theta, prev_grad;
  for (int iter = 0; iter < maxiter; ++iter) {
    std::vector<double> g = energy_grad(cfg, cur);
    double ginf = 0.0, gnorm2 = 0.0;
    for (double v : g) {
      ginf = std::max(ginf, std::abs(v));
      gnorm2 += v * v;
    }
    if (ginf < tol) return cur;
    // Barzilai-Borwein seed for the Armijo halving search; plain doubling of
    // the last accepted step is hopeless on the stiff late iterations.
    double alpha = std::min(step * 2.0, 1.0);
    if (!prev_theta.empty()) {
      double sy = 0.0, ss = 0.0;
      for (size_t j = 0; j < g.size(); ++j) {
        double s = cur.thetas[j] - prev_theta[j];
        double y = g[j] - prev_grad[j];
        sy += s * y;
        ss += s * s;
      }
      if (sy > 0.0) alpha = std::clamp(ss / sy, 1e-8, 1e3);
    }
    prev_theta = cur.thetas;
    prev_grad = g;
    // Below this the Armijo decrease drowns in the roundoff of E itself and
    // acceptance switches to descent of the gradient norm.
    double e_floor = 16.0 * 2.2e-16 * (1.0 + std::abs(e_cur));
    bool accepted = false;
    while (alpha > 1e-18) {
      ZeroConfiguration cand;
      cand.thetas.resize(g.size());
      for (size_t j = 0; j < g.size(); ++j)
        cand.thetas[j] = cur.thetas[j] - alpha * g[j];
      if (feasible(cand.thetas)) {
        if (armijo * alpha * gnorm2 > e_floor) {
          double e_cand = energy(cfg, cand);
          if (e_cand <= e_cur - armijo * alpha * gnorm2) {
            cur = std::move(cand);
            e_cur = e_cand;
            step = alpha;
            accepted = true;
            break;
          }
        } else {
          std::vector<double> gc = energy_grad(cfg, cand);
          double gc2 = 0.0;
          for (double v : gc) gc2 += v * v;
          if (gc2 < gnorm2) {
            cur = std::move(cand);
            e_cur = energy(cfg, cur);
            step = alpha;
            accepted = true;
            break;
          }
        }
      }
      alpha *= 0.5;
    }
    if (!accepted)
      throw NonConvergence("minimize_energy: line search stalled");
  }
  throw NonConvergence("minimize_energy: iteration budget exhausted");
}

ZeroConfiguration random_interior_configuration(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.05, kTwoPi - 0.05);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<double> th(n);
    for (double& v : th) v = uni(rng);
    std::sort(th.begin(), th.end());
    bool ok = true;
    for (int j = 1; j < n; ++j)
      if (th[j] - th[j - 1] < 0.05) ok = false;
    if (ok) {
      ZeroConfiguration cfg;
      cfg.thetas = std::move(th);
      return cfg;
    }
  }
  throw NonConvergence("random_interior_configuration: rejection stalled");
}

Cplx ode_residual(int n, const Params& params, Cplx z) {
  PolyCoeffs poly = para_poly(n, params);
  std::vector<Cplx> d1 = derivative(poly.coeffs);
  std::vector<Cplx> d2 = derivative(d1);
  Cplx a = params.alpha, b = params.beta;
  Cplx y = horner(poly.coeffs, z);
  Cplx yp = horner(d1, z);
  Cplx ypp = (n >= 2) ? horner(d2, z) : Cplx(0.0, 0.0);
  Cplx lin = a + Cplx(n, 0) - b - 1.0 - (Cplx(n, 0) - a - b - 1.0) * z;
  return z * (1.0 - z) * ypp - lin * yp + Cplx(n, 0) * (a + b) * y;
}

}  // namespace biortho
