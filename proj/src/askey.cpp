#include "biortho/askey.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace biortho {

namespace {

constexpr double kPi = std::numbers::pi;

void check_request(const AskeyRequest& req) {
  if (req.n < 1) throw DomainError("askey: n must be >= 1");
  if (req.theta < -kPi || req.theta >= kPi)
    throw DomainError("askey: theta must lie in [-pi, pi)");
  if (req.k < 0) throw DomainError("askey: k must be nonnegative");
  if (!req.params.in_omega0())
    throw RegionError("askey: params outside Omega_0");
}

// The inner double sum for one order j, with the three Bernoulli rows
// (orders 0..j at least) supplied by the caller.
Cplx order_coefficient(int j, double theta, const Params& params,
                       const std::vector<Cplx>& row1,
                       const std::vector<Cplx>& row2,
                       const std::vector<Cplx>& row3,
                       const std::vector<double>& inv_fact) {
  Cplx a = params.alpha, b = params.beta;
  Cplx sum(0.0, 0.0);
  for (int i1 = 0; i1 <= j; ++i1) {
    for (int i2 = 0; i2 + i1 <= j; ++i2) {
      int i3 = j - i1 - i2;
      Cplx weight = row1[i1] * inv_fact[i1] * row2[i2] * inv_fact[i2] *
                    row3[i3] * inv_fact[i3];
      Cplx ratio = pochhammer(a + b + 1.0, i1) * pochhammer(a - b, i2) /
                   pochhammer(2.0 * a + 1.0, i1 + i2);
      Cplx conf = f11(1.0 + a + b + Cplx(i1, 0),
                      1.0 + 2.0 * a + Cplx(i1 + i2, 0), Cplx(0.0, theta));
      sum += weight * ratio * conf;
    }
  }
  return sum;
}

std::vector<double> inverse_factorials(int m) {
  std::vector<double> inv(m + 1, 1.0);
  double f = 1.0;
  for (int j = 1; j <= m; ++j) {
    f *= j;
    inv[j] = 1.0 / f;
  }
  return inv;
}

double circle_modulus(const Params& params, double phi) {
  Cplx v = std::polar(1.5 * kPi, phi);
  Cplx amb = params.alpha - params.beta;
  return std::abs(std::exp(v * amb) * v / (std::exp(v) - 1.0));
}

}  // namespace

Cplx askey_term(int j, double theta, const Params& params) {
  if (j < 0) throw DomainError("askey_term: j must be nonnegative");
  Cplx a = params.alpha, b = params.beta;
  auto row1 = gen_bernoulli_row(j, -a - b, a - b);
  auto row2 = gen_bernoulli_row(j, -a + b + 1.0, Cplx(0.0, 0.0));
  auto row3 = gen_bernoulli_row(j, 2.0 * a, Cplx(0.0, 0.0));
  auto inv_fact = inverse_factorials(j);
  return order_coefficient(j, theta, params, row1, row2, row3, inv_fact);
}

double max_circle(const Params& params) {
  // 4096-point scan; e^v - 1 has no zero on |v| = 3 pi / 2, so the modulus
  // is smooth in the angle and the best bracket contains the maximum.
  const int samples = 4096;
  int best = 0;
  double best_val = -1.0;
  for (int i = 0; i < samples; ++i) {
    double phi = 2.0 * kPi * i / samples - kPi;
    double v = circle_modulus(params, phi);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  double lo = 2.0 * kPi * (best - 1) / samples - kPi;
  double hi = 2.0 * kPi * (best + 1) / samples - kPi;
  // Golden-section refinement to 1e-12 in the angle.
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - gr * (hi - lo);
  double d = lo + gr * (hi - lo);
  double fc = circle_modulus(params, c);
  double fd = circle_modulus(params, d);
  while (hi - lo > 1e-12) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - gr * (hi - lo);
      fc = circle_modulus(params, c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + gr * (hi - lo);
      fd = circle_modulus(params, d);
    }
  }
  return std::max({best_val, fc, fd});
}

double askey_remainder_bound(const AskeyRequest& req) {
  check_request(req);
  Cplx a = req.params.alpha, b = req.params.beta;
  double num = gamma_real((a + b + 1.0).real()) * gamma_real((a - b).real());
  double den = std::abs(std::exp(ln_gamma(a + b + 1.0) + ln_gamma(a - b)));
  double t = req.theta;
  double geo = std::abs(2.0 * t / (3.0 * req.n * kPi - 2.0 * t)) *
               std::pow(std::abs(2.0 * t / (3.0 * req.n * kPi)), req.k);
  return ensure_finite(num / den * geo * max_circle(req.params),
                       "askey_remainder_bound");
}

AskeyResult askey_expand(const AskeyRequest& req) {
  check_request(req);
  Cplx a = req.params.alpha, b = req.params.beta;
  // One Bernoulli row per generating-function factor, memoized across the
  // whole request.
  auto row1 = gen_bernoulli_row(req.k, -a - b, a - b);
  auto row2 = gen_bernoulli_row(req.k, -a + b + 1.0, Cplx(0.0, 0.0));
  auto row3 = gen_bernoulli_row(req.k, 2.0 * a, Cplx(0.0, 0.0));
  auto inv_fact = inverse_factorials(req.k);
  Cplx ratio(0.0, 1.0);
  Cplx scale = ratio * req.theta / (double)req.n;  // i theta / n
  Cplx value(0.0, 0.0);
  Cplx power(1.0, 0.0);
  for (int j = 0; j <= req.k; ++j) {
    value += order_coefficient(j, req.theta, req.params, row1, row2, row3,
                               inv_fact) *
             power;
    power *= scale;
  }
  AskeyResult res;
  res.value = ensure_finite(value, "askey_expand");
  res.remainder_bound = askey_remainder_bound(req);
  return res;
}

}  // namespace biortho
