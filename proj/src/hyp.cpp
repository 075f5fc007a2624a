#include "biortho/hyp.hpp"

#include <cmath>

namespace biortho {

namespace {

// c must avoid {0, -1, ..., -(n-1)}: these make (c)_k vanish for some k <= n.
void check_denominator_parameter(int n, Cplx c, const char* who) {
  if (c.imag() != 0.0) return;
  double r = c.real();
  if (r > 0.0 || r != std::floor(r)) return;
  if (r >= -(double)(n - 1))
    throw ParameterPole(std::string(who) +
                        ": c is a forbidden nonpositive integer");
}

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

}  // namespace

namespace {

// Direct compensated summation, tracking sum |term| so the caller can judge
// how much cancellation the alternating terms suffered.
Cplx f21_sum_tracked(int n, Cplx a, Cplx c, Cplx x, double* abs_sum) {
  KahanCplx acc;
  Cplx term(1.0, 0.0);
  double mags = 1.0;
  acc.add(term);
  for (int k = 0; k < n; ++k) {
    term *= Cplx(-n + k, 0) * (a + Cplx(k, 0)) /
            ((c + Cplx(k, 0)) * Cplx(k + 1, 0)) * x;
    mags += std::abs(term);
    acc.add(term);
  }
  if (abs_sum) *abs_sum = mags;
  return acc.sum;
}

}  // namespace

Cplx f21_terminating(int n, Cplx a, Cplx c, Cplx x) {
  check_denominator_parameter(n, c, "f21_terminating");
  return ensure_finite(f21_sum_tracked(n, a, c, x, nullptr),
                       "f21_terminating");
}

Cplx eval_P(int n, Cplx z, const Params& params) {
  Cplx a = params.alpha + params.beta + 1.0;
  Cplx c = 2.0 * params.alpha + 1.0;
  Cplx x = 1.0 - z;
  check_denominator_parameter(n, c, "eval_P");
  if (n == 0) return Cplx(1.0, 0.0);
  // The direct sum is the most accurate route as long as the alternating
  // terms do not cancel much: its error tracks the largest partial term.
  double abs_sum = 0.0;
  Cplx direct = f21_sum_tracked(n, a, c, x, &abs_sum);
  if (std::isfinite(abs_sum) && abs_sum <= 100.0 * std::abs(direct))
    return ensure_finite(direct, "eval_P");
  // Badly cancelling regime: fall back to the contiguous three-term
  // recurrence in the degree,
  //   (c+m) F_{m+1} = (2m + c - (a+m) x) F_m + m (x-1) F_{m-1},
  // seeded with F_0 = 1, F_1 = 1 - (a/c) x. It follows the dominant
  // solution, so forward application stays stable for every z.
  Cplx fm1(1.0, 0.0);
  Cplx fm = 1.0 - a / c * x;
  for (int m = 1; m < n; ++m) {
    Cplx fnext = ((Cplx(2 * m, 0) + c - (a + Cplx(m, 0)) * x) * fm +
                  Cplx(m, 0) * (x - 1.0) * fm1) /
                 (c + Cplx(m, 0));
    fm1 = fm;
    fm = fnext;
  }
  return ensure_finite(fm, "eval_P");
}

Cplx eval_Q(int n, Cplx z, const Params& params) {
  return eval_P(n, z, Params{params.alpha, -params.beta});
}

Cplx f11(Cplx a, Cplx c, Cplx x, double tol) {
  if (std::abs(x) > 50.0)
    throw DomainError("f11: |x| exceeds the design limit 50");
  if (is_nonpositive_integer(c))
    throw ParameterPole("f11: c is a nonpositive integer");
  KahanCplx acc;
  Cplx term(1.0, 0.0);
  acc.add(term);
  int small_in_a_row = 0;
  for (int k = 0; k < 10000; ++k) {
    term *= (a + Cplx(k, 0)) / ((c + Cplx(k, 0)) * Cplx(k + 1, 0)) * x;
    acc.add(term);
    if (std::abs(term) <= tol * std::abs(acc.sum)) {
      if (++small_in_a_row >= 3) return ensure_finite(acc.sum, "f11");
    } else {
      small_in_a_row = 0;
    }
  }
  throw NonConvergence("f11: 10000 terms exceeded");
}

std::vector<Cplx> gen_bernoulli_row(int m, Cplx sigma, Cplx x) {
  if (m < 0 || m > 64)
    throw DomainError("gen_bernoulli: order outside the design limit 0..64");
  int len = m + 1;
  // e[j] = coefficient of z^j in (e^z - 1)/z = 1/(j+1)!.
  std::vector<Cplx> e(len);
  double fact = 1.0;
  for (int j = 0; j < len; ++j) {
    fact *= (j + 1);
    e[j] = Cplx(1.0 / fact, 0.0);
  }
  // l = log(e), series logarithm: l_n = e_n - (1/n) sum_{k=1}^{n-1} k l_k e_{n-k}.
  std::vector<Cplx> l(len, Cplx(0.0, 0.0));
  for (int n = 1; n < len; ++n) {
    Cplx s = e[n];
    for (int k = 1; k < n; ++k) s -= (double)k / n * l[k] * e[n - k];
    l[n] = s;
  }
  // a = -sigma * l + x z, then g = exp(a) by g_n = (1/n) sum k a_k g_{n-k}.
  std::vector<Cplx> a(len);
  for (int n = 0; n < len; ++n) a[n] = -sigma * l[n];
  if (len > 1) a[1] += x;
  std::vector<Cplx> g(len, Cplx(0.0, 0.0));
  g[0] = Cplx(1.0, 0.0);
  for (int n = 1; n < len; ++n) {
    Cplx s(0.0, 0.0);
    for (int k = 1; k <= n; ++k) s += (double)k * a[k] * g[n - k];
    g[n] = s / (double)n;
  }
  // B_j^{(sigma)}(x) = g_j * j!.
  std::vector<Cplx> row(len);
  fact = 1.0;
  row[0] = g[0];
  for (int j = 1; j < len; ++j) {
    fact *= j;
    row[j] = g[j] * fact;
  }
  return row;
}

Cplx gen_bernoulli(int m, Cplx sigma, Cplx x) {
  return gen_bernoulli_row(m, sigma, x).back();
}

}  // namespace biortho
