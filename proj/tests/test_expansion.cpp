#include "biortho/expansion.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "doctest.h"
#include "oracles.hpp"

using namespace biortho;

namespace {

// Distance of the integrand pole t* = -1/w from the segment [0,1]; the
// integral representation is quadrature-resolvable only when this is O(1).
double pole_distance(std::complex<double> w) {
  if (std::abs(w) < 1e-12) return 1.0;
  std::complex<double> t = -1.0 / w;
  if (t.real() >= 0.0 && t.real() <= 1.0) return std::abs(t.imag());
  return std::min(std::abs(t), std::abs(t - 1.0));
}

const Params kGeneric{Cplx(1.0, 0.0), Cplx(0.25, 0.0)};
const Params kWeightPositive{Cplx(0.75, 0.0), Cplx(0.0, 0.6)};
constexpr double kPi = std::numbers::pi;

Cplx ln_pref1(int n, Cplx z, const Params& prm) {
  Cplx a = prm.alpha, b = prm.beta;
  Cplx ze = toward_upper_half(z);
  return ln_gamma(2.0 * a + 1.0) - ln_gamma(a + b + 1.0) +
         ln_gamma(Cplx(n + 1, 0)) - ln_gamma(Cplx(n + 1, 0) + a - b) +
         (Cplx(n, 0) + a - b) * principal_log(ze) +
         (b - a) * principal_log(ze - 1.0);
}

Cplx ln_pref2(int n, Cplx z, const Params& prm) {
  Cplx a = prm.alpha, b = prm.beta;
  Cplx ze = toward_upper_half(z);
  return ln_gamma(2.0 * a + 1.0) - ln_gamma(a - b) +
         ln_gamma(Cplx(n + 1, 0)) - ln_gamma(Cplx(n + 2, 0) + a + b) +
         (-a - b - 1.0) * principal_log(1.0 - ze);
}
}  // namespace

TEST_CASE("omega_1 membership") {
  CHECK(region_omega1(Cplx(-2, 0)));
  CHECK_FALSE(region_omega1(Cplx(0.4, 0)));
  CHECK(region_omega1(Cplx(0, 1)));  // |i| = 1 < sqrt2 and |i-1| > 1
  CHECK(region_omega1(Cplx(-1.5, 2)));
  CHECK_FALSE(region_omega1(Cplx(3, 0)));
}

TEST_CASE("rp_direct limits and exactness") {
  oracles::Rng rng(101);
  for (int p : {0, 2, 5}) {
    Cplx g = rng.box(-0.8, 2, -1, 1);
    Cplx psi = rng.box(-2, 2, -2, 2);
    CHECK(std::abs(rp_direct(Cplx(0, 0), psi, g, p) - gen_binom(g, p + 1)) <
          1e-13);
    // psi = 0 or gamma = 0 are defined as 0.
    CHECK(rp_direct(Cplx(0.3, 0.2), Cplx(0, 0), g, p) == Cplx(0, 0));
    CHECK(rp_direct(Cplx(0.3, 0.2), psi, Cplx(0, 0), p) == Cplx(0, 0));
  }
  // Positive integer gamma <= p: the binomial theorem is exact.
  for (Cplx u : {Cplx(0.7, 0), Cplx(0.2, 0.4), Cplx(-0.3, 0.1)}) {
    CHECK(std::abs(rp_direct(u, Cplx(1.1, 0), Cplx(3, 0), 3)) < 1e-12);
    CHECK(std::abs(rp_direct(u, Cplx(0.4, 0.2), Cplx(2, 0), 4)) < 1e-12);
  }
  CHECK_THROWS_AS(rp_direct(Cplx(-2, 0), Cplx(1, 0), Cplx(0.5, 0), 1),
                  RayError);
}

TEST_CASE("rp_direct equals the integral representation") {
  auto ts = QuadratureRule::tanh_sinh(700);
  // Spot value from the operation examples.
  {
    Cplx d = rp_direct(Cplx(0.4, 0), Cplx(1.3, 0), Cplx(0.6, 0), 2);
    Cplx q = rp_integral(Cplx(0.4, 0), Cplx(1.3, 0), Cplx(0.6, 0), 2, ts);
    CHECK(std::abs(d - q) < 1e-10);
  }
  // 30 random admissible tuples: Re(gamma) > -1 (kept resolvable),
  // gamma != 0, p >= floor(Re gamma), u psi off the ray.
  oracles::Rng rng(55);
  int done = 0;
  while (done < 30) {
    Cplx g = rng.box(-0.8, 1.8, -1.2, 1.2);
    if (std::abs(g) < 0.05) continue;
    Cplx psi = rng.box(-1.5, 1.5, -1.5, 1.5);
    if (std::abs(psi) < 0.05) continue;
    Cplx u = rng.box(-1.2, 1.2, -1.2, 1.2);
    Cplx w = u * psi;
    if (pole_distance(w) < 0.2) continue;  // keep the integral resolvable
    int p = rng.uniform_int(std::max(0, (int)std::floor(g.real())), 6);
    if (p - g.real() < -0.8) continue;  // keep t^{p-gamma} resolvable
    Cplx d = rp_direct(u, psi, g, p);
    Cplx q = rp_integral(u, psi, g, p, ts);
    CHECK(std::abs(d - q) <= 1e-9 * std::max(1.0, std::abs(d)));
    ++done;
  }
}

TEST_CASE("bound helper m1") {
  CHECK(m1(Cplx(1, 0), Cplx(0.7, 0)) ==
        doctest::Approx(std::pow(2.0, 0.7)).epsilon(1e-14));
  CHECK(m1(Cplx(0, 0), Cplx(0, 1)) ==
        doctest::Approx(std::exp(kPi)).epsilon(1e-14));
  CHECK(m1(Cplx(3, 0), Cplx(1, 0)) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("bound helper m2 including the point at infinity") {
  CHECK(m2_infinity(Cplx(0, 0), Cplx(-0.5, 0)) ==
        doctest::Approx(5.0).epsilon(1e-14));
  CHECK(m2(Cplx(-1, 0), Cplx(0, 0), Cplx(-0.5, 0)) ==
        doctest::Approx(std::sqrt(2.0) / 2.0 * 5.0).epsilon(1e-13));
  {
    // Independent re-evaluation of the displayed formula, spelled out from
    // scratch.
    Cplx z(0, 2), q(1, 1), g(-0.3, 0.2);
    double want = std::exp(kPi * std::abs(g.imag())) *
                  std::pow(std::abs(z) + 1.0, 1.0 + g.real()) /
                  (std::abs(z - 1.0) * std::pow(std::abs(z), g.real())) *
                  (1.0 + 2.0 * std::abs(q + 1.0) / std::abs(g + 1.0));
    CHECK(m2(z, q, g) == doctest::Approx(want).epsilon(1e-14));
  }
  CHECK_THROWS_AS(m2(Cplx(1, 0), Cplx(0, 0), Cplx(-0.5, 0)), DomainError);
}

TEST_CASE("bound helper m3") {
  CHECK(m3(0, Cplx(-0.5, 0)) == doctest::Approx(2.5).epsilon(1e-14));
  {
    // gamma integer: sine term drops, first argument of the max is
    // |1 - gamma| + 1 at p = 0.
    CHECK(m3(0, Cplx(3, 0)) == doctest::Approx(3.0).epsilon(1e-13));
  }
  {
    Cplx g(-0.3, 0.4);
    int p = 3;
    double first = std::exp(-kPi * 0.4) * std::abs(Cplx(p + 1, 0) - g) + 1.0 +
                   p * std::exp(std::abs(g) * std::abs(g) + g.real());
    double second =
        1.0 + std::abs(std::sin(kPi * g)) / (kPi * (1.0 + g.real()));
    CHECK(m3(p, g) == doctest::Approx(std::max(first, second)).epsilon(1e-14));
  }
}

TEST_CASE("series terms") {
  oracles::Rng rng(7);
  Cplx z = rng.box(-3, -1, 0.5, 2);
  CHECK(term1(0, 7, z, kGeneric) == Cplx(1, 0));
  CHECK(term2(0, 7, z, kGeneric) == Cplx(1, 0));
  {
    // term1 at k=1 collapses to (a+b)(z/(1-z))(a-b)/(n+1+a-b).
    int n = 5;
    Cplx a = kGeneric.alpha, b = kGeneric.beta;
    Cplx want = (a + b) * (z / (1.0 - z)) * (a - b) / (Cplx(n + 1, 0) + a - b);
    CHECK(std::abs(term1(1, n, z, kGeneric) - want) < 1e-14);
  }
  {
    // term2(2, 5, -2) re-evaluated through Gamma ratios instead of products;
    // binom(g, k) = (g-k+1)_k / k!.
    Cplx a = kGeneric.alpha, b = kGeneric.beta;
    Cplx zz(-2, 0);
    Cplx want = oracles::poch(a - b - 2.0, 2) / oracles::poch(Cplx(1, 0), 2) *
                std::exp(ln_gamma(a + b + 3.0) - ln_gamma(a + b + 1.0)) /
                std::exp(ln_gamma(Cplx(7, 0) + a + b + 2.0) -
                         ln_gamma(Cplx(7, 0) + a + b)) /
                ((zz - 1.0) * (zz - 1.0));
    CHECK(std::abs(term2(2, 5, zz, kGeneric) - want) < 1e-14);
  }
}

TEST_CASE("remainders close the defining identity") {
  auto ts = QuadratureRule::tanh_sinh(700);
  struct Case {
    int n, p1, p2;
    Cplx z;
    Params prm;
  } cases[] = {
      {6, 2, 3, Cplx(-2, 0), kGeneric},
      {4, 0, 0, Cplx(-0.5, 0.5), kWeightPositive},
      {9, 4, 2, Cplx(0.2, 1.5), kGeneric},
      {5, 3, 3, Cplx(3, 0), kGeneric},           // xi_1 via the identity route
      {7, 2, 2, Cplx(0.4, 0), kWeightPositive},  // xi_2 via the identity
  };
  for (const auto& c : cases) {
    Cplx xi1 = xi_exact(1, c.n, c.p1, c.z, c.prm, ts);
    Cplx xi2 = xi_exact(2, c.n, c.p2, c.z, c.prm, ts);
    Cplx s1(0, 0), s2(0, 0);
    for (int k = 0; k <= c.p1; ++k) s1 += term1(k, c.n, c.z, c.prm);
    for (int k = 0; k <= c.p2; ++k) s2 += term2(k, c.n, c.z, c.prm);
    Cplx got = std::exp(ln_pref1(c.n, c.z, c.prm)) * (s1 + xi1) +
               std::exp(ln_pref2(c.n, c.z, c.prm)) * (s2 + xi2);
    Cplx want = eval_P(c.n, c.z, c.prm);
    CHECK(std::abs(got - want) <= 1e-8 * std::max(1.0, std::abs(want)));
  }
}

TEST_CASE("binomial-exact parameters kill the first remainder") {
  // alpha+beta = 1 (a nonnegative integer): r_{1,p} vanishes for p >= 1.
  auto ts = QuadratureRule::tanh_sinh(500);
  Params prm{Cplx(0.75, 0), Cplx(0.25, 0)};
  for (int p : {1, 3}) {
    Cplx xi1 = xi_exact(1, 6, p, Cplx(-1.7, 0.4), prm, ts);
    CHECK(std::abs(xi1) < 1e-13);
  }
}

TEST_CASE("bound_xi soundness against the quadrature oracle") {
  auto ts = QuadratureRule::tanh_sinh(700);
  const Params complex_alpha{Cplx(0.8, 0.3), Cplx(0.1, -0.2)};
  for (const Params& prm : {kGeneric, kWeightPositive, complex_alpha}) {
    for (Cplx z : {Cplx(-2, 0), Cplx(-0.5, 0.5), Cplx(0.2, 1.5)}) {
      for (int n : {2, 8, 20}) {
        for (int p : {0, 2, 5}) {
          CHECK(std::abs(xi_exact(1, n, p, z, prm, ts)) <=
                bound_xi(1, n, p, z, prm) * (1.0 + 1e-12));
          CHECK(std::abs(xi_exact(2, n, p, z, prm, ts)) <=
                bound_xi(2, n, p, z, prm) * (1.0 + 1e-12));
        }
      }
    }
  }
  // Spot case from the operation examples.
  CHECK(std::abs(xi_exact(1, 8, 2, Cplx(-2, 0), kGeneric, ts)) <=
        bound_xi(1, 8, 2, Cplx(-2, 0), kGeneric));
}

TEST_CASE("bound_xi decays in n at the factorial-series rate") {
  // Doubling n at fixed p multiplies the bound by at most ~(1/2)^{p+1}.
  for (int p : {0, 1, 3}) {
    for (int which : {1, 2}) {
      double b40 = bound_xi(which, 40, p, Cplx(-2, 0), kGeneric);
      double b80 = bound_xi(which, 80, p, Cplx(-2, 0), kGeneric);
      CHECK(b80 / b40 <= std::pow(0.6, p + 1));
    }
  }
}

TEST_CASE("bound_xi branch dispatch") {
  // Re(alpha+beta) >= 0 and Re(alpha-beta) >= 1 select the m1 branches; the
  // complementary strips select the m2/m3 branches. Each side must simply
  // evaluate on its own region.
  Params first_branches{Cplx(1.2, 0), Cplx(0.1, 0)};    // sum 1.3, diff 1.1
  Params second_branches{Cplx(0.2, 0), Cplx(-0.5, 0)};  // sum -0.3, diff 0.7
  CHECK(bound_xi(1, 5, 2, Cplx(-2, 0), first_branches) > 0.0);
  CHECK(bound_xi(2, 5, 2, Cplx(-2, 0), first_branches) > 0.0);
  CHECK(bound_xi(1, 5, 2, Cplx(-2, 0), second_branches) > 0.0);
  CHECK(bound_xi(2, 5, 2, Cplx(-2, 0), second_branches) > 0.0);
}

TEST_CASE("asymptotic order of the exact remainders in n") {
  auto ts = QuadratureRule::tanh_sinh(600);
  for (int p : {0, 1, 3}) {
    for (int n : {10, 20, 40}) {
      for (int which : {1, 2}) {
        double xn = std::abs(xi_exact(which, n, p, Cplx(-2, 0), kGeneric, ts));
        double x2n =
            std::abs(xi_exact(which, 2 * n, p, Cplx(-2, 0), kGeneric, ts));
        CHECK(x2n * std::pow(2.0 * n, p + 1) <=
              2.0 * xn * std::pow((double)n, p + 1) + 1e-12);
      }
    }
  }
}

TEST_CASE("remainder decay in p inside omega_1") {
  // |xi_1(n, p)| <= C |z/(1-z)|^{p+1} with C fitted at p = 1.
  auto ts = QuadratureRule::tanh_sinh(600);
  Cplx z(-2, 0);
  double ratio = std::abs(z / (1.0 - z));
  int n = 6;
  double c_fit =
      std::abs(xi_exact(1, n, 1, z, kGeneric, ts)) / std::pow(ratio, 2);
  for (int p : {3, 5, 8}) {
    double xp = std::abs(xi_exact(1, n, p, z, kGeneric, ts));
    CHECK(xp <= 2.0 * c_fit * std::pow(ratio, p + 1));
  }
}

TEST_CASE("expand_P certification on spot cases") {
  for (const Params& prm : {kGeneric, kWeightPositive}) {
    for (Cplx z : {Cplx(-2, 0), Cplx(3, 0), Cplx(-0.5, 0.5), Cplx(0.2, 1.5),
                   Cplx(-1.5, 2)}) {
      for (int p : {0, 4, 6}) {
        ExpansionRequest req{40, z, prm, p, p};
        ExpansionResult res = expand_P(req);
        Cplx truth = eval_P(40, z, prm);
        CHECK(std::abs(truth - res.value) <= res.total_error_bound);
        Cplx s1 = std::accumulate(res.terms1.begin(), res.terms1.end(),
                                  Cplx(0, 0));
        Cplx s2 = std::accumulate(res.terms2.begin(), res.terms2.end(),
                                  Cplx(0, 0));
        Cplx rebuilt = res.prefactor1 * s1 + res.prefactor2 * s2;
        CHECK(std::abs(res.value - rebuilt) <=
              1e-12 * (1.0 + std::abs(res.value)));
      }
    }
  }
}

TEST_CASE("expand_P with a terminating first series is exact there") {
  Params prm{Cplx(0.75, 0), Cplx(0.25, 0)};  // alpha+beta = 1
  ExpansionRequest req{12, Cplx(-2, 0), prm, 3, 40};
  ExpansionResult res = expand_P(req);
  for (size_t k = 2; k < res.terms1.size(); ++k)
    CHECK(std::abs(res.terms1[k]) < 1e-15);
  Cplx truth = eval_P(12, Cplx(-2, 0), prm);
  CHECK(std::abs(truth - res.value) <= res.total_error_bound);
}

TEST_CASE("converge_P certifies inside omega_1") {
  CHECK(std::abs(converge_P(3, Cplx(-2, 0), kGeneric, 1e-10) -
                 eval_P(3, Cplx(-2, 0), kGeneric)) < 1e-10);
  CHECK(std::abs(converge_P(0, Cplx(-5, 0), kGeneric, 1e-10) - Cplx(1, 0)) <
        1e-10);
  Params prm{Cplx(0.75, 0), Cplx(0.3, 0)};
  Cplx z(-1.5, 2);
  REQUIRE(region_omega1(z));
  Cplx got = converge_P(10, z, prm, 1e-10);
  Cplx want = eval_P(10, z, prm);
  CHECK(std::abs(got - want) <= 1e-10 * std::max(1.0, std::abs(want)));
  CHECK_THROWS_AS(converge_P(3, Cplx(0.4, 0), kGeneric, 1e-10), RegionError);
  CHECK_THROWS_AS(converge_P(3, Cplx(3, 0), kGeneric, 1e-10), RegionError);
}

TEST_CASE("on-ray pointwise inequality for the remainder pieces") {
  // The on-ray combination reduces, through t = 1 + 1/(psi u), to
  //   t^g e^{-i pi (k-g)} ((1-t)^{k-g+1} - 1),
  // every base positive, bounded by e^{-pi Im g} |k+1-g|.
  oracles::Rng rng(404);
  int done = 0;
  while (done < 100) {
    Cplx g(rng.uniform(-0.95, -0.05), rng.uniform(-1.5, 1.5));
    int k = rng.uniform_int(0, 8);
    for (double x : {-1.1, -2.0, -5.0, -20.0}) {
      double t = 1.0 + 1.0 / x;
      Cplx expr = cpow(Cplx(t, 0), g) *
                  std::exp(Cplx(0, -kPi) * (Cplx(k, 0) - g)) *
                  (cpow(Cplx(1.0 - t, 0), Cplx(k + 1, 0) - g) - 1.0);
      double bound = std::exp(-kPi * g.imag()) * std::abs(Cplx(k + 1, 0) - g);
      CHECK(std::abs(expr) < bound);
    }
    ++done;
  }
}

TEST_CASE("expand_Q is the beta reflection") {
  // Q_n region: Re(alpha-beta) > -1, Re(alpha+beta) > 0.
  Params prm{Cplx(0.9, 0), Cplx(0.4, 0.2)};
  ExpansionRequest req{15, Cplx(-2, 0), prm, 3, 3};
  ExpansionResult res = expand_Q(req);
  Cplx truth = eval_Q(15, Cplx(-2, 0), prm);
  CHECK(std::abs(truth - res.value) <= res.total_error_bound);
  // the reflected parameters must themselves lie inside the base region
  CHECK_THROWS_AS(
      expand_Q({5, Cplx(-2, 0), Params{Cplx(0.2, 0), Cplx(-0.5, 0)}, 2, 2}),
      RegionError);  // Re(alpha+beta) <= 0 breaks the reflected region
}

TEST_CASE("expand_P overflow policy at extreme degree") {
  // |z|^n outruns the double range even through the log-space prefactors.
  CHECK_THROWS_AS(expand_P({6000, Cplx(-2, 0), kGeneric, 2, 2}),
                  OverflowError);
}
