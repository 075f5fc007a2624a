#pragma once

#include "biortho/hyp.hpp"

namespace biortho {

// Request for the expansion of P_n(e^{i theta / n}) in powers of
// i theta / n.
struct AskeyRequest {
  int n = 1;             // n >= 1
  double theta = 0.0;    // in [-pi, pi)
  int k = 0;             // truncation order
  Params params;         // must lie in Omega_0
};

struct AskeyResult {
  Cplx value;
  double remainder_bound = 0.0;
};

// Coefficient of (i theta / n)^j: the double sum over i1 + i2 + i3 = j of
//   B_{i1}^{(-a-b)}(a-b)/i1! * B_{i2}^{(-a+b+1)}(0)/i2! * B_{i3}^{(2a)}(0)/i3!
//   * (a+b+1)_{i1} (a-b)_{i2} / (2a+1)_{i1+i2}
//   * 1F1(1+a+b+i1; 1+2a+i1+i2; i theta),
// which is independent of n. j = 0 collapses to 1F1(a+b+1; 2a+1; i theta).
Cplx askey_term(int j, double theta, const Params& params);

// max over |v| = 3 pi / 2 of |e^{v(alpha-beta)} v / (e^v - 1)|, located by
// dense sampling followed by golden-section refinement of the best bracket.
double max_circle(const Params& params);

// Certified bound on the remainder after truncation at order k:
//   Gamma(Re(a+b+1)) Gamma(Re(a-b)) / |Gamma(a+b+1) Gamma(a-b)|
//   * |2 theta/(3 n pi - 2 theta)| * |2 theta/(3 n pi)|^k * max_circle.
double askey_remainder_bound(const AskeyRequest& req);

// Truncated expansion value and its certified bound; the contract is
// |eval_P(n, e^{i theta / n}) - value| <= remainder_bound.
AskeyResult askey_expand(const AskeyRequest& req);

}  // namespace biortho
