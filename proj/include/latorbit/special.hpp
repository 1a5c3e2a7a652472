#pragma once

// Special-function backends: Gamma, Riemann zeta at integer arguments,
// and Euclidean unit-ball volumes. Double precision, relative accuracy
// around 1e-14 on the ranges the rest of the library needs.

namespace latorbit {

// Gamma(x) for x > 0 (Lanczos, g = 7, 9 terms). Throws std::domain_error
// for x <= 0.
double gamma_fn(double x);

double log_gamma(double x);

// zeta(k) for integer k >= 2. Even k use the Bernoulli closed forms,
// odd k an Euler-Maclaurin-corrected partial sum.
double riemann_zeta(int k);

// Lebesgue volume of the k-dimensional unit ball, pi^{k/2}/Gamma(1+k/2).
double unit_ball_volume(int k);

}  // namespace latorbit
