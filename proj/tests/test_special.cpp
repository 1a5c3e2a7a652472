#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "latorbit/integrate.hpp"
#include "latorbit/special.hpp"

using namespace latorbit;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("gamma at classic points") {
  CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-13));
  CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-13));
  CHECK(gamma_fn(1.5) == doctest::Approx(0.5 * std::sqrt(kPi)).epsilon(1e-13));
  CHECK_THROWS_AS(gamma_fn(0.0), std::domain_error);
  CHECK_THROWS_AS(gamma_fn(-1.0), std::domain_error);
}

TEST_CASE("gamma functional equation on [0.5, 20]") {
  for (double x = 0.5; x <= 20.0; x += 0.093) {
    CHECK(gamma_fn(x + 1.0) == doctest::Approx(x * gamma_fn(x)).epsilon(1e-12));
  }
}

TEST_CASE("zeta closed forms and cross-checks") {
  CHECK(riemann_zeta(2) == doctest::Approx(kPi * kPi / 6.0).epsilon(1e-14));
  CHECK(riemann_zeta(4) == doctest::Approx(std::pow(kPi, 4) / 90.0).epsilon(1e-14));
  // Odd arguments against a rigorous partial-sum bracket:
  // S_N + int_{N+1}^inf < zeta(k) < S_N + int_N^inf.
  for (int k : {3, 5, 7}) {
    const int N = 40000;
    double s = 0;
    for (int j = N; j >= 1; --j) s += std::pow(j, -k);
    const double lo = s + std::pow(N + 1.0, 1.0 - k) / (k - 1.0);
    const double hi = s + std::pow(static_cast<double>(N), 1.0 - k) / (k - 1.0);
    CHECK(riemann_zeta(k) > lo - 1e-13);
    CHECK(riemann_zeta(k) < hi + 1e-13);
  }
  CHECK_THROWS_AS(riemann_zeta(1), std::domain_error);
}

TEST_CASE("unit ball volumes") {
  CHECK(unit_ball_volume(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(unit_ball_volume(1) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(unit_ball_volume(2) == doctest::Approx(kPi).epsilon(1e-13));
  for (int k = 2; k <= 30; ++k) {
    CHECK(unit_ball_volume(k) ==
          doctest::Approx(unit_ball_volume(k - 2) * 2.0 * kPi / k).epsilon(1e-12));
  }
}

TEST_CASE("gaussian moment identity, numerically") {
  // int_0^inf e^{-a^2} a^p da = Gamma((p+1)/2)/2
  for (double p : {0.0, 1.0, 2.5, 3.7}) {
    Box b;
    b.lo = {0.0};
    b.hi = {12.0};
    const double got = tensor_integral(
        b, [p](const double* x) { return std::exp(-x[0] * x[0]) * std::pow(x[0], p); }, 200);
    CHECK(got == doctest::Approx(0.5 * gamma_fn(0.5 * (p + 1.0))).epsilon(1e-8));
  }
}

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  const auto& nw = gauss_legendre(8);
  double s = 0, w = 0;
  for (const auto& [x, wt] : nw) {
    s += wt * std::pow(x, 14);  // degree 14 < 2*8
    w += wt;
  }
  CHECK(w == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s == doctest::Approx(2.0 / 15.0).epsilon(1e-13));
}
