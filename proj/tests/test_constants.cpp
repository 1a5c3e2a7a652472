#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "latorbit/constants.hpp"
#include "latorbit/integrate.hpp"
#include "latorbit/special.hpp"

using namespace latorbit;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("d_nl anchors") {
  // Polar-coordinate oracle at (2,1): the frame measure in the plane is
  // r dr dtheta against normalized dk, so d = area / weighted radial mass.
  const double r1 = 0.3, r2 = 1.7;
  const double area = kPi * (r2 * r2 - r1 * r1);
  Box seg;
  seg.lo = {std::log(r1)};
  seg.hi = {std::log(r2)};
  const double radial = tensor_integral(
      seg, [](const double* s) { return std::exp(2.0 * s[0]); }, 64);  // delta^-(s)^n ds
  CHECK(area / radial == doctest::Approx(2.0 * kPi).epsilon(1e-10));
  CHECK(d_nl(2, 1) == doctest::Approx(2.0 * kPi).epsilon(1e-13));
  CHECK(d_nl(3, 1) == doctest::Approx(4.0 * kPi).epsilon(1e-13));
  for (int n = 2; n <= 8; ++n)
    for (int l = 1; l < n; ++l) {
      CHECK(d_nl(n, l) > 0);
      CHECK(std::isfinite(d_nl(n, l)));
    }
  CHECK_THROWS_AS(d_nl(3, 3), std::domain_error);
  CHECK_THROWS_AS(d_nl(3, 0), std::domain_error);
}

TEST_CASE("gamma_nl anchors") {
  CHECK(gamma_nl(2, 1) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(gamma_nl(3, 1) == doctest::Approx(kPi * kPi / 4.0).epsilon(1e-13));
  for (int n = 2; n <= 8; ++n)
    for (int l = 1; l < n; ++l) CHECK(gamma_nl(n, l) > 0);
}

TEST_CASE("covolume of SL(n,Z)") {
  CHECK(covolume_slnz(2) == doctest::Approx(kPi / 12.0).epsilon(1e-13));
  const double n3 = 0.25 * std::pow(kPi, -1.0) * riemann_zeta(2) * std::pow(kPi, -1.5) *
                    gamma_fn(1.5) * riemann_zeta(3);
  CHECK(covolume_slnz(3) == doctest::Approx(n3).epsilon(1e-13));
  for (int n = 2; n <= 8; ++n) CHECK(covolume_slnz(n) > 0);
}

TEST_CASE("b_nl value and cross identity") {
  CHECK(b_nl(2, 1) == doctest::Approx(12.0 / (kPi * kPi)).epsilon(1e-12));
  for (int n = 2; n <= 6; ++n)
    for (int l = 1; l < n; ++l) {
      CHECK(b_nl(n, l) ==
            doctest::Approx(gamma_nl(n, l) / d_nl(n, l) / covolume_slnz(n)).epsilon(1e-10));
      CHECK(b_nl(n, l) > 0);
    }
}

TEST_CASE("a_nl is the exact ratio") {
  for (int n = 2; n <= 8; ++n)
    for (int l = 1; l < n; ++l) {
      CHECK(a_nl(n, l) == gamma_nl(n, l) / d_nl(n, l));  // bit-for-bit
      const ConstantTable& t = constant_table(n, l);
      CHECK(t.a == t.gamma / t.d);
    }
}

TEST_CASE("c_nl matches unit-ball volumes") {
  CHECK(c_nl(2, 1) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(c_nl(3, 1) == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-13));
  CHECK(c_nl(3, 2) == doctest::Approx(kPi).epsilon(1e-13));
  for (int n = 2; n <= 7; ++n)
    for (int l = 1; l < n; ++l) {
      const int m2 = (n - l) * (n + l - 1);  // 2m, always even
      CHECK(c_nl(n, l) == doctest::Approx(unit_ball_volume(m2 / 2)).epsilon(1e-12));
    }
}

TEST_CASE("mellin transform values and pole") {
  CHECK(mellin_F(4.0, 3, 1) == doctest::Approx(kPi * kPi / 8.0).epsilon(1e-12));
  CHECK(mellin_F(3.0, 2, 1) == doctest::Approx(0.5 * std::sqrt(kPi)).epsilon(1e-12));
  CHECK_THROWS_AS(mellin_F(2.0, 3, 1), std::domain_error);   // z = n-1
  CHECK_THROWS_AS(mellin_F(1.99, 3, 1), std::domain_error);  // left of the pole
  // Grows without bound approaching the pole from the right.
  CHECK(mellin_F(2.0 + 1e-8, 3, 1) > mellin_F(2.1, 3, 1));
}

TEST_CASE("constant table memoization is consistent") {
  const ConstantTable& a = constant_table(4, 2);
  const ConstantTable& b = constant_table(4, 2);
  CHECK(&a == &b);
  CHECK(a.unit_ball.size() == 5);
  CHECK(a.b == doctest::Approx(b_nl(4, 2)).epsilon(1e-15));
}
