#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "latorbit/geometry.hpp"
#include "test_util.hpp"

using namespace latorbit;
namespace tu = latorbit::testutil;

namespace {

RealMatrix m2(double a, double b, double c, double d) {
  RealMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST_CASE("frobenius norm") {
  CHECK(frobenius_norm(RealMatrix::Identity(2, 2)) == doctest::Approx(std::sqrt(2.0)));
  for (int n = 2; n <= 6; ++n)
    CHECK(frobenius_norm(RealMatrix::Identity(n, n)) == doctest::Approx(std::sqrt(double(n))));
  CHECK(frobenius_norm(m2(2, 1, 0, 0.5)) == doctest::Approx(std::sqrt(5.25)));
}

TEST_CASE("norm invariance under orthogonal factors") {
  auto gen = tu::rng(11);
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 2 + static_cast<int>(gen() % 4);
    const RealMatrix g = tu::random_sl(n, gen);
    const RealMatrix k = tu::random_orthogonal(n, gen);
    const RealMatrix k2 = tu::random_orthogonal(n, gen);
    CHECK(frobenius_norm(k * g) == doctest::Approx(frobenius_norm(g)).epsilon(1e-12));
    CHECK(frobenius_norm(g * k2) == doctest::Approx(frobenius_norm(g)).epsilon(1e-12));
  }
}

TEST_CASE("frame volume") {
  for (int n = 2; n <= 5; ++n)
    for (int l = 1; l < n; ++l)
      CHECK(frame_volume(Frame::standard(n, l)) == doctest::Approx(1.0).epsilon(1e-12));
  RealMatrix v(2, 1);
  v << 2, 0;
  CHECK(frame_volume(Frame(v)) == doctest::Approx(2.0));

  // Gram-Schmidt oracle on a fixed 4x2 frame: product of projection lengths.
  auto gen = tu::rng(5);
  std::normal_distribution<double> gauss(0.0, 1.0);
  RealMatrix w(4, 2);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 2; ++j) w(i, j) = gauss(gen);
  const RealVector u1 = w.col(0);
  const RealVector u2 = w.col(1) - w.col(1).dot(u1.normalized()) * u1.normalized();
  CHECK(frame_volume(Frame(w)) == doctest::Approx(u1.norm() * u2.norm()).epsilon(1e-12));

  RealMatrix degenerate(3, 2);
  degenerate << 1, 2, 1, 2, 1, 2;
  CHECK_THROWS_AS(frame_volume(Frame(degenerate)), DegenerateFrameError);
}

TEST_CASE("frame volume is orthogonal-invariant") {
  auto gen = tu::rng(17);
  for (int rep = 0; rep < 30; ++rep) {
    const int n = 2 + static_cast<int>(gen() % 4);
    const int l = 1 + static_cast<int>(gen() % (n - 1));
    const RealMatrix g = tu::random_sl(n, gen);
    const Frame v(g.leftCols(l));
    const RealMatrix k = tu::random_orthogonal(n, gen);
    CHECK(frame_volume(orbit_point(k, v)) == doctest::Approx(frame_volume(v)).epsilon(1e-11));
  }
}

TEST_CASE("iwasawa on pinned inputs") {
  {
    const auto f = iwasawa(m2(0, -1, 1, 0));  // rotation
    CHECK((f.k - m2(0, -1, 1, 0)).norm() < 1e-12);
    CHECK(std::abs(f.n(0, 1)) < 1e-12);
    CHECK(f.s.norm() < 1e-12);
  }
  {
    const auto f = iwasawa(m2(2, 1, 0, 0.5));  // already triangular
    CHECK((f.k - RealMatrix::Identity(2, 2)).norm() < 1e-12);
    CHECK(f.n(0, 1) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(f.s(0) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(f.s(1) == doctest::Approx(-std::log(2.0)).epsilon(1e-12));
  }
  {
    const auto f = iwasawa(m2(1, 0, 1, 1));
    const double r = 1.0 / std::sqrt(2.0);
    CHECK((f.k - m2(r, -r, r, r)).norm() < 1e-12);
    CHECK(f.n(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f.s(0) == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(iwasawa(m2(2, 0, 0, 2)), std::invalid_argument);  // det 4
}

TEST_CASE("iwasawa round trip and frame-volume identity, randomized") {
  auto gen = tu::rng(101);
  for (int rep = 0; rep < 400; ++rep) {
    const int n = 2 + static_cast<int>(gen() % 4);  // up to 5
    const RealMatrix g = tu::random_sl(n, gen);
    const auto f = iwasawa(g);
    CHECK((f.recompose() - g).norm() / g.norm() < 1e-9);
    CHECK((f.k.transpose() * f.k - RealMatrix::Identity(n, n)).norm() < 1e-10);
    CHECK(f.s.sum() == doctest::Approx(0.0).epsilon(0).scale(1e-10));
    // Vol(g e^0) = delta_l^-(s) for every l
    for (int l = 1; l < n; ++l) {
      const Frame v(g.leftCols(l));
      CHECK(frame_volume(v) ==
            doctest::Approx(delta(f.s, l, DeltaSign::Minus)).epsilon(1e-9));
    }
  }
}

TEST_CASE("split_s") {
  RealVector s(2);
  s << 0.7, -0.7;
  auto [m1, p1] = split_s(s, 1);
  CHECK((m1 - s).norm() < 1e-15);
  CHECK(p1.norm() < 1e-15);

  RealVector s3(3);
  s3 << 0, 1, -1;
  auto [m2v, p2] = split_s(s3, 1);
  CHECK(m2v.norm() < 1e-15);
  CHECK((p2 - s3).norm() < 1e-15);

  RealVector s4(3);
  s4 << 2, 1, -3;
  auto [m3, p3] = split_s(s4, 1);
  RealVector want_m(3), want_p(3);
  want_m << 2, -1, -1;
  want_p << 0, 2, -2;
  CHECK((m3 - want_m).norm() < 1e-14);
  CHECK((p3 - want_p).norm() < 1e-14);
  CHECK(m3.sum() == doctest::Approx(0.0).epsilon(0).scale(1e-14));
  CHECK(p3.sum() == doctest::Approx(0.0).epsilon(0).scale(1e-14));

  CHECK_THROWS_AS(split_s(s4, 3), std::invalid_argument);
}

TEST_CASE("delta characters") {
  RealVector s(2);
  s << std::log(2.0), -std::log(2.0);
  CHECK(delta(s, 1, DeltaSign::Minus) == doctest::Approx(2.0).epsilon(1e-13));

  RealVector s3(3);
  s3 << 0, 1, -1;
  CHECK(delta(s3, 1, DeltaSign::Plus) == doctest::Approx(std::exp(2.0)).epsilon(1e-13));

  RealVector flat(4);
  flat << 0.4, -0.4, 0, 0;
  CHECK(delta(flat, 2, DeltaSign::Plus) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("modified iwasawa pinned") {
  const RealMatrix e = RealMatrix::Identity(2, 2);
  {
    const auto f = iwasawa_modified(e, 1, e);
    CHECK(f.beta == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((f.b_prime - RealMatrix::Identity(1, 1)).norm() < 1e-12);
    CHECK((f.recompose(e) - e).norm() < 1e-12);
  }
  {
    const auto f = iwasawa_modified(m2(2, 0, 0, 0.5), 1, e);
    CHECK(f.s_minus(0) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(f.s_minus(1) == doctest::Approx(-std::log(2.0)).epsilon(1e-12));
    CHECK(f.s_plus.norm() < 1e-12);
    CHECK(f.b_prime(0, 0) == doctest::Approx(2.0).epsilon(1e-12));
  }
}

TEST_CASE("modified iwasawa round trip, randomized") {
  auto gen = tu::rng(202);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 2 + static_cast<int>(gen() % 4);
    const int l = 1 + static_cast<int>(gen() % (n - 1));
    const RealMatrix g = tu::random_sl(n, gen);
    const RealMatrix g0 = tu::random_sl(n, gen);
    const auto f = iwasawa_modified(g, l, g0);
    CHECK((f.recompose(g0) - g).norm() / g.norm() < 1e-9);
    // s = s^- + s^+ and the b' determinant identity
    CHECK((f.s_minus + f.s_plus - iwasawa(g * g0.inverse()).s).norm() < 1e-10);
    CHECK(f.b_prime.determinant() ==
          doctest::Approx(std::exp(f.s_minus.head(l).sum())).epsilon(1e-10));
    CHECK(f.b_prime.determinant() * std::pow(f.beta, n - l) == doctest::Approx(1.0).epsilon(1e-10));
    for (int i = 0; i < l; ++i) CHECK(f.s_plus(i) == doctest::Approx(0.0).epsilon(0).scale(1e-12));
  }
}

TEST_CASE("symplectic form") {
  RealVector x(2), y(2);
  x << 1, 0;
  y << 0, 1;
  CHECK(symplectic_form(x, y) == doctest::Approx(1.0));
  CHECK(symplectic_form(x, x) == doctest::Approx(0.0));
  CHECK(symplectic_form(y, x) == doctest::Approx(-1.0));
  RealVector e1(4), e2(4);
  e1 << 1, 0, 0, 0;
  e2 << 0, 1, 0, 0;
  CHECK(symplectic_form(e1, e2) == doctest::Approx(0.0));
  RealVector bad(3);
  bad.setZero();
  CHECK_THROWS_AS(symplectic_form(x, bad), std::invalid_argument);
}

TEST_CASE("isotropic frames") {
  CHECK(is_isotropic(Frame::standard(4, 2)));
  RealMatrix mixed(4, 2);
  mixed << 1, 0, 0, 0, 0, 1, 0, 0;  // (e1, e3): J(e1,e3) = 1
  CHECK_FALSE(is_isotropic(Frame(mixed)));

  auto gen = tu::rng(303);
  for (int rep = 0; rep < 40; ++rep) {
    const int half = 1 + static_cast<int>(gen() % 2);
    const RealMatrix g = tu::random_sp_word(half, gen);
    CHECK(is_isotropic(Frame(g.leftCols(half)), 1e-7));
  }
}

TEST_CASE("symplectic iwasawa pinned") {
  const RealMatrix e = RealMatrix::Identity(2, 2);
  {
    const auto f = symplectic_iwasawa(e, e);
    CHECK((f.recompose(e) - e).norm() < 1e-12);
    CHECK(f.S.norm() < 1e-12);
  }
  {
    const auto f = symplectic_iwasawa(m2(1, 1, 0, 1), e);  // already in N_+
    CHECK((f.k - e).norm() < 1e-10);
    CHECK((f.b() - e).norm() < 1e-10);
    CHECK(f.S(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  }
  {
    const auto f = symplectic_iwasawa(m2(2, 0, 0, 0.5), e);  // in A
    CHECK((f.k - e).norm() < 1e-10);
    CHECK(f.a(0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(f.S.norm() < 1e-12);
  }
  CHECK_THROWS_AS(symplectic_iwasawa(m2(1, 1, 1, 1), e), std::invalid_argument);
}

TEST_CASE("symplectic iwasawa on generator words") {
  auto gen = tu::rng(404);
  const RealMatrix J2 = symplectic_J(1), J4 = symplectic_J(2);
  for (int rep = 0; rep < 120; ++rep) {
    const int half = 1 + rep % 2;
    const RealMatrix g = tu::random_sp_word(half, gen);
    const RealMatrix g0 = tu::random_sp_word(half, gen, 40.0, 4);
    const auto f = symplectic_iwasawa(g, g0);
    CHECK((f.recompose(g0) - g).norm() / std::max(1.0, g.norm()) < 1e-9);
    const RealMatrix& J = half == 1 ? J2 : J4;
    for (const RealMatrix& factor : {f.k, f.b(), f.n_plus()}) {
      CHECK((factor.transpose() * J * factor - J).norm() < 1e-9);
    }
  }
}

TEST_CASE("orbit points") {
  RealMatrix v(2, 1);
  v << std::sqrt(2.0), std::sqrt(3.0);
  const Frame v0(v);
  CHECK((orbit_point(RealMatrix::Identity(2, 2), v0).columns() - v).norm() < 1e-15);
  const Frame rot = orbit_point(m2(0, 1, -1, 0), v0);
  CHECK(rot.columns()(0, 0) == doctest::Approx(std::sqrt(3.0)));
  CHECK(rot.columns()(1, 0) == doctest::Approx(-std::sqrt(2.0)));
}
