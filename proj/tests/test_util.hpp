#pragma once

// Shared test helpers: seeded random group elements, brute-force enumeration
// oracles, and independent quadrature oracles. Everything here is
// deliberately simple and separate from the library's own algorithms.

#include <cmath>
#include <random>
#include <vector>

#include "latorbit/geometry.hpp"
#include "latorbit/intmatrix.hpp"

namespace latorbit::testutil {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

// Gaussian entries renormalized to det 1 (resampling near-singular draws,
// flipping one column when det < 0).
inline RealMatrix random_sl(int n, std::mt19937_64& gen) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (;;) {
    RealMatrix g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = gauss(gen);
    double det = g.determinant();
    if (std::abs(det) < 0.2) continue;
    if (det < 0) {
      g.col(0) *= -1;
      det = -det;
    }
    return g / std::pow(det, 1.0 / n);
  }
}

inline RealMatrix random_orthogonal(int n, std::mt19937_64& gen) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  RealMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = gauss(gen);
  Eigen::HouseholderQR<RealMatrix> qr(g);
  RealMatrix q = qr.householderQ();
  RealMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) *= -1;
  if (q.determinant() < 0) q.col(0) *= -1;
  return q;
}

// Random words in integer symplectic generators: J, the symmetric shears
// [[E,S],[0,E]], and GL(n,Z) block embeddings. Norm-capped so double
// arithmetic stays far from the tolerance floor.
inline RealMatrix random_sp_word(int half_dim, std::mt19937_64& gen, double norm_cap = 300.0,
                                 int max_len = 12) {
  const int n = half_dim;
  std::vector<RealMatrix> gens;
  gens.push_back(symplectic_J(n));
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      RealMatrix S = RealMatrix::Zero(n, n);
      S(a, b) = S(b, a) = 1;
      RealMatrix g = RealMatrix::Identity(2 * n, 2 * n);
      g.topRightCorner(n, n) = S;
      gens.push_back(g);
      gens.push_back(g.inverse());
    }
  if (n > 1) {
    RealMatrix M = RealMatrix::Identity(n, n);
    M(0, 1) = 1;
    RealMatrix g = RealMatrix::Zero(2 * n, 2 * n);
    g.topLeftCorner(n, n) = M;
    g.bottomRightCorner(n, n) = M.transpose().inverse();
    gens.push_back(g);
    gens.push_back(g.inverse());
  }
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  RealMatrix w = RealMatrix::Identity(2 * n, 2 * n);
  for (int step = 0; step < max_len; ++step) {
    const RealMatrix next = w * gens[pick(gen)];
    if (next.norm() > norm_cap) break;
    w = next;
  }
  return w;
}

// O(T^3) triple-loop oracle for SL(2,Z): iterate (a, b, c), solve for d.
inline std::vector<IntMatrix> brute_sl2(double T) {
  const long double bound = static_cast<long double>(T) * T;
  const auto B = static_cast<std::int64_t>(std::ceil(T));
  std::vector<IntMatrix> out;
  for (std::int64_t a = -B; a <= B; ++a)
    for (std::int64_t b = -B; b <= B; ++b)
      for (std::int64_t c = -B; c <= B; ++c) {
        if (a == 0) {
          if (b * c != -1) continue;
          for (std::int64_t d = -B; d <= B; ++d) {
            const long double sq = static_cast<long double>(b) * b + c * c + d * d;
            if (sq < bound) {
              IntMatrix m(2);
              m.at(0, 0) = 0;
              m.at(0, 1) = b;
              m.at(1, 0) = c;
              m.at(1, 1) = d;
              out.push_back(m);
            }
          }
          continue;
        }
        if ((1 + b * c) % a != 0) continue;
        const std::int64_t d = (1 + b * c) / a;
        const long double sq =
            static_cast<long double>(a) * a + static_cast<long double>(b) * b +
            static_cast<long double>(c) * c + static_cast<long double>(d) * d;
        if (sq < bound) {
          IntMatrix m(2);
          m.at(0, 0) = a;
          m.at(0, 1) = b;
          m.at(1, 0) = c;
          m.at(1, 1) = d;
          out.push_back(m);
        }
      }
  return out;
}

// Exhaustive budgeted entry scan + exact group filter; independent of the
// library's column DFS and lattice solvers.
inline std::vector<IntMatrix> brute_filter(int n, double T, bool symplectic) {
  const long double bound = static_cast<long double>(T) * T;
  std::vector<IntMatrix> out;
  IntMatrix m(n);
  const auto rec = [&](auto&& self, int idx, long double used) -> void {
    if (idx == n * n) {
      if (symplectic ? m.is_symplectic_exact() : (m.det() == 1)) out.push_back(m);
      return;
    }
    auto b = static_cast<std::int64_t>(std::sqrt(static_cast<double>(bound - used))) + 1;
    for (std::int64_t x = -b; x <= b; ++x) {
      const long double sq = used + static_cast<long double>(x) * x;
      if (!(sq < bound)) continue;
      m.a[idx] = x;
      self(self, idx + 1, sq);
    }
  };
  rec(rec, 0, 0.0L);
  return out;
}

// Adaptive Simpson in 2-D (iterated), an oracle for box integrals of 1/|v|.
inline double simpson_1d(const std::function<double(double)>& f, double a, double b, double eps,
                         int depth = 0) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4 * fm + fb);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4 * frm + fb);
  if (depth > 40 || std::abs(left + right - whole) < 15 * eps)
    return left + right + (left + right - whole) / 15.0;
  return simpson_1d(f, a, m, eps / 2, depth + 1) + simpson_1d(f, m, b, eps / 2, depth + 1);
}

inline double adaptive_box_integral_2d(const std::function<double(double, double)>& f, double x0,
                                       double x1, double y0, double y1, double eps) {
  return simpson_1d(
      [&](double x) {
        return simpson_1d([&](double y) { return f(x, y); }, y0, y1, eps);
      },
      x0, x1, eps);
}

// Closed form of the corner integral of 1/|(x,y)| over [0,a] x [0,b].
inline double corner_closed_form_2d(double a, double b) {
  if (a <= 0 || b <= 0) return 0.0;
  return a * std::asinh(b / a) + b * std::asinh(a / b);
}

inline std::vector<IntMatrix> materialize(const std::vector<IntMatrix>& v) { return v; }

inline bool same_matrix_set(std::vector<IntMatrix> a, std::vector<IntMatrix> b) {
  auto key = [](const IntMatrix& m) { return m.a; };
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(key(a[i]) == key(b[i]))) return false;
  return true;
}

}  // namespace latorbit::testutil
