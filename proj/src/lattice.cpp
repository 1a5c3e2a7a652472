#include "latorbit/lattice.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

#include "latorbit/errors.hpp"

namespace latorbit {

namespace {

std::int64_t checked(__int128 v, const char* who) {
  if (v > INT64_MAX || v < INT64_MIN) throw IntOverflowError(who);
  return static_cast<std::int64_t>(v);
}

// g = gcd(a, b) >= 0 with u a + v b = g.
std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& u, std::int64_t& v) {
  std::int64_t r0 = a, r1 = b, u0 = 1, u1 = 0, v0 = 0, v1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::pair(r1, r0 - q * r1);
    std::tie(u0, u1) = std::pair(u1, u0 - q * u1);
    std::tie(v0, v1) = std::pair(v1, v0 - q * v1);
  }
  if (r0 < 0) {
    r0 = -r0;
    u0 = -u0;
    v0 = -v0;
  }
  u = u0;
  v = v0;
  return r0;
}

long double dotl(const std::vector<long double>& x, const std::vector<long double>& y) {
  long double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

}  // namespace

AffineLattice solve_affine(const std::vector<IntVec>& rows, const IntVec& rhs, int dim) {
  const int m = static_cast<int>(rows.size());
  // Column operations on W = A, mirrored on U, bring A U to column-echelon
  // form; then A x = b is solved by forward substitution in y with x = U y.
  std::vector<IntVec> W = rows;
  std::vector<IntVec> U(dim, IntVec(dim, 0));
  for (int i = 0; i < dim; ++i) U[i][i] = 1;  // U stored as columns

  auto col_combine = [&](int c1, int c2, std::int64_t p, std::int64_t q, std::int64_t r,
                         std::int64_t s) {
    // (col_c1, col_c2) <- (p col_c1 + q col_c2, r col_c1 + s col_c2)
    for (int i = 0; i < m; ++i) {
      const __int128 a = static_cast<__int128>(p) * W[i][c1] + static_cast<__int128>(q) * W[i][c2];
      const __int128 b = static_cast<__int128>(r) * W[i][c1] + static_cast<__int128>(s) * W[i][c2];
      W[i][c1] = checked(a, "solve_affine");
      W[i][c2] = checked(b, "solve_affine");
    }
    for (int i = 0; i < dim; ++i) {
      const __int128 a = static_cast<__int128>(p) * U[c1][i] + static_cast<__int128>(q) * U[c2][i];
      const __int128 b = static_cast<__int128>(r) * U[c1][i] + static_cast<__int128>(s) * U[c2][i];
      U[c1][i] = checked(a, "solve_affine");
      U[c2][i] = checked(b, "solve_affine");
    }
  };

  AffineLattice out;
  IntVec y(dim, 0);
  std::vector<int> pivot_col_of_row(m, -1);
  int pivots = 0;
  for (int r = 0; r < m; ++r) {
    // Clear row r right of column `pivots` by gcd column ops.
    for (int j = pivots + 1; j < dim; ++j) {
      if (W[r][j] == 0) continue;
      if (W[r][pivots] == 0) {
        col_combine(pivots, j, 0, 1, 1, 0);  // swap
        continue;
      }
      std::int64_t u, v;
      const std::int64_t g = ext_gcd(W[r][pivots], W[r][j], u, v);
      const std::int64_t p = W[r][pivots] / g, q = W[r][j] / g;
      col_combine(pivots, j, u, v, -q, p);
    }
    // Residual after the already-fixed coordinates.
    __int128 resid = rhs[r];
    for (int c = 0; c < pivots; ++c) resid -= static_cast<__int128>(W[r][c]) * y[c];
    if (pivots < dim && W[r][pivots] != 0) {
      if (resid % W[r][pivots] != 0) return out;  // no integer solution
      y[pivots] = checked(resid / W[r][pivots], "solve_affine");
      pivot_col_of_row[r] = pivots;
      ++pivots;
    } else if (resid != 0) {
      return out;  // inconsistent dependent row
    }
  }

  out.solvable = true;
  out.x0.assign(dim, 0);
  for (int i = 0; i < dim; ++i) {
    __int128 s = 0;
    for (int c = 0; c < pivots; ++c) s += static_cast<__int128>(U[c][i]) * y[c];
    out.x0[i] = checked(s, "solve_affine");
  }
  for (int c = pivots; c < dim; ++c) out.basis.push_back(U[c]);
  return out;
}

void lll_reduce(std::vector<IntVec>& basis) {
  const int d = static_cast<int>(basis.size());
  if (d < 2) return;
  const int dim = static_cast<int>(basis[0].size());

  std::vector<std::vector<long double>> star(d, std::vector<long double>(dim));
  std::vector<std::vector<long double>> mu(d, std::vector<long double>(d, 0));
  std::vector<long double> B(d, 0);

  auto gram_schmidt = [&]() {
    for (int i = 0; i < d; ++i) {
      for (int k = 0; k < dim; ++k) star[i][k] = static_cast<long double>(basis[i][k]);
      for (int j = 0; j < i; ++j) {
        mu[i][j] = B[j] > 0 ? dotl(star[i], star[j]) / B[j] : 0;
        for (int k = 0; k < dim; ++k) star[i][k] -= mu[i][j] * star[j][k];
      }
      B[i] = dotl(star[i], star[i]);
    }
  };

  gram_schmidt();
  int k = 1;
  int guard = 0;
  while (k < d && ++guard < 10000) {
    for (int j = k - 1; j >= 0; --j) {
      const auto q = static_cast<std::int64_t>(llroundl(mu[k][j]));
      if (q != 0)
        for (int i = 0; i < dim; ++i)
          basis[k][i] = checked(static_cast<__int128>(basis[k][i]) -
                                    static_cast<__int128>(q) * basis[j][i],
                                "lll_reduce");
    }
    gram_schmidt();
    if (B[k] >= (0.99L - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
      ++k;
    } else {
      std::swap(basis[k], basis[k - 1]);
      gram_schmidt();
      k = std::max(1, k - 1);
    }
  }
}

void enumerate_affine_ball(const AffineLattice& lat, long double sq_bound,
                           const std::function<void(const IntVec&)>& visit) {
  if (!lat.solvable) return;
  const int dim = static_cast<int>(lat.x0.size());
  const int d = static_cast<int>(lat.basis.size());

  auto exact_sq = [&](const IntVec& x) {
    __int128 s = 0;
    for (std::int64_t v : x) s += static_cast<__int128>(v) * v;
    return s;
  };

  if (d == 0) {
    if (static_cast<long double>(exact_sq(lat.x0)) < sq_bound) visit(lat.x0);
    return;
  }

  std::vector<IntVec> basis = lat.basis;
  lll_reduce(basis);

  // Gram-Schmidt of the reduced basis.
  std::vector<std::vector<long double>> star(d, std::vector<long double>(dim));
  std::vector<std::vector<long double>> mu(d, std::vector<long double>(d, 0));
  std::vector<long double> B(d, 0);
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < dim; ++k) star[i][k] = static_cast<long double>(basis[i][k]);
    for (int j = 0; j < i; ++j) {
      mu[i][j] = dotl(star[i], star[j]) / B[j];
      for (int k = 0; k < dim; ++k) star[i][k] -= mu[i][j] * star[j][k];
    }
    B[i] = dotl(star[i], star[i]);
    if (!(B[i] > 0)) return;  // dependent basis; cannot happen for exact kernels
  }

  // Offset coordinates: x = x0 + sum y_k b_k; project x0 on the GS frame.
  std::vector<long double> off(d);
  for (int i = 0; i < d; ++i) {
    long double s = 0;
    for (int k = 0; k < dim; ++k) s += static_cast<long double>(lat.x0[k]) * star[i][k];
    off[i] = s / B[i];
  }
  // Component of x0 orthogonal to the lattice span is a fixed cost.
  std::vector<long double> perp(dim);
  for (int k = 0; k < dim; ++k) perp[k] = static_cast<long double>(lat.x0[k]);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < dim; ++k) perp[k] -= off[i] * star[i][k];
  long double perp_sq = dotl(perp, perp);
  if (perp_sq >= sq_bound) {
    // Numerical slack: retry with a tiny margin before giving up.
    if (perp_sq > sq_bound * (1 + 1e-12L) + 1e-9L) return;
  }

  std::vector<std::int64_t> y(d, 0);
  IntVec x(dim);
  // Depth-first over y_{d-1} .. y_0 with padded interval bounds and an exact
  // final norm check.
  std::function<void(int, long double)> rec = [&](int level, long double remaining) {
    // Center of the admissible interval at this level.
    long double center = off[level];
    for (int j = level + 1; j < d; ++j) center += mu[j][level] * static_cast<long double>(y[j]);
    const long double halfwidth = sqrtl(std::max(0.0L, remaining / B[level]));
    const auto lo = static_cast<std::int64_t>(floorl(-center - halfwidth)) - 1;
    const auto hi = static_cast<std::int64_t>(ceill(-center + halfwidth)) + 1;
    for (std::int64_t t = lo; t <= hi; ++t) {
      y[level] = t;
      const long double z = center + static_cast<long double>(t);
      const long double used = z * z * B[level];
      if (level == 0) {
        for (int k = 0; k < dim; ++k) {
          __int128 s = lat.x0[k];
          for (int j = 0; j < d; ++j) s += static_cast<__int128>(y[j]) * basis[j][k];
          x[k] = checked(s, "enumerate_affine_ball");
        }
        if (static_cast<long double>(exact_sq(x)) < sq_bound) visit(x);
      } else if (used <= remaining * (1 + 1e-9L) + 1e-9L) {
        rec(level - 1, remaining - used);
      }
    }
    y[level] = 0;
  };
  rec(d - 1, sq_bound - perp_sq);
}

}  // namespace latorbit
