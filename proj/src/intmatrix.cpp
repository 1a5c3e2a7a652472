#include "latorbit/intmatrix.hpp"

#include <stdexcept>

namespace latorbit {

IntMatrix IntMatrix::identity(int size) {
  IntMatrix m(size);
  for (int i = 0; i < size; ++i) m.at(i, i) = 1;
  return m;
}

__int128 IntMatrix::det() const {
  // Bareiss fraction-free elimination; all divisions are exact.
  std::vector<__int128> w(a.begin(), a.end());
  auto at128 = [&](int i, int j) -> __int128& { return w[static_cast<std::size_t>(i) * n + j]; };
  __int128 prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (at128(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (at128(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(at128(k, j), at128(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        at128(i, j) = (at128(i, j) * at128(k, k) - at128(i, k) * at128(k, j)) / prev;
    prev = at128(k, k);
  }
  return sign * at128(n - 1, n - 1);
}

__int128 IntMatrix::sq_norm() const {
  __int128 s = 0;
  for (std::int64_t x : a) s += static_cast<__int128>(x) * x;
  return s;
}

bool IntMatrix::is_symplectic_exact() const {
  if (n % 2 != 0) return false;
  const int h = n / 2;
  // (t(g) J g)_{ij} = <col_i head, col_j tail> - <col_i tail, col_j head>
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      __int128 form = 0;
      for (int r = 0; r < h; ++r)
        form += static_cast<__int128>(at(r, i)) * at(r + h, j) -
                static_cast<__int128>(at(r + h, i)) * at(r, j);
      const __int128 want = (j == i + h) ? 1 : 0;
      if (form != want) return false;
    }
  }
  return true;
}

RealMatrix IntMatrix::to_real() const {
  RealMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = static_cast<double>(at(i, j));
  return m;
}

Frame orbit_point(const IntMatrix& g, const Frame& v0) {
  if (g.n != v0.ambient_dim()) throw std::invalid_argument("orbit_point: dimension mismatch");
  return Frame(g.to_real() * v0.columns());
}

}  // namespace latorbit
