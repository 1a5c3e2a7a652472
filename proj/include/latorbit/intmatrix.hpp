#pragma once

// Exact integer matrices for lattice elements. Entries are 64-bit; products
// and determinants accumulate in 128 bits.

#include <cstdint>
#include <vector>

#include "latorbit/errors.hpp"
#include "latorbit/geometry.hpp"

namespace latorbit {

struct IntMatrix {
  int n = 0;
  std::vector<std::int64_t> a;  // row-major

  IntMatrix() = default;
  explicit IntMatrix(int size) : n(size), a(static_cast<std::size_t>(size) * size, 0) {}

  std::int64_t& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  std::int64_t at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

  static IntMatrix identity(int size);

  bool operator==(const IntMatrix& o) const = default;
  // Row-major lexicographic comparison.
  bool operator<(const IntMatrix& o) const { return a < o.a; }

  __int128 det() const;                  // exact, fraction-free elimination
  __int128 sq_norm() const;              // sum of squared entries
  bool is_symplectic_exact() const;      // t(g) J g == J over the integers

  RealMatrix to_real() const;
};

Frame orbit_point(const IntMatrix& g, const Frame& v0);

}  // namespace latorbit
