#pragma once

// Small exact integer-lattice toolkit backing the ball enumerator: affine
// systems A x = b over Z, LLL reduction, and enumeration of affine lattice
// points inside a Euclidean ball.

#include <cstdint>
#include <functional>
#include <vector>

namespace latorbit {

using IntVec = std::vector<std::int64_t>;

struct AffineLattice {
  bool solvable = false;
  IntVec x0;                  // one integer solution
  std::vector<IntVec> basis;  // basis of the integer kernel of A
};

// Solves A x = b over the integers; A given as m rows of length dim.
// Handles rank-deficient systems. Throws IntOverflowError when intermediate
// values leave the 64-bit range.
AffineLattice solve_affine(const std::vector<IntVec>& rows, const IntVec& rhs, int dim);

// In-place LLL (delta = 0.99) with floating Gram-Schmidt; sizes here are <= 9.
void lll_reduce(std::vector<IntVec>& basis);

// Calls visit(x) for every x = x0 + sum y_k basis_k with |x|^2 < sq_bound.
// Visits in no particular order; callers sort when order matters.
void enumerate_affine_ball(const AffineLattice& lat, long double sq_bound,
                           const std::function<void(const IntVec&)>& visit);

}  // namespace latorbit
