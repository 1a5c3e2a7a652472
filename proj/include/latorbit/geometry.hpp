#pragma once

// Linear algebra over SL(n,R) and Sp(n,R): Frobenius norms, frame volumes,
// the Iwasawa decomposition and its modified and symplectic variants, and
// the density characters delta_l^{+-}.

#include <Eigen/Dense>

#include "latorbit/errors.hpp"

namespace latorbit {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// l-frame in R^n: an n x l matrix of linearly independent columns.
class Frame {
 public:
  Frame() = default;
  explicit Frame(RealMatrix columns);

  int ambient_dim() const { return static_cast<int>(cols_.rows()); }
  int length() const { return static_cast<int>(cols_.cols()); }
  const RealMatrix& columns() const { return cols_; }
  // Column-major flattening, the coordinate convention for regions.
  RealVector flat() const;

  static Frame standard(int n, int l);  // (e_1, ..., e_l)

 private:
  RealMatrix cols_;
};

double frobenius_norm(const RealMatrix& g);

// sqrt(det(V^t V)); throws DegenerateFrameError when the Gram determinant
// is <= 1e-12 * |v|_F^{2l}.
double frame_volume(const Frame& v);

// Membership checks. The symplectic residual is measured relative to
// max(1, |g|_F^2) since t(g) J g is quadratic in g.
bool is_special_linear(const RealMatrix& g, double tol = 1e-9);
bool is_symplectic(const RealMatrix& g, double tol = 1e-9);

// J = [[0, E], [-E, 0]] of size 2n.
RealMatrix symplectic_J(int half_dim);

// t(x) J y; antisymmetric. Throws std::invalid_argument on dimension mismatch
// or odd dimension.
double symplectic_form(const RealVector& x, const RealVector& y);

// True iff |t(v_i) J v_j| <= tol for all i, j.
bool is_isotropic(const Frame& v, double tol = 1e-9);

// g = k n(t) a(s): k orthogonal with det 1, n unit upper triangular,
// a = diag(e^{s_1}, ..., e^{s_n}) with sum s_i = 0.
struct IwasawaFactors {
  RealMatrix k;
  RealMatrix n;  // unit upper triangular; the t_{ij} live strictly above the diagonal
  RealVector s;

  RealMatrix a() const;
  RealMatrix recompose() const { return k * n * a(); }
};

// Computed by modified Gram-Schmidt on columns (one re-orthogonalization
// pass); requires |det g - 1| <= 1e-9.
IwasawaFactors iwasawa(const RealMatrix& g);

// s = s^- + s^+ with s^- = (s_1, ..., s_l, r, ..., r), r = -(s_1+...+s_l)/(n-l).
// Both parts sum to zero. Requires 1 <= l <= n-1.
std::pair<RealVector, RealVector> split_s(const RealVector& s, int l);

enum class DeltaSign { Minus, Plus };

// delta_l^-(s) = exp(sum_{i<=l} s_i); delta_l^+(s) = exp(2 sum_{i>l} (n-i) s_i).
double delta(const RealVector& s, int l, DeltaSign sign);

// g = k n^- a(s^-) g0 (a(s^+) n^+)^{g0}, the modified Iwasawa decomposition
// relative to the base point g0.
struct ModifiedFactors {
  int l = 0;
  RealMatrix k;
  RealMatrix n_minus;   // block diag(unit upper l x l, E)
  RealVector s_minus;   // full n-vector, tail constant
  RealVector s_plus;    // full n-vector, first l entries zero
  RealMatrix n_plus;    // unit upper triangular, nonzero strictly-upper entries only in columns > l
  RealMatrix b_prime;   // upper-left l x l block of n^- a(s^-)
  double beta = 0.0;    // det(b_prime)^{-1/(n-l)}

  RealMatrix a_minus() const;
  RealMatrix a_plus() const;
  RealMatrix recompose(const RealMatrix& g0) const;
};

ModifiedFactors iwasawa_modified(const RealMatrix& g, int l, const RealMatrix& g0);

// g = k b g0 n_+^{g0} in Sp(n,R): k in Sp cap SO(2n), b = [[b', 0], [0, t(b')^{-1}]]
// with b' = m diag(a) upper triangular, n_+ = [[E, S], [0, E]] with S symmetric.
struct SymplecticFactors {
  RealMatrix k;
  RealMatrix m;  // unit upper triangular n x n
  RealVector a;  // positive diagonal of b'
  RealMatrix S;  // symmetric n x n

  RealMatrix b() const;
  RealMatrix n_plus() const;
  RealMatrix recompose(const RealMatrix& g0) const;
};

// Route: conjugate by the permutation reversing coordinates n+1..2n, which
// carries B N_+ onto the upper-triangular positive-diagonal group of SL(2n);
// run the plain Iwasawa there and map the factors back. Uniqueness of the
// SL(2n) decomposition lands the factors in the symplectic subgroups; a
// post-check asserts symplecticity.
SymplecticFactors symplectic_iwasawa(const RealMatrix& g, const RealMatrix& g0);

// gamma . v0, columnwise action.
Frame orbit_point(const RealMatrix& g, const Frame& v0);

}  // namespace latorbit
