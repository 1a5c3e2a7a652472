#include "latorbit/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace latorbit {

Frame::Frame(RealMatrix columns) : cols_(std::move(columns)) {
  if (cols_.rows() < 1 || cols_.cols() < 1 || cols_.cols() > cols_.rows())
    throw std::invalid_argument("Frame: need n x l columns with 1 <= l <= n");
  if (!cols_.allFinite()) throw std::invalid_argument("Frame: entries must be finite");
}

RealVector Frame::flat() const {
  return Eigen::Map<const RealVector>(cols_.data(), cols_.size());
}

Frame Frame::standard(int n, int l) {
  return Frame(RealMatrix::Identity(n, n).leftCols(l));
}

double frobenius_norm(const RealMatrix& g) { return g.norm(); }

double frame_volume(const Frame& v) {
  const RealMatrix& V = v.columns();
  const RealMatrix gram = V.transpose() * V;
  const double det = gram.determinant();
  const double scale = std::pow(V.norm(), 2 * v.length());
  if (det <= 1e-12 * scale)
    throw DegenerateFrameError("frame_volume: Gram determinant vanishes within tolerance");
  return std::sqrt(det);
}

bool is_special_linear(const RealMatrix& g, double tol) {
  if (g.rows() != g.cols()) return false;
  return std::abs(g.determinant() - 1.0) <= tol;
}

RealMatrix symplectic_J(int half_dim) {
  const int n = half_dim;
  RealMatrix J = RealMatrix::Zero(2 * n, 2 * n);
  J.topRightCorner(n, n) = RealMatrix::Identity(n, n);
  J.bottomLeftCorner(n, n) = -RealMatrix::Identity(n, n);
  return J;
}

bool is_symplectic(const RealMatrix& g, double tol) {
  if (g.rows() != g.cols() || g.rows() % 2 != 0) return false;
  const RealMatrix J = symplectic_J(static_cast<int>(g.rows()) / 2);
  const double scale = std::max(1.0, g.squaredNorm());
  return (g.transpose() * J * g - J).norm() <= tol * scale;
}

double symplectic_form(const RealVector& x, const RealVector& y) {
  if (x.size() != y.size()) throw std::invalid_argument("symplectic_form: dimension mismatch");
  if (x.size() % 2 != 0) throw std::invalid_argument("symplectic_form: dimension must be even");
  const int n = static_cast<int>(x.size()) / 2;
  // t(x) J y = <x_head, y_tail> - <x_tail, y_head>
  return x.head(n).dot(y.tail(n)) - x.tail(n).dot(y.head(n));
}

bool is_isotropic(const Frame& v, double tol) {
  if (v.ambient_dim() % 2 != 0)
    throw std::invalid_argument("is_isotropic: ambient dimension must be even");
  for (int i = 0; i < v.length(); ++i)
    for (int j = i + 1; j < v.length(); ++j)
      if (std::abs(symplectic_form(v.columns().col(i), v.columns().col(j))) > tol) return false;
  return true;
}

RealMatrix IwasawaFactors::a() const {
  return s.array().exp().matrix().asDiagonal();
}

IwasawaFactors iwasawa(const RealMatrix& g) {
  const int n = static_cast<int>(g.rows());
  if (g.rows() != g.cols()) throw std::invalid_argument("iwasawa: matrix must be square");
  if (!is_special_linear(g))
    throw std::invalid_argument("iwasawa: |det g - 1| exceeds tolerance");

  // Modified Gram-Schmidt with a second sweep; g = Q R, R_ii > 0.
  RealMatrix Q = g;
  RealMatrix R = RealMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i < j; ++i) {
        const double r = Q.col(i).dot(Q.col(j));
        R(i, j) += r;
        Q.col(j) -= r * Q.col(i);
      }
    }
    const double nrm = Q.col(j).norm();
    if (nrm <= 1e-14 * g.norm())
      throw std::invalid_argument("iwasawa: singular input");
    R(j, j) = nrm;
    Q.col(j) /= nrm;
  }

  IwasawaFactors f;
  f.k = Q;
  f.s = R.diagonal().array().log();
  f.n = RealMatrix::Identity(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) f.n(i, j) = R(i, j) / R(j, j);
  return f;
}

std::pair<RealVector, RealVector> split_s(const RealVector& s, int l) {
  const int n = static_cast<int>(s.size());
  if (l < 1 || l >= n) throw std::invalid_argument("split_s: need 1 <= l <= n-1");
  RealVector minus = s;
  const double r = -s.head(l).sum() / (n - l);
  minus.tail(n - l).setConstant(r);
  return {minus, s - minus};
}

double delta(const RealVector& s, int l, DeltaSign sign) {
  const int n = static_cast<int>(s.size());
  if (l < 0 || l > n) throw std::invalid_argument("delta: l out of range");
  if (sign == DeltaSign::Minus) return std::exp(s.head(l).sum());
  double e = 0.0;
  for (int i = l + 1; i <= n; ++i) e += (n - i) * s(i - 1);
  return std::exp(2.0 * e);
}

RealMatrix ModifiedFactors::a_minus() const {
  return s_minus.array().exp().matrix().asDiagonal();
}

RealMatrix ModifiedFactors::a_plus() const {
  return s_plus.array().exp().matrix().asDiagonal();
}

RealMatrix ModifiedFactors::recompose(const RealMatrix& g0) const {
  const RealMatrix inner = g0.inverse() * (a_plus() * n_plus) * g0;
  return k * n_minus * a_minus() * g0 * inner;
}

ModifiedFactors iwasawa_modified(const RealMatrix& g, int l, const RealMatrix& g0) {
  const int n = static_cast<int>(g.rows());
  if (!is_special_linear(g) || !is_special_linear(g0))
    throw std::invalid_argument("iwasawa_modified: inputs must lie in SL(n,R)");
  if (l < 1 || l >= n) throw std::invalid_argument("iwasawa_modified: need 1 <= l <= n-1");

  const IwasawaFactors base = iwasawa(g * g0.inverse());

  // Split the unipotent part: n = n^- n^+ with n^- = diag(A, E) and
  // n^+ = [[E, A^{-1} B], [0, C]] for n = [[A, B], [0, C]].
  const RealMatrix A = base.n.topLeftCorner(l, l);
  const RealMatrix B = base.n.topRightCorner(l, n - l);
  const RealMatrix C = base.n.bottomRightCorner(n - l, n - l);

  ModifiedFactors f;
  f.l = l;
  f.k = base.k;
  f.n_minus = RealMatrix::Identity(n, n);
  f.n_minus.topLeftCorner(l, l) = A;
  std::tie(f.s_minus, f.s_plus) = split_s(base.s, l);

  RealMatrix n_plus = RealMatrix::Identity(n, n);
  n_plus.topRightCorner(l, n - l) = A.triangularView<Eigen::Upper>().solve(B);
  n_plus.bottomRightCorner(n - l, n - l) = C;
  // Pull n^+ across a(s): entries pick up e^{s_j - s_i}.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      n_plus(i, j) *= std::exp(base.s(j) - base.s(i));
  f.n_plus = n_plus;

  f.b_prime = A * f.s_minus.head(l).array().exp().matrix().asDiagonal();
  f.beta = std::pow(f.b_prime.determinant(), -1.0 / (n - l));
  return f;
}

RealMatrix SymplecticFactors::b() const {
  const int n = static_cast<int>(m.rows());
  const RealMatrix bp = m * a.asDiagonal();
  RealMatrix out = RealMatrix::Zero(2 * n, 2 * n);
  out.topLeftCorner(n, n) = bp;
  out.bottomRightCorner(n, n) = bp.transpose().inverse();
  return out;
}

RealMatrix SymplecticFactors::n_plus() const {
  const int n = static_cast<int>(m.rows());
  RealMatrix out = RealMatrix::Identity(2 * n, 2 * n);
  out.topRightCorner(n, n) = S;
  return out;
}

RealMatrix SymplecticFactors::recompose(const RealMatrix& g0) const {
  return k * b() * n_plus() * g0;  // k b g0 (n_+)^{g0}
}

SymplecticFactors symplectic_iwasawa(const RealMatrix& g, const RealMatrix& g0) {
  if (!is_symplectic(g) || !is_symplectic(g0))
    throw std::invalid_argument("symplectic_iwasawa: inputs must lie in Sp(n,R)");
  const int n = static_cast<int>(g.rows()) / 2;
  const RealMatrix h = g * g0.inverse();

  // P reverses coordinates n+1..2n; P (B N_+) P is upper triangular with
  // positive diagonal and P k P stays orthogonal.
  RealMatrix P = RealMatrix::Zero(2 * n, 2 * n);
  P.topLeftCorner(n, n) = RealMatrix::Identity(n, n);
  for (int i = 0; i < n; ++i) P(n + i, 2 * n - 1 - i) = 1.0;

  const IwasawaFactors base = iwasawa(P * h * P.transpose());
  const RealMatrix Y = P.transpose() * (base.n * base.a()) * P;  // = b n_+

  SymplecticFactors f;
  f.k = P.transpose() * base.k * P;
  const RealMatrix bp = Y.topLeftCorner(n, n);
  f.a = bp.diagonal();
  f.m = bp * f.a.cwiseInverse().asDiagonal();
  f.S = bp.triangularView<Eigen::Upper>().solve(Y.topRightCorner(n, n));

  const double scale = std::max(1.0, h.squaredNorm());
  if ((Y.bottomRightCorner(n, n) - bp.transpose().inverse()).norm() > 1e-8 * scale ||
      (f.S - f.S.transpose()).norm() > 1e-8 * scale || !is_symplectic(f.k) ||
      !is_symplectic(f.b()) || !is_symplectic(f.n_plus()))
    throw std::runtime_error("symplectic_iwasawa: factors failed the symplectic post-check");
  return f;
}

Frame orbit_point(const RealMatrix& g, const Frame& v0) {
  if (g.cols() != v0.ambient_dim())
    throw std::invalid_argument("orbit_point: dimension mismatch");
  return Frame(g * v0.columns());
}

}  // namespace latorbit
