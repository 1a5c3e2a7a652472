#pragma once

// Closed-form constants of the counting asymptotics: frame-measure and
// ball-volume normalizers d_{n,l}, gamma_{n,l}, their ratio a_{n,l}, the
// SL(n,Z) covolume, the arithmetic constant b_{n,l}, the reduced-ball
// constant c_{n,l}, and the Mellin transform F(z).

#include <vector>

namespace latorbit {

// Frame-measure normalizer: 2^l pi^{l(2n-l+1)/4} / prod_{i=0}^{l-1} Gamma((n-i)/2).
double d_nl(int n, int l);

// Ball-volume asymptotic constant:
// pi^{(n+l-1)(n-l)/4} / (2^{n-l-1} Gamma((n-1)(n-l)/2 + 1)) * prod_{j=l+1}^{n-1} Gamma((n-j)/2).
double gamma_nl(int n, int l);

// a_{n,l} = gamma_{n,l} / d_{n,l}.
double a_nl(int n, int l);

// Minkowski covolume of SL(n,Z)\SL(n,R) in the Iwasawa Haar normalization:
// 2^{-(n-1)} prod_{i=2}^{n} pi^{-i/2} Gamma(i/2) zeta(i), n >= 2.
double covolume_slnz(int n);

// b_{n,l} = pi^{n(n-l)/2} / (Gamma((n-1)(n-l)/2+1) Gamma((n-l)/2)) * prod_{i=2}^n zeta(i)^{-1}.
double b_nl(int n, int l);

// c_{n,l} = pi^{m/2} / Gamma(1 + m/2) with m = (n-l)(n+l-1)/2 (a unit-ball volume
// when m is integral, which it always is here).
double c_nl(int n, int l);

// Mellin transform of the Laplace-side ball volume:
// F(z) = pi^{(n+l-1)(n-l)/4} / 2^{n-l} * prod_{j=l+1}^{n} Gamma((z-j+1)/2), z > n-1.
double mellin_F(double z, int n, int l);

struct ConstantTable {
  int n = 0;
  int l = 0;
  std::vector<double> unit_ball;  // V_0 .. V_n
  double d = 0.0;
  double gamma = 0.0;
  double a = 0.0;
  double c = 0.0;
  double covolume = 0.0;  // SL(n,Z)
  double b = 0.0;
};

// Memoized per (n, l); safe to call concurrently.
const ConstantTable& constant_table(int n, int l);

}  // namespace latorbit
