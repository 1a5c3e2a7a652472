#pragma once

// Numerical verification of the triangular-group ball volumes: the reduced
// integral for rho_l(B^C_{l,T}), its T -> infinity asymptotics against
// gamma_{n,l} T^{(n-1)(n-l)}, measure concentration above the floor C, and
// the decay of the complement slabs.

#include <cstdint>
#include <limits>
#include <optional>
#include <utility>

namespace latorbit {

enum class VolumeMethod { Quadrature, MonteCarlo };

struct BallVolumeQuery {
  int n = 2;
  int l = 1;
  double T = 10.0;
  double C = -std::numeric_limits<double>::infinity();  // floor on the free s^+ coordinates
  VolumeMethod method = VolumeMethod::Quadrature;
  std::uint64_t mc_samples = 1000000;
  std::uint64_t seed = 777;
  // Common truncation of the free s^+ coordinates for oracle comparisons;
  // both methods then integrate exactly the same region.
  std::optional<std::pair<double, double>> truncation;
};

struct VolumeResult {
  double value = 0;
  double std_error = 0;  // 0 for quadrature
};

// rho_l(B^C_{l,T}): the t-directions are integrated in closed form, only the
// n-l-1 free diagonal coordinates numerically. Returns 0 for T^2 <= l.
VolumeResult rho_ball(const BallVolumeQuery& q);

// rho_ball(T, C=-inf) / (gamma_{n,l} T^{(n-1)(n-l)}); tends to 1.
double asymptotic_ratio(int n, int l, double T);

// rho_ball(T, C) / rho_ball(T, -inf), in [0, 1].
double concentration_ratio(int n, int l, double T, double C);

// rho_l({b in B^o_{l,T} : s^+_{i0} <= C}) / T^{(n-1)(n-l)}; decays like
// T^{-(n-i0)} up to constants. Requires l < i0 < n.
double complement_decay(int n, int l, double T, double C, int i0);

}  // namespace latorbit
