#pragma once

// The limit-measure side of the counting problem: integrals of 1/Vol(v) over
// test regions, the predicted counting asymptotic, and empirical orbit
// counting over enumerated lattice balls.

#include <cstdint>
#include <span>
#include <vector>

#include "latorbit/enumerate.hpp"
#include "latorbit/integrate.hpp"
#include "latorbit/region.hpp"

namespace latorbit {

struct CountResult {
  double T = 0;
  std::uint64_t empirical = 0;
  double predicted = 0;
  double ratio = 0;  // empirical / predicted when predicted > 0
};

struct QuadratureOptions {
  int nodes = 32;                      // per axis per box
  std::uint64_t mc_samples = 1000000;  // predicate regions
  std::uint64_t seed = 20240901;
};

// integral_Omega dv / Vol(v). Boxes use tensor Gauss-Legendre with a
// node-halving error estimate (origin-containing 1-frame boxes are split at
// the origin and Duffy-transformed); annuli use the closed form; predicate
// regions fall back to Monte Carlo with a standard error.
IntegralResult target_integral(const Region& omega, int n, int l,
                               const QuadratureOptions& opt = {});

// Monte Carlo route for box regions, used as an independent cross-check of
// the quadrature path.
IntegralResult target_integral_mc(const Region& omega, int n, int l, std::uint64_t samples,
                                  std::uint64_t seed);

// a_{n,l} Vol(v0)^{1-n} / covolume * (integral_Omega dv/Vol) * T^{(n-1)(n-l)}.
double predicted_count(int n, int l, const Frame& v0, const Region& omega, double T,
                       double covolume, const QuadratureOptions& opt = {});

// |{gamma in the ball : gamma . v0 in Omega}|.
std::uint64_t empirical_count(const Frame& v0, const Region& omega, const BallQuery& q,
                              int threads = 1);
std::uint64_t empirical_count(const Frame& v0, const Region& omega,
                              std::span<const IntMatrix> stream);

// Per-cell N_T(cell)/T^exponent over one enumeration pass.
std::vector<double> empirical_cell_measure(const Frame& v0, const std::vector<Region>& cells,
                                           const BallQuery& q, double exponent, int threads = 1);

namespace detail {
// Hot-path membership: w = g.v0 in column-major coords.
void orbit_coords(const IntMatrix& g, const RealMatrix& v0, double* out);
}  // namespace detail

}  // namespace latorbit
