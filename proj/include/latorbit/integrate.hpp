#pragma once

// Quadrature and Monte Carlo primitives: Gauss-Legendre rules, tensor-product
// box integration with a node-halving error estimate, Duffy-transformed
// corner boxes for the 1/|v| singularity, and seeded uniform sampling.

#include <cstdint>
#include <functional>
#include <vector>

#include "latorbit/region.hpp"

namespace latorbit {

struct IntegralResult {
  double value = 0;
  double error = 0;  // halving estimate for quadrature, standard error for MC
};

// Nodes/weights on [-1, 1]; cached, thread-safe.
const std::vector<std::pair<double, double>>& gauss_legendre(int n);

using Integrand = std::function<double(const double*)>;

// Tensor-product Gauss-Legendre over a box at `nodes` per axis.
double tensor_integral(const Box& b, const Integrand& f, int nodes);

// Integral of 1/|x| over a box with the origin at one corner and side
// lengths `sides`; Duffy pyramid maps remove the singularity.
double corner_box_inverse_norm(const std::vector<double>& sides, int nodes);

// Uniform Monte Carlo over a box; returns mean-based estimate and standard
// error. Deterministic for a given seed.
IntegralResult monte_carlo_box(const Box& b, const Integrand& f, std::uint64_t samples,
                               std::uint64_t seed);

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace latorbit
