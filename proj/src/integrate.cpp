#include "latorbit/integrate.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>

namespace latorbit {

const std::vector<std::pair<double, double>>& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need n >= 1");
  static std::mutex mu;
  static std::map<int, std::vector<std::pair<double, double>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<std::pair<double, double>> nw(n);
  for (int i = 0; i < n; ++i) {
    // Newton from the Chebyshev-angle initial guess.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * x * p1 - k * p2) / (k + 1.0);
      }
      const double dp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = 0.0;
    for (int k = 0; k < n; ++k) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * k + 1.0) * x * p1 - k * p2) / (k + 1.0);
    }
    const double dp = n * (x * p0 - p1) / (x * x - 1.0);
    nw[i] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
  }
  return cache.emplace(n, std::move(nw)).first->second;
}

double tensor_integral(const Box& b, const Integrand& f, int nodes) {
  const int d = static_cast<int>(b.lo.size());
  const auto& nw = gauss_legendre(nodes);
  std::vector<double> mid(d), half(d);
  double jac = 1.0;
  for (int i = 0; i < d; ++i) {
    mid[i] = 0.5 * (b.lo[i] + b.hi[i]);
    half[i] = 0.5 * (b.hi[i] - b.lo[i]);
    jac *= half[i];
  }
  if (jac == 0.0) return 0.0;

  std::vector<int> idx(d, 0);
  std::vector<double> x(d);
  for (int i = 0; i < d; ++i) x[i] = mid[i] + half[i] * nw[0].first;
  double sum = 0.0;
  for (;;) {
    double w = 1.0;
    for (int i = 0; i < d; ++i) w *= nw[idx[i]].second;
    sum += w * f(x.data());
    int k = d - 1;
    while (k >= 0) {
      if (++idx[k] < nodes) {
        x[k] = mid[k] + half[k] * nw[idx[k]].first;
        break;
      }
      idx[k] = 0;
      x[k] = mid[k] + half[k] * nw[0].first;
      --k;
    }
    if (k < 0) break;
  }
  return sum * jac;
}

double corner_box_inverse_norm(const std::vector<double>& sides, int nodes) {
  const int n = static_cast<int>(sides.size());
  if (n < 2) throw std::invalid_argument("corner_box_inverse_norm: need dimension >= 2");
  double scale = 1.0;
  for (double a : sides) {
    if (!(a > 0)) return 0.0;
    scale *= a;
  }
  // One pyramid per dominant scaled coordinate; Duffy map y_k = xi,
  // y_j = xi eta_j cancels the singularity: integrand xi^{n-2}/|w(eta)|.
  Box unit;
  unit.lo.assign(n, 0.0);
  unit.hi.assign(n, 1.0);
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    auto f = [&, k](const double* u) {
      const double xi = u[0];
      double w2 = sides[k] * sides[k];
      for (int j = 0, t = 1; j < n; ++j) {
        if (j == k) continue;
        const double wj = sides[j] * u[t++];
        w2 += wj * wj;
      }
      return std::pow(xi, n - 2) / std::sqrt(w2);
    };
    total += tensor_integral(unit, f, nodes);
  }
  return scale * total;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 step
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

IntegralResult monte_carlo_box(const Box& b, const Integrand& f, std::uint64_t samples,
                               std::uint64_t seed) {
  const int d = static_cast<int>(b.lo.size());
  double vol = 1.0;
  for (int i = 0; i < d; ++i) vol *= b.hi[i] - b.lo[i];
  if (vol == 0.0 || samples == 0) return {0.0, 0.0};

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> x(d);
  double sum = 0.0, sum_sq = 0.0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (int i = 0; i < d; ++i) x[i] = b.lo[i] + (b.hi[i] - b.lo[i]) * unif(rng);
    const double v = f(x.data());
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / samples;
  const double var = std::max(0.0, sum_sq / samples - mean * mean);
  return {vol * mean, vol * std::sqrt(var / samples)};
}

}  // namespace latorbit
