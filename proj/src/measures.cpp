#include "latorbit/measures.hpp"

#include <cmath>

#include "latorbit/constants.hpp"
#include "latorbit/special.hpp"

namespace latorbit {

namespace {

// 1/Vol at column-major frame coordinates; Gram determinant by tiny
// elimination, l <= 5.
double inv_vol(const double* x, int n, int l) {
  if (l == 1) {
    double s = 0;
    for (int i = 0; i < n; ++i) s += x[i] * x[i];
    return s > 0 ? 1.0 / std::sqrt(s) : 0.0;
  }
  double g[25];
  for (int a = 0; a < l; ++a)
    for (int b = a; b < l; ++b) {
      double s = 0;
      for (int i = 0; i < n; ++i) s += x[a * n + i] * x[b * n + i];
      g[a * l + b] = g[b * l + a] = s;
    }
  double det = 1.0;
  for (int k = 0; k < l; ++k) {
    double piv = g[k * l + k];
    if (!(piv > 0)) return 0.0;
    det *= piv;
    for (int i = k + 1; i < l; ++i) {
      const double m = g[i * l + k] / piv;
      for (int j = k; j < l; ++j) g[i * l + j] -= m * g[k * l + j];
    }
  }
  return det > 0 ? 1.0 / std::sqrt(det) : 0.0;
}

bool box_touches_origin(const Box& b) {
  for (std::size_t i = 0; i < b.lo.size(); ++i)
    if (b.lo[i] > 0.0 || b.hi[i] < 0.0) return false;
  return true;
}

// Integral of 1/|x| over a 1-frame box whose closure contains the origin:
// orthant split into corner boxes, each Duffy-transformed.
double singular_box_value(const Box& b, int nodes) {
  const int n = static_cast<int>(b.lo.size());
  double total = 0.0;
  std::vector<double> sides(n);
  const auto rec = [&](auto&& self, int i) -> void {
    if (i == n) {
      total += corner_box_inverse_norm(sides, nodes);
      return;
    }
    if (b.hi[i] > 0) {
      sides[i] = b.hi[i];
      self(self, i + 1);
    }
    if (b.lo[i] < 0) {
      sides[i] = -b.lo[i];
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return total;
}

IntegralResult box_region_integral(const Region& omega, int n, int l,
                                   const QuadratureOptions& opt) {
  IntegralResult out;
  const Integrand f = [n, l](const double* x) { return inv_vol(x, n, l); };
  for (const auto& b : omega.boxes()) {
    if (static_cast<int>(b.lo.size()) != n * l)
      throw std::invalid_argument("target_integral: box dimension != n*l");
    if (l == 1 && box_touches_origin(b)) {
      const double v = singular_box_value(b, opt.nodes);
      const double v_half = singular_box_value(b, std::max(2, opt.nodes / 2));
      out.value += v;
      out.error += std::abs(v - v_half);
    } else {
      const double v = tensor_integral(b, f, opt.nodes);
      const double v_half = tensor_integral(b, f, std::max(2, opt.nodes / 2));
      out.value += v;
      out.error += std::abs(v - v_half);
    }
  }
  return out;
}

}  // namespace

IntegralResult target_integral(const Region& omega, int n, int l, const QuadratureOptions& opt) {
  if (n < 2 || l < 1 || l > n - 1)
    throw std::invalid_argument("target_integral: need 1 <= l <= n-1");
  switch (omega.kind()) {
    case Region::Kind::Annulus: {
      if (l != 1) throw std::invalid_argument("target_integral: annuli apply to 1-frames");
      // surf(S^{n-1}) * (r_max^{n-1} - r_min^{n-1}) / (n-1)
      const double surf = 2.0 * std::pow(M_PI, 0.5 * n) / gamma_fn(0.5 * n);
      const double v = surf *
                       (std::pow(omega.r_max(), n - 1) - std::pow(omega.r_min(), n - 1)) /
                       (n - 1);
      return {v, 0.0};
    }
    case Region::Kind::BoxUnion:
      return box_region_integral(omega, n, l, opt);
    case Region::Kind::Predicate: {
      const auto& fn = omega.predicate_fn();
      const Integrand f = [&fn, n, l](const double* x) {
        RealVector v(n * l);
        for (int i = 0; i < n * l; ++i) v(i) = x[i];
        return fn(v) ? inv_vol(x, n, l) : 0.0;
      };
      return monte_carlo_box(omega.predicate_bounds(), f, opt.mc_samples, opt.seed);
    }
  }
  return {};
}

IntegralResult target_integral_mc(const Region& omega, int n, int l, std::uint64_t samples,
                                  std::uint64_t seed) {
  if (omega.kind() != Region::Kind::BoxUnion)
    throw std::invalid_argument("target_integral_mc: box regions only");
  IntegralResult out;
  double var = 0.0;
  std::uint64_t stream = 0;
  for (const auto& b : omega.boxes()) {
    const Integrand f = [n, l](const double* x) { return inv_vol(x, n, l); };
    const IntegralResult r = monte_carlo_box(b, f, samples, mix_seed(seed, stream++));
    out.value += r.value;
    var += r.error * r.error;
  }
  out.error = std::sqrt(var);
  return out;
}

double predicted_count(int n, int l, const Frame& v0, const Region& omega, double T,
                       double covolume, const QuadratureOptions& opt) {
  if (!(T > 0)) throw std::invalid_argument("predicted_count: T must be positive");
  if (!(covolume > 0)) throw std::invalid_argument("predicted_count: covolume must be positive");
  const double vol0 = frame_volume(v0);  // throws on degenerate v0
  const double integral = target_integral(omega, n, l, opt).value;
  return a_nl(n, l) * std::pow(vol0, 1.0 - n) / covolume * integral *
         std::pow(T, (n - 1) * (n - l));
}

namespace detail {

void orbit_coords(const IntMatrix& g, const RealMatrix& v0, double* out) {
  const int n = g.n;
  const int l = static_cast<int>(v0.cols());
  for (int j = 0; j < l; ++j)
    for (int i = 0; i < n; ++i) {
      double s = 0;
      for (int k = 0; k < n; ++k) s += static_cast<double>(g.at(i, k)) * v0(k, j);
      out[j * n + i] = s;
    }
}

}  // namespace detail

std::uint64_t empirical_count(const Frame& v0, const Region& omega, const BallQuery& q,
                              int threads) {
  if (q.n != v0.ambient_dim())
    throw std::invalid_argument("empirical_count: dimension mismatch");
  const RealMatrix v = v0.columns();
  const int count = q.n * v0.length();
  const auto states = enumerate_chunked<std::uint64_t>(
      q, threads, [&](std::uint64_t& s, const IntMatrix& g) {
        double w[64];
        detail::orbit_coords(g, v, w);
        if (omega.contains(w, count)) ++s;
      });
  std::uint64_t total = 0;
  for (auto s : states) total += s;
  return total;
}

std::uint64_t empirical_count(const Frame& v0, const Region& omega,
                              std::span<const IntMatrix> stream) {
  const RealMatrix v = v0.columns();
  if (stream.empty()) return 0;
  const int count = stream.front().n * v0.length();
  std::uint64_t total = 0;
  double w[64];
  for (const auto& g : stream) {
    detail::orbit_coords(g, v, w);
    if (omega.contains(w, count)) ++total;
  }
  return total;
}

std::vector<double> empirical_cell_measure(const Frame& v0, const std::vector<Region>& cells,
                                           const BallQuery& q, double exponent, int threads) {
  const RealMatrix v = v0.columns();
  const int count = q.n * v0.length();
  using Counts = std::vector<std::uint64_t>;
  const auto states = enumerate_chunked<Counts>(q, threads, [&](Counts& s, const IntMatrix& g) {
    if (s.empty()) s.assign(cells.size(), 0);
    double w[64];
    detail::orbit_coords(g, v, w);
    for (std::size_t c = 0; c < cells.size(); ++c)
      if (cells[c].contains(w, count)) ++s[c];
  });
  std::vector<double> out(cells.size(), 0.0);
  const double scale = std::pow(q.T, exponent);
  for (const auto& s : states)
    for (std::size_t c = 0; c < s.size(); ++c) out[c] += static_cast<double>(s[c]);
  for (auto& x : out) x /= scale;
  return out;
}

}  // namespace latorbit
