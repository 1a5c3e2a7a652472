#include "latorbit/volume_lab.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "latorbit/constants.hpp"
#include "latorbit/integrate.hpp"

namespace latorbit {

namespace {

struct Reduced {
  int n, l, d;          // d = n - l - 1 free coordinates
  long double R;        // T^2 - l
  double p;             // ball-volume exponent (n-l)(n+l-1)/4
  double c;             // c_{n,l}
  double lo_cut, hi_cut;  // truncation box (or +-inf)
  std::vector<double> floor_lo;  // per-coordinate lower floors (C)
  std::vector<double> ceil_hi;   // per-coordinate upper caps (complement mode)
};

Reduced make_reduced(const BallVolumeQuery& q) {
  if (q.n < 2 || q.l < 1 || q.l > q.n - 1)
    throw std::invalid_argument("rho_ball: need 1 <= l <= n-1");
  Reduced r;
  r.n = q.n;
  r.l = q.l;
  r.d = q.n - q.l - 1;
  r.R = static_cast<long double>(q.T) * q.T - q.l;
  r.p = 0.25 * (q.n - q.l) * (q.n + q.l - 1);
  r.c = c_nl(q.n, q.l);
  r.lo_cut = q.truncation ? q.truncation->first : -std::numeric_limits<double>::infinity();
  r.hi_cut = q.truncation ? q.truncation->second : std::numeric_limits<double>::infinity();
  r.floor_lo.assign(std::max(r.d, 0), q.C);
  r.ceil_hi.assign(std::max(r.d, 0), std::numeric_limits<double>::infinity());
  return r;
}

// N(s^+) - contribution of fixed coordinates plus the balancing last one.
double integrand_weight(const Reduced& r, const std::vector<double>& s) {
  double N = 0, w = 0, sum = 0;
  for (int k = 0; k < r.d; ++k) {
    N += std::exp(2.0 * s[k]);
    w += (r.n - (r.l + 1 + k)) * s[k];
    sum += s[k];
  }
  N += std::exp(-2.0 * sum);  // s_n = -sum
  const double A = static_cast<double>(r.R) - N;
  if (A <= 0) return 0.0;
  return std::pow(A, r.p) * std::exp(w);
}

// Feasibility margin of coordinate value s at level k given the fixed
// prefix: min over the deeper coordinates of N(s^+) must stay below R.
double tail_min_N(const Reduced& r, const std::vector<double>& s, int k, double val) {
  double fixedN = 0, F = 0;
  for (int j = 0; j < k; ++j) {
    fixedN += std::exp(2.0 * s[j]);
    F += s[j];
  }
  fixedN += std::exp(2.0 * val);
  F += val;
  const int m = r.d - k - 1;  // deeper free coordinates
  // min of sum_{m deeper} e^{2t} + e^{-2(F + sum t)} at equal coordinates
  return fixedN + (m + 1) * std::exp(-2.0 * F / (m + 1));
}

// Admissible interval of coordinate k by bisection around the explicit
// minimizer of tail_min_N.
bool level_interval(const Reduced& r, const std::vector<double>& s, int k, double& lo,
                    double& hi) {
  double F = 0;
  for (int j = 0; j < k; ++j) F += s[j];
  const int m = r.d - k - 1;
  const double s_star = -F / (m + 2);
  const double Rd = static_cast<double>(r.R);
  if (!(tail_min_N(r, s, k, s_star) < Rd)) return false;

  const double hi_bracket = 0.5 * std::log(Rd) + 1.0;
  double lo_bracket = -F - 0.5 * (m + 1) * std::max(std::log(Rd), 1.0) - 2.0;
  auto bisect = [&](double a, double b) {
    // tail_min_N < R at one end; boundary between
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (a + b);
      if (tail_min_N(r, s, k, mid) < Rd)
        a = mid;
      else
        b = mid;
      if (b - a < 1e-14 * std::max(1.0, std::abs(a))) break;
    }
    return a;
  };
  // Left edge: walk [lo_bracket, s_star]; right edge: [s_star, hi_bracket].
  double a = lo_bracket, b = s_star;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (a + b);
    if (tail_min_N(r, s, k, mid) < Rd)
      b = mid;
    else
      a = mid;
    if (b - a < 1e-14 * std::max(1.0, std::abs(b))) break;
  }
  lo = b;
  hi = bisect(s_star, hi_bracket);

  lo = std::max({lo, r.lo_cut, r.floor_lo[k]});
  hi = std::min({hi, r.hi_cut, r.ceil_hi[k]});
  return lo < hi;
}

// Innermost coordinate: exact interval via the quadratic in e^{2s}.
bool inner_interval(const Reduced& r, const std::vector<double>& s, double& lo, double& hi) {
  const int k = r.d - 1;
  double fixedN = 0, F = 0;
  for (int j = 0; j < k; ++j) {
    fixedN += std::exp(2.0 * s[j]);
    F += s[j];
  }
  const double Rres = static_cast<double>(r.R) - fixedN;
  const double B = std::exp(-2.0 * F);
  // e^{2s} + B e^{-2s} < Rres  =>  x in (x-, x+), roots of x^2 - Rres x + B
  const double disc = Rres * Rres - 4.0 * B;
  if (!(Rres > 0) || disc <= 0) return false;
  const double root = std::sqrt(disc);
  const double x_minus = 0.5 * (Rres - root);
  const double x_plus = 0.5 * (Rres + root);
  if (!(x_minus > 0)) return false;
  lo = 0.5 * std::log(x_minus);
  hi = 0.5 * std::log(x_plus);
  lo = std::max({lo, r.lo_cut, r.floor_lo[k]});
  hi = std::min({hi, r.hi_cut, r.ceil_hi[k]});
  return lo < hi;
}

double integrate_levels(const Reduced& r, std::vector<double>& s, int k, int nodes) {
  double lo, hi;
  const bool ok = (k == r.d - 1) ? inner_interval(r, s, lo, hi) : level_interval(r, s, k, lo, hi);
  if (!ok) return 0.0;
  const auto& nw = gauss_legendre(nodes);
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  double sum = 0.0;
  for (const auto& [x, w] : nw) {
    s[k] = mid + half * x;
    sum += w * (k == r.d - 1 ? integrand_weight(r, s) : integrate_levels(r, s, k + 1, nodes));
  }
  return sum * half;
}

double quadrature_value(const Reduced& r) {
  if (r.d == 0) {
    const double A = static_cast<double>(r.R) - 1.0;  // N = e^{2 s_n} = 1
    return A > 0 ? r.c * std::pow(A, r.p) : 0.0;
  }
  std::vector<double> s(r.d, 0.0);
  int nodes = 64;
  const int cap = r.d == 1 ? 4096 : (r.d == 2 ? 1024 : 256);
  double prev = r.c * integrate_levels(r, s, 0, nodes);
  while (nodes < cap) {
    nodes *= 2;
    const double cur = r.c * integrate_levels(r, s, 0, nodes);
    if (std::abs(cur - prev) <= 1e-9 * std::abs(cur) + 1e-300) return cur;
    prev = cur;
  }
  return prev;
}

VolumeResult monte_carlo_value(const BallVolumeQuery& q, const Reduced& r) {
  // Raw-density oracle: sample the free s^+ coordinates uniformly in a box
  // and the t coordinates uniformly in the per-sample bounding box of the
  // admissible ellipsoid; weight by delta_l^+ times the box volumes.
  const int n = q.n, l = q.l, d = r.d;
  const double hb = 0.5 * std::log(std::max(static_cast<double>(r.R), 1e-300));
  double s_lo = q.truncation ? q.truncation->first : -(d)*std::max(hb, 1.0) - 1.0;
  double s_hi = q.truncation ? q.truncation->second : hb;
  if (!(s_lo < s_hi)) return {0.0, 0.0};

  const int m = (n - l) * (n + l - 1) / 2;  // t dimensions
  std::vector<std::pair<int, int>> t_idx;   // (i, j), 1-based rows i < j, j > l
  for (int i = 1; i <= n; ++i)
    for (int j = std::max(i, l) + 1; j <= n; ++j) t_idx.emplace_back(i, j);

  std::mt19937_64 rng(q.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> s(n + 1, 0.0);  // s[i], 1-based, s[1..l] = 0
  double sum = 0.0, sum_sq = 0.0;
  const double s_box = std::pow(s_hi - s_lo, d);
  for (std::uint64_t it = 0; it < q.mc_samples; ++it) {
    double tot = 0.0;
    bool ok = true;
    for (int k = 0; k < d; ++k) {
      s[l + 1 + k] = s_lo + (s_hi - s_lo) * unif(rng);
      if (s[l + 1 + k] <= q.C) ok = false;
      tot += s[l + 1 + k];
    }
    s[n] = -tot;
    double N = 0.0;
    for (int i = l + 1; i <= n; ++i) N += std::exp(2.0 * s[i]);
    const double R2 = static_cast<double>(r.R) - N;
    if (!ok || R2 <= 0) {
      // weight 0; still consume the t draws to keep streams aligned
      for (int k = 0; k < m; ++k) unif(rng);
      sum_sq += 0.0;
      continue;
    }
    const double Rt = std::sqrt(R2);
    double t_box = 1.0;
    double scaled_sq = 0.0;
    for (const auto& [i, j] : t_idx) {
      const double scale = i > l ? std::exp(s[i]) : 1.0;
      const double halfw = Rt / scale;
      const double t = (2.0 * unif(rng) - 1.0) * halfw;
      t_box *= 2.0 * halfw;
      const double st = scale * t;
      scaled_sq += st * st;
    }
    if (scaled_sq >= R2) continue;
    double dplus = 0.0;
    for (int i = l + 1; i <= n; ++i) dplus += (n - i) * s[i];
    const double w = std::exp(2.0 * dplus) * s_box * t_box;
    sum += w;
    sum_sq += w * w;
  }
  const double mean = sum / q.mc_samples;
  const double var = std::max(0.0, sum_sq / q.mc_samples - mean * mean);
  return {mean, std::sqrt(var / q.mc_samples)};
}

}  // namespace

VolumeResult rho_ball(const BallVolumeQuery& q) {
  if (!(q.T > 0)) throw std::invalid_argument("rho_ball: T must be positive");
  const Reduced r = make_reduced(q);
  if (r.R <= 0) return {0.0, 0.0};
  if (q.method == VolumeMethod::MonteCarlo) return monte_carlo_value(q, r);
  return {quadrature_value(r), 0.0};
}

double asymptotic_ratio(int n, int l, double T) {
  BallVolumeQuery q;
  q.n = n;
  q.l = l;
  q.T = T;
  const double rho = rho_ball(q).value;
  return rho / (gamma_nl(n, l) * std::pow(T, (n - 1) * (n - l)));
}

double concentration_ratio(int n, int l, double T, double C) {
  BallVolumeQuery q;
  q.n = n;
  q.l = l;
  q.T = T;
  q.C = C;
  const double with_floor = rho_ball(q).value;
  q.C = -std::numeric_limits<double>::infinity();
  const double full = rho_ball(q).value;
  return full > 0 ? with_floor / full : 0.0;
}

double complement_decay(int n, int l, double T, double C, int i0) {
  if (!(l < i0 && i0 < n)) throw std::invalid_argument("complement_decay: need l < i0 < n");
  BallVolumeQuery q;
  q.n = n;
  q.l = l;
  q.T = T;
  Reduced r = make_reduced(q);
  if (r.R <= 0) return 0.0;
  r.ceil_hi[i0 - l - 1] = C;
  return quadrature_value(r) / std::pow(T, (n - 1) * (n - l));
}

}  // namespace latorbit
