#include "latorbit/constants.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "latorbit/special.hpp"

namespace latorbit {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_nl(int n, int l, const char* who) {
  if (n < 2 || l < 1 || l > n - 1)
    throw std::domain_error(std::string(who) + ": need 1 <= l <= n-1, n >= 2");
}

}  // namespace

double d_nl(int n, int l) {
  check_nl(n, l, "d_nl");
  double denom = 1.0;
  for (int i = 0; i < l; ++i) denom *= gamma_fn(0.5 * (n - i));
  return std::pow(2.0, l) * std::pow(kPi, 0.25 * l * (2 * n - l + 1)) / denom;
}

double gamma_nl(int n, int l) {
  check_nl(n, l, "gamma_nl");
  double prod = 1.0;
  for (int j = l + 1; j <= n - 1; ++j) prod *= gamma_fn(0.5 * (n - j));
  const double exponent = 0.25 * (n + l - 1) * (n - l);
  const double half_degree = 0.5 * (n - 1) * (n - l);
  return std::pow(kPi, exponent) / (std::pow(2.0, n - l - 1) * gamma_fn(half_degree + 1.0)) * prod;
}

double a_nl(int n, int l) { return gamma_nl(n, l) / d_nl(n, l); }

double covolume_slnz(int n) {
  if (n < 2) throw std::domain_error("covolume_slnz: n must be >= 2");
  double v = std::pow(2.0, -(n - 1));
  for (int i = 2; i <= n; ++i)
    v *= std::pow(kPi, -0.5 * i) * gamma_fn(0.5 * i) * riemann_zeta(i);
  return v;
}

double b_nl(int n, int l) {
  check_nl(n, l, "b_nl");
  double zprod = 1.0;
  for (int i = 2; i <= n; ++i) zprod *= riemann_zeta(i);
  const double half_degree = 0.5 * (n - 1) * (n - l);
  return std::pow(kPi, 0.5 * n * (n - l)) /
         (gamma_fn(half_degree + 1.0) * gamma_fn(0.5 * (n - l))) / zprod;
}

double c_nl(int n, int l) {
  check_nl(n, l, "c_nl");
  const double half_m = 0.25 * (n - l) * (n + l - 1);
  return std::pow(kPi, half_m) / gamma_fn(1.0 + half_m);
}

double mellin_F(double z, int n, int l) {
  check_nl(n, l, "mellin_F");
  if (!(z > n - 1))
    throw std::domain_error("mellin_F: z must lie right of the first pole at z = n-1");
  double prod = 1.0;
  for (int j = l + 1; j <= n; ++j) prod *= gamma_fn(0.5 * (z - j + 1));
  return std::pow(kPi, 0.25 * (n + l - 1) * (n - l)) / std::pow(2.0, n - l) * prod;
}

const ConstantTable& constant_table(int n, int l) {
  check_nl(n, l, "constant_table");
  static std::mutex mu;
  static std::map<std::pair<int, int>, ConstantTable> memo;
  std::lock_guard<std::mutex> lock(mu);
  auto it = memo.find({n, l});
  if (it != memo.end()) return it->second;
  ConstantTable t;
  t.n = n;
  t.l = l;
  for (int k = 0; k <= n; ++k) t.unit_ball.push_back(unit_ball_volume(k));
  t.d = d_nl(n, l);
  t.gamma = gamma_nl(n, l);
  t.a = t.gamma / t.d;
  t.c = c_nl(n, l);
  t.covolume = covolume_slnz(n);
  t.b = b_nl(n, l);
  return memo.emplace(std::make_pair(n, l), std::move(t)).first->second;
}

}  // namespace latorbit
