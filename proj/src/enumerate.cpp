#include "latorbit/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace latorbit {

namespace detail {

namespace {

std::int64_t checked64(__int128 v, const char* who) {
  if (v > INT64_MAX || v < INT64_MIN) throw IntOverflowError(who);
  return static_cast<std::int64_t>(v);
}

std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& u, std::int64_t& v) {
  std::int64_t r0 = a, r1 = b, u0 = 1, u1 = 0, v0 = 0, v1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::pair(r1, r0 - q * r1);
    std::tie(u0, u1) = std::pair(u1, u0 - q * u1);
    std::tie(v0, v1) = std::pair(v1, v0 - q * v1);
  }
  if (r0 < 0) {
    r0 = -r0;
    u0 = -u0;
    v0 = -v0;
  }
  u = u0;
  v = v0;
  return r0;
}

long double sq_of(const Col& x, int n) {
  long double s = 0;
  for (int i = 0; i < n; ++i) s += static_cast<long double>(x[i]) * x[i];
  return s;
}

void sort_lex(std::vector<Col>& v, int n) {
  std::sort(v.begin(), v.end(), [n](const Col& a, const Col& b) {
    for (int i = 0; i < n; ++i)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  });
}

// x = x0 + t b over the admissible t interval, exact strict-ball filter.
void line_points(const std::int64_t* x0, const std::int64_t* b, int n, long double rem,
                 std::vector<Col>& out) {
  long double bb = 0, xb = 0, xx = 0;
  for (int i = 0; i < n; ++i) {
    bb += static_cast<long double>(b[i]) * b[i];
    xb += static_cast<long double>(x0[i]) * b[i];
    xx += static_cast<long double>(x0[i]) * x0[i];
  }
  const long double disc = xb * xb - bb * (xx - rem);
  if (disc <= 0) return;
  const long double root = sqrtl(disc);
  const auto lo = static_cast<std::int64_t>(floorl((-xb - root) / bb)) - 1;
  const auto hi = static_cast<std::int64_t>(ceill((-xb + root) / bb)) + 1;
  Col x{};
  for (std::int64_t t = lo; t <= hi; ++t) {
    long double sq = 0;
    for (int i = 0; i < n; ++i) {
      x[i] = x0[i] + t * b[i];
      sq += static_cast<long double>(x[i]) * x[i];
    }
    if (sq < rem) out.push_back(x);
  }
}

// Lagrange-reduced plane enumeration: x = x0 + y0 b0 + y1 b1.
void plane_points(std::int64_t* x0, std::int64_t* b0, std::int64_t* b1, int n, long double rem,
                  std::vector<Col>& out) {
  auto dot = [n](const std::int64_t* p, const std::int64_t* q) {
    long double s = 0;
    for (int i = 0; i < n; ++i) s += static_cast<long double>(p[i]) * q[i];
    return s;
  };
  // Gauss reduction.
  for (int guard = 0; guard < 64; ++guard) {
    if (dot(b1, b1) < dot(b0, b0))
      for (int i = 0; i < n; ++i) std::swap(b0[i], b1[i]);
    const auto q = static_cast<std::int64_t>(llroundl(dot(b0, b1) / dot(b0, b0)));
    if (q == 0) break;
    for (int i = 0; i < n; ++i) b1[i] -= q * b0[i];
  }
  const long double B0 = dot(b0, b0);
  const long double mu = dot(b1, b0) / B0;
  long double b1s[kMaxN];
  for (int i = 0; i < n; ++i) b1s[i] = static_cast<long double>(b1[i]) - mu * b0[i];
  long double B1 = 0;
  for (int i = 0; i < n; ++i) B1 += b1s[i] * b1s[i];
  if (!(B0 > 0) || !(B1 > 0)) return;

  // Babai shift of x0 keeps the coordinates small.
  long double p1 = 0;
  for (int i = 0; i < n; ++i) p1 += static_cast<long double>(x0[i]) * b1s[i];
  p1 /= B1;
  const auto t1 = static_cast<std::int64_t>(llroundl(p1));
  for (int i = 0; i < n; ++i) x0[i] -= t1 * b1[i];
  const auto t0 = static_cast<std::int64_t>(llroundl(dot(x0, b0) / B0));
  for (int i = 0; i < n; ++i) x0[i] -= t0 * b0[i];

  long double c0 = dot(x0, b0) / B0;
  long double c1 = 0;
  for (int i = 0; i < n; ++i) c1 += static_cast<long double>(x0[i]) * b1s[i];
  c1 /= B1;
  long double perp_sq = 0;
  for (int i = 0; i < n; ++i) {
    const long double r = static_cast<long double>(x0[i]) - c0 * b0[i] - c1 * b1s[i];
    perp_sq += r * r;
  }
  const long double room = rem - perp_sq;
  if (room < -1e-6L) return;
  const long double W1 = sqrtl(std::max(0.0L, room) / B1);
  const auto y1_lo = static_cast<std::int64_t>(floorl(-c1 - W1)) - 1;
  const auto y1_hi = static_cast<std::int64_t>(ceill(-c1 + W1)) + 1;
  Col x{};
  for (std::int64_t y1 = y1_lo; y1 <= y1_hi; ++y1) {
    const long double z1 = c1 + static_cast<long double>(y1);
    const long double room0 = room - z1 * z1 * B1;
    const long double W0 = sqrtl(std::max(0.0L, room0) / B0);
    const long double center = c0 + mu * static_cast<long double>(y1);
    const auto y0_lo = static_cast<std::int64_t>(floorl(-center - W0)) - 1;
    const auto y0_hi = static_cast<std::int64_t>(ceill(-center + W0)) + 1;
    for (std::int64_t y0 = y0_lo; y0 <= y0_hi; ++y0) {
      long double sq = 0;
      for (int i = 0; i < n; ++i) {
        x[i] = x0[i] + y0 * b0[i] + y1 * b1[i];
        sq += static_cast<long double>(x[i]) * x[i];
      }
      if (sq < rem) out.push_back(x);
    }
  }
}

}  // namespace

void last_col_cofactors(const std::int64_t cols[][kMaxN], int n, __int128* cof) {
  if (n == 3) {
    cof[0] = static_cast<__int128>(cols[0][1]) * cols[1][2] -
             static_cast<__int128>(cols[0][2]) * cols[1][1];
    cof[1] = -(static_cast<__int128>(cols[0][0]) * cols[1][2] -
               static_cast<__int128>(cols[0][2]) * cols[1][0]);
    cof[2] = static_cast<__int128>(cols[0][0]) * cols[1][1] -
             static_cast<__int128>(cols[0][1]) * cols[1][0];
    return;
  }
  // General minors by fraction-free elimination on the prefix with row i removed.
  const int m = n - 1;
  for (int skip = 0; skip < n; ++skip) {
    __int128 w[kMaxN * kMaxN];
    int r = 0;
    for (int i = 0; i < n; ++i) {
      if (i == skip) continue;
      for (int j = 0; j < m; ++j) w[r * m + j] = cols[j][i];
      ++r;
    }
    __int128 prev = 1, det = 1;
    int sign = 1;
    bool zero = false;
    for (int k = 0; k < m - 1 && !zero; ++k) {
      if (w[k * m + k] == 0) {
        int p = -1;
        for (int i = k + 1; i < m; ++i)
          if (w[i * m + k] != 0) {
            p = i;
            break;
          }
        if (p < 0) {
          zero = true;
          break;
        }
        for (int j = 0; j < m; ++j) std::swap(w[k * m + j], w[p * m + j]);
        sign = -sign;
      }
      for (int i = k + 1; i < m; ++i)
        for (int j = k + 1; j < m; ++j)
          w[i * m + j] = (w[i * m + j] * w[k * m + k] - w[i * m + k] * w[k * m + j]) / prev;
      prev = w[k * m + k];
    }
    det = zero ? 0 : sign * w[(m - 1) * m + (m - 1)];
    cof[skip] = (((skip + n - 1) % 2) == 0) ? det : -det;
  }
}

void sl_last_column(const __int128* cof, int n, long double rem, std::vector<Col>& out) {
  out.clear();
  std::int64_t c[kMaxN];
  bool all_zero = true;
  for (int i = 0; i < n; ++i) {
    c[i] = checked64(cof[i], "sl_last_column: cofactor overflow");
    all_zero = all_zero && c[i] == 0;
  }
  if (all_zero) return;

  // Fold c to its gcd, collecting a kernel basis and one solution of c.x = g.
  std::int64_t g = 0;
  std::int64_t w[kMaxN] = {};
  std::int64_t basis[kMaxN][kMaxN] = {};
  int nb = 0;
  for (int i = 0; i < n; ++i) {
    if (c[i] == 0) {
      basis[nb][i] = 1;
      ++nb;
      continue;
    }
    if (g == 0) {
      g = std::llabs(c[i]);
      w[i] = c[i] > 0 ? 1 : -1;
      continue;
    }
    std::int64_t u, v;
    const std::int64_t g2 = ext_gcd(g, c[i], u, v);
    const std::int64_t p = c[i] / g2, q = g / g2;
    for (int k = 0; k < n; ++k)
      basis[nb][k] = checked64(static_cast<__int128>(p) * w[k], "sl_last_column");
    basis[nb][i] = checked64(static_cast<__int128>(basis[nb][i]) - q, "sl_last_column");
    ++nb;
    for (int k = 0; k < n; ++k)
      w[k] = checked64(static_cast<__int128>(u) * w[k], "sl_last_column");
    w[i] = checked64(static_cast<__int128>(w[i]) + v, "sl_last_column");
    g = g2;
  }
  if (g != 1) return;  // det = 1 unreachable from this prefix

  if (nb == 1) {
    line_points(w, basis[0], n, rem, out);
  } else if (nb == 2) {
    plane_points(w, basis[0], basis[1], n, rem, out);
  } else {
    AffineLattice lat;
    lat.solvable = true;
    lat.x0.assign(w, w + n);
    for (int k = 0; k < nb; ++k) lat.basis.emplace_back(basis[k], basis[k] + n);
    enumerate_affine_ball(lat, rem, [&](const IntVec& x) {
      Col col{};
      std::copy(x.begin(), x.end(), col.begin());
      out.push_back(col);
    });
  }
  sort_lex(out, n);
}

void sp_column(const std::int64_t cols[][kMaxN], int j, int n, long double rem,
               std::vector<Col>& out) {
  out.clear();
  const int h = n / 2;
  std::vector<IntVec> rows(j, IntVec(n, 0));
  IntVec rhs(j, 0);
  for (int i = 0; i < j; ++i) {
    for (int k = 0; k < h; ++k) rows[i][k] = -cols[i][k + h];
    for (int k = h; k < n; ++k) rows[i][k] = cols[i][k - h];
    rhs[i] = (j == i + h) ? 1 : 0;
  }
  const AffineLattice lat = solve_affine(rows, rhs, n);
  enumerate_affine_ball(lat, rem, [&](const IntVec& x) {
    Col col{};
    std::copy(x.begin(), x.end(), col.begin());
    out.push_back(col);
  });
  sort_lex(out, n);
}

}  // namespace detail

void validate(const BallQuery& q) {
  if (!(q.T > 0) || !std::isfinite(q.T)) throw std::invalid_argument("BallQuery: T must be positive");
  if (q.group == Group::Sp && q.n % 2 != 0)
    throw std::invalid_argument("BallQuery: Sp needs an even matrix size");
  if (q.n < 2 || q.n > detail::kMaxN - 1)
    throw std::invalid_argument("BallQuery: matrix size out of supported range");
  if (q.T >= 1048576.0) throw IntOverflowError("BallQuery: radius exceeds the exact integer range");
  if (q.cap == 0) throw std::invalid_argument("BallQuery: cap must be positive");
}

std::vector<std::pair<std::int64_t, std::int64_t>> partition_first_entry(const BallQuery& q,
                                                                         int parts) {
  validate(q);
  const long double bound = static_cast<long double>(q.T) * q.T;
  const std::int64_t B = detail::max_entry(bound, 0.0L);
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  if (B < 0) {
    out.emplace_back(0, -1);
    return out;
  }
  parts = std::max(1, parts);
  const auto span = static_cast<std::int64_t>(2 * B + 1);
  if (parts >= span) {
    for (std::int64_t a = -B; a <= B; ++a) out.emplace_back(a, a);
    return out;
  }
  // Mass of a first-entry value scales like the residual-ball volume.
  const long double expo = 0.5L * (static_cast<long double>(q.n) * q.n - 1);
  std::vector<long double> weight(span);
  long double total = 0;
  for (std::int64_t a = -B; a <= B; ++a) {
    const long double rem = bound - static_cast<long double>(a) * a;
    weight[a + B] = powl(std::max(rem, 1.0L), expo);
    total += weight[a + B];
  }
  std::int64_t lo = -B;
  long double acc = 0;
  for (std::int64_t a = -B; a <= B; ++a) {
    acc += weight[a + B];
    const auto k = static_cast<int>(out.size());
    if (acc >= total * (k + 1) / parts || a == B) {
      out.emplace_back(lo, a);
      lo = a + 1;
    }
  }
  return out;
}

std::uint64_t count_ball(const BallQuery& q, int threads) {
  const auto counts = enumerate_chunked<std::uint64_t>(
      q, threads, [](std::uint64_t& s, const IntMatrix&) { ++s; });
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  return total;
}

std::vector<IntMatrix> collect_ball(const BallQuery& q) {
  std::vector<IntMatrix> out;
  enumerate_ball(q, [&](const IntMatrix& m) { out.push_back(m); });
  return out;
}

std::optional<IntVec> rational_in_span(const Frame& v, int height, double tol) {
  if (height < 1) throw std::invalid_argument("rational_in_span: height must be >= 1");
  const int n = v.ambient_dim();
  const int l = v.length();
  const RealMatrix& V = v.columns();

  Eigen::HouseholderQR<RealMatrix> qr(V);
  const RealMatrix Q = qr.householderQ() * RealMatrix::Identity(n, l);

  // Pivot rows: the best-conditioned l x l row block of V.
  Eigen::ColPivHouseholderQR<RealMatrix> cp(V.transpose());
  std::vector<int> piv(cp.colsPermutation().indices().data(),
                       cp.colsPermutation().indices().data() + l);
  std::sort(piv.begin(), piv.end());
  RealMatrix M(l, l);
  for (int k = 0; k < l; ++k) M.row(k) = V.row(piv[k]);
  const RealMatrix G = V * M.inverse();  // G(piv[k], :) ~ e_k
  const double margin = tol * (1.0 + G.norm());
  std::vector<bool> is_pivot(n, false);
  for (int r : piv) is_pivot[r] = true;

  const auto dist_to_span = [&](const IntVec& q) {
    RealVector x(n);
    for (int i = 0; i < n; ++i) x(i) = static_cast<double>(q[i]);
    const RealVector resid = x - Q * (Q.transpose() * x);
    return resid.norm();
  };

  const auto try_point = [&](const RealVector& qp) -> std::optional<IntVec> {
    const RealVector p = G * qp;
    // Candidate roundings; branch on coordinates near a half-integer.
    std::vector<IntVec> cands(1, IntVec(n, 0));
    int pk = 0;
    for (int r = 0; r < n; ++r) {
      if (is_pivot[r]) {
        for (auto& c : cands) c[r] = static_cast<std::int64_t>(llround(qp(pk)));
        ++pk;
        continue;
      }
      const double val = p(r);
      const auto base = static_cast<std::int64_t>(llround(val));
      const double off = val - static_cast<double>(base);
      const bool split = std::abs(std::abs(off) - 0.5) <= margin + 1e-9;
      const std::size_t sz = cands.size();
      for (std::size_t i = 0; i < sz; ++i) {
        cands[i][r] = base;
        if (split) {
          IntVec alt = cands[i];
          alt[r] = (off > 0) ? base + 1 : base - 1;
          cands.push_back(std::move(alt));
        }
      }
    }
    for (const auto& q : cands) {
      bool zero = true, in_range = true;
      for (auto x : q) {
        zero = zero && x == 0;
        in_range = in_range && std::llabs(x) <= height;
      }
      if (zero || !in_range) continue;
      if (dist_to_span(q) <= tol) {
        IntVec out = q;
        for (auto x : out) {
          if (x > 0) break;
          if (x < 0) {
            for (auto& y : out) y = -y;
            break;
          }
        }
        return out;
      }
    }
    return std::nullopt;
  };

  // Scan shells of the pivot coordinates outward, lex within a shell.
  RealVector qp(l);
  std::optional<IntVec> found;
  std::function<bool(int, int, bool)> scan = [&](int k, int h, bool has_extreme) -> bool {
    if (k == l) {
      if (!has_extreme) return false;
      found = try_point(qp);
      return found.has_value();
    }
    if (k == l - 1 && !has_extreme) {
      for (const int val : {-h, h}) {
        qp(k) = val;
        if (scan(k + 1, h, true)) return true;
      }
      return false;
    }
    for (int val = -h; val <= h; ++val) {
      qp(k) = val;
      if (scan(k + 1, h, has_extreme || std::abs(val) == h)) return true;
    }
    return false;
  };
  for (int h = 1; h <= height; ++h)
    if (scan(0, h, false)) return found;
  return std::nullopt;
}

}  // namespace latorbit
