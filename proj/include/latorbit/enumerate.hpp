#pragma once

// Exact enumeration of SL(n,Z) and Sp(n,Z) elements in Frobenius-norm balls.
//
// Stream order is lexicographic on the column-major flattening of the matrix:
// the search runs column by column, free columns by entry-wise DFS, and
// constrained columns (the determinant form for SL, the symplectic bilinear
// forms for Sp) on affine integer lattices intersected with the residual
// ball. Membership is strict: sum of squared entries < T^2.

#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <mutex>
#include <numeric>
#include <optional>
#include <thread>
#include <vector>

#include "latorbit/errors.hpp"
#include "latorbit/geometry.hpp"
#include "latorbit/intmatrix.hpp"
#include "latorbit/lattice.hpp"

namespace latorbit {

enum class Group { SL, Sp };

struct BallQuery {
  Group group = Group::SL;
  int n = 2;  // matrix size: n for SL, 2n for Sp
  double T = 1.0;
  std::uint64_t cap = 1'000'000'000;
};

// Throws on invalid queries (T <= 0, odd Sp size, T beyond the exact range).
void validate(const BallQuery& q);

// Contiguous ranges of the first entry (top-left), mass-balanced; their
// concatenation in order reproduces the single-threaded stream.
std::vector<std::pair<std::int64_t, std::int64_t>> partition_first_entry(const BallQuery& q,
                                                                         int parts);

namespace detail {

constexpr int kMaxN = 10;
using Col = std::array<std::int64_t, kMaxN>;

struct AbortEnumeration {};

// Cofactor expansion of det along the missing last column; prefix is
// column-major with n-1 complete columns.
void last_col_cofactors(const std::int64_t cols[][kMaxN], int n, __int128* cof);

// All x with cof . x == 1 and |x|^2 < rem (strict), sorted lex ascending.
void sl_last_column(const __int128* cof, int n, long double rem, std::vector<Col>& out);

// All x completing column j of a symplectic matrix (t(col_i) J x = J_{ij}
// for i < j) with |x|^2 < rem, sorted lex ascending.
void sp_column(const std::int64_t cols[][kMaxN], int j, int n, long double rem,
               std::vector<Col>& out);

// Largest b >= 0 with used + b^2 < bound, or -1 when none.
inline std::int64_t max_entry(long double bound, long double used) {
  const long double rem = bound - used;
  if (!(rem > 0)) return -1;
  auto b = static_cast<std::int64_t>(sqrtl(rem));
  while (used + static_cast<long double>(b + 1) * (b + 1) < bound) ++b;
  while (b > 0 && !(used + static_cast<long double>(b) * b < bound)) --b;
  return b;
}

template <class Visitor>
class BallEnum {
 public:
  BallEnum(const BallQuery& q, std::int64_t first_lo, std::int64_t first_hi, Visitor& vis,
           std::atomic<std::uint64_t>* counter, const std::atomic<bool>* stop)
      : N_(q.n),
        symplectic_(q.group == Group::Sp && q.n > 2),
        bound_(static_cast<long double>(q.T) * q.T),
        cap_(q.cap),
        first_lo_(first_lo),
        first_hi_(first_hi),
        vis_(vis),
        counter_(counter),
        stop_(stop),
        out_(q.n) {}

  void run() {
    if (N_ == 2) {
      run_dim2();
    } else {
      entry_dfs(0, 0, 0.0L);
    }
  }

 private:
  int N_;
  bool symplectic_;
  long double bound_;
  std::uint64_t cap_;
  std::int64_t first_lo_, first_hi_;
  Visitor& vis_;
  std::atomic<std::uint64_t>* counter_;
  const std::atomic<bool>* stop_;

  std::int64_t cols_[kMaxN][kMaxN] = {};
  long double col_sq_[kMaxN] = {};  // squared norm of each completed column
  IntMatrix out_;
  std::vector<Col> solbuf_[kMaxN];

  void check_stop() const {
    if (stop_ && stop_->load(std::memory_order_relaxed)) throw AbortEnumeration{};
  }

  void emit() {
    const std::uint64_t c = counter_->fetch_add(1, std::memory_order_relaxed) + 1;
    if (c > cap_) throw CapExceededError(cap_);
    for (int i = 0; i < N_; ++i)
      for (int j = 0; j < N_; ++j) out_.at(i, j) = cols_[j][i];
    vis_(out_);
  }

  // Entry-wise DFS inside free column j; `used` is the running square sum of
  // all committed entries.
  void entry_dfs(int j, int i, long double used) {
    if (i == N_) {
      column_done(j, used);
      return;
    }
    std::int64_t b = max_entry(bound_, used);
    if (b < 0) return;
    std::int64_t lo = -b, hi = b;
    if (j == 0 && i == 0) {
      lo = std::max(lo, first_lo_);
      hi = std::min(hi, first_hi_);
    }
    for (std::int64_t x = lo; x <= hi; ++x) {
      cols_[j][i] = x;
      entry_dfs(j, i + 1, used + static_cast<long double>(x) * x);
    }
  }

  void column_done(int j, long double used) {
    check_stop();
    col_sq_[j] = used - (j > 0 ? accumulated_through(j - 1) : 0.0L);
    if (symplectic_) {
      constrained_column(j + 1, used);
      return;
    }
    if (j == N_ - 2) {
      sl_tail(used);
      return;
    }
    // Hadamard: the best completion satisfies |det|^2 <= prod |col|^2 *
    // ((rem)/m)^m with m columns left; det must be 1.
    const int m = N_ - 1 - j;
    long double prod = 1.0L;
    for (int t = 0; t <= j; ++t) prod *= col_sq_[t];
    const long double rem = bound_ - used;
    if (prod * powl(rem / m, m) <= 1.0L - 1e-9L) return;
    entry_dfs(j + 1, 0, used);
  }

  long double accumulated_through(int j) const {
    long double s = 0;
    for (int t = 0; t <= j; ++t) s += col_sq_[t];
    return s;
  }

  void sl_tail(long double used) {
    __int128 cof[kMaxN];
    last_col_cofactors(cols_, N_, cof);
    auto& buf = solbuf_[N_ - 1];
    sl_last_column(cof, N_, bound_ - used, buf);
    for (const Col& x : buf) {
      for (int i = 0; i < N_; ++i) cols_[N_ - 1][i] = x[i];
      emit();
    }
  }

  void constrained_column(int j, long double used) {
    if (j == N_) {
      emit();
      return;
    }
    check_stop();
    auto& buf = solbuf_[j];
    sp_column(cols_, j, N_, bound_ - used, buf);
    for (const Col& x : buf) {
      long double sq = 0;
      for (int i = 0; i < N_; ++i) {
        cols_[j][i] = x[i];
        sq += static_cast<long double>(x[i]) * x[i];
      }
      col_sq_[j] = sq;
      constrained_column(j + 1, used + sq);
    }
  }

  // Output-linear path for 2 x 2 (SL(2,Z) = Sp(1,Z)): primitive first
  // columns, second columns from the Bezout arithmetic family.
  void run_dim2() {
    const std::int64_t A = max_entry(bound_, 0.0L);
    if (A < 0) return;
    const std::int64_t a_lo = std::max(-A, first_lo_);
    const std::int64_t a_hi = std::min(A, first_hi_);
    for (std::int64_t a = a_lo; a <= a_hi; ++a) {
      check_stop();
      const long double a_sq = static_cast<long double>(a) * a;
      const std::int64_t C = max_entry(bound_, a_sq);
      for (std::int64_t c = -C; c <= C; ++c) {
        if (std::gcd(std::llabs(a), std::llabs(c)) != 1) continue;
        // a d0 - b0 c = 1 from one extended-gcd solution.
        std::int64_t u, v;
        ext_gcd_pair(a, c, u, v);
        std::int64_t d0 = u, b0 = -v;
        const long double S1 = a_sq + static_cast<long double>(c) * c;
        // Shift to the family member nearest the origin.
        const auto t0 = static_cast<std::int64_t>(
            llroundl(-(static_cast<long double>(a) * b0 + static_cast<long double>(c) * d0) / S1));
        b0 += t0 * a;
        d0 += t0 * c;
        // S1 t^2 + 2 (a b0 + c d0) t + (S1 + b0^2 + d0^2 - T^2) < 0
        const long double lin = static_cast<long double>(a) * b0 + static_cast<long double>(c) * d0;
        const long double cst = S1 + static_cast<long double>(b0) * b0 +
                                static_cast<long double>(d0) * d0 - bound_;
        const long double disc = lin * lin - S1 * cst;
        if (disc <= 0) continue;
        const long double root = sqrtl(disc);
        const auto t_min = static_cast<std::int64_t>(floorl((-lin - root) / S1)) - 2;
        const auto t_max = static_cast<std::int64_t>(ceill((-lin + root) / S1)) + 2;
        const bool ascending = (a > 0) || (a == 0 && c > 0);
        for (std::int64_t k = t_min; k <= t_max; ++k) {
          const std::int64_t t = ascending ? k : t_min + t_max - k;
          const std::int64_t b = b0 + t * a, d = d0 + t * c;
          const long double sq = S1 + static_cast<long double>(b) * b +
                                 static_cast<long double>(d) * d;
          if (!(sq < bound_)) continue;
          cols_[0][0] = a;
          cols_[0][1] = c;
          cols_[1][0] = b;
          cols_[1][1] = d;
          emit();
        }
      }
    }
  }

  static void ext_gcd_pair(std::int64_t a, std::int64_t b, std::int64_t& u, std::int64_t& v) {
    std::int64_t r0 = a, r1 = b, u0 = 1, u1 = 0, v0 = 0, v1 = 1;
    while (r1 != 0) {
      const std::int64_t q = r0 / r1;
      std::tie(r0, r1) = std::pair(r1, r0 - q * r1);
      std::tie(u0, u1) = std::pair(u1, u0 - q * u1);
      std::tie(v0, v1) = std::pair(v1, v0 - q * v1);
    }
    if (r0 < 0) {
      u0 = -u0;
      v0 = -v0;
    }
    u = u0;
    v = v0;
  }
};

}  // namespace detail

// Full ball in stream order, single-threaded.
template <class Visitor>
void enumerate_ball(const BallQuery& q, Visitor&& vis) {
  validate(q);
  std::atomic<std::uint64_t> counter{0};
  detail::BallEnum<Visitor> e(q, INT64_MIN, INT64_MAX, vis, &counter, nullptr);
  e.run();
}

// One partition piece; lex order within the piece.
template <class Visitor>
void enumerate_ball_range(const BallQuery& q, std::int64_t first_lo, std::int64_t first_hi,
                          Visitor&& vis, std::atomic<std::uint64_t>& counter,
                          const std::atomic<bool>* stop = nullptr) {
  detail::BallEnum<Visitor> e(q, first_lo, first_hi, vis, &counter, stop);
  e.run();
}

// Chunked parallel sweep. `f(chunk_state, matrix)` runs on worker threads;
// `states` ends up in chunk order, so any merge the caller does is
// deterministic for every thread count. On an exception (cap, overflow) the
// partial states survive and the first exception is rethrown.
template <class State, class PerMatrix>
void enumerate_chunked_into(const BallQuery& q, int threads, std::vector<State>& states,
                            PerMatrix f, int chunks_per_thread = 8) {
  validate(q);
  threads = std::max(1, threads);
  const auto parts = partition_first_entry(q, threads * chunks_per_thread);
  states.clear();
  states.resize(parts.size());
  std::atomic<std::uint64_t> counter{0};
  std::atomic<bool> stop{false};
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mu;

  auto worker = [&]() {
    try {
      for (;;) {
        const std::size_t ci = next.fetch_add(1);
        if (ci >= parts.size() || stop.load()) break;
        auto vis = [&, ci](const IntMatrix& m) { f(states[ci], m); };
        enumerate_ball_range(q, parts[ci].first, parts[ci].second, vis, counter, &stop);
      }
    } catch (const detail::AbortEnumeration&) {
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mu);
      if (!first_error) first_error = std::current_exception();
      stop.store(true);
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);
}

template <class State, class PerMatrix>
std::vector<State> enumerate_chunked(const BallQuery& q, int threads, PerMatrix f,
                                     int chunks_per_thread = 8) {
  std::vector<State> states;
  enumerate_chunked_into(q, threads, states, f, chunks_per_thread);
  return states;
}

// Cardinality of the ball without materializing it.
std::uint64_t count_ball(const BallQuery& q, int threads = 1);

// Materialized stream (tests, dumps).
std::vector<IntMatrix> collect_ball(const BallQuery& q);

// Searches for a nonzero integer vector of sup-norm at most `height` within
// Euclidean distance `tol` of span(v). Returns the first hit scanning
// outward in the height of the span's pivot coordinates, sign-normalized so
// the first nonzero entry is positive; nullopt certifies only up to the
// given height.
std::optional<IntVec> rational_in_span(const Frame& v, int height, double tol);

}  // namespace latorbit
