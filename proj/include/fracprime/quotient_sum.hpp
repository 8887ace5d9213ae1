#pragma once

#include <chrono>
#include <vector>

#include "fracprime/prime_table.hpp"
#include "fracprime/quotient_pi.hpp"
#include "fracprime/sigma.hpp"
#include "fracprime/util.hpp"

namespace fracprime {

namespace detail {
class stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(clock::now() - start_).count();
  }

 private:
  using clock = std::chrono::steady_clock;
  clock::time_point start_ = clock::now();
};
}  // namespace detail

// ---------------------------------------------------------------------------
// equal-quotient block decomposition
// ---------------------------------------------------------------------------

struct QuotientBlock {
  u64 q;     // common value of floor(x/n) on the block
  u64 n_lo;  // first n
  u64 n_hi;  // last n
};

// Maximal runs of n with constant floor(x/n). The blocks partition [1, x]
// and there are at most 2*sqrt(x) + 1 of them.
struct QuotientBlocks {
  u64 x;
  std::vector<QuotientBlock> blocks;
};

inline QuotientBlocks quotient_blocks(u64 x) {
  if (x < 1) throw std::domain_error("quotient_blocks: x must be >= 1");
  QuotientBlocks out{x, {}};
  out.blocks.reserve(static_cast<std::size_t>(2 * isqrt(x) + 2));
  for (u64 n = 1; n <= x;) {
    const u64 q = x / n;
    const u64 hi = x / q;
    out.blocks.push_back({q, n, hi});
    n = hi + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// exact evaluation of sum over primes p <= x of sigma(floor(x/(p+a)))
// ---------------------------------------------------------------------------

enum class SumStrategy { naive, blocked };

struct SumResult {
  u64 x;
  i64 shift_a;
  u64 value;
  SumStrategy strategy;
  double elapsed_ms;
};

namespace detail {

// Parallel checked sum of per_prime(p) over primes in [2, x], chunked on
// value ranges; exact integer addition keeps the result independent of the
// worker count.
template <typename PerPrime>
inline u64 sum_over_primes(const PrimeTable& pt, u64 x, PerPrime&& per_prime) {
  return parallel_chunk_sum_u64(2, x + 1, u64{1} << 16, [&](u64 lo, u64 hi) {
    u64 acc = 0;
    pt.for_each_prime(lo, hi - 1, [&](u64 p) { acc = checked_add(acc, per_prime(p)); });
    return acc;
  });
}

}  // namespace detail

// Term-by-term evaluation with sigma from trial-division factorization.
// Quotients floor(x/(p+a)) that land on 0 contribute nothing, mirroring the
// a = 0 behaviour where every term has a positive quotient.
inline SumResult exact_sum_naive(u64 x, i64 a, const PrimeTable& pt) {
  if (x < 2) throw std::domain_error("exact_sum_naive: x must be >= 2");
  if (a <= -2) throw std::domain_error("exact_sum_naive: shift must be greater than -2");
  detail::stopwatch timer;

  const u64 max_q = (a < 0) ? x : x / (2 + static_cast<u64>(a));
  const std::vector<u32> primes = pt.primes_up_to(std::max<u64>(isqrt(max_q), 2));

  const u64 total = detail::sum_over_primes(pt, x, [&](u64 p) -> u64 {
    u64 d;
    if (a >= 0) {
      d = p + static_cast<u64>(a);
      if (d > x) return 0;  // quotient floor(x/d) = 0
    } else {
      d = p - 1;  // a = -1, p >= 2
    }
    return sigma_single(x / d, primes);
  });
  return {x, a, total, SumStrategy::naive, timer.ms()};
}

inline SumResult exact_sum_naive(u64 x, i64 a = 0) {
  if (x < 2) throw std::domain_error("exact_sum_naive: x must be >= 2");
  return exact_sum_naive(x, a, build_prime_table(x));
}

namespace detail {

// Shared core of the blocked evaluations: primes p <= sqrt(x) are handled
// one by one with weight(floor(x/p)); larger primes are grouped by the common
// quotient q < sqrt(x), each group weighted by a pi difference. root_pt must
// cover sqrt(x).
template <typename SmallWeight, typename GroupWeight>
inline u64 blocked_prime_sum(u64 x, const QuotientPi& qp, const PrimeTable& root_pt,
                             SmallWeight&& small_weight, GroupWeight&& group_weight) {
  const u64 s = qp.root();

  u64 direct = 0;
  root_pt.for_each_prime(2, s, [&](u64 p) { direct = checked_add(direct, small_weight(x / p)); });

  const u64 q_max = x / (s + 1);
  const u64 pi_root = qp.pi_small(s);
  const u64 grouped = parallel_chunk_sum_u64(1, q_max + 1, 4096, [&](u64 lo, u64 hi) {
    u64 acc = 0;
    for (u64 q = lo; q < hi; ++q) {
      const u64 pi_hi = qp.pi_of_quotient(q);
      const u64 v = x / (q + 1);
      const u64 pi_lo = (v > s) ? qp.pi_of_quotient(q + 1) : pi_root;
      acc = checked_add(acc, checked_mul(group_weight(q), pi_hi - pi_lo));
    }
    return acc;
  });
  return checked_add(direct, grouped);
}

}  // namespace detail

// Unshifted sum via the block decomposition: sigma table to sqrt(x), pi at
// quotient points from QuotientPi, sigma of the O(pi(sqrt x)) large
// quotients by direct factorization. O(x^(3/4)) time, O(sqrt x) memory.
inline SumResult exact_sum_blocked(u64 x, const QuotientPiOptions& opt = {}) {
  if (x < 2) throw std::domain_error("exact_sum_blocked: x must be >= 2");
  detail::stopwatch timer;

  const QuotientPi qp = build_quotient_pi(x, opt);
  const u64 s = qp.root();
  const PrimeTable root_pt = build_prime_table(std::max<u64>(s, 2));
  const std::vector<u32> primes = root_pt.primes_up_to(std::max<u64>(isqrt(x / 2), 2));
  const SigmaTable sig = build_sigma_table(std::max<u64>(x / (s + 1), 1));

  const u64 total = detail::blocked_prime_sum(
      x, qp, root_pt, [&](u64 m) { return sigma_single(m, primes); },
      [&](u64 q) { return sig[q]; });
  return {x, 0, total, SumStrategy::blocked, timer.ms()};
}

// sum over primes p <= x of floor(x/p), exact, via the same decomposition.
inline u64 prime_floor_sum(u64 x, const QuotientPiOptions& opt = {}) {
  if (x < 2) throw std::domain_error("prime_floor_sum: x must be >= 2");
  const QuotientPi qp = build_quotient_pi(x, opt);
  const PrimeTable root_pt = build_prime_table(std::max<u64>(qp.root(), 2));
  return detail::blocked_prime_sum(
      x, qp, root_pt, [](u64 m) { return m; }, [](u64 q) { return q; });
}

// sum over primes p <= x of the fractional part {x/p}, as compensated
// floating point. Each term is (x mod p) / p exactly.
inline double frac_prime_sum(u64 x, const PrimeTable& pt) {
  if (x < 2) throw std::domain_error("frac_prime_sum: x must be >= 2");
  kahan_sum s;
  pt.for_each_prime(2, x, [&](u64 p) {
    s.add(static_cast<double>(x % p) / static_cast<double>(p));
  });
  return s.value();
}

inline double frac_prime_sum(u64 x) { return frac_prime_sum(x, build_prime_table(x)); }

}  // namespace fracprime
