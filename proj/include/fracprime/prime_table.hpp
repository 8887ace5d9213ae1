#pragma once

#include <bit>
#include <vector>

#include "fracprime/util.hpp"

namespace fracprime {

struct SieveOptions {
  u64 segment_entries = u64{1} << 18;  // odd entries sieved per pass, cache-sized
};

// Bit-packed primality for [0, limit] with O(1) prefix prime counts.
//
// Only odd numbers are stored: bit i represents the number 2i+1. The value 2
// is handled explicitly. A per-word exclusive popcount (rank_) makes pi(n) a
// single word lookup plus one popcount.
//
// Immutable after construction; safe to share across threads.
class PrimeTable {
 public:
  u64 limit() const { return limit_; }

  bool is_prime(u64 n) const {
    if (n == 2) return true;
    if (n < 3 || n % 2 == 0) return false;
    const u64 i = n >> 1;
    return (words_[i >> 6] >> (i & 63)) & 1;
  }

  // Number of primes <= n. Requires n <= limit().
  u64 pi(u64 n) const {
    if (n < 2) return 0;
    if (n == 2) return 1;
    const u64 i = (n - 1) >> 1;  // index of the largest odd number <= n
    const u64 w = i >> 6;
    const u64 b = i & 63;
    const u64 mask = (b == 63) ? ~u64{0} : ((u64{1} << (b + 1)) - 1);
    return 1 + rank_[w] + static_cast<u64>(std::popcount(words_[w] & mask));
  }

  u64 count() const { return pi(limit_); }

  // Calls fn(p) for every prime p in [lo, hi] in increasing order.
  template <typename Fn>
  void for_each_prime(u64 lo, u64 hi, Fn&& fn) const {
    hi = std::min(hi, limit_);
    if (lo <= 2 && 2 <= hi) fn(u64{2});
    if (hi < 3) return;
    const u64 i_lo = std::max<u64>(lo, 3) >> 1;
    const u64 i_hi = (hi - 1) >> 1;
    if (i_lo > i_hi) return;
    const u64 w_lo = i_lo >> 6;
    const u64 w_hi = i_hi >> 6;
    for (u64 w = w_lo; w <= w_hi; ++w) {
      u64 bits = words_[w];
      if (w == w_lo) bits &= ~u64{0} << (i_lo & 63);
      if (w == w_hi) {
        const u64 b = i_hi & 63;
        bits &= (b == 63) ? ~u64{0} : ((u64{1} << (b + 1)) - 1);
      }
      while (bits) {
        const u64 b = static_cast<u64>(std::countr_zero(bits));
        bits &= bits - 1;
        fn(((w << 6) + b) * 2 + 1);
      }
    }
  }

  // Primes <= v as a compact list, for trial-division factorization.
  std::vector<u32> primes_up_to(u64 v) const {
    std::vector<u32> out;
    if (v >= 2) {
      for_each_prime(2, v, [&](u64 p) { out.push_back(static_cast<u32>(p)); });
    }
    return out;
  }

 private:
  friend PrimeTable build_prime_table(u64 limit, const SieveOptions& opt);

  u64 limit_ = 0;
  std::vector<u64> words_;  // prime bits, odd numbers only
  std::vector<u64> rank_;   // exclusive popcount prefix per word
};

inline PrimeTable build_prime_table(u64 limit, const SieveOptions& opt = {}) {
  if (limit < 1) throw std::domain_error("build_prime_table: limit must be >= 1");

  const u64 n_odd = (limit + 1) / 2;  // indices [0, n_odd) map to odd values 1, 3, ...
  const u64 n_words = (n_odd + 63) / 64;
  require_budget(n_words * 16, "prime table to " + std::to_string(limit));

  PrimeTable t;
  t.limit_ = limit;
  t.words_.assign(n_words, ~u64{0});
  t.words_[0] &= ~u64{1};  // 1 is not prime
  if (n_odd & 63) t.words_[n_words - 1] &= (u64{1} << (n_odd & 63)) - 1;

  // base odd primes up to sqrt(limit), found with a plain small sieve
  const u64 root = isqrt(limit);
  std::vector<u32> base;
  {
    std::vector<char> odd(root / 2 + 1, 1);
    for (u64 i = 1; 2 * i + 1 <= root; ++i) {
      if (!odd[i]) continue;
      const u64 p = 2 * i + 1;
      base.push_back(static_cast<u32>(p));
      for (u64 j = (p * p) >> 1; j <= root / 2; j += p) odd[j] = 0;
    }
  }

  const u64 seg = std::max<u64>(opt.segment_entries, 64);
  for (u64 s_lo = 0; s_lo < n_odd; s_lo += seg) {
    const u64 s_hi = std::min(n_odd, s_lo + seg);
    const u64 v_hi = 2 * (s_hi - 1) + 1;
    const u64 v_lo = 2 * s_lo + 1;
    for (const u32 p32 : base) {
      const u64 p = p32;
      const u64 pp = p * p;
      if (pp > v_hi) break;
      u64 start_v = pp;
      if (pp < v_lo) {
        u64 k = (v_lo + p - 1) / p;  // first multiple of p in the segment
        if (k % 2 == 0) ++k;         // odd multiples only
        start_v = k * p;
      }
      for (u64 idx = start_v >> 1; idx < s_hi; idx += p)
        t.words_[idx >> 6] &= ~(u64{1} << (idx & 63));
    }
  }

  t.rank_.resize(n_words);
  u64 acc = 0;
  for (u64 w = 0; w < n_words; ++w) {
    t.rank_[w] = acc;
    acc += static_cast<u64>(std::popcount(t.words_[w]));
  }
  return t;
}

}  // namespace fracprime
