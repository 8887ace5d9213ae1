#pragma once

#include <array>
#include <span>
#include <vector>

#include "fracprime/util.hpp"

namespace fracprime {

// base^exp with overflow detection.
inline u64 checked_pow(u64 base, u32 exp) {
  u64 r = 1;
  for (u32 i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

// Sieved sigma_s(n) = sum of d^s over d | n, for all n up to limit.
struct SigmaTable {
  u64 limit = 0;
  u32 s = 1;
  std::vector<u64> values;  // values[0] = 0 sentinel

  u64 operator[](u64 n) const { return values[n]; }
};

// Linear (least-prime-factor) sieve: each n is visited once. sigma_s is
// multiplicative and sigma_s(p^e) = sigma_s(p^(e-1)) + p^(e*s), which covers
// the prime-power lane; everything else splits into coprime parts.
inline SigmaTable build_sigma_table(u64 limit, u32 s = 1) {
  if (limit < 1) throw std::domain_error("build_sigma_table: limit must be >= 1");
  require_budget(limit * 17 + 17, "sigma table to " + std::to_string(limit));

  SigmaTable t;
  t.limit = limit;
  t.s = s;
  t.values.assign(limit + 1, 0);
  t.values[1] = 1;

  std::vector<u64> low(limit + 1, 0);  // lpf(n) ^ multiplicity(lpf(n), n)
  std::vector<char> comp(limit + 1, 0);
  std::vector<u32> primes;

  for (u64 i = 2; i <= limit; ++i) {
    if (!comp[i]) {
      primes.push_back(static_cast<u32>(i));
      low[i] = i;
      t.values[i] = checked_add(1, checked_pow(i, s));
    }
    for (const u32 p32 : primes) {
      const u64 p = p32;
      if (p > limit / i) break;
      const u64 m = i * p;
      comp[m] = 1;
      if (i % p == 0) {
        low[m] = low[i] * p;
        if (low[m] == m) {
          // m = p^e: add the new top power p^(e*s) = m^s
          t.values[m] = checked_add(t.values[i], checked_pow(m, s));
        } else {
          t.values[m] = checked_mul(t.values[m / low[m]], t.values[low[m]]);
        }
        break;
      }
      low[m] = p;
      t.values[m] = checked_mul(t.values[i], t.values[p]);
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// single-value routines via trial-division factorization
// ---------------------------------------------------------------------------

struct PrimePower {
  u64 p;
  u32 e;
};

struct Factorization {
  std::array<PrimePower, 16> factor{};  // a u64 has at most 15 distinct primes
  int count = 0;
};

// Trial division. The list must contain every prime up to sqrt(n); under
// that contract a leftover above 1 is itself prime, since any composite
// leftover would have a factor the loop already tried.
inline Factorization factorize(u64 n, std::span<const u32> primes) {
  Factorization f;
  u64 m = n;
  for (const u32 p32 : primes) {
    const u64 p = p32;
    if (p > m / p) break;
    if (m % p != 0) continue;
    u32 e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    f.factor[f.count++] = {p, e};
  }
  if (m > 1) f.factor[f.count++] = {m, 1};
  return f;
}

// sigma(n) = sum of divisors, exact with overflow checks.
inline u64 sigma_single(u64 n, std::span<const u32> primes) {
  if (n < 1) throw std::domain_error("sigma_single: n must be >= 1");
  if (n == 1) return 1;
  const Factorization f = factorize(n, primes);
  u64 result = 1;
  for (int i = 0; i < f.count; ++i) {
    u64 geo = 1, pk = 1;
    for (u32 j = 0; j < f.factor[i].e; ++j) {
      pk = checked_mul(pk, f.factor[i].p);
      geo = checked_add(geo, pk);
    }
    result = checked_mul(result, geo);
  }
  return result;
}

// sigma_s(n) in 128 bits, for identity checks where 64 bits would overflow
// (sigma_5 already exceeds u64 near n = 10^4).
inline u128 sigma_s_wide(u64 n, u32 s, std::span<const u32> primes) {
  if (n < 1) throw std::domain_error("sigma_s_wide: n must be >= 1");
  const Factorization f = factorize(n, primes);
  u128 result = 1;
  for (int i = 0; i < f.count; ++i) {
    u128 geo = 1, pk = 1;
    for (u32 j = 0; j < f.factor[i].e; ++j) {
      for (u32 k = 0; k < s; ++k) pk *= f.factor[i].p;
      geo += pk;
    }
    result *= geo;
  }
  return result;
}

inline int mobius(u64 n, std::span<const u32> primes) {
  const Factorization f = factorize(n, primes);
  for (int i = 0; i < f.count; ++i)
    if (f.factor[i].e > 1) return 0;
  return (f.count % 2 == 0) ? 1 : -1;
}

// Enumerates every divisor of the factored number.
template <typename Fn>
inline void for_each_divisor(const Factorization& f, Fn&& fn) {
  auto rec = [&](auto&& self, int idx, u64 d) -> void {
    if (idx == f.count) {
      fn(d);
      return;
    }
    u64 v = d;
    for (u32 e = 0;; ++e) {
      self(self, idx + 1, v);
      if (e == f.factor[idx].e) break;
      v *= f.factor[idx].p;
    }
  };
  rec(rec, 0, u64{1});
}

// Enumerates divisors together with their Mobius value.
template <typename Fn>
inline void for_each_divisor_mu(const Factorization& f, Fn&& fn) {
  auto rec = [&](auto&& self, int idx, u64 d, int mu) -> void {
    if (idx == f.count) {
      fn(d, mu);
      return;
    }
    u64 v = d;
    for (u32 e = 0; e <= f.factor[idx].e; ++e) {
      const int m = (e == 0) ? mu : (e == 1 ? -mu : 0);
      self(self, idx + 1, v, m);
      if (e < f.factor[idx].e) v *= f.factor[idx].p;
    }
  };
  rec(rec, 0, u64{1}, 1);
}

}  // namespace fracprime
