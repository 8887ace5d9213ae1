#pragma once

#include <vector>

#include "fracprime/prime_table.hpp"
#include "fracprime/util.hpp"

namespace fracprime {

struct QuotientPiOptions {
  // At or below this x the tables are filled from a full prefix sieve, which
  // doubles as the exact oracle at test scale. Above it the progressive
  // sieving scheme over quotient keys is used: O(x^(3/4)) time, O(sqrt x)
  // memory. Set to 0 to force the sublinear path everywhere.
  u64 linear_threshold = 10'000'000;
  SieveOptions sieve;
};

// pi evaluated at every distinct quotient floor(x/n), stored in O(sqrt x):
// small_[v] = pi(v) for v <= root, large_[n] = pi(floor(x/n)) for n <= root.
class QuotientPi {
 public:
  u64 x() const { return x_; }
  u64 root() const { return root_; }

  // pi(floor(x/n)) for any n >= 1.
  u64 pi_of_quotient(u64 n) const {
    if (n > x_) return 0;
    return n <= root_ ? large_[n] : small_[x_ / n];
  }

  // pi(v) for v <= root().
  u64 pi_small(u64 v) const { return small_[v]; }

  u64 pi_x() const { return large_[1]; }

 private:
  friend QuotientPi build_quotient_pi(u64 x, const QuotientPiOptions& opt);

  u64 x_ = 0;
  u64 root_ = 0;
  std::vector<u64> small_;
  std::vector<u64> large_;
};

inline QuotientPi build_quotient_pi(u64 x, const QuotientPiOptions& opt = {}) {
  if (x < 1) throw std::domain_error("build_quotient_pi: x must be >= 1");

  QuotientPi qp;
  qp.x_ = x;
  const u64 r = isqrt(x);
  qp.root_ = r;
  require_budget((r + 1) * 16, "quotient pi tables for x = " + std::to_string(x));
  qp.small_.assign(r + 1, 0);
  qp.large_.assign(r + 1, 0);

  if (x <= opt.linear_threshold) {
    const PrimeTable pt = build_prime_table(x, opt.sieve);
    for (u64 v = 1; v <= r; ++v) qp.small_[v] = pt.pi(v);
    for (u64 n = 1; n <= r; ++n) qp.large_[n] = pt.pi(x / n);
    return qp;
  }

  // Progressive sieving over the O(sqrt x) quotient keys. Start from
  // "count of integers >= 2" and, for each prime p in increasing order,
  // remove the composites whose least prime factor is p. After the pass for
  // p, small_[v] = #{n <= v : n prime or lpf(n) > p} - 1 and likewise for
  // large_, so at the end both hold exact prime counts.
  auto& small = qp.small_;
  auto& large = qp.large_;
  for (u64 v = 1; v <= r; ++v) small[v] = v - 1;
  for (u64 n = 1; n <= r; ++n) large[n] = x / n - 1;

  for (u64 p = 2; p <= r; ++p) {
    if (small[p] == small[p - 1]) continue;  // p composite: already removed
    const u64 sp = small[p - 1];             // pi(p - 1)
    const u64 pp = p * p;
    const u64 n_max = std::min(r, x / pp);
    for (u64 n = 1; n <= n_max; ++n) {
      const u64 d = n * p;
      const u64 inner = (d <= r) ? large[d] : small[x / d];
      large[n] -= inner - sp;
    }
    for (u64 v = r; v >= pp; --v) small[v] -= small[v / p] - sp;
  }
  return qp;
}

}  // namespace fracprime
