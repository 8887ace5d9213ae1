#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace fracprime {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

// Thrown when building a table would exceed the configured memory budget.
class capacity_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline u64 checked_add(u64 a, u64 b) {
  u64 r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("64-bit addition overflow");
  return r;
}

inline u64 checked_mul(u64 a, u64 b) {
  u64 r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("64-bit multiplication overflow");
  return r;
}

// floor(sqrt(n)), exact for the full u64 range.
inline u64 isqrt(u64 n) {
  if (n == 0) return 0;
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r > n / r) --r;
  while (r + 1 <= n / (r + 1)) ++r;
  return r;
}

// ---------------------------------------------------------------------------
// memory budget (FRACPRIME_MEM_MB caps table allocations)
// ---------------------------------------------------------------------------

inline constexpr u64 default_mem_budget_mib = 4096;

inline u64 memory_budget_bytes() {
  if (const char* env = std::getenv("FRACPRIME_MEM_MB")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return static_cast<u64>(v) * 1024 * 1024;
  }
  return default_mem_budget_mib * 1024 * 1024;
}

inline void require_budget(u64 bytes, const std::string& what) {
  const u64 budget = memory_budget_bytes();
  if (bytes > budget) {
    throw capacity_error(what + " needs " + std::to_string(bytes / (1024 * 1024) + 1) +
                         " MiB, over the " + std::to_string(budget / (1024 * 1024)) +
                         " MiB budget (FRACPRIME_MEM_MB)");
  }
}

// ---------------------------------------------------------------------------
// worker pool sizing
// ---------------------------------------------------------------------------

namespace detail {
inline std::atomic<unsigned>& thread_cap() {
  static std::atomic<unsigned> cap{0};  // 0 = hardware default
  return cap;
}
}  // namespace detail

inline void set_max_threads(unsigned n) { detail::thread_cap().store(n); }

inline unsigned max_threads() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  const unsigned cap = detail::thread_cap().load();
  return cap == 0 ? hw : std::min(cap, hw);
}

// Splits [lo, hi) into contiguous chunks, sums chunk(a, b) over workers and
// merges in index order. Integer addition is exact, so the result is
// bit-identical for every worker count.
template <typename ChunkFn>
inline u64 parallel_chunk_sum_u64(u64 lo, u64 hi, u64 min_chunk, ChunkFn&& chunk) {
  if (hi <= lo) return 0;
  const u64 count = hi - lo;
  u64 workers = std::min<u64>(max_threads(), std::max<u64>(1, count / std::max<u64>(min_chunk, 1)));
  if (workers <= 1) return chunk(lo, hi);

  std::vector<u64> partial(workers, 0);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const u64 step = count / workers;
  u64 start = lo;
  for (u64 w = 0; w < workers; ++w) {
    const u64 stop = (w + 1 == workers) ? hi : start + step;
    pool.emplace_back([&, w, start, stop] {
      try {
        partial[w] = chunk(start, stop);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
    start = stop;
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  u64 total = 0;
  for (u64 v : partial) total = checked_add(total, v);
  return total;
}

// Neumaier-compensated accumulator for long floating-point sums.
class kahan_sum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace fracprime
