#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "fracprime/asymptotics.hpp"
#include "fracprime/logint.hpp"
#include "fracprime/quotient_sum.hpp"
#include "fracprime/sigma.hpp"
#include "fracprime/util.hpp"

namespace fracprime {

// One verified identity or estimate: pass holds exactly when
// abs_err <= tolerance.
struct IdentityCheck {
  std::string name;
  u64 x = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_err = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

inline IdentityCheck make_check(std::string name, u64 x, double lhs, double rhs, double tol) {
  const double err = std::abs(lhs - rhs);
  return {std::move(name), x, lhs, rhs, err, tol, err <= tol};
}

// ---------------------------------------------------------------------------
// roots-of-unity divisibility indicator
// ---------------------------------------------------------------------------

// (1/d) * sum over a in [0, d) of e^(i 2 pi a m / d). Equals 1 when d | m and
// 0 otherwise; evaluated numerically as the real part. Angles are reduced
// mod d in integers so the evaluation stays well conditioned, and the sums
// are compensated to keep the 1e-9 contract honest for large d.
inline double indicator(u64 d, u64 m) {
  if (d < 1) throw std::domain_error("indicator: d must be >= 1");
  const double tau = 2.0 * M_PI;
  const u64 mr = m % d;
  kahan_sum re, im;
  for (u64 a = 0; a < d; ++a) {
    const double angle = tau * static_cast<double>((a * mr) % d) / static_cast<double>(d);
    re.add(std::cos(angle));
    im.add(std::sin(angle));
  }
  const double imag = im.value() / static_cast<double>(d);
  if (std::abs(imag) >= 1e-9)
    throw std::logic_error("indicator: imaginary part escaped its bound");
  return re.value() / static_cast<double>(d);
}

// ---------------------------------------------------------------------------
// S + T decomposition
// ---------------------------------------------------------------------------

// sum over d <= x of 1/d^2, accumulated from the small terms up.
inline double h2_partial(u64 x) {
  kahan_sum s;
  for (u64 d = x; d >= 1; --d) {
    const double dd = static_cast<double>(d);
    s.add(1.0 / (dd * dd));
  }
  return s.value();
}

// The full sum splits algebraically as S + T with
//   S = H2(x) * sum_p floor(x/p)        (evaluated here as S0 - S1)
//   T = sum_p (sigma(m) - m * H2(x)),   m = floor(x/p)
// so S + T must reconstitute the exact total up to float rounding.
struct DecompositionReport {
  u64 x;
  u64 total;       // exact sum of sigma(floor(x/p))
  double s_value;  // s0 - s1
  double t_value;
  double s0;  // x * H2(x) * sum_p 1/p
  double s1;  // H2(x) * sum_p {x/p}
  double h2_partial;
  double residual;  // |s + t - total| / total
};

inline DecompositionReport s_t_decomposition(u64 x, const PrimeTable& pt) {
  if (x < 10 || x > 100000)
    throw std::domain_error("s_t_decomposition: brute-force scale is 10 <= x <= 100000");
  const std::vector<u32> primes = pt.primes_up_to(std::max<u64>(isqrt(x), 2));
  const double h2 = h2_partial(x);

  u64 total = 0;
  kahan_sum recip, frac, t_acc;
  pt.for_each_prime(2, x, [&](u64 p) {
    const u64 m = x / p;
    const u64 sig = sigma_single(m, primes);
    total = checked_add(total, sig);
    recip.add(1.0 / static_cast<double>(p));
    frac.add(static_cast<double>(x % p) / static_cast<double>(p));
    t_acc.add(static_cast<double>(sig) - static_cast<double>(m) * h2);
  });

  const double s0 = static_cast<double>(x) * h2 * recip.value();
  const double s1 = h2 * frac.value();
  const double s = s0 - s1;
  const double t = t_acc.value();
  const double residual = std::abs(s + t - static_cast<double>(total)) / static_cast<double>(total);
  return {x, total, s, t, s0, s1, h2, residual};
}

inline DecompositionReport s_t_decomposition(u64 x) {
  if (x < 10 || x > 100000)
    throw std::domain_error("s_t_decomposition: brute-force scale is 10 <= x <= 100000");
  return s_t_decomposition(x, build_prime_table(x));
}

// ---------------------------------------------------------------------------
// estimate checks
// ---------------------------------------------------------------------------

// pi(floor(x/n)) - pi(floor(x/(n+1))) against li(x) / (n(n+1)). The implied
// constant of the error term is not pinned down, so the bound carries a
// configurable factor.
inline IdentityCheck pi_difference_check(const QuotientPi& qp, u64 n, double k_factor = 5.0) {
  const u64 x = qp.x();
  if (n < 1 || n > qp.root())
    throw std::domain_error("pi_difference_check: requires 1 <= n <= sqrt(x)");
  const double lhs = static_cast<double>(qp.pi_of_quotient(n)) -
                     static_cast<double>(qp.pi_of_quotient(n + 1));
  const double xd = static_cast<double>(x);
  const double rhs = li(xd) / (static_cast<double>(n) * static_cast<double>(n + 1));
  const double tol = k_factor * xd * std::exp(-std::sqrt(std::log(xd))) / static_cast<double>(n);
  return make_check("pi_difference(n=" + std::to_string(n) + ")", x, lhs, rhs, tol);
}

inline IdentityCheck pi_difference_check(u64 x, u64 n, double k_factor = 5.0) {
  return pi_difference_check(build_quotient_pi(x), n, k_factor);
}

// max over primes p <= x of sigma(m)/m with m = floor(x/p), against
// 2 loglog x. False for small x: at x = 10 the quotient m = 6 already gives
// sigma(6)/6 = 2 > 2 loglog 10 = 1.668, hence the x >= 100 gate.
inline IdentityCheck sigma_ratio_bound(u64 x, const PrimeTable& pt) {
  if (x < 100)
    throw std::domain_error(
        "sigma_ratio_bound: needs x >= 100; the bound fails below that "
        "(e.g. x = 10, m = 6: sigma(6)/6 = 2 exceeds 2*loglog(10) = 1.668)");
  const std::vector<u32> primes = pt.primes_up_to(std::max<u64>(isqrt(x), 2));
  double best = 0.0;
  pt.for_each_prime(2, x, [&](u64 p) {
    const u64 m = x / p;
    const double r = static_cast<double>(sigma_single(m, primes)) / static_cast<double>(m);
    best = std::max(best, r);
  });
  const double rhs = 2.0 * std::log(std::log(static_cast<double>(x)));
  IdentityCheck chk{"sigma_ratio_bound", x, best, rhs, std::max(0.0, best - rhs), 0.0,
                    best <= rhs};
  return chk;
}

inline IdentityCheck sigma_ratio_bound(u64 x) {
  if (x < 100)
    throw std::domain_error(
        "sigma_ratio_bound: needs x >= 100; the bound fails below that "
        "(e.g. x = 10, m = 6: sigma(6)/6 = 2 exceeds 2*loglog(10) = 1.668)");
  return sigma_ratio_bound(x, build_prime_table(x));
}

// ---------------------------------------------------------------------------
// closed-form divisor identities
// ---------------------------------------------------------------------------

namespace detail {
inline double pow_double(u64 base, u32 exp) {
  double r = 1.0;
  for (u32 i = 0; i < exp; ++i) r *= static_cast<double>(base);
  return r;
}
}  // namespace detail

// sum over d | n of d^(-s) against sigma_s(n) / n^s.
inline IdentityCheck divisor_power_sum(u64 n, u32 s, std::span<const u32> primes) {
  if (n < 1 || s < 1) throw std::domain_error("divisor_power_sum: needs n >= 1 and s >= 1");
  const Factorization f = factorize(n, primes);
  kahan_sum lhs_acc;
  for_each_divisor(f, [&](u64 d) { lhs_acc.add(1.0 / detail::pow_double(d, s)); });
  const double rhs =
      static_cast<double>(sigma_s_wide(n, s, primes)) / detail::pow_double(n, s);
  return make_check("divisor_power_sum", n, lhs_acc.value(), rhs, 1e-12);
}

inline IdentityCheck divisor_power_sum(u64 n, u32 s) {
  const PrimeTable pt = build_prime_table(std::max<u64>(isqrt(n), 2));
  return divisor_power_sum(n, s, pt.primes_up_to(pt.limit()));
}

// sum over d | n of mu(d) d^(-s) against the product of (1 - p^(-s)) over
// the distinct primes p | n.
inline IdentityCheck mu_twisted_divisor_sum(u64 n, u32 s, std::span<const u32> primes) {
  if (n < 1 || s < 1)
    throw std::domain_error("mu_twisted_divisor_sum: needs n >= 1 and s >= 1");
  const Factorization f = factorize(n, primes);
  kahan_sum lhs_acc;
  for_each_divisor_mu(f, [&](u64 d, int mu) {
    if (mu != 0) lhs_acc.add(static_cast<double>(mu) / detail::pow_double(d, s));
  });
  double rhs = 1.0;
  for (int i = 0; i < f.count; ++i) rhs *= 1.0 - 1.0 / detail::pow_double(f.factor[i].p, s);
  return make_check("mu_twisted_divisor_sum", n, lhs_acc.value(), rhs, 1e-12);
}

inline IdentityCheck mu_twisted_divisor_sum(u64 n, u32 s) {
  const PrimeTable pt = build_prime_table(std::max<u64>(isqrt(n), 2));
  return mu_twisted_divisor_sum(n, s, pt.primes_up_to(pt.limit()));
}

// ---------------------------------------------------------------------------
// magnitude sweeps
// ---------------------------------------------------------------------------

// |T(x)| / (li(x) loglog x) across a list of x, with T recovered as
// total - H2(x) * sum_p floor(x/p). Each ratio must stay under c_bound and,
// with three or more samples, under 3x the median.
inline std::vector<IdentityCheck> t_magnitude_sweep(std::span<const u64> xs,
                                                    double c_bound = 5.0,
                                                    const QuotientPiOptions& opt = {}) {
  for (const u64 x : xs) {
    if (x < 100 || x > 10'000'000)
      throw std::domain_error("t_magnitude_sweep: each x must lie in [100, 10^7]");
  }
  std::vector<double> ratios;
  ratios.reserve(xs.size());
  for (const u64 x : xs) {
    const u64 total = exact_sum_blocked(x, opt).value;
    const u64 floor_sum = prime_floor_sum(x, opt);
    const double t = static_cast<double>(total) -
                     h2_partial(x) * static_cast<double>(floor_sum);
    const double xd = static_cast<double>(x);
    ratios.push_back(std::abs(t) / (li(xd) * std::log(std::log(xd))));
  }

  double cap = c_bound;
  if (xs.size() >= 3) {
    std::vector<double> sorted = ratios;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t h = sorted.size() / 2;
    const double median =
        (sorted.size() % 2) ? sorted[h] : 0.5 * (sorted[h - 1] + sorted[h]);
    cap = std::min(cap, 3.0 * median);
  }

  std::vector<IdentityCheck> out;
  out.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out.push_back({"t_magnitude", xs[i], ratios[i], cap, ratios[i], cap, ratios[i] <= cap});
  }
  return out;
}

// Which sign of the c2*li(x) term matches the measured S(x)? lhs carries the
// residual of the minus variant, rhs the plus variant; the check passes when
// the minus variant fits at least as well.
inline IdentityCheck s_li_term_sign(u64 x, const QuotientPiOptions& opt = {}) {
  if (x < 100 || x > 10'000'000)
    throw std::domain_error("s_li_term_sign: x must lie in [100, 10^7]");
  const AsymptoticConstants k = constants();
  const u64 floor_sum = prime_floor_sum(x, opt);
  const double s_exact = h2_partial(x) * static_cast<double>(floor_sum);
  const double xd = static_cast<double>(x);
  const double base = k.c0 * xd * std::log(std::log(xd)) + k.c1 * xd;
  const double li_x = li(xd);
  const double r_minus = std::abs(s_exact - (base - k.c2 * li_x));
  const double r_plus = std::abs(s_exact - (base + k.c2 * li_x));
  return {"s_li_term_sign", x, r_minus, r_plus, r_minus, r_plus, r_minus <= r_plus};
}

}  // namespace fracprime
