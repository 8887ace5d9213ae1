#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "fracprime/asymptotics.hpp"
#include "fracprime/quotient_sum.hpp"

namespace fracprime {

// Sign convention for the printed error column. equation: exact - main.
// table: main - exact, matching the signs of the published reference table.
enum class ErrorConvention { equation, table };

struct ReportRow {
  u64 x;
  u64 pi_x;
  u64 exact;
  double main_value;
  double error_value;  // already in the requested convention
  double elapsed_ms;
};

// Locale-independent fixed formatting; snprintf against the "C" locale
// rounds the binary value to nearest, ties to even.
inline std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

inline std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

inline ReportRow make_report_row(u64 x, ErrorConvention conv, const QuotientPiOptions& opt = {}) {
  detail::stopwatch timer;
  const QuotientPi qp = build_quotient_pi(x, opt);
  const u64 s = qp.root();
  const PrimeTable root_pt = build_prime_table(std::max<u64>(s, 2));
  const std::vector<u32> primes = root_pt.primes_up_to(std::max<u64>(isqrt(x / 2), 2));
  const SigmaTable sig = build_sigma_table(std::max<u64>(x / (s + 1), 1));
  const u64 exact = detail::blocked_prime_sum(
      x, qp, root_pt, [&](u64 m) { return sigma_single(m, primes); },
      [&](u64 q) { return sig[q]; });

  const double main = main_term(x).main;
  const double err_eq = static_cast<double>(exact) - main;
  return {x, qp.pi_x(), exact, main,
          conv == ErrorConvention::equation ? err_eq : -err_eq, timer.ms()};
}

// One row per x in {10, 100, ..., 10^max_exp}.
inline std::vector<ReportRow> table_rows(int max_exp, ErrorConvention conv,
                                         const QuotientPiOptions& opt = {}) {
  if (max_exp < 1 || max_exp > 9)
    throw std::domain_error("table_rows: exponent must lie in [1, 9]");
  std::vector<ReportRow> rows;
  rows.reserve(static_cast<std::size_t>(max_exp));
  u64 x = 1;
  for (int k = 1; k <= max_exp; ++k) {
    x *= 10;
    rows.push_back(make_report_row(x, conv, opt));
  }
  return rows;
}

inline void write_table_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
  out << "x,pi,exact,main,error\n";
  for (const ReportRow& r : rows) {
    out << r.x << ',' << r.pi_x << ',' << r.exact << ',' << format_fixed(r.main_value, 2)
        << ',' << format_fixed(r.error_value, 2) << '\n';
  }
}

}  // namespace fracprime
