// Acceptance suite: one line per criterion, nonzero exit if any criterion
// fails. Criteria are pinned with their stated tolerances; where a reference
// value cannot be met by the normative formulas the failure is reported, not
// papered over.

#include <sys/resource.h>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fracprime/cli.hpp"
#include "fracprime/fracprime_all.hpp"

using namespace fracprime;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& what, const std::string& detail = "") {
  std::cout << (pass ? "[PASS] " : "[FAIL] ") << "criterion " << criterion << ": " << what;
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << '\n';
  if (!pass) ++failures;
}

struct TableData {
  std::vector<u64> x, pi, exact;
  std::vector<double> main_col, error_col;
};

TableData parse_table(const std::string& csv) {
  TableData t;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(row, field, ',')) fields.push_back(field);
    t.x.push_back(std::stoull(fields[0]));
    t.pi.push_back(std::stoull(fields[1]));
    t.exact.push_back(std::stoull(fields[2]));
    t.main_col.push_back(std::stod(fields[3]));
    t.error_col.push_back(std::stod(fields[4]));
  }
  return t;
}

double peak_rss_mib() {
  struct rusage usage{};
  if (getrusage(RUSAGE_SELF, &usage) != 0 || usage.ru_maxrss <= 0) return -1.0;
  return static_cast<double>(usage.ru_maxrss) / 1024.0;  // ru_maxrss is in KiB
}

double wall_seconds(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
  std::cout << "== acceptance ==\n";

  // ---- criteria 1-3: the reference table ----
  const std::vector<u64> ref_pi = {4, 25, 168, 1229, 9592, 78498};
  const std::vector<u64> ref_exact = {14, 277, 3852, 45843, 481903, 5412077};
  const std::vector<double> ref_main = {18.02, 294.22, 3609.21, 40824.25, 444948.14, 4749388.38};
  const std::vector<double> ref_error_table = {4.02, 17.22, -242.79, -5018.74, -36954.86, -662688.62};

  {
    const auto t0 = std::chrono::steady_clock::now();
    std::ostringstream out, err;
    const int code = run_cli({"--threads", "1", "table", "--max-exp", "6"}, out, err);
    const double secs = wall_seconds(t0);
    const TableData eq = parse_table(out.str());

    bool ok = (code == 0) && eq.x.size() == 6 && secs < 30.0;
    std::string detail;
    for (std::size_t i = 0; ok && i < 6; ++i) {
      if (eq.exact[i] != ref_exact[i] || eq.pi[i] != ref_pi[i]) {
        ok = false;
        detail = "mismatch at x = " + std::to_string(eq.x[i]);
      }
    }
    report(1, ok, "exact and pi columns reproduce the reference values, < 30 s single-threaded",
           detail.empty() ? format_fixed(secs, 2) + " s" : detail);

    bool main_ok = true;
    std::string main_detail;
    for (std::size_t i = 0; i < 6; ++i) {
      const double diff = std::abs(eq.main_col[i] - ref_main[i]);
      if (diff > 0.01) {
        main_ok = false;
        main_detail += (main_detail.empty() ? "" : "; ") + std::string("x=10^") +
                       std::to_string(i + 1) + " computed " + format_fixed(eq.main_col[i], 2) +
                       " vs reference " + format_fixed(ref_main[i], 2);
      }
    }
    report(2, main_ok, "main-term column within 0.01 of the reference values", main_detail);
    if (!main_ok)
      std::cout << "       note: the reference main column matches c1' = 0.26149 * zeta(2); "
                   "with the full-precision Mertens constant the formula differs by "
                   "~1.19e-5 * x, which exceeds 0.01 from x = 10^4 on\n";

    std::ostringstream out2, err2;
    run_cli({"--threads", "1", "table", "--max-exp", "6", "--convention", "table"}, out2, err2);
    const TableData tab = parse_table(out2.str());
    bool err_ok = true;
    std::string err_detail;
    for (std::size_t i = 0; i < 6; ++i) {
      const double diff = std::abs(tab.error_col[i] - ref_error_table[i]);
      if (diff > 0.02) {
        err_ok = false;
        err_detail += (err_detail.empty() ? "" : "; ") + std::string("x=10^") +
                      std::to_string(i + 1) + " computed " + format_fixed(tab.error_col[i], 2) +
                      " vs reference " + format_fixed(ref_error_table[i], 2);
      }
    }
    report(3, err_ok, "error column under --convention table within 0.02 of the reference",
           err_detail);
    if (!err_ok)
      std::cout << "       note: inherits the criterion-2 offset (error = main - exact)\n";
  }

  // ---- criterion 4: strategy equivalence ----
  {
    bool ok = true;
    std::string detail;
    const QuotientPiOptions sublinear{.linear_threshold = 0};
    {
      const PrimeTable pt = build_prime_table(2000);
      for (u64 x = 2; x <= 2000 && ok; ++x) {
        const u64 naive = exact_sum_naive(x, 0, pt).value;
        if (exact_sum_blocked(x).value != naive ||
            exact_sum_blocked(x, sublinear).value != naive) {
          ok = false;
          detail = "exhaustive mismatch at x = " + std::to_string(x);
        }
      }
    }
    std::mt19937_64 rng(20260809);
    std::uniform_int_distribution<u64> dist(2, 1'000'000);
    for (int i = 0; i < 200 && ok; ++i) {
      const u64 x = dist(rng);
      const u64 naive = exact_sum_naive(x, 0).value;
      if (exact_sum_blocked(x).value != naive ||
          exact_sum_blocked(x, sublinear).value != naive) {
        ok = false;
        detail = "random mismatch at x = " + std::to_string(x);
      }
    }
    report(4, ok, "blocked equals naive for all x <= 2000 and 200 random x <= 10^6", detail);
  }

  // ---- criterion 5: performance at 10^9 ----
  {
    constexpr u64 regression_value = 6'050'786'308ULL;  // locked after criterion 4 held
    const auto t0 = std::chrono::steady_clock::now();
    const SumResult r = exact_sum_blocked(u64{1'000'000'000});
    const double secs = wall_seconds(t0);
    const double rss = peak_rss_mib();
    const bool time_ok = secs < 120.0;
    const bool mem_ok = rss < 0 || rss < 1024.0;
    const bool value_ok = r.value == regression_value;
    report(5, time_ok && mem_ok && value_ok,
           "blocked sum at 10^9 inside 120 s and 1 GiB, value locked",
           "value " + std::to_string(r.value) + ", " + format_fixed(secs, 2) + " s, peak rss " +
               (rss < 0 ? std::string("unknown") : format_fixed(rss, 0) + " MiB"));
  }

  // ---- criterion 6: identity suites ----
  {
    double worst_ind = 0.0;
    for (u64 d = 1; d <= 500; ++d)
      for (u64 m = 1; m <= 500; ++m)
        worst_ind = std::max(worst_ind,
                             std::abs(indicator(d, m) - ((m % d == 0) ? 1.0 : 0.0)));

    const PrimeTable pt = build_prime_table(100);
    const std::vector<u32> primes = pt.primes_up_to(100);
    double worst_div = 0.0;
    for (u32 s = 1; s <= 5; ++s)
      for (u64 n = 1; n <= 10'000; ++n) {
        worst_div = std::max(worst_div, divisor_power_sum(n, s, primes).abs_err);
        worst_div = std::max(worst_div, mu_twisted_divisor_sum(n, s, primes).abs_err);
      }

    double worst_st = 0.0;
    for (const u64 x : {u64{10}, u64{100}, u64{1000}, u64{10'000}})
      worst_st = std::max(worst_st, s_t_decomposition(x).residual);

    const bool ok = worst_ind < 1e-9 && worst_div < 1e-12 && worst_st < 1e-9;
    report(6, ok, "indicator (d,m <= 500), divisor identities (n <= 10^4, s <= 5), S+T residuals",
           "worst: indicator " + format_value(worst_ind) + ", divisor " + format_value(worst_div) +
               ", S+T " + format_value(worst_st));
  }

  // ---- criterion 7: asymptotic behaviour ----
  {
    const double target = (1.0 - constants().euler_gamma) * li(1e6);
    const double frac = frac_prime_sum(1'000'000);
    const double frac_rel = std::abs(frac - target) / target;
    const bool frac_ok = frac_rel <= 0.01;

    std::vector<double> ratios;
    for (const u64 x : {u64{1000}, u64{10'000}, u64{100'000}, u64{1'000'000}}) {
      const u64 exact = exact_sum_blocked(x).value;
      const double e = error_term(x, exact);
      const double xd = static_cast<double>(x);
      ratios.push_back(std::abs(e) / (li(xd) * std::log(std::log(xd))));
    }
    bool bounded = true;
    for (const double r : ratios) bounded = bounded && r < 5.0;
    const bool no_blowup = ratios.back() < 3.0 * ratios.front();

    std::ostringstream detail;
    detail << "frac rel " << format_fixed(100.0 * frac_rel, 3) << "% vs 1%; ratios";
    for (const double r : ratios) detail << ' ' << format_fixed(r, 3);
    detail << "; blow-up gate " << format_fixed(ratios.back(), 3) << " < "
           << format_fixed(3.0 * ratios.front(), 3);
    report(7, frac_ok && bounded && no_blowup,
           "frac sum within 1% of (1-gamma) li, |E| ratios < 5 and no monotone blow-up",
           detail.str());
    if (!frac_ok)
      std::cout << "       note: the measured deviation of the fractional sum at 10^6 is "
                   "1.136%, above the stated 1%\n";
    if (!no_blowup)
      std::cout << "       note: |E|/(li loglog) grows from 0.707 at 10^3 to 3.210 at 10^6, "
                   "which exceeds the stated 3x gate while staying under the hard bound 5\n";
  }

  // ---- criterion 8: constant consistency ----
  {
    const AsymptoticConstants k = constants();
    const double c1_err = std::abs(k.c1 - k.mertens_b1 * k.zeta2);
    const double c2_err = std::abs(k.c2 - (1.0 - k.euler_gamma) * k.zeta2);
    report(8, c1_err < 1e-12 && c2_err < 1e-12,
           "c1 and c2 recombine from zeta2, B1, gamma to 1e-12",
           "errors " + format_value(c1_err) + ", " + format_value(c2_err));
  }

  std::cout << "== " << (failures == 0 ? "all criteria passed"
                                       : std::to_string(failures) + " criterion(s) failed")
            << " ==\n";
  return failures == 0 ? 0 : 1;
}
