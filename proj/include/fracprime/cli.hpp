#pragma once

#include <CLI11.hpp>
#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "fracprime/fracprime_all.hpp"

namespace fracprime {

inline constexpr u64 naive_auto_limit = 10'000'000;  // naive above this needs --force-naive

namespace cli_detail {

inline void write_check_row(std::ostream& out, const std::string& suite,
                            const IdentityCheck& c) {
  out << suite << ',' << c.name << ',' << c.x << ',' << format_value(c.lhs) << ','
      << format_value(c.rhs) << ',' << format_value(c.abs_err) << ','
      << format_value(c.tolerance) << ',' << (c.pass ? "true" : "false") << '\n';
}

struct VerifyTally {
  int hard_failures = 0;
  int soft_failures = 0;
};

inline void tally(const IdentityCheck& c, bool hard, VerifyTally& t) {
  if (c.pass) return;
  if (hard)
    ++t.hard_failures;
  else
    ++t.soft_failures;
}

inline std::vector<u64> decades_up_to(u64 first, u64 x_max) {
  std::vector<u64> xs;
  for (u64 x = first; x <= x_max; x *= 10) xs.push_back(x);
  return xs;
}

inline void run_identities(std::ostream& out, u64 x_max, VerifyTally& t) {
  const AsymptoticConstants k = constants();

  auto c0_chk = make_check("c0_equals_zeta2", 0, k.c0, k.zeta2, 0.0);
  write_check_row(out, "identities", c0_chk);
  tally(c0_chk, true, t);
  auto zeta_chk = make_check("zeta2_vs_pi_squared_over_6", 0, k.zeta2,
                             std::numbers::pi * std::numbers::pi / 6.0, 1e-12);
  write_check_row(out, "identities", zeta_chk);
  tally(zeta_chk, true, t);
  auto c1_chk = make_check("c1_vs_b1_zeta2", 0, k.c1, k.mertens_b1 * k.zeta2, 1e-12);
  write_check_row(out, "identities", c1_chk);
  tally(c1_chk, true, t);
  auto c2_chk = make_check("c2_vs_(1-gamma)_zeta2", 0, k.c2, (1.0 - k.euler_gamma) * k.zeta2, 1e-12);
  write_check_row(out, "identities", c2_chk);
  tally(c2_chk, true, t);

  {
    double worst = 0.0;
    for (u64 d = 1; d <= 500; ++d) {
      for (u64 m = 1; m <= 500; ++m) {
        const double v = indicator(d, m);
        const double target = (m % d == 0) ? 1.0 : 0.0;
        worst = std::max(worst, std::abs(v - target));
      }
    }
    auto chk = make_check("indicator_grid(d,m<=500)", 500, worst, 0.0, 1e-9);
    write_check_row(out, "identities", chk);
    tally(chk, true, t);
  }

  {
    const u64 n_max = std::min<u64>(x_max, 10'000);
    const PrimeTable pt = build_prime_table(std::max<u64>(isqrt(n_max), 2));
    const std::vector<u32> primes = pt.primes_up_to(pt.limit());
    for (u32 s = 1; s <= 5; ++s) {
      double worst_div = 0.0, worst_mu = 0.0;
      for (u64 n = 1; n <= n_max; ++n) {
        worst_div = std::max(worst_div, divisor_power_sum(n, s, primes).abs_err);
        worst_mu = std::max(worst_mu, mu_twisted_divisor_sum(n, s, primes).abs_err);
      }
      auto div_chk = make_check("divisor_power_sum(s=" + std::to_string(s) + ")", n_max,
                                worst_div, 0.0, 1e-12);
      write_check_row(out, "identities", div_chk);
      tally(div_chk, true, t);
      auto mu_chk = make_check("mu_twisted_divisor_sum(s=" + std::to_string(s) + ")", n_max,
                               worst_mu, 0.0, 1e-12);
      write_check_row(out, "identities", mu_chk);
      tally(mu_chk, true, t);
    }
  }

  for (const u64 x : decades_up_to(10, x_max)) {
    auto chk = make_check("h2_partial_vs_zeta2", x, h2_partial(x), constants().zeta2,
                          1.0 / static_cast<double>(x));
    write_check_row(out, "identities", chk);
    tally(chk, true, t);
  }

  for (const u64 x : decades_up_to(10, std::min<u64>(x_max, 1'000'000))) {
    const PrimeTable pt = build_prime_table(x);
    kahan_sum recip;
    pt.for_each_prime(2, x, [&](u64 p) { recip.add(1.0 / static_cast<double>(p)); });
    const double lhs = frac_prime_sum(x, pt);
    const double rhs = static_cast<double>(x) * recip.value() -
                       static_cast<double>(prime_floor_sum(x));
    auto chk = make_check("frac_sum_identity", x, lhs, rhs, 1e-6 * std::abs(lhs));
    write_check_row(out, "identities", chk);
    tally(chk, true, t);
  }
}

inline void run_decomposition(std::ostream& out, u64 x_max, VerifyTally& t) {
  for (const u64 x : decades_up_to(10, std::min<u64>(x_max, 100'000))) {
    const DecompositionReport rep = s_t_decomposition(x);
    auto chk = make_check("s_plus_t_reconstitutes", x, rep.s_value + rep.t_value,
                          static_cast<double>(rep.total), 1e-9 * static_cast<double>(rep.total));
    write_check_row(out, "decomposition", chk);
    tally(chk, true, t);
  }
}

inline void run_estimates(std::ostream& out, u64 x_max, VerifyTally& t) {
  if (x_max >= 100) {
    const QuotientPi qp = build_quotient_pi(x_max);
    const u64 n_sweep = std::min<u64>(qp.root(), 1000);
    u64 passed = 0;
    IdentityCheck worst;
    double worst_ratio = -1.0;
    for (u64 n = 1; n <= n_sweep; ++n) {
      IdentityCheck chk = pi_difference_check(qp, n);
      if (chk.pass) ++passed;
      const double ratio = chk.abs_err / chk.tolerance;
      if (ratio > worst_ratio) {
        worst_ratio = ratio;
        worst = chk;
      }
    }
    auto rate = make_check("pi_difference_pass_rate(n<=" + std::to_string(n_sweep) + ")",
                           x_max, static_cast<double>(passed) / static_cast<double>(n_sweep),
                           1.0, 0.0);
    write_check_row(out, "estimates", rate);
    tally(rate, false, t);
    write_check_row(out, "estimates", worst);
    tally(worst, false, t);
  }

  if (x_max >= 100) {
    auto chk = sigma_ratio_bound(x_max);
    write_check_row(out, "estimates", chk);
    tally(chk, false, t);
  }

  {
    const std::vector<u64> xs = decades_up_to(100, std::min<u64>(x_max, 10'000'000));
    if (!xs.empty()) {
      for (const IdentityCheck& chk : t_magnitude_sweep(xs)) {
        write_check_row(out, "estimates", chk);
        tally(chk, false, t);
      }
    }
  }

  for (const u64 x : decades_up_to(10, x_max)) {
    const double res = mertens_residual(x);
    const double tol = (x >= 1'000'000) ? 1e-3 : (x >= 100 ? 0.02 : 0.1);
    auto chk = make_check("mertens_residual", x, res, 0.0, tol);
    write_check_row(out, "estimates", chk);
    tally(chk, false, t);
  }

  for (const u64 x : decades_up_to(1000, std::min<u64>(x_max, 1'000'000))) {
    const double lhs = frac_prime_sum(x);
    const double rhs = (1.0 - constants().euler_gamma) * li(static_cast<double>(x));
    const double tol = (x >= 10'000 ? 0.05 : 0.10) * rhs;
    auto chk = make_check("frac_sum_vs_li", x, lhs, rhs, tol);
    write_check_row(out, "estimates", chk);
    tally(chk, false, t);
  }

  for (const u64 x : decades_up_to(100, std::min<u64>(x_max, 10'000'000))) {
    auto chk = s_li_term_sign(x);
    write_check_row(out, "estimates", chk);
    tally(chk, false, t);
  }

  // shifted variants: reported for context, no tolerance asserted
  {
    const u64 x = std::max<u64>(std::min<u64>(x_max, 1'000'000), 10);
    const PrimeTable pt = build_prime_table(x);
    const double denom = li(static_cast<double>(x)) *
                         std::log(std::log(static_cast<double>(x)));
    for (const i64 a : {i64{-1}, i64{1}, i64{2}}) {
      const SumResult r = exact_sum_naive(x, a, pt);
      const double e = static_cast<double>(r.value) - main_term(x).main;
      IdentityCheck chk{"shifted_error_ratio(a=" + std::to_string(a) + ")", x,
                        std::abs(e) / denom, 0.0, std::abs(e) / denom,
                        std::numeric_limits<double>::infinity(), true};
      write_check_row(out, "estimates", chk);
    }
  }
}

inline int run_verify(std::ostream& out, const std::string& suite, u64 x_max, bool strict) {
  if (x_max > 10'000'000) throw std::domain_error("verify: x-max is capped at 10^7");
  if (x_max < 10) throw std::domain_error("verify: x-max must be at least 10");
  out << "suite,check,x,lhs,rhs,abs_err,tol,pass\n";
  VerifyTally t;
  if (suite == "identities" || suite == "all") run_identities(out, x_max, t);
  if (suite == "decomposition" || suite == "all") run_decomposition(out, x_max, t);
  if (suite == "estimates" || suite == "all") run_estimates(out, x_max, t);
  if (t.hard_failures > 0) return 1;
  if (strict && t.soft_failures > 0) return 1;
  return 0;
}

inline const char* strategy_name(SumStrategy s) {
  return s == SumStrategy::naive ? "naive" : "blocked";
}

}  // namespace cli_detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"prime-indexed floor-quotient sums: exact values, asymptotics, checks"};
  app.name("fracprime");
  app.require_subcommand(1);

  unsigned threads = 0;
  bool no_timing = false;
  app.add_option("--threads", threads, "cap worker threads (default: all cores)");
  app.add_flag("--no-timing", no_timing, "suppress elapsed-time columns");

  auto* cmd_table = app.add_subcommand("table", "CSV rows x,pi,exact,main,error");
  int max_exp = 0;
  std::string convention = "eq";
  cmd_table->add_option("--max-exp", max_exp, "rows for x = 10..10^E")->required();
  cmd_table->add_option("--convention", convention, "error sign: eq (exact-main) or table")
      ->check(CLI::IsMember({"eq", "table"}));
  cmd_table->fallthrough();

  auto* cmd_exact = app.add_subcommand("exact", "one exact sum evaluation");
  u64 exact_x = 0;
  i64 shift_a = 0;
  std::string strategy = "auto";
  bool force_naive = false;
  cmd_exact->add_option("--x", exact_x, "upper bound")->required();
  cmd_exact->add_option("--shift", shift_a, "shift a in floor(x/(p+a))");
  cmd_exact->add_option("--strategy", strategy)->check(CLI::IsMember({"naive", "blocked", "auto"}));
  cmd_exact->add_flag("--force-naive", force_naive, "allow naive above 10^7");
  cmd_exact->fallthrough();

  auto* cmd_verify = app.add_subcommand("verify", "identity and estimate suites");
  std::string suite = "all";
  u64 x_max = 10'000;
  bool strict = false;
  cmd_verify->add_option("--suite", suite)
      ->check(CLI::IsMember({"identities", "decomposition", "estimates", "all"}));
  cmd_verify->add_option("--x-max", x_max, "largest x driven through the checks");
  cmd_verify->add_flag("--strict", strict, "soft estimate failures also fail the run");
  cmd_verify->fallthrough();

  auto* cmd_bench = app.add_subcommand("bench", "timing comparison of the strategies");
  u64 bench_x = 0;
  unsigned reps = 3;
  bool bench_force_naive = false;
  cmd_bench->add_option("--x", bench_x, "upper bound")->required();
  cmd_bench->add_option("--reps", reps, "repetitions per strategy");
  cmd_bench->add_flag("--force-naive", bench_force_naive, "run naive above 10^7 too");
  cmd_bench->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  set_max_threads(threads);

  try {
    if (cmd_table->parsed()) {
      const ErrorConvention conv =
          convention == "table" ? ErrorConvention::table : ErrorConvention::equation;
      write_table_csv(out, table_rows(max_exp, conv));
      return 0;
    }

    if (cmd_exact->parsed()) {
      if (exact_x < 2) throw std::domain_error("exact: x must be >= 2");
      if (strategy == "blocked" && shift_a != 0)
        throw std::domain_error("exact: the blocked strategy supports only --shift 0");
      std::string resolved = strategy;
      if (resolved == "auto") resolved = (shift_a == 0) ? "blocked" : "naive";
      if (resolved == "naive" && exact_x > naive_auto_limit && !force_naive)
        throw std::domain_error(
            "exact: naive evaluation above x = 10^7 needs --force-naive");
      const SumResult r = (resolved == "blocked") ? exact_sum_blocked(exact_x)
                                                  : exact_sum_naive(exact_x, shift_a);
      out << "x,a,strategy,value" << (no_timing ? "" : ",elapsed_ms") << '\n';
      out << r.x << ',' << r.shift_a << ',' << cli_detail::strategy_name(r.strategy) << ','
          << r.value;
      if (!no_timing) out << ',' << format_fixed(r.elapsed_ms, 3);
      out << '\n';
      return 0;
    }

    if (cmd_verify->parsed()) return cli_detail::run_verify(out, suite, x_max, strict);

    if (cmd_bench->parsed()) {
      if (bench_x < 1000) throw std::domain_error("bench: x must be >= 10^3");
      if (reps < 1) throw std::domain_error("bench: reps must be >= 1");
      struct BenchRow {
        std::string name;
        double median_ms;
        u64 value;
      };
      std::vector<BenchRow> rows;
      const bool run_naive = bench_x <= naive_auto_limit || bench_force_naive;
      auto run = [&](const std::string& name, auto&& eval) {
        std::vector<double> ms;
        u64 value = 0;
        for (unsigned i = 0; i < reps; ++i) {
          const SumResult r = eval();
          ms.push_back(r.elapsed_ms);
          value = r.value;
        }
        std::sort(ms.begin(), ms.end());
        const double median = (reps % 2) ? ms[reps / 2]
                                         : 0.5 * (ms[reps / 2 - 1] + ms[reps / 2]);
        rows.push_back({name, median, value});
      };
      if (run_naive) run("naive", [&] { return exact_sum_naive(bench_x, 0); });
      run("blocked", [&] { return exact_sum_blocked(bench_x); });

      out << "strategy,x" << (no_timing ? "" : ",median_ms") << ",value\n";
      for (const BenchRow& r : rows) {
        out << r.name << ',' << bench_x;
        if (!no_timing) out << ',' << format_fixed(r.median_ms, 3);
        out << ',' << r.value << '\n';
      }
      for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].value != rows[0].value) {
          err << "error: strategies disagree: " << rows[0].name << " = " << rows[0].value
              << ", " << rows[i].name << " = " << rows[i].value << '\n';
          return 1;
        }
      }
      return 0;
    }
  } catch (const capacity_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> full;
  full.reserve(args.size() + 1);
  full.emplace_back("fracprime");
  full.insert(full.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(full.size());
  for (const std::string& s : full) argv.push_back(s.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace fracprime
