#pragma once

#include <cmath>

#include "fracprime/constants.hpp"
#include "fracprime/logint.hpp"
#include "fracprime/prime_table.hpp"
#include "fracprime/util.hpp"

namespace fracprime {

// c0 * x * loglog x + c1 * x. loglog x is only positive for x > e, so the
// domain starts at 3.
struct MainTermValue {
  u64 x;
  double main;
  double li_x;
};

inline MainTermValue main_term(u64 x) {
  if (x < 3) throw std::domain_error("main_term: defined for x >= 3");
  const AsymptoticConstants k = constants();
  const double xd = static_cast<double>(x);
  const double loglog = std::log(std::log(xd));
  return {x, k.c0 * xd * loglog + k.c1 * xd, li(xd)};
}

// E(x) = exact - main. The reference table prints the opposite sign; the
// reporting layer owns that choice.
inline double error_term(u64 x, u64 exact) {
  return static_cast<double>(exact) - main_term(x).main;
}

// sum over primes p <= x of 1/p, minus loglog x, minus B1. Tends to 0.
inline double mertens_residual(u64 x, const PrimeTable& pt) {
  if (x < 3) throw std::domain_error("mertens_residual: defined for x >= 3");
  kahan_sum s;
  pt.for_each_prime(2, x, [&](u64 p) { s.add(1.0 / static_cast<double>(p)); });
  const double xd = static_cast<double>(x);
  return s.value() - std::log(std::log(xd)) - constants().mertens_b1;
}

inline double mertens_residual(u64 x) {
  return mertens_residual(x, build_prime_table(x));
}

}  // namespace fracprime
