#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace fracprime {

namespace detail {

// 15-point Gauss-Legendre nodes and weights on [-1, 1], computed once via
// Newton iterations on the Legendre recurrence.
inline const std::array<std::pair<double, double>, 15>& gl15() {
  static const std::array<std::pair<double, double>, 15> table = [] {
    constexpr int n = 15;
    std::array<std::pair<double, double>, 15> t{};
    for (int k = 0; k < n; ++k) {
      double x = std::cos(M_PI * (k + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 64; ++it) {
        double p0 = 1.0, p1 = x;
        for (int j = 2; j <= n; ++j) {
          const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-15) {
          p0 = 1.0;
          p1 = x;
          for (int j = 2; j <= n; ++j) {
            const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
            p0 = p1;
            p1 = p2;
          }
          dp = n * (x * p1 - p0) / (x * x - 1.0);
          break;
        }
      }
      t[k] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
    }
    return t;
  }();
  return table;
}

inline double gl15_recip_log(double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double s = 0.0;
  for (const auto& [x, w] : gl15()) s += w / std::log(c + h * x);
  return s * h;
}

inline double adapt_recip_log(double a, double b, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double left = gl15_recip_log(a, m);
  const double right = gl15_recip_log(m, b);
  if (depth <= 0 || std::abs(left + right - whole) <= tol) return left + right;
  return adapt_recip_log(a, m, left, 0.5 * tol, depth - 1) +
         adapt_recip_log(m, b, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Principal-value logarithmic integral for x >= 2. The singularity at t = 1
// is folded into the fixed value li(2); the remainder is the plain integral
// of 1/log t over [2, x], evaluated by adaptive Gauss-Legendre panels.
inline double li(double x) {
  constexpr double li_two = 1.0451637801174927848;
  if (!(x >= 2.0)) throw std::domain_error("li: defined for x >= 2");
  if (x == 2.0) return li_two;
  double total = 0.0;
  double a = 2.0;
  while (a < x) {
    const double b = std::min(x, a * 4.0);  // geometric panels keep 1/log t tame
    const double coarse = detail::gl15_recip_log(a, b);
    total += detail::adapt_recip_log(a, b, coarse, 1e-14 * std::abs(coarse) + 1e-16, 40);
    a = b;
  }
  return li_two + total;
}

}  // namespace fracprime
