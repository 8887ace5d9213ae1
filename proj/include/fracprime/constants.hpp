#pragma once

namespace fracprime {

// Fixed-decimal constants for the asymptotic main term. c0 = zeta(2),
// c1 = B1 * zeta(2), c2 = (1 - gamma) * zeta(2).
struct AsymptoticConstants {
  double zeta2;
  double mertens_b1;
  double euler_gamma;
  double c0;
  double c1;
  double c2;
};

inline constexpr AsymptoticConstants constants() {
  constexpr double zeta2 = 1.644934066848226436472415;
  constexpr double b1 = 0.261497212847642783755426;
  constexpr double gamma = 0.577215664901532860606512;
  constexpr double c1 = 0.430145673798949331799597;
  constexpr double c2 = 0.695452355733244911926851;
  return {zeta2, b1, gamma, zeta2, c1, c2};
}

}  // namespace fracprime
