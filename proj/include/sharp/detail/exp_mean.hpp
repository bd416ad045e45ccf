#pragma once

#include <cmath>

namespace sharp::detail {

// g_m(z) = integral_0^1 t^m e^{z t} dt for m = 0, 1, 2.
// Cell integrals of exp(linear) are h e^A g_0(B - A); the solver also needs
// the first two derivatives, g_0' = g_1 and g_0'' = g_2.
struct ExpMoments {
  double g0;
  double g1;
  double g2;
};

inline ExpMoments exp_moments(double z) {
  if (std::abs(z) < 0.5) {
    // sum_k z^k / (k! (k + m + 1))
    double term = 1.0;
    ExpMoments out{0.0, 0.0, 0.0};
    for (int k = 0; k < 30; ++k) {
      out.g0 += term / (k + 1);
      out.g1 += term / (k + 2);
      out.g2 += term / (k + 3);
      term *= z / (k + 1);
    }
    return out;
  }
  const double em1 = std::expm1(z);
  const double ez = em1 + 1.0;
  const double g0 = em1 / z;
  const double g1 = (ez - g0) / z;
  const double g2 = (ez - 2.0 * g1) / z;
  return {g0, g1, g2};
}

// (e^B - e^A) / (B - A), accurate when B ~ A.
inline double exp_divided_difference(double a, double b) {
  // Factor out the larger exponent so the moment argument is never positive.
  if (b > a) return std::exp(b) * exp_moments(a - b).g0;
  return std::exp(a) * exp_moments(b - a).g0;
}

}  // namespace sharp::detail
