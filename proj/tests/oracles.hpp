#pragma once

// Test-only reference values and helpers. Nothing here calls into the library:
// the digamma routine, the Simpson rule and the frozen constants (30-digit
// evaluations, rounded) are independent of the code under test.

#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kEulerGamma = 0.57721566490153286060651209;

// psi(x) for x > 0: shift up with psi(x) = psi(x+1) - 1/x, then the
// asymptotic series in 1/x^2.
inline double digamma(double x) {
  double shift = 0.0;
  while (x < 10.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  const double inv2 = 1.0 / (x * x);
  const double series =
      inv2 * (1.0 / 12 - inv2 * (1.0 / 120 - inv2 * (1.0 / 252 - inv2 * (1.0 / 240 - inv2 / 132))));
  return shift + std::log(x) - 0.5 / x - series;
}

inline double harmonic(int m) {
  double h = 0.0;
  for (int i = 1; i <= m; ++i) h += 1.0 / i;
  return h;
}

// integral_0^1 (1 - (1-t)^f)/t dt = psi(f + 1) + gamma, so the whole constant
// follows from digamma and a finite sum.
inline double c_n(double n) {
  const int whole = static_cast<int>(std::floor(n));
  double sum = digamma(n - whole + 1.0) + kEulerGamma;
  for (int i = 1; i < whole; ++i) sum += 1.0 / (n - i);
  return sum;
}

// Composite Simpson with `panels` (even) subintervals.
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      int panels) {
  const double h = (b - a) / panels;
  double sum = f(a) + f(b);
  for (int i = 1; i < panels; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return sum * h / 3.0;
}

// Frozen values.
inline constexpr double kCn2p5 = 1.28037230554677604783;          // 2 - 2 ln 2 + 2/3
inline constexpr double kCn3p7 = 1.74436920426304424648;
inline constexpr double kEnergy2p5Lambda1 = 0.242774413555905202433;
inline constexpr double kEnergy3LambdaHalf = 0.471877649503246805639;
inline constexpr double kEnergy1p5LambdaTenth = 3.16995966118902638957;
inline constexpr double kDeficit2p5Mass0p8 = 0.700056476257305898612;
inline constexpr double kDeficit3Lambda1 = 0.875;
inline constexpr double kDeficit4LambdaHalf = 0.845679012345679012346;  // 137/162
inline constexpr double kOnofriLinear = 0.0714464746124438460301;       // 2/3 - ln(sinh 2 / 2)
inline constexpr double kCorollary3Parabola = 0.338560638428804366390;  // 3/2 - ln((e^2-1)/2)
inline constexpr double kPhiDirichlet10 = 45.5533637412342075191;
inline constexpr double kExtremalAt5 = 0.693101781660728444770;         // ln(2/(1+e^-10))
inline constexpr double kCorollary2Unit = 2.42715905403482204508;       // 4 pi (ln 2 - 1/2)
inline constexpr double kBliss2_3 = 2.10818510677891955467;             // (2/3) sqrt(10)
inline constexpr double kDigamma1p5 = 0.0364899739785765205590;
inline constexpr double kDigamma0p3 = -3.50252422220013312492;
inline constexpr double kDigamma7p25 = 1.91045352688373602838;

// n = 2 extremal of mass a: energy 2 ln(2a) - 2 + 1/a and deficit 1/(2a).
inline double energy_n2(double a) { return 2.0 * std::log(2.0 * a) - 2.0 + 1.0 / a; }

}  // namespace oracle
