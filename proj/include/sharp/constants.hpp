#pragma once

namespace sharp::constants {

/// ((n-1)/n)^(n-1), the coefficient in front of the n-energy. Tends to 1 as
/// n -> 1+.
double sharp_coefficient(double n);

/// Optimal additive constant of the exponential-weight inequality:
/// integral_0^1 (1 - (1-t)^{n-[n]}) / t dt + sum_{i=1}^{[n]-1} 1 / (n - i).
/// For integer n this is the harmonic number H_{n-1}.
double c_n(double n);

/// Integral term of c_n alone, integral_0^x (1 - (1-t)^f) / t dt with
/// f = n - [n]; x = 1 gives the full term.
double c_n_integral(double frac, double upper = 1.0);

struct RoughConstants {
  double c;   // integral_0^inf exp([(n-1) beta0^{-n/(n-1)} - n] r) dr
  double c1;  // ln c
};

/// (n-1)/n raised to (n-1)/n: rough_constants requires beta0 strictly above it.
double rough_threshold(double n);

/// Exponent coefficient (n-1) beta0^{-n/(n-1)} - n of the rough bound.
double rough_rate(double n, double beta0);

RoughConstants rough_constants(double n, double beta0);

/// n * a^{1/(1-n)}: moser_bound requires beta strictly below it.
double moser_threshold(double n, double a);

/// 1 / (n - beta a^{1/(n-1)}), the bound on
/// integral_0^inf exp(beta u^{n/(n-1)} - n r) dr over energy <= a.
double moser_bound(double n, double a, double beta);

struct BlissParams {
  double k;
  double l;
  double alpha;  // l/k - 1
  double c_b;
};

BlissParams bliss_constant(double k, double l);

/// Surface measure of the unit m-sphere in R^{m+1}.
double sphere_volume(int m);

}  // namespace sharp::constants
