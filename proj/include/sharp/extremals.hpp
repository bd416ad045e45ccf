#pragma once

#include <functional>

#include "sharp/radial.hpp"

namespace sharp::extremals {

/// One member of the minimizer family
///   v(r) = ln((lambda0 + 1) / (lambda0 + exp(-n r / (n-1)))),
/// together with its weighted mass a and Euler-Lagrange multiplier tau.
struct ExtremalParams {
  double n;
  double lambda0;
  double a;    // (lambda0 + 1) / (n lambda0)
  double tau;  // (n/(n-1))^n lambda0 / (lambda0 + 1)^n

  static ExtremalParams from_lambda(double n, double lambda0);
  static ExtremalParams from_mass(double n, double a);

  /// n / (n - 1), the decay rate of exp(-n r / (n-1)).
  double rate() const { return n / (n - 1.0); }
};

double extremal_eval(const ExtremalParams& p, double r);
double extremal_slope(const ExtremalParams& p, double r);

double lambda_from_mass(double n, double a);
double mass_from_lambda(const ExtremalParams& p);

/// integral_0^inf |v_r|^n dr. Integer n uses the finite-sum closed form;
/// otherwise the reduced integral is evaluated by quadrature.
double closed_energy(const ExtremalParams& p);

/// (n/(n-1))^{n-1} integral_{lambda0/(lambda0+1)}^1 (1/t - 1)(1-t)^{n-2} dt
/// by quadrature, for any n.
double reduced_energy(const ExtremalParams& p);

/// Deficit of the consistent statement at v(.; p). Positive, and tends to 0
/// as lambda0 -> 0 (a -> inf); equals 1/(2a) for n = 2.
double extremal_deficit(const ExtremalParams& p);

/// v sampled on a grid.
radial::RadialFunction sample_extremal(const ExtremalParams& p,
                                       radial::Grid grid);

/// x -> c / (1 + d x^alpha)^{(alpha + 1) / alpha}
std::function<double(double)> bliss_extremal(double c, double d, double alpha);

}  // namespace sharp::extremals
