#pragma once

#include <functional>
#include <span>
#include <vector>

namespace sharp::quad {

using Integrand = std::function<double(double)>;

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdivisions = 2000;

  // Throws InvalidParam when both tolerances are zero or the budget is empty.
  void validate() const;
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int subdivisions_used = 0;
};

/// Globally adaptive Gauss-Kronrod (10/21) integration over [a, b].
///
/// Nodes are strictly interior, so integrands with removable or integrable
/// endpoint singularities are never evaluated at the endpoints. The error
/// estimate is the sum of |K21 - G10| over the final partition.
///
/// Throws InvalidDomain when a >= b, NonFinite when f returns inf/nan and
/// NonConvergent when the subdivision budget runs out before the tolerance
/// max(abs_tol, rel_tol * |value|) is met.
IntegralResult integrate(const Integrand& f, double a, double b,
                         const QuadratureSpec& spec = {});

/// Integral over [0, inf) after the substitution s = exp(-r).
IntegralResult integrate_halfline(const Integrand& g,
                                  const QuadratureSpec& spec = {});

/// Integral over [start, inf) after the substitution s = exp(start - r).
IntegralResult integrate_tail(const Integrand& g, double start,
                              const QuadratureSpec& spec = {});

/// y_i = integral of f over [0, xs[i]]; xs must be strictly increasing and
/// start at a nonnegative abscissa.
std::vector<double> cumulative(const Integrand& f, std::span<const double> xs,
                               const QuadratureSpec& spec = {});

struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1] (exact through degree 2n - 1).
GaussLegendreRule gauss_legendre(int n);

}  // namespace sharp::quad
