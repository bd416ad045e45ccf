#pragma once

#include <optional>

#include "sharp/radial.hpp"

namespace sharp::varsolve {

struct SolveOptions {
  radial::Grid grid = radial::Grid::uniform(15.0, 3000);
  double epsilon_smooth = 1e-8;  // |s|^n is replaced by (s^2 + eps^2)^{n/2}
  double constraint_tol = 1e-10;
  double grad_tol = 1e-11;
  int max_iters = 60;        // augmented-Lagrangian outer iterations
  int max_inner_iters = 200; // Newton steps per outer iteration
  double penalty_growth = 10.0;
  double initial_penalty = 10.0;

  void validate() const;
};

struct SolveReport {
  radial::RadialFunction u_star;
  double n = 0.0;
  double a = 0.0;
  double xi_hat = 0.0;               // energy(u_star, n), unsmoothed
  double constraint_residual = 0.0;  // |weighted_mass(u_star) - a|
  double multiplier = 0.0;           // lambda in grad E = lambda grad M
  int iterations = 0;                // total Newton steps
  int outer_iterations = 0;
  bool converged = false;
};

/// Ramp min(r, ln(n a)) on the option grid: the cold start.
radial::RadialFunction ramp_start(double n, double a, const radial::Grid& grid);

/// Minimizes the n-energy over piecewise-linear u on opts.grid subject to
/// u(0) = 0 and weighted_mass(u, n) = a.
///
/// Augmented Lagrangian on the mass constraint; each subproblem is solved by
/// damped Newton steps (tridiagonal Hessian plus a rank-one penalty term)
/// with Armijo backtracking. Without an initial guess the ramp start is used.
/// Throws InvalidParam for a <= 1/n. A budget overrun does not throw: the
/// report comes back with converged = false.
SolveReport minimize(double n, double a, const SolveOptions& opts,
                     const std::optional<radial::RadialFunction>& initial = {});

/// R with tail_bound(v, n, beta0 = 1, R) below tol * a for the extremal of
/// mass a; beyond it the truncated problem loses less than tol of the mass.
double recommended_radius(double n, double a, double tol);

struct ShootOptions {
  // The extremal is a separatrix for n > 2, so errors grow along r; these
  // are long double tolerances.
  double rel_tol = 1e-14;
  double abs_tol = 1e-17;
  double min_step = 1e-14;
  int max_steps = 2000000;
};

/// Integrates v_r^{n-2} v_rr = -tau exp(n v - n r), v(0) = 0 with tau and
/// v_r(0) = (n/(n-1)) / (lambda0 + 1) taken from the extremal family, and
/// returns v at the grid nodes. Adaptive Dormand-Prince 5(4) in extended
/// precision on the equivalent first-order system for (v, v_r^{n-1}); the
/// flux form is used because its right-hand side does not involve v_r.
///
/// Throws SlopeSingularity if the flux v_r^{n-1} turns clearly negative and
/// StepFailure if the step size underflows.
radial::RadialFunction shoot(double n, double lambda0, const radial::Grid& grid,
                             const ShootOptions& opts = {});

/// sup over nodes of |u_r^{n-2} u_rr + tau exp(n u - n r)| with three-point
/// stencils inside and four-point one-sided stencils at the two ends.
double el_residual(const radial::RadialFunction& u, double n, double tau);

}  // namespace sharp::varsolve
