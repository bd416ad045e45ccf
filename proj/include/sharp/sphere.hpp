#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "sharp/radial.hpp"

namespace sharp::sphere {

// ---------------------------------------------------------------------------
// Unit ball <-> half-line

/// Radial profile w(s), s in [0, 1], on the unit ball, with its derivative.
struct DiskProfile {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};

struct DiskReduction {
  double energy_disk;  // integral_{B_1} |grad w|^n
  double mass_disk;    // integral_{B_1} e^{n w}
};

/// Ball integrals of a half-line function u(r), r = -ln s:
/// omega_{n-1} times the half-line energy and weighted mass.
DiskReduction disk_reduce(const radial::RadialFunction& u, int n);

/// Ball integrals of w(s) computed directly in s by quadrature.
DiskReduction disk_reduce(const DiskProfile& w, int n);

/// (n-1/n)^{n-1} omega^{-1} E + H_{n-1} - ln(n M / omega) for a nonnegative
/// radial u with zero boundary value.
double corollary3_deficit(const radial::RadialFunction& u, int n);
double corollary3_deficit(const DiskProfile& w, int n);

// ---------------------------------------------------------------------------
// Local sharp inequality in the plane

struct DiskSpec {
  double radius;
  double boundary;  // b
  double mass;      // a

  /// a > pi r^2 e^{2b}
  bool admissible() const;
};

/// 4 pi (ln(a e^{-2b} / (pi r^2)) + pi r^2 / (a e^{-2b}) - 1).
double corollary2_infimum(const DiskSpec& spec);

/// The same infimum reached by rescaling to the unit disk and applying the
/// n = 2 extremal energy with half-line mass alpha = a e^{-2b} / (2 pi r^2).
double corollary2_via_halfline(const DiskSpec& spec);

// ---------------------------------------------------------------------------
// Stereographic chart from the north pole

using Point3 = std::array<double, 3>;
using Point2 = std::array<double, 2>;

Point2 stereo_forward(const Point3& x);
Point3 stereo_inverse(const Point2& y);

/// ln(2 / (1 + |y|^2)); the round metric is e^{2 phi} |dy|^2.
double phi(const Point2& y);
double phi_radial(double rho);

/// phi'' + phi'/rho + e^{2 phi} at rho by central differences with step h.
double phi_equation_residual(double rho, double h = 1e-4);

/// integral_{B_R} |grad phi|^2 in closed form.
double phi_dirichlet(double radius);
/// Same integral by radial quadrature of 4 rho^2 / (1 + rho^2)^2.
double phi_dirichlet_quadrature(double radius);

// ---------------------------------------------------------------------------
// Axisymmetric functions u(x_3) on S^2

class AxiFunction {
 public:
  AxiFunction(std::function<double(double)> value,
              std::function<double(double)> derivative);

  /// Derivative by central differences with step 1e-4 (one-sided near +-1).
  static AxiFunction from_callable(std::function<double(double)> value);
  static AxiFunction constant(double c);
  /// sum_k coeffs[k] t^k with the exact derivative.
  static AxiFunction polynomial(std::vector<double> coeffs);
  /// Natural cubic spline through (t_i, u_i); t must be increasing and span
  /// [-1, 1].
  static AxiFunction from_table(std::vector<double> t, std::vector<double> u);

  double operator()(double t) const { return value_(t); }
  double derivative(double t) const { return derivative_(t); }

  AxiFunction shifted(double c) const;

 private:
  std::function<double(double)> value_;
  std::function<double(double)> derivative_;
};

/// Log conformal factor of the dilation y -> lambda y pulled back to S^2:
/// ln(2 lambda / ((1 - t) + lambda^2 (1 + t))).
AxiFunction mobius_factor(double lambda);

/// Degree-limited random polynomial in t with coefficients in [-range, range].
AxiFunction random_band_limited(std::uint64_t seed, int degree, double range);

struct OnofriReport {
  double dirichlet;     // integral |grad u|^2
  double mean_term;     // 2 integral u
  double exp_integral;  // integral e^{2u}
  double lhs;           // ln((1/4pi) integral e^{2u})
  double rhs;           // (1/4pi) integral (|grad u|^2 + 2u)
  double deficit;       // rhs - lhs
};

/// Gauss-Legendre in t = x_3 (192 nodes); integral_{S^2} g = 2 pi int g dt.
/// Throws NonConvergent when a 128-node rerun disagrees beyond 1e-9.
OnofriReport onofri_report(const AxiFunction& u);
double onofri_deficit(const AxiFunction& u);

struct TransferReport {
  double plane_side;   // integral_{B_R} |grad (u o Phi^{-1} + phi)|^2
  double sphere_side;  // cap integrals of |grad u|^2 + 2u, plus phi_dirichlet
  double mismatch;
};

/// Both sides of the conformal transfer identity on B_R and its image cap,
/// each by independent quadrature. u must vanish for x_3 >= (R^2-1)/(R^2+1).
TransferReport transfer_identity_check(const AxiFunction& u, double radius);

}  // namespace sharp::sphere
