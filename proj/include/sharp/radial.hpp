#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "sharp/quadrature.hpp"

namespace sharp::radial {

/// Strictly increasing nodes 0 = r_0 < r_1 < ... < r_N, N >= 2.
class Grid {
 public:
  explicit Grid(std::vector<double> nodes);

  static Grid uniform(double radius, int node_count);

  /// Nodes clustered where exp(-q r) changes fastest: a blend of a uniform
  /// grid and one uniform in exp(-q r), so the transition of an extremal
  /// around r ~ log(1/lambda0)/q is resolved for small lambda0.
  static Grid graded(double radius, int node_count, double rate);

  std::span<const double> nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  double radius() const { return nodes_.back(); }
  double operator[](std::size_t i) const { return nodes_[i]; }

 private:
  std::vector<double> nodes_;
};

/// A piecewise-linear function on a Grid with u(0) = 0, extended by the
/// constant u_N beyond the last node. Immutable once built.
class RadialFunction {
 public:
  RadialFunction(Grid grid, std::vector<double> values);

  /// Samples f at the grid nodes; f(0) must be 0.
  static RadialFunction sample(Grid grid, const std::function<double(double)>& f);
  static RadialFunction zero(Grid grid);

  const Grid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  /// Interpolated value; constant extension past the last node.
  double operator()(double r) const;

  bool nonnegative() const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

enum class Statement { AsPrinted, Consistent, N1 };

std::string_view to_string(Statement s);
Statement statement_from_string(std::string_view name);

struct MassResult {
  double mass;  // full half-line value, tail included
  double tail;  // analytic part beyond the last node
};

struct DeficitReport {
  double n = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double deficit = 0.0;  // rhs - lhs
  double energy = 0.0;
  double mass = 0.0;
  double tail_estimate = 0.0;
  double quad_error = 0.0;
  Statement statement = Statement::Consistent;
};

/// sum_i |du_i / dr_i|^n dr_i: the exact n-energy of the interpolant.
double energy(const RadialFunction& u, double n);

/// integral_0^inf exp(n u - n r) dr of the interpolant; cells are integrated
/// in closed form since the exponent is linear on each of them.
MassResult weighted_mass(const RadialFunction& u, double n);

/// integral_R^inf exp(n u - n r) dr of the interpolant.
double weighted_mass_beyond(const RadialFunction& u, double n, double from);

DeficitReport deficit(const RadialFunction& u, double n, Statement statement);

/// The n = 1 form: ln integral exp(u - r) dr against the total variation.
DeficitReport deficit_n1(const RadialFunction& u);

/// integral_0^inf exp(beta u^{n/(n-1)} - n r) dr.
double moser_functional(const RadialFunction& u, double n, double beta);

/// exp(beta0^n E_n(u)) integral_R^inf exp([(n-1) beta0^{-n/(n-1)} - n] r) dr,
/// a majorant of the weighted mass beyond R.
double tail_bound(const RadialFunction& u, double n, double beta0, double from);

struct BlissRatio {
  double ratio;       // I / J^{l/k}
  double i_integral;  // integral_0^xmax y^l / x^{l - alpha}
  double j_integral;  // integral_0^xmax f^k
  double truncated_tail;  // estimate of integral_xmax^inf f^k
  bool tail_warning;      // truncated_tail > 1e-8 J
};

/// Ratio of the two sides of the Bliss inequality for f truncated at x_max,
/// with y(x) = integral_0^x f.
BlissRatio bliss_ratio(const std::function<double(double)>& f, double k, double l,
                       double x_max, const quad::QuadratureSpec& spec = {});

/// Seeded nonnegative piecewise-linear test function: n_pieces random knots on
/// (0, R), values in [0, amplitude], u(0) = 0 and constant beyond R.
RadialFunction random_admissible(std::uint64_t seed, int n_pieces, double radius,
                                 double amplitude);

}  // namespace sharp::radial
