#include "sharp/extremals.hpp"

#include <cmath>
#include <sstream>

#include "sharp/constants.hpp"
#include "sharp/error.hpp"
#include "sharp/quadrature.hpp"

namespace sharp::extremals {

namespace {

bool is_integer(double n) { return n == std::floor(n); }

void require_n(double n) {
  require(n > 1.0 && std::isfinite(n), ErrorKind::InvalidParam,
          "extremal exponent n must be > 1");
}

const quad::QuadratureSpec kReducedSpec{1e-14, 1e-13, 4000};

}  // namespace

ExtremalParams ExtremalParams::from_lambda(double n, double lambda0) {
  require_n(n);
  require(lambda0 > 0.0 && std::isfinite(lambda0), ErrorKind::InvalidParam,
          "lambda0 must be positive");
  const double q = n / (n - 1.0);
  const double a = (lambda0 + 1.0) / (n * lambda0);
  const double tau = std::pow(q, n) * lambda0 / std::pow(lambda0 + 1.0, n);
  return {n, lambda0, a, tau};
}

ExtremalParams ExtremalParams::from_mass(double n, double a) {
  return from_lambda(n, lambda_from_mass(n, a));
}

double extremal_eval(const ExtremalParams& p, double r) {
  require(r >= 0.0, ErrorKind::InvalidParam, "extremal defined for r >= 0");
  const double decay = std::exp(-p.rate() * r);
  return std::log1p(-std::expm1(-p.rate() * r) / (p.lambda0 + decay));
}

double extremal_slope(const ExtremalParams& p, double r) {
  const double decay = std::exp(-p.rate() * r);
  return p.rate() * decay / (p.lambda0 + decay);
}

double lambda_from_mass(double n, double a) {
  require_n(n);
  if (!(n * a > 1.0) || !std::isfinite(a)) {
    std::ostringstream os;
    os << "mass a = " << a << " must exceed 1/n = " << 1.0 / n;
    fail(ErrorKind::InvalidParam, os.str());
  }
  return 1.0 / (n * a - 1.0);
}

double mass_from_lambda(const ExtremalParams& p) {
  return (p.lambda0 + 1.0) / (p.n * p.lambda0);
}

double reduced_energy(const ExtremalParams& p) {
  const double lower = p.lambda0 / (p.lambda0 + 1.0);
  // (1/t - 1)(1-t)^{n-2} = (1-t)^{n-1} / t
  auto integrand = [n = p.n](double t) { return std::pow(1.0 - t, n - 1.0) / t; };
  const double integral = quad::integrate(integrand, lower, 1.0, kReducedSpec).value;
  return std::pow(p.rate(), p.n - 1.0) * integral;
}

double closed_energy(const ExtremalParams& p) {
  if (!is_integer(p.n)) return reduced_energy(p);
  const int n = static_cast<int>(p.n);
  // With x = (na - 1)/(na) = 1/(lambda0 + 1) the bracket is
  // ln(1/(1-x)) - sum_{j=1}^{n-1} x^j / j = sum_{j>=n} x^j / j.
  const double x = 1.0 / (p.lambda0 + 1.0);
  double bracket = 0.0;
  if (x < 0.5) {
    double power = std::pow(x, n);
    for (int j = n; j < n + 200; ++j) {
      const double term = power / j;
      bracket += term;
      if (term < 1e-18 * bracket) break;
      power *= x;
    }
  } else {
    bracket = std::log1p(1.0 / p.lambda0);
    double power = 1.0;
    for (int j = 1; j < n; ++j) {
      power *= x;
      bracket -= power / j;
    }
  }
  return std::pow(p.rate(), p.n - 1.0) * bracket;
}

double extremal_deficit(const ExtremalParams& p) {
  // C_n minus the bracket, regrouped as
  // integral_0^{t0} (1 - (1-t)^f)/t dt + sum_{i=1}^{[n]-1} (1 - x^{n-i}) / (n-i)
  // with t0 = lambda0/(lambda0+1) and x = 1/(lambda0+1).
  const double whole = std::floor(p.n);
  const double frac = p.n - whole;
  const double t0 = p.lambda0 / (p.lambda0 + 1.0);
  const double log_x = -std::log1p(p.lambda0);
  double sum = 0.0;
  for (int i = static_cast<int>(whole) - 1; i >= 1; --i) {
    const double m = p.n - i;
    sum += -std::expm1(m * log_x) / m;
  }
  return constants::c_n_integral(frac, t0) + sum;
}

radial::RadialFunction sample_extremal(const ExtremalParams& p,
                                       radial::Grid grid) {
  return radial::RadialFunction::sample(
      std::move(grid), [&p](double r) { return extremal_eval(p, r); });
}

std::function<double(double)> bliss_extremal(double c, double d, double alpha) {
  require(c > 0.0 && d > 0.0 && alpha > 0.0, ErrorKind::InvalidParam,
          "Bliss extremal parameters must be positive");
  const double power = -(alpha + 1.0) / alpha;
  return [=](double x) { return c * std::pow(1.0 + d * std::pow(x, alpha), power); };
}

}  // namespace sharp::extremals
