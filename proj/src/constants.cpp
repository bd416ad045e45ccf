#include "sharp/constants.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "sharp/error.hpp"
#include "sharp/quadrature.hpp"

namespace sharp::constants {

namespace {

void require_n(double n) {
  if (!(n > 1.0) || !std::isfinite(n)) {
    std::ostringstream os;
    os << "exponent n must be finite and > 1, got " << n;
    fail(ErrorKind::InvalidParam, os.str());
  }
}

const quad::QuadratureSpec kFineSpec{1e-12, 1e-12, 4000};

}  // namespace

double sharp_coefficient(double n) {
  require_n(n);
  return std::pow((n - 1.0) / n, n - 1.0);
}

double c_n_integral(double frac, double upper) {
  require(frac >= 0.0 && frac < 1.0, ErrorKind::InvalidParam,
          "fractional part must lie in [0, 1)");
  require(upper > 0.0 && upper <= 1.0, ErrorKind::InvalidParam,
          "upper limit must lie in (0, 1]");
  if (frac == 0.0) return 0.0;
  // -expm1(f log1p(-t)) keeps the numerator accurate for small t.
  auto integrand = [frac](double t) {
    return -std::expm1(frac * std::log1p(-t)) / t;
  };
  return quad::integrate(integrand, 0.0, upper, kFineSpec).value;
}

double c_n(double n) {
  require_n(n);
  const double whole = std::floor(n);
  const double frac = n - whole;
  double sum = 0.0;
  // Summed from the smallest term up.
  for (int i = static_cast<int>(whole) - 1; i >= 1; --i) sum += 1.0 / (n - i);
  return c_n_integral(frac) + sum;
}

double rough_threshold(double n) {
  require_n(n);
  return std::pow((n - 1.0) / n, (n - 1.0) / n);
}

double rough_rate(double n, double beta0) {
  require_n(n);
  return (n - 1.0) * std::pow(beta0, -n / (n - 1.0)) - n;
}

RoughConstants rough_constants(double n, double beta0) {
  require_n(n);
  const double rate = beta0 > 0.0 ? rough_rate(n, beta0) : 0.0;
  if (!(beta0 > rough_threshold(n)) || !(rate < 0.0)) {
    std::ostringstream os;
    os << "beta0 = " << beta0 << " must exceed ((n-1)/n)^((n-1)/n) = "
       << rough_threshold(n);
    fail(ErrorKind::BelowThreshold, os.str());
  }
  const double c = -1.0 / rate;
  return {c, std::log(c)};
}

double moser_threshold(double n, double a) {
  require_n(n);
  require(a > 0.0, ErrorKind::InvalidParam, "energy budget a must be > 0");
  return n * std::pow(a, 1.0 / (1.0 - n));
}

double moser_bound(double n, double a, double beta) {
  const double threshold = moser_threshold(n, a);
  const double denom = n - beta * std::pow(a, 1.0 / (n - 1.0));
  if (!(beta < threshold) || !(denom > 0.0)) {
    std::ostringstream os;
    os << "beta = " << beta << " must be below n a^{1/(1-n)} = " << threshold;
    fail(ErrorKind::AboveThreshold, os.str());
  }
  return 1.0 / denom;
}

BlissParams bliss_constant(double k, double l) {
  require(k > 1.0 && std::isfinite(k), ErrorKind::InvalidParam,
          "Bliss exponent k must be > 1");
  require(l > k && std::isfinite(l), ErrorKind::InvalidParam,
          "Bliss exponent l must exceed k");
  const double alpha = l / k - 1.0;
  // Gamma ratio in log form: l/alpha grows without bound as alpha -> 0.
  const double log_ratio = std::log(alpha) + std::lgamma(l / alpha) -
                           std::lgamma(1.0 / alpha) -
                           std::lgamma((l - 1.0) / alpha);
  const double c_b = std::exp(alpha * log_ratio) / (l - alpha - 1.0);
  return {k, l, alpha, c_b};
}

double sphere_volume(int m) {
  require(m >= 1, ErrorKind::InvalidParam, "sphere dimension must be >= 1");
  // omega_m = 2 pi^{(m+1)/2} / Gamma((m+1)/2)
  const double half = 0.5 * (m + 1);
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

}  // namespace sharp::constants
