#include "sharp/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "sharp/constants.hpp"
#include "sharp/error.hpp"
#include "sharp/extremals.hpp"
#include "sharp/quadrature.hpp"

namespace sharp::sphere {

namespace {

constexpr double kPi = std::numbers::pi;
const quad::QuadratureSpec kTightSpec{1e-13, 1e-12, 4000};

void require_dimension(int n) {
  require(n >= 2, ErrorKind::InvalidParam, "ball dimension must be >= 2");
}

}  // namespace

DiskReduction disk_reduce(const radial::RadialFunction& u, int n) {
  require_dimension(n);
  const double omega = constants::sphere_volume(n - 1);
  return {omega * radial::energy(u, n), omega * radial::weighted_mass(u, n).mass};
}

DiskReduction disk_reduce(const DiskProfile& w, int n) {
  require_dimension(n);
  require(std::abs(w.value(1.0)) <= 1e-12, ErrorKind::InvalidParam,
          "disk profile must vanish on the boundary s = 1");
  const double omega = constants::sphere_volume(n - 1);
  const double dn = n;
  auto energy_density = [&](double s) {
    return std::pow(std::abs(w.derivative(s)), dn) * std::pow(s, dn - 1.0);
  };
  auto mass_density = [&](double s) {
    return std::exp(dn * w.value(s)) * std::pow(s, dn - 1.0);
  };
  return {omega * quad::integrate(energy_density, 0.0, 1.0, kTightSpec).value,
          omega * quad::integrate(mass_density, 0.0, 1.0, kTightSpec).value};
}

namespace {

double corollary3_from(const DiskReduction& red, int n) {
  const double omega = constants::sphere_volume(n - 1);
  const double harmonic = constants::c_n(n);
  const double lhs = std::log(n * red.mass_disk / omega);
  const double rhs =
      constants::sharp_coefficient(n) * red.energy_disk / omega + harmonic;
  return rhs - lhs;
}

}  // namespace

double corollary3_deficit(const radial::RadialFunction& u, int n) {
  require(u.nonnegative(), ErrorKind::InvalidParam,
          "local sharp inequality needs a nonnegative function");
  return corollary3_from(disk_reduce(u, n), n);
}

double corollary3_deficit(const DiskProfile& w, int n) {
  for (int i = 0; i <= 64; ++i) {
    require(w.value(i / 64.0) >= 0.0, ErrorKind::InvalidParam,
            "local sharp inequality needs a nonnegative function");
  }
  return corollary3_from(disk_reduce(w, n), n);
}

bool DiskSpec::admissible() const {
  return radius > 0.0 && std::isfinite(boundary) &&
         mass > kPi * radius * radius * std::exp(2.0 * boundary);
}

namespace {

void require_admissible(const DiskSpec& spec) {
  if (!spec.admissible()) {
    std::ostringstream os;
    os << "disk data need r > 0 and a > pi r^2 e^{2b}; got r = " << spec.radius
       << ", b = " << spec.boundary << ", a = " << spec.mass;
    fail(ErrorKind::Inadmissible, os.str());
  }
}

}  // namespace

double corollary2_infimum(const DiskSpec& spec) {
  require_admissible(spec);
  const double ratio = spec.mass * std::exp(-2.0 * spec.boundary) /
                       (kPi * spec.radius * spec.radius);
  return 4.0 * kPi * (std::log(ratio) + 1.0 / ratio - 1.0);
}

double corollary2_via_halfline(const DiskSpec& spec) {
  require_admissible(spec);
  // w(x) = f(r x) - b on B_1 keeps the Dirichlet energy and has
  // integral e^{2w} = a e^{-2b} / r^2, i.e. half-line mass alpha below.
  const double alpha = spec.mass * std::exp(-2.0 * spec.boundary) /
                       (2.0 * kPi * spec.radius * spec.radius);
  const auto p = extremals::ExtremalParams::from_mass(2.0, alpha);
  return 2.0 * kPi * extremals::closed_energy(p);
}

Point2 stereo_forward(const Point3& x) {
  const double denom = 1.0 - x[2];
  if (!(denom > 1e-15)) {
    fail(ErrorKind::PoleSingularity, "the north pole has no stereographic image");
  }
  return {x[0] / denom, x[1] / denom};
}

Point3 stereo_inverse(const Point2& y) {
  const double q = y[0] * y[0] + y[1] * y[1];
  return {2.0 * y[0] / (1.0 + q), 2.0 * y[1] / (1.0 + q), (q - 1.0) / (q + 1.0)};
}

double phi_radial(double rho) { return std::log(2.0) - std::log1p(rho * rho); }

double phi(const Point2& y) { return phi_radial(std::hypot(y[0], y[1])); }

double phi_equation_residual(double rho, double h) {
  require(rho > h && h > 0.0, ErrorKind::InvalidParam,
          "residual needs 0 < h < rho");
  const double fm = phi_radial(rho - h);
  const double f0 = phi_radial(rho);
  const double fp = phi_radial(rho + h);
  const double second = (fp - 2.0 * f0 + fm) / (h * h);
  const double first = (fp - fm) / (2.0 * h);
  return second + first / rho + std::exp(2.0 * f0);
}

double phi_dirichlet(double radius) {
  require(radius > 0.0 && std::isfinite(radius), ErrorKind::InvalidParam,
          "disk radius must be positive");
  const double q = radius * radius;
  return 4.0 * kPi * (std::log1p(q) + 1.0 / (1.0 + q) - 1.0);
}

double phi_dirichlet_quadrature(double radius) {
  require(radius > 0.0 && std::isfinite(radius), ErrorKind::InvalidParam,
          "disk radius must be positive");
  // |grad phi|^2 = 4 rho^2 / (1 + rho^2)^2, area element 2 pi rho d rho.
  auto density = [](double rho) {
    const double d = 1.0 + rho * rho;
    return 2.0 * kPi * rho * 4.0 * rho * rho / (d * d);
  };
  return quad::integrate(density, 0.0, radius, kTightSpec).value;
}

AxiFunction::AxiFunction(std::function<double(double)> value,
                         std::function<double(double)> derivative)
    : value_(std::move(value)), derivative_(std::move(derivative)) {
  require(static_cast<bool>(value_) && static_cast<bool>(derivative_),
          ErrorKind::InvalidParam, "axisymmetric function needs both callables");
}

AxiFunction AxiFunction::from_callable(std::function<double(double)> value) {
  auto derivative = [f = value](double t) {
    constexpr double h = 1e-4;
    if (t + h > 1.0) return (3.0 * f(t) - 4.0 * f(t - h) + f(t - 2.0 * h)) / (2.0 * h);
    if (t - h < -1.0) return (-3.0 * f(t) + 4.0 * f(t + h) - f(t + 2.0 * h)) / (2.0 * h);
    return (f(t + h) - f(t - h)) / (2.0 * h);
  };
  return AxiFunction(std::move(value), derivative);
}

AxiFunction AxiFunction::constant(double c) {
  return AxiFunction([c](double) { return c; }, [](double) { return 0.0; });
}

AxiFunction AxiFunction::polynomial(std::vector<double> coeffs) {
  require(!coeffs.empty(), ErrorKind::InvalidParam, "polynomial needs coefficients");
  auto shared = std::make_shared<const std::vector<double>>(std::move(coeffs));
  auto value = [shared](double t) {
    double acc = 0.0;
    for (auto it = shared->rbegin(); it != shared->rend(); ++it) acc = acc * t + *it;
    return acc;
  };
  auto derivative = [shared](double t) {
    double acc = 0.0;
    for (std::size_t k = shared->size(); k-- > 1;) acc = acc * t + k * (*shared)[k];
    return acc;
  };
  return AxiFunction(value, derivative);
}

namespace {

struct Spline {
  std::vector<double> t, u, m;  // m = second derivatives at the knots

  std::size_t segment(double x) const {
    const auto it = std::upper_bound(t.begin(), t.end(), x);
    const std::size_t j = static_cast<std::size_t>(it - t.begin());
    return std::clamp<std::size_t>(j, 1, t.size() - 1) - 1;
  }

  double value(double x) const {
    const std::size_t i = segment(x);
    const double h = t[i + 1] - t[i];
    const double a = (t[i + 1] - x) / h;
    const double b = (x - t[i]) / h;
    return a * u[i] + b * u[i + 1] +
           ((a * a * a - a) * m[i] + (b * b * b - b) * m[i + 1]) * h * h / 6.0;
  }

  double derivative(double x) const {
    const std::size_t i = segment(x);
    const double h = t[i + 1] - t[i];
    const double a = (t[i + 1] - x) / h;
    const double b = (x - t[i]) / h;
    return (u[i + 1] - u[i]) / h -
           (3.0 * a * a - 1.0) / 6.0 * h * m[i] +
           (3.0 * b * b - 1.0) / 6.0 * h * m[i + 1];
  }
};

}  // namespace

AxiFunction AxiFunction::from_table(std::vector<double> t, std::vector<double> u) {
  require(t.size() == u.size() && t.size() >= 3, ErrorKind::InvalidParam,
          "spline table needs at least three matching (t, u) rows");
  for (std::size_t i = 0; i < t.size(); ++i) {
    require(std::isfinite(t[i]) && std::isfinite(u[i]), ErrorKind::InvalidParam,
            "spline table entries must be finite");
    if (i > 0) {
      require(t[i] > t[i - 1], ErrorKind::InvalidParam,
              "spline abscissae must be strictly increasing");
    }
  }
  require(t.front() <= -1.0 + 1e-12 && t.back() >= 1.0 - 1e-12,
          ErrorKind::InvalidParam, "spline table must cover [-1, 1]");

  // Natural spline: tridiagonal system for interior second derivatives.
  const std::size_t n = t.size();
  std::vector<double> m(n, 0.0), diag(n, 0.0), rhs(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = t[i] - t[i - 1];
    const double h1 = t[i + 1] - t[i];
    diag[i] = (h0 + h1) / 3.0;
    rhs[i] = (u[i + 1] - u[i]) / h1 - (u[i] - u[i - 1]) / h0;
  }
  // Forward sweep with sub/super diagonals h/6.
  std::vector<double> c(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double lower = i > 1 ? (t[i] - t[i - 1]) / 6.0 : 0.0;
    const double denom = diag[i] - lower * c[i - 1];
    c[i] = (t[i + 1] - t[i]) / 6.0 / denom;
    rhs[i] = (rhs[i] - lower * rhs[i - 1]) / denom;
  }
  for (std::size_t i = n - 1; i-- > 1;) m[i] = rhs[i] - c[i] * m[i + 1];

  auto spline = std::make_shared<const Spline>(Spline{std::move(t), std::move(u), std::move(m)});
  return AxiFunction([spline](double x) { return spline->value(x); },
                     [spline](double x) { return spline->derivative(x); });
}

AxiFunction AxiFunction::shifted(double c) const {
  return AxiFunction([f = value_, c](double t) { return f(t) + c; }, derivative_);
}

AxiFunction mobius_factor(double lambda) {
  require(lambda > 0.0 && std::isfinite(lambda), ErrorKind::InvalidParam,
          "dilation factor must be positive");
  const double l2 = lambda * lambda;
  const double log_num = std::log(2.0 * lambda);
  return AxiFunction(
      [=](double t) { return log_num - std::log((1.0 - t) + l2 * (1.0 + t)); },
      [=](double t) { return -(l2 - 1.0) / ((1.0 - t) + l2 * (1.0 + t)); });
}

AxiFunction random_band_limited(std::uint64_t seed, int degree, double range) {
  require(degree >= 0 && range >= 0.0, ErrorKind::InvalidParam,
          "band-limited sample needs degree >= 0 and range >= 0");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-range, range);
  std::vector<double> coeffs(degree + 1);
  for (auto& c : coeffs) c = coeff(rng);
  return AxiFunction::polynomial(std::move(coeffs));
}

namespace {

OnofriReport onofri_with(const AxiFunction& u, const quad::GaussLegendreRule& rule) {
  double dirichlet = 0.0;
  double mean = 0.0;
  double max_exponent = -std::numeric_limits<double>::infinity();
  std::vector<double> exponents(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double t = rule.nodes[i];
    const double value = u(t);
    const double slope = u.derivative(t);
    require(std::isfinite(value) && std::isfinite(slope), ErrorKind::NonFinite,
            "axisymmetric function is not finite on the quadrature nodes");
    dirichlet += rule.weights[i] * (1.0 - t * t) * slope * slope;
    mean += rule.weights[i] * value;
    exponents[i] = 2.0 * value;
    max_exponent = std::max(max_exponent, exponents[i]);
  }
  double scaled = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    scaled += rule.weights[i] * std::exp(exponents[i] - max_exponent);
  }
  OnofriReport rep;
  rep.dirichlet = 2.0 * kPi * dirichlet;
  rep.mean_term = 2.0 * 2.0 * kPi * mean;
  rep.exp_integral = 2.0 * kPi * scaled * std::exp(max_exponent);
  // ln((1/4pi) 2pi S e^{max}) = ln(S/2) + max
  rep.lhs = std::log(0.5 * scaled) + max_exponent;
  rep.rhs = (rep.dirichlet + rep.mean_term) / (4.0 * kPi);
  rep.deficit = rep.rhs - rep.lhs;
  return rep;
}

}  // namespace

OnofriReport onofri_report(const AxiFunction& u) {
  static const quad::GaussLegendreRule fine = quad::gauss_legendre(192);
  static const quad::GaussLegendreRule coarse = quad::gauss_legendre(128);
  const OnofriReport rep = onofri_with(u, fine);
  const OnofriReport check = onofri_with(u, coarse);
  const double scale = 1.0 + std::abs(rep.lhs) + std::abs(rep.rhs);
  if (std::abs(rep.deficit - check.deficit) > 1e-9 * scale) {
    std::ostringstream os;
    os << "Onofri quadrature unresolved: 192 vs 128 nodes differ by "
       << std::abs(rep.deficit - check.deficit);
    fail(ErrorKind::NonConvergent, os.str());
  }
  return rep;
}

double onofri_deficit(const AxiFunction& u) { return onofri_report(u).deficit; }

TransferReport transfer_identity_check(const AxiFunction& u, double radius) {
  require(radius > 0.0 && std::isfinite(radius), ErrorKind::InvalidParam,
          "disk radius must be positive");
  const double q = radius * radius;
  const double cap = (q - 1.0) / (q + 1.0);
  for (int i = 0; i <= 64; ++i) {
    const double t = cap + (1.0 - cap) * i / 64.0;
    if (std::abs(u(t)) > 1e-12) {
      std::ostringstream os;
      os << "u(" << t << ") = " << u(t) << " but must vanish on the cap x_3 >= "
         << cap;
      fail(ErrorKind::SupportViolation, os.str());
    }
  }

  auto plane_density = [&](double rho) {
    const double d = 1.0 + rho * rho;
    const double t = (rho * rho - 1.0) / d;
    const double grad = u.derivative(t) * 4.0 * rho / (d * d) - 2.0 * rho / d;
    return 2.0 * kPi * rho * grad * grad;
  };
  const double plane = quad::integrate(plane_density, 0.0, radius, kTightSpec).value;

  auto gradient_density = [&](double t) {
    const double s = u.derivative(t);
    return 2.0 * kPi * (1.0 - t * t) * s * s;
  };
  auto mean_density = [&](double t) { return 2.0 * 2.0 * kPi * u(t); };
  const double sphere_side =
      quad::integrate(gradient_density, -1.0, cap, kTightSpec).value +
      quad::integrate(mean_density, -1.0, cap, kTightSpec).value +
      phi_dirichlet(radius);
  return {plane, sphere_side, std::abs(plane - sphere_side)};
}

}  // namespace sharp::sphere
