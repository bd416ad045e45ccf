#include "sharp/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <sstream>

#include "sharp/error.hpp"

namespace sharp::quad {

namespace {

// QUADPACK qk21 abscissae; odd indices are the 10-point Gauss nodes.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

struct ByError {
  bool operator()(const Panel& x, const Panel& y) const {
    return x.error < y.error;
  }
};

double checked(const Integrand& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    std::ostringstream os;
    os << "integrand returned " << y << " at x = " << x;
    fail(ErrorKind::NonFinite, os.str());
  }
  return y;
}

Panel gk21(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = checked(f, center);
  double kronrod = fc * kWgk[10];
  double gauss = 0.0;
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const double sum = checked(f, center - dx) + checked(f, center + dx);
    kronrod += kWgk[j] * sum;
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

void QuadratureSpec::validate() const {
  require(abs_tol >= 0.0 && rel_tol >= 0.0, ErrorKind::InvalidParam,
          "quadrature tolerances must be nonnegative");
  require(abs_tol > 0.0 || rel_tol > 0.0, ErrorKind::InvalidParam,
          "at least one quadrature tolerance must be positive");
  require(max_subdivisions >= 1, ErrorKind::InvalidParam,
          "max_subdivisions must be at least 1");
}

IntegralResult integrate(const Integrand& f, double a, double b,
                         const QuadratureSpec& spec) {
  spec.validate();
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
    std::ostringstream os;
    os << "invalid integration domain [" << a << ", " << b << "]";
    fail(ErrorKind::InvalidDomain, os.str());
  }

  std::priority_queue<Panel, std::vector<Panel>, ByError> panels;
  Panel first = gk21(f, a, b);
  double value = first.value;
  double error = first.error;
  panels.push(first);
  int subdivisions = 0;

  auto tolerance = [&] {
    return std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
  };

  while (error > tolerance()) {
    if (subdivisions >= spec.max_subdivisions) {
      std::ostringstream os;
      os << "error estimate " << error << " above tolerance " << tolerance()
         << " after " << subdivisions << " subdivisions";
      fail(ErrorKind::NonConvergent, os.str());
    }
    const Panel worst = panels.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) {
      fail(ErrorKind::NonConvergent,
           "panel width reached machine resolution before convergence");
    }
    panels.pop();
    const Panel left = gk21(f, worst.a, mid);
    const Panel right = gk21(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    ++subdivisions;
  }

  // Re-sum from the partition so the running update does not accumulate drift.
  double total = 0.0;
  double total_error = 0.0;
  while (!panels.empty()) {
    total += panels.top().value;
    total_error += panels.top().error;
    panels.pop();
  }
  return {total, total_error, subdivisions};
}

IntegralResult integrate_halfline(const Integrand& g,
                                  const QuadratureSpec& spec) {
  return integrate_tail(g, 0.0, spec);
}

IntegralResult integrate_tail(const Integrand& g, double start,
                              const QuadratureSpec& spec) {
  require(std::isfinite(start), ErrorKind::InvalidDomain,
          "tail integral needs a finite start");
  auto transformed = [&g, start](double s) {
    return g(start - std::log(s)) / s;
  };
  return integrate(transformed, 0.0, 1.0, spec);
}

std::vector<double> cumulative(const Integrand& f, std::span<const double> xs,
                               const QuadratureSpec& spec) {
  require(!xs.empty(), ErrorKind::InvalidDomain, "cumulative needs abscissae");
  require(xs[0] >= 0.0, ErrorKind::InvalidDomain,
          "cumulative abscissae must start at a nonnegative value");
  std::vector<double> out;
  out.reserve(xs.size());
  double previous = 0.0;
  double running = 0.0;
  for (const double x : xs) {
    require(std::isfinite(x), ErrorKind::InvalidDomain,
            "cumulative abscissae must be finite");
    if (!out.empty()) {
      require(x > previous, ErrorKind::InvalidDomain,
              "cumulative abscissae must be strictly increasing");
    }
    if (x > previous) running += integrate(f, previous, x, spec).value;
    out.push_back(running);
    previous = x;
  }
  return out;
}

GaussLegendreRule gauss_legendre(int n) {
  require(n >= 1, ErrorKind::InvalidParam, "Gauss-Legendre order must be >= 1");
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      dp = n * (z * p1 - p2) / (z * z - 1.0);
      const double step = p1 / dp;
      z -= step;
      if (std::abs(step) < 1e-16) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.weights[n - 1 - i] = rule.weights[i];
  }
  return rule;
}

}  // namespace sharp::quad
