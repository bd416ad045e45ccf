#include "sharp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "sharp/constants.hpp"
#include "sharp/extremals.hpp"
#include "sharp/kernels.hpp"
#include "sharp/quadrature.hpp"
#include "sharp/radial.hpp"
#include "sharp/sphere.hpp"
#include "sharp/varsolve.hpp"

namespace sharp::verify {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
const double kExponents[] = {1.5, 2.0, 2.5, 3.0, 4.0};

Check at_most(std::string module, std::string name, double measured, double tol) {
  return {std::move(module), std::move(name), measured <= tol, measured, tol};
}

Check at_least(std::string module, std::string name, double measured, double tol) {
  return {std::move(module), std::move(name), measured >= tol, measured, tol};
}

Check above(std::string module, std::string name, double measured, double tol) {
  return {std::move(module), std::move(name), measured > tol, measured, tol};
}

// Sample i of the admissible family; knots, radius and amplitude all vary.
radial::RadialFunction admissible_sample(std::uint64_t seed, std::size_t i) {
  const int pieces = 2 + static_cast<int>(i % 9);
  const double radius = 2.0 + static_cast<double>(i % 7) * 2.0;
  const double amplitude = 0.25 + static_cast<double>(i % 5) * 0.75;
  return radial::random_admissible(seed + i, pieces, radius, amplitude);
}

radial::RadialFunction scaled(const radial::RadialFunction& u, double factor) {
  std::vector<double> values(u.values().begin(), u.values().end());
  for (auto& v : values) v *= factor;
  return radial::RadialFunction(u.grid(), std::move(values));
}

void quadrature_checks(std::vector<Check>& out) {
  const double poly =
      quad::integrate([](double x) { return std::pow(x, 5); }, 0.0, 1.0).value;
  out.push_back(at_most("quadrature", "integrate x^5 on [0,1]",
                        std::abs(poly - 1.0 / 6.0), 1e-14));
  const double half =
      quad::integrate_halfline([](double r) { return std::exp(-r); }).value;
  out.push_back(at_most("quadrature", "half-line e^-r", std::abs(half - 1.0), 1e-10));
  const auto rule = quad::gauss_legendre(128);
  double sum = 0.0;
  double moment = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i];
    moment += rule.weights[i] * std::pow(rule.nodes[i], 10);
  }
  out.push_back(at_most("quadrature", "Gauss-Legendre 128 moments",
                        std::max(std::abs(sum - 2.0), std::abs(moment - 2.0 / 11.0)),
                        1e-13));
}

void constants_checks(std::vector<Check>& out) {
  double harmonic_err = 0.0;
  double jump = 0.0;
  double h = 0.0;
  for (int m = 2; m <= 6; ++m) {
    h += 1.0 / (m - 1);
    harmonic_err = std::max(harmonic_err, std::abs(constants::c_n(m) - h));
    for (const double eps : {-1e-6, 1e-6}) {
      jump = std::max(jump, std::abs(constants::c_n(m + eps) - constants::c_n(m)));
    }
  }
  out.push_back(at_most("constants", "c_n is the harmonic number at integers",
                        harmonic_err, 1e-12));
  out.push_back(at_most("constants", "c_n continuous at integers", jump, 1e-4));

  // c(beta0) must grow as beta0 decreases to the threshold.
  double violations = 0.0;
  for (const double n : kExponents) {
    const double threshold = constants::rough_threshold(n);
    double previous = 0.0;
    for (int i = 0; i <= 12; ++i) {
      const double beta0 = threshold * (1.0 + 0.5 * std::pow(2.0, -i));
      const double c = constants::rough_constants(n, beta0).c;
      if (i > 0 && !(c > previous)) violations += 1.0;
      previous = c;
    }
  }
  out.push_back(at_most("constants", "rough constant increases toward threshold",
                        violations, 0.0));

  double bound_err = 0.0;
  for (const double n : kExponents) {
    for (const double a : {0.25, 1.0, 3.0}) {
      const double beta = 0.7 * n * std::pow(a, 1.0 / (1.0 - n));
      const double rate = beta * std::pow(a, 1.0 / (n - 1.0)) - n;
      const double direct =
          quad::integrate_halfline([&](double r) { return std::exp(rate * r); },
                                   {1e-13, 1e-13, 2000})
              .value;
      bound_err = std::max(bound_err,
                           std::abs(constants::moser_bound(n, a, beta) - direct));
    }
  }
  out.push_back(at_most("constants", "moser_bound matches quadrature", bound_err, 1e-10));

  const double cb24 = constants::bliss_constant(2.0, 4.0).c_b;
  const double cb36 = constants::bliss_constant(3.0, 6.0).c_b;
  out.push_back(at_most("constants", "Bliss constants 3/2 and 5/4",
                        std::max(std::abs(cb24 - 1.5), std::abs(cb36 - 1.25)), 1e-12));
}

void radial_checks(const Options& opt, std::vector<Check>& out) {
  const std::size_t count = static_cast<std::size_t>(opt.samples);
  std::vector<radial::RadialFunction> samples;
  samples.reserve(count);
  for (std::size_t i = 0; i < count; ++i) samples.push_back(admissible_sample(opt.seed, i));

  double min_deficit = kInf;
  double gap_err = 0.0;
  for (const double n : kExponents) {
    const auto consistent =
        kernels::deficit_batch(samples, n, radial::Statement::Consistent);
    const auto printed = kernels::deficit_batch(samples, n, radial::Statement::AsPrinted);
    for (std::size_t i = 0; i < count; ++i) {
      min_deficit = std::min(min_deficit, consistent[i].deficit);
      // Exact algebra; subtracting two deficits costs eps |rhs|.
      const double gap = printed[i].deficit - consistent[i].deficit - std::log(n);
      gap_err = std::max(gap_err, std::abs(gap) / std::max(1.0, consistent[i].rhs));
    }
  }
  out.push_back(above("radial", "consistent deficit strictly positive", min_deficit, 0.0));
  out.push_back(at_most("radial", "as-printed minus consistent equals ln n (relative to rhs)", gap_err, 1e-12));

  double min_n1 = kInf;
  for (const auto& rep : kernels::deficit_batch(samples, 1.0, radial::Statement::N1)) {
    min_n1 = std::min(min_n1, rep.deficit);
  }
  out.push_back(at_least("radial", "n = 1 deficit nonnegative", min_n1, -1e-9));

  // Rescale each sample below the energy budget a, then compare with moser_bound.
  const auto moser_excess = kernels::parallel_map<double>(count, [&](std::size_t i) {
    const double n = kExponents[i % 5];
    const double a = 0.5 + static_cast<double>(i % 4);
    const double e = radial::energy(samples[i], n);
    const double fill = 0.2 + 0.8 * static_cast<double>(i % 10) / 9.0;
    const auto u = e > 0.0 ? scaled(samples[i], std::pow(fill * a / e, 1.0 / n))
                           : samples[i];
    const double beta = 0.9 * n * std::pow(a, 1.0 / (1.0 - n));
    return radial::moser_functional(u, n, beta) - constants::moser_bound(n, a, beta);
  });
  out.push_back(at_most("radial", "Moser functional below its bound",
                        *std::max_element(moser_excess.begin(), moser_excess.end()),
                        1e-8));

  double tail_excess = -kInf;
  for (std::size_t i = 0; i < count; ++i) {
    for (const double cut : {0.0, 1.0, 4.0, 9.0}) {
      const double measured = radial::weighted_mass_beyond(samples[i], 2.0, cut);
      const double bound = radial::tail_bound(samples[i], 2.0, 1.0, cut);
      tail_excess = std::max(tail_excess, measured - bound);
    }
  }
  out.push_back(at_most("radial", "measured tail below tail_bound", tail_excess, 1e-10));

  // Sums of decaying exponentials against both Bliss pairs.
  const std::size_t bliss_count = std::min<std::size_t>(count, 40);
  const auto bliss_excess = kernels::parallel_map<double>(bliss_count, [&](std::size_t i) {
    const double c0 = 0.2 + 0.1 * static_cast<double>(i % 7);
    const double d0 = 0.3 + 0.4 * static_cast<double>(i % 5);
    const double d1 = 2.0 + 0.5 * static_cast<double>(i % 3);
    auto f = [=](double x) { return c0 * std::exp(-d0 * x) + std::exp(-d1 * x); };
    const bool first = i % 2 == 0;
    const double k = first ? 2.0 : 3.0;
    const double l = first ? 4.0 : 6.0;
    const double ratio = radial::bliss_ratio(f, k, l, 1e4).ratio;
    return ratio / constants::bliss_constant(k, l).c_b - 1.0;
  });
  out.push_back(at_most("radial", "Bliss ratio below C_b",
                        *std::max_element(bliss_excess.begin(), bliss_excess.end()),
                        1e-6));

  double extremal_gap = 0.0;
  for (const auto& [k, l] : {std::pair{2.0, 4.0}, std::pair{3.0, 6.0}}) {
    const auto params = constants::bliss_constant(k, l);
    const auto f = extremals::bliss_extremal(1.3, 0.7, params.alpha);
    const double ratio = radial::bliss_ratio(f, k, l, 1e5).ratio;
    extremal_gap = std::max(extremal_gap, std::abs(ratio / params.c_b - 1.0));
  }
  out.push_back(at_most("radial", "Bliss extremal attains C_b", extremal_gap, 1e-6));

  auto bump = [](double x) { return x * std::exp(-x); };
  const double base = radial::bliss_ratio(bump, 2.0, 4.0, 200.0).ratio;
  const double moved =
      radial::bliss_ratio([&](double x) { return 3.0 * bump(2.0 * x); }, 2.0, 4.0, 100.0)
          .ratio;
  out.push_back(at_most("radial", "Bliss ratio scale invariant", std::abs(base - moved),
                        1e-8));
}

void extremal_checks(std::vector<Check>& out) {
  double mass_err = 0.0;
  double energy_err = 0.0;
  for (const double n : kExponents) {
    for (const double lambda0 : {0.1, 1.0, 10.0}) {
      const auto p = extremals::ExtremalParams::from_lambda(n, lambda0);
      const double mass = quad::integrate_halfline([&](double r) {
                            return std::exp(n * extremals::extremal_eval(p, r) - n * r);
                          }).value;
      mass_err = std::max(mass_err, std::abs(mass - p.a));
      const double e = quad::integrate_halfline([&](double r) {
                         return std::pow(extremals::extremal_slope(p, r), n);
                       }).value;
      energy_err = std::max(energy_err, std::abs(e - extremals::closed_energy(p)));
    }
  }
  out.push_back(at_most("extremals", "mass identity", mass_err, 1e-6));
  out.push_back(at_most("extremals", "energy identity", energy_err, 1e-8));

  double n2_err = 0.0;
  for (const double a : {1.0, 10.0, 100.0, 1e4}) {
    const auto p = extremals::ExtremalParams::from_mass(2.0, a);
    n2_err = std::max(n2_err, std::abs(extremals::extremal_deficit(p) - 0.5 / a));
  }
  out.push_back(at_most("extremals", "n = 2 deficit equals 1/(2a)", n2_err, 1e-9));

  double violations = 0.0;
  for (const double n : kExponents) {
    double previous = kInf;
    for (int i = 0; i <= 24; ++i) {
      const double a = 1.0 / n * 1.2 * std::pow(1e4 * n / 1.2, i / 24.0);
      const double d =
          extremals::extremal_deficit(extremals::ExtremalParams::from_mass(n, a));
      if (!(d > 0.0 && d < previous)) violations += 1.0;
      previous = d;
    }
    if (!(previous < 1e-2)) violations += 1.0;
  }
  out.push_back(at_most("extremals", "deficit positive, decreasing, below 1e-2",
                        violations, 0.0));
}

void varsolve_checks(std::vector<Check>& out) {
  const auto rep = varsolve::minimize(2.0, 1.0, varsolve::SolveOptions{});
  const double closed =
      extremals::closed_energy(extremals::ExtremalParams::from_mass(2.0, 1.0));
  out.push_back(at_most("varsolve", "minimizer energy within 1%",
                        std::abs(rep.xi_hat / closed - 1.0), 1e-2));

  const auto grid = radial::Grid::uniform(20.0, 2001);
  double shoot_err = 0.0;
  for (const double lambda0 : {0.5, 1.0, 2.0}) {
    const auto p = extremals::ExtremalParams::from_lambda(2.0, lambda0);
    const auto v = varsolve::shoot(2.0, lambda0, grid);
    for (std::size_t i = 0; i < v.size(); ++i) {
      shoot_err = std::max(shoot_err,
                           std::abs(v[i] - extremals::extremal_eval(p, grid[i])));
    }
  }
  out.push_back(at_most("varsolve", "shooting reproduces the extremal", shoot_err, 1e-6));

  const auto p = extremals::ExtremalParams::from_lambda(2.0, 1.0);
  const auto dense = extremals::sample_extremal(p, radial::Grid::uniform(20.0, 100001));
  out.push_back(at_most("varsolve", "Euler-Lagrange residual of the extremal",
                        varsolve::el_residual(dense, 2.0, p.tau), 1e-6));
}

void sphere_checks(const Options& opt, std::vector<Check>& out) {
  const std::size_t count = static_cast<std::size_t>(opt.samples);
  std::vector<sphere::AxiFunction> fs;
  fs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    fs.push_back(sphere::random_band_limited(opt.seed + i, 1 + static_cast<int>(i % 6),
                                             0.5 + static_cast<double>(i % 3)));
  }
  const auto deficits = kernels::onofri_batch(fs);
  out.push_back(at_least("sphere", "Onofri deficit nonnegative",
                         *std::min_element(deficits.begin(), deficits.end()), -1e-9));

  double mobius = 0.0;
  for (const double lambda : {0.25, 0.5, 2.0, 4.0}) {
    mobius = std::max(mobius, std::abs(sphere::onofri_deficit(sphere::mobius_factor(lambda))));
  }
  out.push_back(at_most("sphere", "Onofri equality on Mobius factors", mobius, 1e-6));

  double phi_res = 0.0;
  for (const double rho : {0.1, 0.5, 1.0, 3.0, 10.0}) {
    phi_res = std::max(phi_res, std::abs(sphere::phi_equation_residual(rho)));
  }
  out.push_back(at_most("sphere", "conformal factor solves its Liouville equation",
                        phi_res, 1e-6));

  double dirichlet = 0.0;
  for (const double radius : {0.5, 1.0, 10.0, 100.0}) {
    dirichlet = std::max(dirichlet, std::abs(sphere::phi_dirichlet(radius) -
                                             sphere::phi_dirichlet_quadrature(radius)));
  }
  out.push_back(at_most("sphere", "phi Dirichlet closed form", dirichlet, 1e-8));

  double transfer = 0.0;
  for (const double radius : {2.0, 5.0, 20.0}) {
    const double cap = (radius * radius - 1.0) / (radius * radius + 1.0);
    const sphere::AxiFunction u(
        [=](double t) { return t < cap ? std::pow(cap - t, 3) : 0.0; },
        [=](double t) { return t < cap ? -3.0 * std::pow(cap - t, 2) : 0.0; });
    transfer = std::max(transfer, sphere::transfer_identity_check(u, radius).mismatch);
  }
  out.push_back(at_most("sphere", "stereographic transfer identity", transfer, 1e-6));

  double forms = 0.0;
  for (std::size_t i = 0; i < 20; ++i) {
    const double radius = 0.5 + 0.25 * static_cast<double>(i % 6);
    const double boundary = -1.0 + 0.2 * static_cast<double>(i % 9);
    const double floor = kPi * radius * radius * std::exp(2.0 * boundary);
    const sphere::DiskSpec spec{radius, boundary, floor * (1.05 + 0.7 * i)};
    forms = std::max(forms, std::abs(sphere::corollary2_infimum(spec) -
                                     sphere::corollary2_via_halfline(spec)));
  }
  out.push_back(at_most("sphere", "corollary2_infimum closed form vs half-line", forms, 1e-10));

  const sphere::DiskProfile w{[](double s) { return 1.0 - s * s; },
                              [](double s) { return -2.0 * s; }};
  const double cor3 = sphere::corollary3_deficit(w, 2);
  const double expected = 1.5 - std::log((std::exp(2.0) - 1.0) / 2.0);
  out.push_back(at_most("sphere", "corollary3_deficit for 1 - s^2",
                        std::abs(cor3 - expected), 1e-8));
}

}  // namespace

std::vector<Check> run_all(const Options& options) {
  std::vector<Check> out;
  quadrature_checks(out);
  constants_checks(out);
  radial_checks(options, out);
  extremal_checks(out);
  varsolve_checks(out);
  sphere_checks(options, out);
  return out;
}

bool all_passed(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.passed; });
}

}  // namespace sharp::verify
