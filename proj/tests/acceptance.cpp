// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sharp/constants.hpp"
#include "sharp/extremals.hpp"
#include "sharp/kernels.hpp"
#include "sharp/quadrature.hpp"
#include "sharp/radial.hpp"
#include "sharp/sphere.hpp"
#include "sharp/varsolve.hpp"

using namespace sharp;
using extremals::ExtremalParams;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kExponents[] = {1.5, 2.0, 2.5, 3.0, 4.0};

struct Verdict {
  bool passed = true;
  std::string detail;

  // Records `value <= limit` (or >= when `at_least`), keeping the first miss.
  void bound(const char* what, double value, double limit, bool at_least = false) {
    const bool ok = at_least ? value >= limit : value <= limit;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s%s=%.3g (%s %.3g)", detail.empty() ? "" : "; ", what, value,
                  at_least ? ">=" : "<=", limit);
    detail += buf;
    passed = passed && ok;
  }
  void flag(const char* what, bool ok) {
    detail += (detail.empty() ? "" : "; ") + std::string(what) + (ok ? " ok" : " FAILED");
    passed = passed && ok;
  }
};

radial::RadialFunction admissible(std::uint64_t seed, std::size_t i) {
  return radial::random_admissible(seed + i, 2 + static_cast<int>(i % 9),
                                   2.0 + static_cast<double>(i % 5) * 2.0,
                                   0.25 + static_cast<double>(i % 4) * 0.9);
}

std::vector<radial::RadialFunction> admissible_set(std::uint64_t seed, std::size_t count) {
  std::vector<radial::RadialFunction> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(admissible(seed, i));
  return out;
}

radial::RadialFunction scaled(const radial::RadialFunction& u, double factor) {
  std::vector<double> values(u.values().begin(), u.values().end());
  for (auto& v : values) v *= factor;
  return radial::RadialFunction(u.grid(), std::move(values));
}

double sup_distance(const radial::RadialFunction& u, const ExtremalParams& p) {
  double worst = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    worst = std::max(worst, std::abs(u[i] - extremals::extremal_eval(p, u.grid()[i])));
  }
  return worst;
}

Verdict constants_exact() {
  Verdict v;
  double harmonic = 0.0;
  for (int m = 2; m <= 6; ++m) {
    harmonic = std::max(harmonic, std::abs(constants::c_n(m) - oracle::harmonic(m - 1)));
  }
  v.bound("|c_n(m)-H_{m-1}|", harmonic, 1e-12);
  v.bound("|c_n(2.5)-hand|", std::abs(constants::c_n(2.5) - (2.0 - 2.0 * std::log(2.0) + 2.0 / 3.0)),
          1e-8);
  const double coeff = std::max(std::abs(constants::sharp_coefficient(2.0) - 0.5),
                                std::abs(constants::sharp_coefficient(3.0) - 4.0 / 9.0));
  v.bound("coefficient spots", coeff, 1e-15);
  return v;
}

Verdict extremal_triangle() {
  Verdict v;
  double mass_err = 0.0;
  double energy_err = 0.0;
  for (const double n : kExponents) {
    for (const double lambda0 : {0.1, 1.0, 10.0}) {
      const auto p = ExtremalParams::from_lambda(n, lambda0);
      const double mass = quad::integrate_halfline([&](double r) {
                            return std::exp(n * (extremals::extremal_eval(p, r) - r));
                          }).value;
      mass_err = std::max(mass_err, std::abs(mass - (lambda0 + 1.0) / (n * lambda0)));
      const double energy = quad::integrate_halfline([&](double r) {
                              return std::pow(extremals::extremal_slope(p, r), n);
                            }, {1e-13, 1e-12, 4000}).value;
      energy_err = std::max(energy_err, std::abs(energy - extremals::closed_energy(p)));
    }
  }
  v.bound("mass identity", mass_err, 1e-6);
  v.bound("energy identity", energy_err, 1e-8);
  return v;
}

Verdict sharpness() {
  Verdict v;
  double n2 = 0.0;
  for (const double a : {1.0, 10.0, 100.0, 1e4}) {
    n2 = std::max(n2, std::abs(extremals::extremal_deficit(ExtremalParams::from_mass(2.0, a)) -
                               0.5 / a));
  }
  v.bound("|deficit(2,a)-1/(2a)|", n2, 1e-9);
  bool monotone = true;
  double last = 0.0;
  for (const double n : kExponents) {
    std::vector<double> masses;
    for (int i = 0; i <= 40; ++i) masses.push_back(1.05 / n * std::pow(1e4 * n / 1.05, i / 40.0));
    const auto d = kernels::extremal_deficit_sweep(n, masses);
    for (std::size_t i = 0; i < d.size(); ++i) {
      monotone = monotone && d[i] > 0.0 && (i == 0 || d[i] < d[i - 1]);
    }
    last = std::max(last, d.back());
  }
  v.flag("positive and strictly decreasing", monotone);
  v.bound("max deficit at a=1e4", last, 1e-2);
  return v;
}

Verdict printed_gap() {
  Verdict v;
  const auto us = admissible_set(4000, 100);
  double worst = 0.0;
  for (const double n : kExponents) {
    const auto c = kernels::deficit_batch(us, n, radial::Statement::Consistent);
    const auto p = kernels::deficit_batch(us, n, radial::Statement::AsPrinted);
    for (std::size_t i = 0; i < us.size(); ++i) {
      // The two deficits differ by exactly ln n; subtracting them costs eps |rhs|.
      worst = std::max(worst, std::abs(p[i].deficit - c[i].deficit - std::log(n)) /
                                  std::max(1.0, c[i].rhs));
    }
  }
  v.bound("|gap - ln n| / max(1, rhs)", worst, 1e-12);
  return v;
}

Verdict random_validity() {
  Verdict v;
  const auto us = admissible_set(1, 1000);
  double min_deficit = kInf;
  for (const double n : kExponents) {
    for (const auto& rep : kernels::deficit_batch(us, n, radial::Statement::Consistent)) {
      min_deficit = std::min(min_deficit, rep.deficit);
    }
  }
  v.flag("consistent deficit > 0", min_deficit > 0.0);
  v.bound("min consistent deficit", min_deficit, 0.0, true);
  double min_n1 = kInf;
  for (const auto& rep : kernels::deficit_batch(us, 1.0, radial::Statement::N1)) {
    min_n1 = std::min(min_n1, rep.deficit);
  }
  v.bound("min n=1 deficit", min_n1, -1e-9, true);
  return v;
}

Verdict reconstruction() {
  Verdict v;
  varsolve::SolveOptions opts;
  opts.grid = radial::Grid::uniform(15.0, 3000);
  double gap = 0.0;
  double sup = 0.0;
  double warm_gap = 0.0;
  std::optional<radial::RadialFunction> previous;
  for (const double a : {1.0, 2.0, 5.0}) {
    const auto p = ExtremalParams::from_mass(2.0, a);
    const auto cold = varsolve::minimize(2.0, a, opts);
    gap = std::max(gap, std::abs(cold.xi_hat / extremals::closed_energy(p) - 1.0));
    sup = std::max(sup, sup_distance(cold.u_star, p));
    if (previous) {
      const auto warm = varsolve::minimize(2.0, a, opts, previous);
      warm_gap = std::max(warm_gap, std::abs(warm.xi_hat / cold.xi_hat - 1.0));
    }
    previous = cold.u_star;
  }
  v.bound("n=2 energy gap", gap, 1e-2);
  v.bound("n=2 sup error", sup, 5e-3);
  const auto three = varsolve::minimize(3.0, 1.0, opts);
  v.bound("n=3 energy gap",
          std::abs(three.xi_hat / extremals::closed_energy(ExtremalParams::from_mass(3.0, 1.0)) - 1.0),
          1e-2);
  v.bound("warm vs cold", warm_gap, 1e-3);
  return v;
}

Verdict shooting() {
  Verdict v;
  const auto grid = radial::Grid::uniform(20.0, 2001);
  double worst = 0.0;
  for (const double n : {2.0, 3.0}) {
    for (const double lambda0 : {0.5, 1.0, 2.0}) {
      worst = std::max(worst, sup_distance(varsolve::shoot(n, lambda0, grid),
                                           ExtremalParams::from_lambda(n, lambda0)));
    }
  }
  v.bound("shoot sup error", worst, 1e-6);
  const auto p = ExtremalParams::from_lambda(2.0, 1.0);
  const auto dense = extremals::sample_extremal(p, radial::Grid::uniform(20.0, 100001));
  v.bound("el_residual", varsolve::el_residual(dense, 2.0, p.tau), 1e-6);
  return v;
}

Verdict moser_layer() {
  Verdict v;
  const std::size_t count = 200;
  const auto us = admissible_set(7000, count);
  const auto excess = kernels::parallel_map<double>(count, [&](std::size_t i) {
    const double n = kExponents[i % 5];
    const double a = 0.25 + 0.5 * static_cast<double>(i % 7);
    const double e = radial::energy(us[i], n);
    const double fill = 0.05 + 0.95 * static_cast<double>((i * 37) % 100) / 99.0;
    const auto u = e > 0.0 ? scaled(us[i], std::pow(fill * a / e, 1.0 / n)) : us[i];
    const double beta = (0.5 + 0.245 * static_cast<double>(i % 3)) * constants::moser_threshold(n, a);
    return radial::moser_functional(u, n, beta) - constants::moser_bound(n, a, beta);
  });
  v.bound("max moser - bound", *std::max_element(excess.begin(), excess.end()), 1e-8);

  bool diverges = true;
  for (const double n : kExponents) {
    const double threshold = constants::rough_threshold(n);
    double previous = 0.0;
    for (int i = 0; i <= 30; ++i) {
      const double c = constants::rough_constants(n, threshold * (1.0 + std::pow(2.0, -i))).c;
      diverges = diverges && c > previous;
      previous = c;
    }
    diverges = diverges && previous > 1e6;
  }
  v.flag("rough constant diverges monotonically", diverges);

  double tail = -kInf;
  for (const auto& u : us) {
    for (const double cut : {0.0, 0.5, 2.0, 5.0, 9.0, 12.0}) {
      tail = std::max(tail, radial::weighted_mass_beyond(u, 2.0, cut) -
                                radial::tail_bound(u, 2.0, 1.0, cut));
    }
  }
  v.bound("max tail - bound", tail, 1e-10);
  return v;
}

Verdict bliss() {
  Verdict v;
  double worst = -kInf;
  for (const auto& [k, l] : {std::pair{2.0, 4.0}, std::pair{3.0, 6.0}}) {
    const double cb = constants::bliss_constant(k, l).c_b;
    const auto ratios = kernels::parallel_map<double>(200, [&](std::size_t i) {
      std::mt19937_64 rng(900 + i);
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      const double c0 = 0.1 + 1.9 * unit(rng);
      const double d0 = 0.2 + 1.8 * unit(rng);
      const double d1 = d0 + 0.5 + 3.0 * unit(rng);
      const double shape = unit(rng);
      // Exponential sums and algebraic tails (1 + x)^-p with p > 1/k + 1.
      std::function<double(double)> f;
      if (i % 2 == 0) {
        f = [=](double x) { return c0 * std::exp(-d0 * x) + std::exp(-d1 * x); };
      } else {
        const double p = 1.5 + 3.0 * shape;
        f = [=](double x) { return c0 * std::pow(1.0 + d0 * x, -p); };
      }
      return radial::bliss_ratio(f, k, l, 1e5).ratio / cb - 1.0;
    });
    worst = std::max(worst, *std::max_element(ratios.begin(), ratios.end()));
  }
  v.bound("max ratio/C_b - 1", worst, 1e-6);
  double attain = 0.0;
  for (const auto& [k, l] : {std::pair{2.0, 4.0}, std::pair{3.0, 6.0}}) {
    const auto params = constants::bliss_constant(k, l);
    const auto f = extremals::bliss_extremal(1.0, 1.0, params.alpha);
    attain = std::max(attain, std::abs(radial::bliss_ratio(f, k, l, 1e6).ratio / params.c_b - 1.0));
  }
  v.bound("extremal gap", attain, 1e-6);
  v.bound("|C_b(2,4) - 3/2|", std::abs(constants::bliss_constant(2.0, 4.0).c_b - 1.5), 1e-12);
  return v;
}

Verdict geometry() {
  Verdict v;
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double forms = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double radius = 0.2 + 2.8 * unit(rng);
    const double boundary = -2.0 + 4.0 * unit(rng);
    const double floor = oracle::kPi * radius * radius * std::exp(2.0 * boundary);
    const sphere::DiskSpec spec{radius, boundary, floor * (1.001 + 30.0 * unit(rng))};
    forms = std::max(forms, std::abs(sphere::corollary2_infimum(spec) -
                                     sphere::corollary2_via_halfline(spec)));
  }
  v.bound("corollary 2 forms", forms, 1e-10);
  const double unit_disk = sphere::corollary2_infimum({1.0, 0.0, 2.0 * oracle::kPi});
  v.bound("|cor2(0,1,2pi) - 4pi(ln2-1/2)|", std::abs(unit_disk - oracle::kCorollary2Unit), 1e-12);
  v.bound("|cor2(0,1,2pi) - 2.42705|", std::abs(unit_disk - 2.42705), 2e-4);

  double dirichlet = 0.0;
  for (const double radius : {0.5, 1.0, 10.0, 100.0}) {
    dirichlet = std::max(dirichlet, std::abs(sphere::phi_dirichlet(radius) -
                                             sphere::phi_dirichlet_quadrature(radius)));
  }
  v.bound("phi Dirichlet", dirichlet, 1e-8);

  double transfer = 0.0;
  for (const double radius : {2.0, 4.0, 8.0, 16.0, 32.0}) {
    const double cap = (radius * radius - 1.0) / (radius * radius + 1.0);
    const sphere::AxiFunction u(
        [=](double t) { return t < cap ? std::sin(3.0 * t) * std::pow(cap - t, 3) : 0.0; },
        [=](double t) {
          return t < cap ? 3.0 * std::cos(3.0 * t) * std::pow(cap - t, 3) -
                               3.0 * std::sin(3.0 * t) * std::pow(cap - t, 2)
                         : 0.0;
        });
    transfer = std::max(transfer, sphere::transfer_identity_check(u, radius).mismatch);
  }
  v.bound("transfer mismatch", transfer, 1e-6);

  std::vector<sphere::AxiFunction> fs;
  for (int i = 0; i < 500; ++i) {
    fs.push_back(sphere::random_band_limited(5000 + i, 1 + i % 8, 0.25 + 0.25 * (i % 6)));
  }
  const auto deficits = kernels::onofri_batch(fs);
  v.bound("min Onofri deficit", *std::min_element(deficits.begin(), deficits.end()), -1e-9, true);
  double mobius = 0.0;
  for (const double lambda : {0.1, 0.25, 0.5, 0.8, 1.25, 2.0, 4.0, 10.0}) {
    mobius = std::max(mobius, std::abs(sphere::onofri_deficit(sphere::mobius_factor(lambda))));
  }
  v.bound("Mobius |deficit|", mobius, 1e-6);
  const double linear = sphere::onofri_deficit(sphere::AxiFunction::polynomial({0.0, 1.0}));
  v.bound("|Onofri(x3) - closed form|", std::abs(linear - oracle::kOnofriLinear), 1e-6);
  const sphere::DiskProfile w{[](double s) { return 1.0 - s * s; },
                              [](double s) { return -2.0 * s; }};
  v.bound("|cor3(1-s^2) - closed form|",
          std::abs(sphere::corollary3_deficit(w, 2) - oracle::kCorollary3Parabola), 1e-5);
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"constants", constants_exact},
      {"extremal triangle", extremal_triangle},
      {"sharpness of the consistent statement", sharpness},
      {"printed vs consistent gap", printed_gap},
      {"random-function validity", random_validity},
      {"variational reconstruction", reconstruction},
      {"ODE shooting", shooting},
      {"Moser and tail layer", moser_layer},
      {"Bliss", bliss},
      {"geometry", geometry},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.passed = false;
      v.detail = std::string("threw: ") + e.what();
    }
    std::printf("criterion %2zu %s: %s | %s\n", i + 1, v.passed ? "PASS" : "FAIL",
                criteria[i].first, v.detail.c_str());
    std::fflush(stdout);
    if (!v.passed) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
