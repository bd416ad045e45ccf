#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "sharp/error.hpp"
#include "sharp/extremals.hpp"
#include "sharp/radial.hpp"

using namespace sharp;
using radial::Grid;
using radial::RadialFunction;
using radial::Statement;

namespace {

RadialFunction ramp(double top, double radius = 30.0, int nodes = 3001) {
  return RadialFunction::sample(Grid::uniform(radius, nodes),
                                [=](double r) { return std::min(r, top); });
}

}  // namespace

TEST_CASE("grids") {
  CHECK(Grid::uniform(10.0, 11)[3] == doctest::Approx(3.0));
  const auto g = Grid::graded(20.0, 200, 2.0);
  CHECK(g[0] == 0.0);
  CHECK(g.radius() == 20.0);
  CHECK_THROWS_AS(Grid({0.0, 1.0}), Error);
  CHECK_THROWS_AS(Grid({0.1, 1.0, 2.0}), Error);
  CHECK_THROWS_AS(Grid({0.0, 2.0, 1.0}), Error);
  CHECK_THROWS_AS(RadialFunction(Grid::uniform(1.0, 3), {0.5, 1.0, 1.0}), Error);
}

TEST_CASE("interpolation and constant extension") {
  const auto u = ramp(1.0, 4.0, 5);
  CHECK(u(0.5) == doctest::Approx(0.5));
  CHECK(u(100.0) == 1.0);
  CHECK(u.nonnegative());
}

TEST_CASE("energy") {
  CHECK(radial::energy(ramp(1.0), 2.0) == doctest::Approx(1.0));
  CHECK(radial::energy(ramp(2.0), 3.0) == doctest::Approx(2.0));
  CHECK(radial::energy(RadialFunction::zero(Grid::uniform(5.0, 10)), 2.0) == 0.0);
  const auto p = extremals::ExtremalParams::from_lambda(2.0, 1.0);
  const auto v = extremals::sample_extremal(p, Grid::uniform(30.0, 30001));
  CHECK(radial::energy(v, 2.0) == doctest::Approx(2.0 * std::log(2.0) - 1.0).epsilon(1e-6));
}

TEST_CASE("weighted mass") {
  const auto zero = RadialFunction::zero(Grid::uniform(40.0, 100));
  CHECK(radial::weighted_mass(zero, 2.0).mass == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(radial::weighted_mass(zero, 3.0).mass == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  // Closed per-cell values: the interpolant is integrated exactly, so a
  // coarse grid still gives the mass of the piecewise-linear function.
  const auto u = ramp(1.0, 1.0, 3);
  const auto m = radial::weighted_mass(u, 2.0);
  CHECK(m.mass == doctest::Approx(1.0 + 0.5).epsilon(1e-14));
  CHECK(m.tail == doctest::Approx(0.5).epsilon(1e-14));

  const auto p = extremals::ExtremalParams::from_lambda(2.0, 1.0);
  const auto v = extremals::sample_extremal(p, Grid::uniform(30.0, 30001));
  CHECK(radial::weighted_mass(v, 2.0).mass == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("weighted mass against Simpson on the interpolant") {
  const auto u = radial::random_admissible(5, 6, 8.0, 2.0);
  const double n = 2.5;
  auto density = [&](double r) { return std::exp(n * (u(r) - r)); };
  // Simpson panel by panel so kinks sit on panel edges.
  double expected = std::exp(n * (u[u.size() - 1] - 8.0)) / n;
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    expected += oracle::simpson(density, u.grid()[i], u.grid()[i + 1], 400);
  }
  CHECK(radial::weighted_mass(u, n).mass == doctest::Approx(expected).epsilon(1e-11));
  CHECK(radial::weighted_mass_beyond(u, n, 0.0) ==
        doctest::Approx(radial::weighted_mass(u, n).mass).epsilon(1e-14));
}

TEST_CASE("deficit statements") {
  const auto zero = RadialFunction::zero(Grid::uniform(40.0, 100));
  const auto rep = radial::deficit(zero, 2.0, Statement::Consistent);
  CHECK(std::abs(rep.lhs) < 1e-14);
  CHECK(rep.rhs == doctest::Approx(1.0));
  CHECK(rep.deficit == doctest::Approx(1.0));
  const auto printed = radial::deficit(zero, 2.0, Statement::AsPrinted);
  CHECK(printed.deficit - rep.deficit == doctest::Approx(std::log(2.0)).epsilon(1e-14));

  const auto p = extremals::ExtremalParams::from_lambda(2.0, 1.0);
  const auto v = extremals::sample_extremal(p, Grid::uniform(40.0, 40001));
  CHECK(radial::deficit(v, 2.0, Statement::Consistent).deficit ==
        doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("deficit rejects negative values and n <= 1") {
  const RadialFunction neg(Grid::uniform(2.0, 3), {0.0, -0.5, 0.0});
  try {
    radial::deficit(neg, 2.0, Statement::Consistent);
    FAIL("expected NegativeValues");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NegativeValues);
  }
  CHECK_THROWS_AS(radial::deficit(ramp(1.0), 1.0, Statement::Consistent), Error);
  CHECK_THROWS_AS(radial::deficit(ramp(1.0), 2.0, Statement::N1), Error);
}

TEST_CASE("n = 1 statement") {
  const auto zero = RadialFunction::zero(Grid::uniform(40.0, 100));
  CHECK(std::abs(radial::deficit_n1(zero).deficit) < 1e-12);
  const auto rep = radial::deficit_n1(ramp(1.0, 1.0, 3));
  CHECK(rep.mass == doctest::Approx(2.0));
  CHECK(rep.lhs == doctest::Approx(std::log(2.0)));
  CHECK(rep.rhs == doctest::Approx(1.0));
  const auto half = RadialFunction::sample(Grid::uniform(5.0, 501),
                                           [](double r) { return 0.5 * std::min(r, 1.0); });
  CHECK(radial::deficit_n1(half).deficit >= 0.0);
}

TEST_CASE("statement names round trip") {
  for (const auto s : {Statement::AsPrinted, Statement::Consistent, Statement::N1}) {
    CHECK(radial::statement_from_string(radial::to_string(s)) == s);
  }
  CHECK_THROWS_AS(radial::statement_from_string("printed"), Error);
}

TEST_CASE("Moser functional") {
  const auto zero = RadialFunction::zero(Grid::uniform(30.0, 50));
  CHECK(radial::moser_functional(zero, 2.0, 1.0) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(radial::moser_functional(zero, 3.0, 0.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
  const auto u = ramp(1.0, 1.0, 101);
  const double value = radial::moser_functional(u, 2.0, 1.0);
  // u = r on [0,1]: integral_0^1 e^{r^2 - 2r} + e^{1} e^{-2} / 2.
  const double expected =
      oracle::simpson([](double r) { return std::exp(r * r - 2.0 * r); }, 0.0, 1.0, 2000) +
      std::exp(-1.0) / 2.0;
  CHECK(value == doctest::Approx(expected).epsilon(1e-10));
  CHECK(value <= 1.0);
}

TEST_CASE("tail bound") {
  const auto zero = RadialFunction::zero(Grid::uniform(30.0, 50));
  CHECK(radial::tail_bound(zero, 2.0, 1.0, 0.0) == doctest::Approx(1.0));
  CHECK(radial::tail_bound(zero, 2.0, 1.0, std::log(4.0)) == doctest::Approx(0.25));
  double previous = std::numeric_limits<double>::infinity();
  for (double cut = 0.0; cut < 20.0; cut += 2.5) {
    const double b = radial::tail_bound(ramp(1.0), 2.0, 1.0, cut);
    CHECK(b < previous);
    previous = b;
  }
  CHECK_THROWS_AS(radial::tail_bound(zero, 2.0, 0.5, 0.0), Error);
}

TEST_CASE("Bliss ratio") {
  const auto extremal = radial::bliss_ratio(
      [](double x) { return 1.0 / ((1.0 + x) * (1.0 + x)); }, 2.0, 4.0, 1e5);
  CHECK(extremal.ratio == doctest::Approx(1.5).epsilon(1e-8));
  CHECK(extremal.j_integral == doctest::Approx(1.0 / 3.0).epsilon(1e-8));
  const auto e = radial::bliss_ratio([](double x) { return std::exp(-x); }, 2.0, 4.0, 200.0);
  CHECK(e.ratio < 1.5);
  const auto scaled = radial::bliss_ratio([](double x) { return 7.0 * std::exp(-x); }, 2.0,
                                          4.0, 200.0);
  CHECK(scaled.ratio == doctest::Approx(e.ratio).epsilon(1e-12));
  try {
    radial::bliss_ratio([](double) { return 0.0; }, 2.0, 4.0, 10.0);
    FAIL("expected DegenerateInput");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::DegenerateInput);
  }
  CHECK(radial::bliss_ratio([](double x) { return std::exp(-0.01 * x); }, 2.0, 4.0, 10.0)
            .tail_warning);
}

TEST_CASE("random admissible functions") {
  const auto a = radial::random_admissible(1, 8, 10.0, 3.0);
  const auto b = radial::random_admissible(1, 8, 10.0, 3.0);
  REQUIRE(a.size() == b.size());
  CHECK(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
  CHECK(a[0] == 0.0);
  CHECK(a.nonnegative());
  CHECK(a.grid().radius() == 10.0);
  const auto flat = radial::random_admissible(3, 5, 4.0, 0.0);
  CHECK(std::all_of(flat.values().begin(), flat.values().end(),
                    [](double v) { return v == 0.0; }));
  const auto c = radial::random_admissible(2, 8, 10.0, 3.0);
  CHECK_FALSE(std::equal(a.values().begin(), a.values().end(), c.values().begin(),
                         c.values().end()));
  CHECK(radial::deficit(a, 2.0, Statement::Consistent).deficit > 0.0);
  CHECK_THROWS_AS(radial::random_admissible(1, 0, 10.0, 1.0), Error);
}
