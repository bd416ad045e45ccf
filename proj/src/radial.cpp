#include "sharp/radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "sharp/constants.hpp"
#include "sharp/detail/exp_mean.hpp"
#include "sharp/error.hpp"

namespace sharp::radial {

Grid::Grid(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  require(nodes_.size() >= 3, ErrorKind::InvalidParam,
          "a grid needs at least three nodes");
  require(nodes_.front() == 0.0, ErrorKind::InvalidParam,
          "the first grid node must be exactly 0");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    require(std::isfinite(nodes_[i]), ErrorKind::InvalidParam,
            "grid nodes must be finite");
    if (i > 0) {
      require(nodes_[i] > nodes_[i - 1], ErrorKind::InvalidParam,
              "grid nodes must be strictly increasing");
    }
  }
}

Grid Grid::uniform(double radius, int node_count) {
  require(radius > 0.0 && node_count >= 3, ErrorKind::InvalidParam,
          "uniform grid needs radius > 0 and at least three nodes");
  std::vector<double> nodes(node_count);
  const double last = node_count - 1;
  for (int i = 0; i < node_count; ++i) nodes[i] = radius * (i / last);
  nodes.back() = radius;
  return Grid(std::move(nodes));
}

Grid Grid::graded(double radius, int node_count, double rate) {
  require(radius > 0.0 && node_count >= 3 && rate > 0.0,
          ErrorKind::InvalidParam,
          "graded grid needs radius > 0, rate > 0 and three nodes");
  std::vector<double> nodes(node_count);
  const double last = node_count - 1;
  const double span = -std::expm1(-rate * radius);
  for (int i = 0; i < node_count; ++i) {
    const double xi = i / last;
    const double in_exp = -std::log1p(-xi * span) / rate;
    nodes[i] = 0.5 * (xi * radius + in_exp);
  }
  nodes.front() = 0.0;
  nodes.back() = radius;
  return Grid(std::move(nodes));
}

RadialFunction::RadialFunction(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  require(values_.size() == grid_.size(), ErrorKind::InvalidParam,
          "value count must match the grid");
  require(values_.front() == 0.0, ErrorKind::InvalidParam,
          "radial functions must vanish at r = 0");
  for (const double v : values_) {
    require(std::isfinite(v), ErrorKind::InvalidParam,
            "radial function values must be finite");
  }
}

RadialFunction RadialFunction::sample(Grid grid,
                                      const std::function<double(double)>& f) {
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = f(grid[i]);
  return RadialFunction(std::move(grid), std::move(values));
}

RadialFunction RadialFunction::zero(Grid grid) {
  std::vector<double> values(grid.size(), 0.0);
  return RadialFunction(std::move(grid), std::move(values));
}

double RadialFunction::operator()(double r) const {
  const auto nodes = grid_.nodes();
  if (r <= 0.0) return 0.0;
  if (r >= nodes.back()) return values_.back();
  const auto it = std::upper_bound(nodes.begin(), nodes.end(), r);
  const std::size_t j = static_cast<std::size_t>(it - nodes.begin());
  const double w = (r - nodes[j - 1]) / (nodes[j] - nodes[j - 1]);
  return values_[j - 1] + w * (values_[j] - values_[j - 1]);
}

bool RadialFunction::nonnegative() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return v >= 0.0; });
}

std::string_view to_string(Statement s) {
  switch (s) {
    case Statement::AsPrinted: return "as_printed";
    case Statement::Consistent: return "consistent";
    case Statement::N1: return "n1";
  }
  return "unknown";
}

Statement statement_from_string(std::string_view name) {
  if (name == "as_printed") return Statement::AsPrinted;
  if (name == "consistent") return Statement::Consistent;
  if (name == "n1") return Statement::N1;
  fail(ErrorKind::InvalidParam, "unknown statement '" + std::string(name) + "'");
}

double energy(const RadialFunction& u, double n) {
  require(n >= 1.0 && std::isfinite(n), ErrorKind::InvalidParam,
          "energy exponent must be >= 1");
  const auto r = u.grid().nodes();
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < r.size(); ++i) {
    const double h = r[i + 1] - r[i];
    const double slope = std::abs(u[i + 1] - u[i]) / h;
    total += std::pow(slope, n) * h;
  }
  return total;
}

namespace {

double cell_mass(double n, double r0, double u0, double r1, double u1) {
  return (r1 - r0) *
         detail::exp_divided_difference(n * (u0 - r0), n * (u1 - r1));
}

}  // namespace

MassResult weighted_mass(const RadialFunction& u, double n) {
  require(n >= 1.0 && std::isfinite(n), ErrorKind::InvalidParam,
          "mass exponent must be >= 1");
  const auto r = u.grid().nodes();
  double interior = 0.0;
  for (std::size_t i = 0; i + 1 < r.size(); ++i) {
    interior += cell_mass(n, r[i], u[i], r[i + 1], u[i + 1]);
  }
  const double tail = std::exp(n * (u[u.size() - 1] - r.back())) / n;
  const double mass = interior + tail;
  require(std::isfinite(mass), ErrorKind::NonFinite, "weighted mass overflowed");
  return {mass, tail};
}

double weighted_mass_beyond(const RadialFunction& u, double n, double from) {
  require(n >= 1.0 && from >= 0.0, ErrorKind::InvalidParam,
          "need n >= 1 and a nonnegative cut radius");
  const auto r = u.grid().nodes();
  if (from >= r.back()) {
    return std::exp(n * (u[u.size() - 1] - from)) / n;
  }
  double total = std::exp(n * (u[u.size() - 1] - r.back())) / n;
  for (std::size_t i = r.size() - 1; i-- > 0;) {
    if (r[i + 1] <= from) break;
    const double left = std::max(r[i], from);
    const double u_left = left == r[i] ? u[i] : u(left);
    total += cell_mass(n, left, u_left, r[i + 1], u[i + 1]);
  }
  return total;
}

namespace {

void require_nonnegative(const RadialFunction& u) {
  if (!u.nonnegative()) {
    fail(ErrorKind::NegativeValues,
         "the inequality applies to nonnegative functions only");
  }
}

// Rounding bound on a sum of N positive closed-form cells.
double rounding_bound(const RadialFunction& u, double mass) {
  return 4.0 * std::numeric_limits<double>::epsilon() *
         static_cast<double>(u.size()) * mass;
}

}  // namespace

DeficitReport deficit(const RadialFunction& u, double n, Statement statement) {
  require(n > 1.0 && std::isfinite(n), ErrorKind::InvalidParam,
          "deficit needs n > 1; use deficit_n1 for n = 1");
  require(statement != Statement::N1, ErrorKind::InvalidParam,
          "the n = 1 statement is evaluated by deficit_n1");
  require_nonnegative(u);
  DeficitReport rep;
  rep.n = n;
  rep.statement = statement;
  rep.energy = energy(u, n);
  const MassResult m = weighted_mass(u, n);
  rep.mass = m.mass;
  rep.tail_estimate = m.tail;
  rep.quad_error = rounding_bound(u, m.mass);
  rep.lhs = statement == Statement::Consistent ? std::log(n * m.mass)
                                                : std::log(m.mass);
  rep.rhs = constants::sharp_coefficient(n) * rep.energy + constants::c_n(n);
  rep.deficit = rep.rhs - rep.lhs;
  return rep;
}

DeficitReport deficit_n1(const RadialFunction& u) {
  require_nonnegative(u);
  DeficitReport rep;
  rep.n = 1.0;
  rep.statement = Statement::N1;
  rep.energy = energy(u, 1.0);
  const MassResult m = weighted_mass(u, 1.0);
  rep.mass = m.mass;
  rep.tail_estimate = m.tail;
  rep.quad_error = rounding_bound(u, m.mass);
  rep.lhs = std::log(m.mass);
  rep.rhs = rep.energy;
  rep.deficit = rep.rhs - rep.lhs;
  return rep;
}

double moser_functional(const RadialFunction& u, double n, double beta) {
  require(n > 1.0 && std::isfinite(n) && std::isfinite(beta),
          ErrorKind::InvalidParam, "Moser functional needs n > 1, finite beta");
  require_nonnegative(u);
  const double p = n / (n - 1.0);
  const auto r = u.grid().nodes();
  const quad::QuadratureSpec cell_spec{1e-15, 1e-13, 200};
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < r.size(); ++i) {
    const double r0 = r[i];
    const double h = r[i + 1] - r0;
    const double u0 = u[i];
    const double slope = (u[i + 1] - u0) / h;
    auto integrand = [&](double x) {
      const double value = std::max(0.0, u0 + slope * (x - r0));
      return std::exp(beta * std::pow(value, p) - n * x);
    };
    total += quad::integrate(integrand, r0, r[i + 1], cell_spec).value;
  }
  const double u_last = u[u.size() - 1];
  total += std::exp(beta * std::pow(u_last, p) - n * r.back()) / n;
  require(std::isfinite(total), ErrorKind::NonFinite,
          "Moser functional overflowed");
  return total;
}

double tail_bound(const RadialFunction& u, double n, double beta0, double from) {
  require(from >= 0.0, ErrorKind::InvalidParam, "tail radius must be >= 0");
  // Validates beta0 against the threshold.
  const auto rc = constants::rough_constants(n, beta0);
  const double rate = constants::rough_rate(n, beta0);
  return std::exp(std::pow(beta0, n) * energy(u, n)) * rc.c *
         std::exp(rate * from);
}

BlissRatio bliss_ratio(const std::function<double(double)>& f, double k, double l,
                       double x_max, const quad::QuadratureSpec& spec) {
  const auto params = constants::bliss_constant(k, l);
  require(x_max > 0.0 && std::isfinite(x_max), ErrorKind::InvalidParam,
          "Bliss truncation x_max must be positive");

  // Knots spaced uniformly in log(1 + x). Both integrals are summed panel by
  // panel over them: on [0, x_max] with x_max large a single adaptive call can
  // place every node past a peak near the origin and accept zero.
  constexpr int kKnots = 512;
  std::vector<double> knots(kKnots);
  const double log_span = std::log1p(x_max);
  for (int i = 0; i < kKnots; ++i) {
    knots[i] = std::expm1(log_span * (i + 1) / kKnots);
  }
  knots.back() = x_max;
  auto panels = [&](const quad::Integrand& g) {
    double sum = 0.0;
    double from = 0.0;
    for (const double to : knots) {
      sum += quad::integrate(g, from, to, spec).value;
      from = to;
    }
    return sum;
  };

  auto fk = [&](double x) { return std::pow(f(x), k); };
  const double j = panels(fk);
  if (!(j >= 1e-300)) {
    fail(ErrorKind::DegenerateInput, "J = integral f^k vanishes");
  }

  const quad::QuadratureSpec inner{1e-16, 1e-14, 200};
  const std::vector<double> anchors = quad::cumulative(f, knots, inner);

  auto y = [&](double x) {
    const auto it = std::upper_bound(knots.begin(), knots.end(), x);
    const std::size_t idx = static_cast<std::size_t>(it - knots.begin());
    const double base_x = idx == 0 ? 0.0 : knots[idx - 1];
    const double base_y = idx == 0 ? 0.0 : anchors[idx - 1];
    if (x <= base_x) return base_y;
    return base_y + quad::integrate(f, base_x, x, inner).value;
  };
  // y^l / x^{l - alpha} = (y/x)^l x^alpha, which stays finite near 0.
  auto integrand = [&](double x) {
    return std::pow(y(x) / x, l) * std::pow(x, params.alpha);
  };
  const double i_val = panels(integrand);

  double tail = 0.0;
  try {
    tail = quad::integrate_tail(fk, x_max, {1e-14, 1e-6, 400}).value;
  } catch (const Error&) {
    tail = std::pow(f(x_max), k) * x_max;
  }
  return {i_val / std::pow(j, l / k), i_val, j, tail, tail > 1e-8 * j};
}

RadialFunction random_admissible(std::uint64_t seed, int n_pieces, double radius,
                                 double amplitude) {
  require(n_pieces >= 1, ErrorKind::InvalidParam, "need at least one piece");
  require(radius > 0.0 && std::isfinite(radius), ErrorKind::InvalidParam,
          "radius must be positive");
  require(amplitude >= 0.0 && std::isfinite(amplitude), ErrorKind::InvalidParam,
          "amplitude must be nonnegative");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<double> knots(n_pieces + 1);
  knots[0] = 0.0;
  for (int i = 1; i < n_pieces; ++i) knots[i] = radius * unit(rng);
  knots[n_pieces] = radius;
  std::sort(knots.begin() + 1, knots.end() - 1);

  std::vector<double> knot_values(n_pieces + 1, 0.0);
  for (int i = 1; i <= n_pieces; ++i) knot_values[i] = amplitude * unit(rng);

  // Each piece is split in two so even a single piece yields a valid grid,
  // and coincident random knots are dropped.
  std::vector<double> nodes{0.0};
  std::vector<double> values{0.0};
  for (int i = 1; i <= n_pieces; ++i) {
    const double a = knots[i - 1];
    const double b = knots[i];
    if (!(b > nodes.back())) continue;
    const double mid = 0.5 * (a + b);
    if (mid > nodes.back() && mid < b) {
      nodes.push_back(mid);
      values.push_back(0.5 * (knot_values[i - 1] + knot_values[i]));
    }
    nodes.push_back(b);
    values.push_back(knot_values[i]);
  }
  if (nodes.size() < 3) {
    nodes = {0.0, 0.5 * radius, radius};
    values = {0.0, 0.5 * knot_values.back(), knot_values.back()};
  }
  return RadialFunction(Grid(std::move(nodes)), std::move(values));
}

}  // namespace sharp::radial
