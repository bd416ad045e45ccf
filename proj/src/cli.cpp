#include "sharp/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <set>

#include "sharp/constants.hpp"
#include "sharp/error.hpp"
#include "sharp/extremals.hpp"
#include "sharp/io.hpp"
#include "sharp/kernels.hpp"
#include "sharp/quadrature.hpp"
#include "sharp/radial.hpp"
#include "sharp/sphere.hpp"
#include "sharp/varsolve.hpp"
#include "sharp/verify.hpp"

namespace sharp::cli {

namespace {

using io::Json;

const std::vector<std::string> kCommands = {
    "constants", "deficit", "extremal", "minimize", "shoot", "onofri",
    "bliss",     "moser",   "sweep",    "verify"};

// Options each command accepts besides output, format and config.
const std::map<std::string, std::set<std::string>> kAllowed = {
    {"constants", {"n", "a", "beta", "k", "l"}},
    {"deficit", {"n", "statement", "input", "seed", "pieces", "R", "amplitude"}},
    {"extremal", {"n", "a", "lambda0", "R", "nodes", "emit-profile"}},
    {"minimize", {"n", "a", "R", "nodes", "tol", "emit-profile"}},
    {"shoot", {"n", "lambda0", "R", "nodes", "tol", "emit-profile"}},
    {"onofri", {"input", "mobius", "seed", "degree", "range"}},
    {"bliss", {"k", "l", "samples", "seed", "x-max"}},
    {"moser", {"n", "a", "beta", "samples", "seed", "pieces", "R", "amplitude"}},
    {"sweep", {"n", "param", "from", "to", "points"}},
    {"verify", {"all", "samples", "seed"}},
};

struct Params {
  std::string command;
  double n = 2.0;
  double a = 1.0;
  double lambda0 = 1.0;
  double beta = 0.0;
  double k = 2.0;
  double l = 4.0;
  double radius = 0.0;
  double amplitude = 3.0;
  double tol = 0.0;
  double mobius = 1.0;
  double range = 1.0;
  double x_max = 1e4;
  double from = 0.0;
  double to = 0.0;
  std::uint64_t seed = 1;
  int pieces = 8;
  int nodes = 0;
  int degree = 4;
  int samples = 50;
  int points = 41;
  std::string statement = "consistent";
  std::string input;
  std::string output;
  std::string format = "json";
  std::string param = "a";
  bool emit_profile = false;
  bool all = false;
};

struct CheckRow {
  std::string name;
  bool passed;
  double measured;
  double tolerance;
};

// What a command produces: a JSON report and optionally a table that
// replaces it when CSV output is requested.
struct Outcome {
  Json parameters = Json::object();
  Json result = Json::object();
  std::vector<CheckRow> checks;
  std::vector<std::string> table_header;
  std::vector<std::vector<double>> table_rows;
  bool table_preferred = false;  // CSV by default (sweep, --emit-profile)
};

void add_check(Outcome& o, std::string name, bool passed, double measured, double tol) {
  o.checks.push_back({std::move(name), passed, measured, tol});
}

void profile_table(Outcome& o, const radial::RadialFunction& u) {
  o.table_header = {"r", "u"};
  for (std::size_t i = 0; i < u.size(); ++i) {
    o.table_rows.push_back({u.grid()[i], u[i]});
  }
  o.table_preferred = true;
}

radial::RadialFunction scaled(const radial::RadialFunction& u, double factor) {
  std::vector<double> values(u.values().begin(), u.values().end());
  for (auto& v : values) v *= factor;
  return radial::RadialFunction(u.grid(), std::move(values));
}

Outcome cmd_constants(const Params& p, const CLI::App& app) {
  Outcome o;
  o.parameters["n"] = p.n;
  o.result["sharp_coefficient"] = constants::sharp_coefficient(p.n);
  o.result["c_n"] = constants::c_n(p.n);
  o.result["rough_threshold"] = constants::rough_threshold(p.n);
  if (app.count("--beta") > 0) {
    o.parameters["beta"] = p.beta;
    const auto rc = constants::rough_constants(p.n, p.beta);
    o.result["rough_c"] = rc.c;
    o.result["rough_c1"] = rc.c1;
    if (app.count("--a") > 0) {
      o.parameters["a"] = p.a;
      o.result["moser_threshold"] = constants::moser_threshold(p.n, p.a);
      o.result["moser_bound"] = constants::moser_bound(p.n, p.a, p.beta);
    }
  } else if (app.count("--a") > 0) {
    o.parameters["a"] = p.a;
    o.result["moser_threshold"] = constants::moser_threshold(p.n, p.a);
  }
  if (app.count("--k") > 0 || app.count("--l") > 0) {
    o.parameters["k"] = p.k;
    o.parameters["l"] = p.l;
    const auto b = constants::bliss_constant(p.k, p.l);
    o.result["bliss_alpha"] = b.alpha;
    o.result["bliss_c_b"] = b.c_b;
  }
  return o;
}

Outcome cmd_deficit(const Params& p, const CLI::App& app) {
  Outcome o;
  const bool from_file = app.count("--input") > 0;
  auto statement = radial::statement_from_string(p.statement);
  if (p.n == 1.0 && app.count("--statement") == 0) statement = radial::Statement::N1;
  o.parameters["n"] = p.n;
  o.parameters["statement"] = std::string(radial::to_string(statement));
  std::optional<radial::RadialFunction> u;
  if (from_file) {
    std::ifstream in(p.input);
    require(in.good(), ErrorKind::InvalidParam, "cannot open input '" + p.input + "'");
    u = io::read_radial_csv(in);
    o.parameters["input"] = p.input;
  } else {
    const double radius = p.radius > 0.0 ? p.radius : 10.0;
    u = radial::random_admissible(p.seed, p.pieces, radius, p.amplitude);
    o.parameters["seed"] = p.seed;
    o.parameters["pieces"] = p.pieces;
    o.parameters["R"] = radius;
    o.parameters["amplitude"] = p.amplitude;
  }
  radial::DeficitReport rep;
  if (statement == radial::Statement::N1) {
    require(p.n == 1.0, ErrorKind::InvalidParam, "statement n1 needs --n 1");
    rep = radial::deficit_n1(*u);
    add_check(o, "deficit_nonnegative", rep.deficit >= -1e-9, rep.deficit, -1e-9);
  } else {
    rep = radial::deficit(*u, p.n, statement);
    add_check(o, "deficit_positive", rep.deficit > 0.0, rep.deficit, 0.0);
  }
  o.result = io::to_json(rep);
  return o;
}

Outcome cmd_extremal(const Params& p, const CLI::App& app) {
  Outcome o;
  const bool by_mass = app.count("--a") > 0;
  require(!(by_mass && app.count("--lambda0") > 0), ErrorKind::InvalidParam,
          "give either --a or --lambda0, not both");
  const auto ex = by_mass ? extremals::ExtremalParams::from_mass(p.n, p.a)
                          : extremals::ExtremalParams::from_lambda(p.n, p.lambda0);
  const double radius = p.radius > 0.0 ? p.radius : 20.0;
  const int nodes = p.nodes > 0 ? p.nodes : 2001;
  o.parameters["n"] = p.n;
  o.parameters[by_mass ? "a" : "lambda0"] = by_mass ? p.a : p.lambda0;
  o.parameters["R"] = radius;
  o.parameters["nodes"] = nodes;
  o.result["n"] = ex.n;
  o.result["lambda0"] = ex.lambda0;
  o.result["a"] = ex.a;
  o.result["tau"] = ex.tau;
  o.result["mass"] = extremals::mass_from_lambda(ex);
  o.result["closed_energy"] = extremals::closed_energy(ex);
  o.result["deficit"] = extremals::extremal_deficit(ex);
  const double direct = quad::integrate_halfline([&](double r) {
                          return std::exp(ex.n * (extremals::extremal_eval(ex, r) - r));
                        }).value;
  o.result["mass_quadrature"] = direct;
  add_check(o, "mass_identity", std::abs(direct - ex.a) <= 1e-6,
            std::abs(direct - ex.a), 1e-6);
  if (p.emit_profile) {
    profile_table(o, extremals::sample_extremal(ex, radial::Grid::uniform(radius, nodes)));
  }
  return o;
}

Outcome cmd_minimize(const Params& p, const CLI::App&) {
  Outcome o;
  const auto ex = extremals::ExtremalParams::from_mass(p.n, p.a);
  const double radius = p.radius > 0.0 ? p.radius : varsolve::recommended_radius(p.n, p.a, 1e-10);
  const int nodes = p.nodes > 0 ? p.nodes : 3000;
  const double tol = p.tol > 0.0 ? p.tol : 1e-2;
  varsolve::SolveOptions opts;
  opts.grid = radial::Grid::uniform(radius, nodes);
  o.parameters["n"] = p.n;
  o.parameters["a"] = p.a;
  o.parameters["R"] = radius;
  o.parameters["nodes"] = nodes;
  o.parameters["tol"] = tol;
  o.parameters["epsilon_smooth"] = opts.epsilon_smooth;
  o.parameters["constraint_tol"] = opts.constraint_tol;
  o.parameters["grad_tol"] = opts.grad_tol;
  const auto rep = varsolve::minimize(p.n, p.a, opts);
  const double closed = extremals::closed_energy(ex);
  double sup = 0.0;
  for (std::size_t i = 0; i < rep.u_star.size(); ++i) {
    sup = std::max(sup, std::abs(rep.u_star[i] -
                                 extremals::extremal_eval(ex, rep.u_star.grid()[i])));
  }
  o.result = io::to_json(rep);
  o.result["closed_energy"] = closed;
  o.result["relative_gap"] = std::abs(rep.xi_hat / closed - 1.0);
  o.result["sup_error"] = sup;
  o.result["expected_multiplier"] = (p.n - 1.0) * ex.tau;
  add_check(o, "converged", rep.converged, rep.constraint_residual, opts.constraint_tol);
  add_check(o, "energy_gap", std::abs(rep.xi_hat / closed - 1.0) <= tol,
            std::abs(rep.xi_hat / closed - 1.0), tol);
  if (p.emit_profile) profile_table(o, rep.u_star);
  return o;
}

Outcome cmd_shoot(const Params& p, const CLI::App&) {
  Outcome o;
  const double radius = p.radius > 0.0 ? p.radius : 20.0;
  const int nodes = p.nodes > 0 ? p.nodes : 2001;
  const double tol = p.tol > 0.0 ? p.tol : 1e-6;
  const varsolve::ShootOptions opts;
  o.parameters["n"] = p.n;
  o.parameters["lambda0"] = p.lambda0;
  o.parameters["R"] = radius;
  o.parameters["nodes"] = nodes;
  o.parameters["tol"] = tol;
  o.parameters["ode_rel_tol"] = opts.rel_tol;
  o.parameters["ode_abs_tol"] = opts.abs_tol;
  const auto grid = radial::Grid::uniform(radius, nodes);
  const auto ex = extremals::ExtremalParams::from_lambda(p.n, p.lambda0);
  const auto v = varsolve::shoot(p.n, p.lambda0, grid, opts);
  double sup = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    sup = std::max(sup, std::abs(v[i] - extremals::extremal_eval(ex, grid[i])));
  }
  o.result["tau"] = ex.tau;
  o.result["initial_slope"] = ex.rate() / (ex.lambda0 + 1.0);
  o.result["sup_error"] = sup;
  o.result["el_residual"] = varsolve::el_residual(v, p.n, ex.tau);
  add_check(o, "matches_closed_form", sup <= tol, sup, tol);
  if (p.emit_profile) profile_table(o, v);
  return o;
}

Outcome cmd_onofri(const Params& p, const CLI::App& app) {
  Outcome o;
  std::optional<sphere::AxiFunction> u;
  if (app.count("--input") > 0) {
    require(app.count("--mobius") == 0, ErrorKind::InvalidParam,
            "give either --input or --mobius");
    std::ifstream in(p.input);
    require(in.good(), ErrorKind::InvalidParam, "cannot open input '" + p.input + "'");
    u = io::read_axi_csv(in);
    o.parameters["input"] = p.input;
  } else if (app.count("--mobius") > 0) {
    u = sphere::mobius_factor(p.mobius);
    o.parameters["mobius"] = p.mobius;
  } else {
    u = sphere::random_band_limited(p.seed, p.degree, p.range);
    o.parameters["seed"] = p.seed;
    o.parameters["degree"] = p.degree;
    o.parameters["range"] = p.range;
  }
  const auto rep = sphere::onofri_report(*u);
  o.result = io::to_json(rep);
  add_check(o, "deficit_nonnegative", rep.deficit >= -1e-9, rep.deficit, -1e-9);
  return o;
}

Outcome cmd_bliss(const Params& p, const CLI::App&) {
  Outcome o;
  require(p.samples >= 1, ErrorKind::InvalidParam, "--samples must be >= 1");
  const auto params = constants::bliss_constant(p.k, p.l);
  o.parameters["k"] = p.k;
  o.parameters["l"] = p.l;
  o.parameters["samples"] = p.samples;
  o.parameters["seed"] = p.seed;
  o.parameters["x-max"] = p.x_max;
  // Two-term exponential sums with seeded coefficients and rates.
  const auto ratios = kernels::parallel_map<double>(
      static_cast<std::size_t>(p.samples), [&](std::size_t i) {
        std::mt19937_64 rng(p.seed + i);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const double c0 = 0.1 + 1.9 * unit(rng);
        const double d0 = 0.2 + 1.8 * unit(rng);
        const double d1 = d0 + 0.5 + 3.0 * unit(rng);
        auto f = [=](double x) { return c0 * std::exp(-d0 * x) + std::exp(-d1 * x); };
        return radial::bliss_ratio(f, p.k, p.l, p.x_max).ratio;
      });
  const double worst = *std::max_element(ratios.begin(), ratios.end());
  const auto extremal = radial::bliss_ratio(extremals::bliss_extremal(1.0, 1.0, params.alpha),
                                            p.k, p.l, std::max(p.x_max, 1e5));
  o.result["alpha"] = params.alpha;
  o.result["c_b"] = params.c_b;
  o.result["max_sample_ratio"] = worst;
  o.result["extremal_ratio"] = extremal.ratio;
  add_check(o, "samples_below_c_b", worst <= params.c_b * (1.0 + 1e-6), worst / params.c_b - 1.0,
            1e-6);
  const double gap = std::abs(extremal.ratio / params.c_b - 1.0);
  add_check(o, "extremal_attains_c_b", gap <= 1e-6, gap, 1e-6);
  return o;
}

Outcome cmd_moser(const Params& p, const CLI::App& app) {
  Outcome o;
  require(p.samples >= 1, ErrorKind::InvalidParam, "--samples must be >= 1");
  const double threshold = constants::moser_threshold(p.n, p.a);
  const double beta = app.count("--beta") > 0 ? p.beta : 0.9 * threshold;
  const double radius = p.radius > 0.0 ? p.radius : 10.0;
  const double bound = constants::moser_bound(p.n, p.a, beta);
  o.parameters["n"] = p.n;
  o.parameters["a"] = p.a;
  o.parameters["beta"] = beta;
  o.parameters["samples"] = p.samples;
  o.parameters["seed"] = p.seed;
  o.parameters["pieces"] = p.pieces;
  o.parameters["R"] = radius;
  o.parameters["amplitude"] = p.amplitude;
  // Each sample is rescaled to a seeded fraction of the energy budget.
  const auto values = kernels::parallel_map<double>(
      static_cast<std::size_t>(p.samples), [&](std::size_t i) {
        const auto u = radial::random_admissible(p.seed + i, p.pieces, radius, p.amplitude);
        std::mt19937_64 rng(p.seed + i);
        const double fill = 0.05 + 0.95 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        const double e = radial::energy(u, p.n);
        const auto w = e > 0.0 ? scaled(u, std::pow(fill * p.a / e, 1.0 / p.n)) : u;
        return radial::moser_functional(w, p.n, beta);
      });
  const double worst = *std::max_element(values.begin(), values.end());
  o.result["threshold"] = threshold;
  o.result["bound"] = bound;
  o.result["max_functional"] = worst;
  add_check(o, "functional_below_bound", worst <= bound + 1e-8, worst - bound, 1e-8);
  return o;
}

Outcome cmd_sweep(const Params& p, const CLI::App& app) {
  Outcome o;
  require(p.param == "a" || p.param == "beta", ErrorKind::InvalidParam,
          "--param must be 'a' or 'beta'");
  const bool mass = p.param == "a";
  double from = p.from;
  double to = p.to;
  if (app.count("--from") == 0) from = mass ? 0.6 : constants::rough_threshold(p.n) * 1.5;
  if (app.count("--to") == 0) {
    to = mass ? 1e4 : constants::rough_threshold(p.n) * (1.0 + 1e-4);
  }
  require(p.points >= 1, ErrorKind::InvalidParam, "empty sweep: --points must be >= 1");
  require(std::isfinite(from) && std::isfinite(to), ErrorKind::InvalidParam,
          "sweep bounds must be finite");
  if (mass) {
    require(from > 0.0 && from <= to, ErrorKind::InvalidParam,
            "empty sweep: need 0 < from <= to");
  } else {
    require(from != to || p.points == 1, ErrorKind::InvalidParam,
            "empty sweep: from equals to");
  }
  o.parameters["n"] = p.n;
  o.parameters["param"] = p.param;
  o.parameters["from"] = from;
  o.parameters["to"] = to;
  o.parameters["points"] = p.points;

  std::vector<double> xs(static_cast<std::size_t>(p.points));
  for (int i = 0; i < p.points; ++i) {
    const double w = p.points == 1 ? 0.0 : static_cast<double>(i) / (p.points - 1);
    xs[i] = mass ? from * std::pow(to / from, w) : from + (to - from) * w;
  }
  if (mass) {
    o.table_header = {"a", "lambda0", "tau", "closed_energy", "deficit"};
    o.table_rows = kernels::parallel_map<std::vector<double>>(xs.size(), [&](std::size_t i) {
      const auto ex = extremals::ExtremalParams::from_mass(p.n, xs[i]);
      return std::vector<double>{ex.a, ex.lambda0, ex.tau, extremals::closed_energy(ex),
                                 extremals::extremal_deficit(ex)};
    });
  } else {
    o.table_header = {"beta0", "c", "c1"};
    o.table_rows = kernels::parallel_map<std::vector<double>>(xs.size(), [&](std::size_t i) {
      const auto rc = constants::rough_constants(p.n, xs[i]);
      return std::vector<double>{xs[i], rc.c, rc.c1};
    });
  }
  o.table_preferred = true;
  return o;
}

Outcome cmd_verify(const Params& p, const CLI::App&) {
  Outcome o;
  require(p.samples >= 1, ErrorKind::InvalidParam, "--samples must be >= 1");
  o.parameters["samples"] = p.samples;
  o.parameters["seed"] = p.seed;
  for (const auto& c : verify::run_all({p.samples, p.seed})) {
    add_check(o, c.module + ": " + c.name, c.passed, c.measured, c.tolerance);
  }
  return o;
}

Outcome dispatch(const Params& p, const CLI::App& app) {
  const auto& c = p.command;
  if (c == "constants") return cmd_constants(p, app);
  if (c == "deficit") return cmd_deficit(p, app);
  if (c == "extremal") return cmd_extremal(p, app);
  if (c == "minimize") return cmd_minimize(p, app);
  if (c == "shoot") return cmd_shoot(p, app);
  if (c == "onofri") return cmd_onofri(p, app);
  if (c == "bliss") return cmd_bliss(p, app);
  if (c == "moser") return cmd_moser(p, app);
  if (c == "sweep") return cmd_sweep(p, app);
  return cmd_verify(p, app);
}

bool all_checks_pass(const Outcome& o) {
  return std::all_of(o.checks.begin(), o.checks.end(),
                     [](const CheckRow& c) { return c.passed; });
}

Json to_report(const Params& p, const Outcome& o) {
  Json j;
  j["schema_version"] = io::kSchemaVersion;
  j["command"] = p.command;
  j["parameters"] = o.parameters;
  if (!o.result.empty()) j["result"] = o.result;
  if (!o.table_rows.empty()) {
    Json rows = Json::array();
    for (const auto& row : o.table_rows) {
      Json r;
      for (std::size_t i = 0; i < row.size(); ++i) r[o.table_header[i]] = row[i];
      rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
  }
  Json checks = Json::array();
  for (const auto& c : o.checks) {
    checks.push_back(
        {{"name", c.name}, {"passed", c.passed}, {"measured", c.measured}, {"tolerance", c.tolerance}});
  }
  j["checks"] = std::move(checks);
  j["passed"] = all_checks_pass(o);
  return j;
}

void write_csv(std::ostream& os, const Outcome& o) {
  if (!o.table_header.empty()) {
    for (std::size_t i = 0; i < o.table_header.size(); ++i) {
      os << (i ? "," : "") << o.table_header[i];
    }
    os << '\n';
    for (const auto& row : o.table_rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        os << (i ? "," : "") << io::format_double(row[i]);
      }
      os << '\n';
    }
    return;
  }
  // No table: one header row and one value row of the scalar results.
  std::vector<std::pair<std::string, std::string>> cells;
  for (const auto& [key, value] : o.result.items()) {
    if (value.is_number_float()) {
      cells.emplace_back(key, io::format_double(value.get<double>()));
    } else if (value.is_primitive()) {
      cells.emplace_back(key, value.is_string() ? value.get<std::string>() : value.dump());
    }
  }
  for (const auto& c : o.checks) cells.emplace_back(c.name, c.passed ? "true" : "false");
  for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i].first;
  os << '\n';
  for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i].second;
  os << '\n';
}

void write_error(std::ostream& err, const std::string& kind, const std::string& message) {
  Json j;
  j["schema_version"] = io::kSchemaVersion;
  j["error"] = {{"kind", kind}, {"message", message}};
  err << j.dump(2) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Params p;
  CLI::App app{"Numerical checks for a sharp exponential-weight Hardy-type inequality", "sharpcheck"};
  app.add_option("command", p.command, "Command to run")
      ->required()
      ->check(CLI::IsMember(kCommands));
  app.add_option("--n", p.n, "Exponent n");
  app.add_option("--a", p.a, "Weighted mass or energy budget");
  app.add_option("--lambda0", p.lambda0, "Extremal parameter");
  app.add_option("--beta", p.beta, "Exponent beta (beta0 for rough constants)");
  app.add_option("--k", p.k, "Bliss exponent k");
  app.add_option("--l", p.l, "Bliss exponent l");
  app.add_option("--seed", p.seed, "Random seed");
  app.add_option("--pieces", p.pieces, "Pieces of a generated radial function");
  app.add_option("--nodes", p.nodes, "Grid size");
  app.add_option("--R", p.radius, "Truncation radius");
  app.add_option("--amplitude", p.amplitude, "Amplitude of generated functions");
  app.add_option("--tol", p.tol, "Check tolerance");
  app.add_option("--statement", p.statement, "consistent | as_printed | n1");
  app.add_option("--input", p.input, "CSV input (r,u or t,u)");
  app.add_option("--mobius", p.mobius, "Mobius dilation factor");
  app.add_option("--degree", p.degree, "Degree of a generated sphere function");
  app.add_option("--range", p.range, "Coefficient range of a generated sphere function");
  app.add_option("--samples", p.samples, "Random samples per property");
  app.add_option("--x-max", p.x_max, "Bliss truncation point");
  app.add_option("--param", p.param, "Sweep parameter: a | beta");
  app.add_option("--from", p.from, "Sweep start");
  app.add_option("--to", p.to, "Sweep end");
  app.add_option("--points", p.points, "Sweep points");
  app.add_flag("--emit-profile", p.emit_profile, "Emit the radial profile as CSV");
  app.add_flag("--all", p.all, "Run every property suite");
  app.add_option("--output", p.output, "Output path (default stdout)");
  app.add_option("--format", p.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.set_config("--config", "", "key=value file; flags given on the command line win");
  app.allow_config_extras(CLI::config_extras_mode::error);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    write_error(err, "ParseError", e.what());
    return kExitInvalidInput;
  }

  try {
    const auto& allowed = kAllowed.at(p.command);
    for (const CLI::Option* opt : app.get_options()) {
      const std::string name = opt->get_single_name();
      if (opt->count() == 0 || name == "command" || name == "output" ||
          name == "format" || name == "config" || name == "help") {
        continue;
      }
      require(allowed.count(name) > 0, ErrorKind::InvalidParam,
              "option --" + name + " does not apply to '" + p.command + "'");
    }
    const Outcome outcome = dispatch(p, app);
    const bool csv = app.count("--format") > 0 ? p.format == "csv" : outcome.table_preferred;

    std::ofstream file;
    if (!p.output.empty()) {
      file.open(p.output);
      require(file.good(), ErrorKind::InvalidParam, "cannot write '" + p.output + "'");
    }
    std::ostream& sink = p.output.empty() ? out : file;
    if (csv) {
      write_csv(sink, outcome);
    } else {
      sink << to_report(p, outcome).dump(2) << '\n';
    }
    return all_checks_pass(outcome) ? kExitOk : kExitCheckFailed;
  } catch (const Error& e) {
    write_error(err, std::string(to_string(e.kind())), e.what());
  } catch (const std::exception& e) {
    write_error(err, "InternalError", e.what());
  }
  return kExitInvalidInput;
}

}  // namespace sharp::cli
