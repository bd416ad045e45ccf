#include "sharp/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "sharp/error.hpp"

namespace sharp::io {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_radial_csv(std::ostream& os, const radial::RadialFunction& u) {
  os << "r,u\n";
  const auto r = u.grid().nodes();
  for (std::size_t i = 0; i < r.size(); ++i) {
    os << format_double(r[i]) << ',' << format_double(u[i]) << '\n';
  }
}

namespace {

double parse_number(const std::string& text, std::size_t line) {
  const char* begin = text.c_str();
  char* end = nullptr;
  errno = 0;
  const double value = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || errno == ERANGE) {
    std::ostringstream os;
    os << "line " << line << ": cannot parse '" << text << "' as a number";
    fail(ErrorKind::ParseError, os.str());
  }
  return value;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::pair<std::vector<double>, std::vector<double>> read_two_columns(
    std::istream& is, const std::string& header) {
  std::string line;
  if (!std::getline(is, line) || trim(line) != header) {
    fail(ErrorKind::ParseError, "expected CSV header '" + header + "'");
  }
  std::vector<double> xs, ys;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      std::ostringstream os;
      os << "line " << line_no << ": expected exactly two columns";
      fail(ErrorKind::ParseError, os.str());
    }
    xs.push_back(parse_number(trim(line.substr(0, comma)), line_no));
    ys.push_back(parse_number(trim(line.substr(comma + 1)), line_no));
  }
  return {std::move(xs), std::move(ys)};
}

radial::RadialFunction read_radial_csv(std::istream& is) {
  auto [r, u] = read_two_columns(is, "r,u");
  return radial::RadialFunction(radial::Grid(std::move(r)), std::move(u));
}

void write_axi_csv(std::ostream& os, const sphere::AxiFunction& u,
                   const std::vector<double>& nodes) {
  os << "t,u\n";
  for (const double t : nodes) {
    os << format_double(t) << ',' << format_double(u(t)) << '\n';
  }
}

sphere::AxiFunction read_axi_csv(std::istream& is) {
  auto [t, u] = read_two_columns(is, "t,u");
  return sphere::AxiFunction::from_table(std::move(t), std::move(u));
}

Json to_json(const radial::DeficitReport& rep) {
  Json j;
  j["statement"] = std::string(radial::to_string(rep.statement));
  j["n"] = rep.n;
  j["lhs"] = rep.lhs;
  j["rhs"] = rep.rhs;
  j["deficit"] = rep.deficit;
  j["energy"] = rep.energy;
  j["mass"] = rep.mass;
  j["tail_estimate"] = rep.tail_estimate;
  j["quad_error"] = rep.quad_error;
  return j;
}

Json to_json(const varsolve::SolveReport& rep) {
  Json j;
  j["n"] = rep.n;
  j["a"] = rep.a;
  j["xi_hat"] = rep.xi_hat;
  j["constraint_residual"] = rep.constraint_residual;
  j["iterations"] = rep.iterations;
  j["converged"] = rep.converged;
  j["multiplier"] = rep.multiplier;
  j["outer_iterations"] = rep.outer_iterations;
  return j;
}

Json to_json(const sphere::OnofriReport& rep) {
  Json j;
  j["dirichlet"] = rep.dirichlet;
  j["mean_term"] = rep.mean_term;
  j["exp_integral"] = rep.exp_integral;
  j["lhs"] = rep.lhs;
  j["rhs"] = rep.rhs;
  j["deficit"] = rep.deficit;
  return j;
}

}  // namespace sharp::io
