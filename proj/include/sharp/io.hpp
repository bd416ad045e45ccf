#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sharp/radial.hpp"
#include "sharp/sphere.hpp"
#include "sharp/varsolve.hpp"

namespace sharp::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// %.17g: enough digits for a bit-exact binary64 round trip.
std::string format_double(double x);

/// CSV with header "r,u", one node per row.
void write_radial_csv(std::ostream& os, const radial::RadialFunction& u);
radial::RadialFunction read_radial_csv(std::istream& is);

/// CSV with header "t,u" sampled at the given abscissae.
void write_axi_csv(std::ostream& os, const sphere::AxiFunction& u,
                   const std::vector<double>& nodes);
/// Reads a "t,u" table and returns the spline through it.
sphere::AxiFunction read_axi_csv(std::istream& is);

/// Generic two-column reader; the header must equal `header` exactly.
std::pair<std::vector<double>, std::vector<double>> read_two_columns(
    std::istream& is, const std::string& header);

Json to_json(const radial::DeficitReport& rep);
Json to_json(const varsolve::SolveReport& rep);
Json to_json(const sphere::OnofriReport& rep);

}  // namespace sharp::io
