#pragma once

// JSON and CSV plumbing for the CLI and the harness.
//
// Complex numbers are [re, im] pairs (a bare number is accepted on input),
// the point at infinity is the string "inf".

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "gf/extremal.hpp"
#include "gf/factors.hpp"
#include "gf/geometry.hpp"
#include "gf/openup.hpp"
#include "gf/rational.hpp"

namespace gf::io {

using json = nlohmann::ordered_json;

using DomainSpec = std::variant<CurveSpec, ArcSpec>;

cplx parse_complex(const json& j);
ExtPoint parse_point(const json& j);
CurveSpec parse_curve(const json& j);
ArcSpec parse_arc(const json& j);
/// Dispatches on "type": circle, ellipse, fourier are curves; segment,
/// cheb_graph, chebyshev are arcs.
DomainSpec parse_domain(const json& j);
/// [{"at": [re, im] | "inf", "order": n}, ...]
PoleSet parse_poles(const json& j);
/// {"outer": {"basis", "center", "half", "coeffs"}, "parts": [{"pole", "coeffs"}]}
RationalFn parse_rational(const json& j);

json to_json(cplx z);
json to_json(const ExtPoint& p);
json to_json(const CurveSpec& c);
json to_json(const ArcSpec& a);
json to_json(const DomainSpec& d);
json to_json(const PoleSet& p);
json to_json(const RationalFn& r);
json to_json(const FactorReport& r);
json to_json(const OmegaValue& w);
json to_json(const ExtremalMember& m);

/// Inline JSON text, or the path of a file holding it.
json load_json_arg(const std::string& text_or_path);

/// Serializer with every float written to 17 significant digits.
std::string dump(const json& j, int indent = 2);
std::string format_double(double x);

void write_text(const std::filesystem::path& path, const std::string& text);
/// First line is "# generated <UTC timestamp>"; the rest is deterministic.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

}  // namespace gf::io
