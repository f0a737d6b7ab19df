#pragma once

// Verification rows and batch experiments.

#include <string>
#include <variant>

#include "gf/factors.hpp"
#include "gf/io.hpp"
#include "gf/openup.hpp"
#include "gf/rational.hpp"

namespace gf {

/// A curve, or an arc carried by its open-up.
using Domain = std::variant<Curve, OpenUp>;

Domain make_domain(const io::DomainSpec& spec, const GreenOptions& green = {});
Boundary boundary_of(const Domain& d);

/// Where a row is evaluated: a parameter, a plane point (snapped to the
/// boundary), or an arc endpoint tag.
struct Target {
  enum class Kind { Param, Point, A, B, Global };
  Kind kind = Kind::Param;
  double t = 0.0;
  cplx z{};
};

/// "A", "B", "global", a number, "x,y" or "[x, y]".
Target parse_target(const std::string& s);
Target parse_target(const io::json& j);
inline Target parse_target(const char* s) { return parse_target(std::string(s)); }
std::string to_string(const Target& t);

struct VerifyOptions {
  FactorOptions factor;
  std::size_t samples = 4096;
  double tolerance = 5e-2;  // violation when ratio > 1 + tolerance
};

struct VerifyRow {
  int degree = 0;
  std::string at;
  cplx z0{};
  double t = 0.0;
  int k = 1;
  double deriv = 0.0;  // |R^(k)(z0)|, or the max over the arc for Global
  double norm = 0.0;
  double factor = 0.0;
  double ratio = 0.0;
  bool violation = false;
};

/// |R^(k)(z0)| / (||R|| factor): Bernstein factor^k on curves and inside arcs,
/// the Markov factor at endpoints.
VerifyRow verify_inequality(const RationalFn& r, const Domain& domain, const Target& at, int k,
                            const VerifyOptions& opts = {});

io::json to_json(const VerifyRow& row);

struct Report {
  io::json config_echo;
  io::json rows = io::json::array();
  io::json summary;
  io::json versions;
  bool violation = false;

  io::json to_json() const;
};

/// Kinds: factor, omega, verify, random_rational, blaschke, markov,
/// lemniscate, mobius. Deterministic given the seed; rows run on a thread pool.
Report run_experiment(const io::json& config);

/// JSON report plus the CSV next to it (same stem, .csv).
void write_report(const Report& report, const std::filesystem::path& json_path);

io::json versions();

}  // namespace gf
