#pragma once

// Joukowski open-up of an arc.
//
// After the affine normalization L(z) = (2z - (A+B))/(B - A) the arc runs
// from -1 to 1, and its preimage under F(u) = (u + 1/u)/2 is a Jordan curve
//   Gamma(theta) = zeta(cos theta) + i sin theta sqrt(q(cos theta)),
//   q(s) = (zeta(s)^2 - 1)/(s^2 - 1),
// through u = -1 (over A) and u = 1 (over B). Green's densities on the arc
// are curve densities divided by |F'(u)|.

#include <memory>
#include <string>

#include "gf/geometry.hpp"
#include "gf/greens.hpp"
#include "gf/types.hpp"

namespace gf {

/// Which complementary domain of the preimage curve carries the computation.
enum class Route { Interior, Exterior };

struct OpenUpOptions {
  std::size_t fourier_samples = 1024;
  GreenOptions green;
  NormalMethod method = NormalMethod::Layer;
};

class OpenUp {
 public:
  static OpenUp make(const Arc& arc, const OpenUpOptions& opts = {});

  const Arc& arc() const;
  const OpenUpOptions& options() const;

  cplx normalize(cplx z) const;
  /// |L'| = 2/|B - A|.
  double affine_derivative() const;

  /// The preimage is exactly the unit circle (segment arcs).
  bool is_circle() const;
  const Curve& preimage() const;
  /// Gamma(theta) from the Chebyshev representation rather than the Fourier fit.
  cplx preimage_point(double theta) const;
  /// max |F(Gamma(theta)) - L(gamma(cos theta))| over a sample.
  double residual() const;

  /// Joukowski preimages of L(a) in G- and G+ (0 and infinity for a = infinity).
  ExtPoint inside_preimage(const ExtPoint& a) const;
  ExtPoint outside_preimage(const ExtPoint& a) const;

  /// True when the interior of Gamma near Gamma(theta), theta in (0, pi), lands
  /// on the n_- side of the arc.
  bool upper_interior_is_minus() const;
  /// Preimage parameter for arc parameter t on the given side and route.
  double theta_for(double t, Side side, Route route) const;

  /// Green density on Gamma at Gamma(theta) for pole beta, into the route's domain.
  double curve_density(double theta, const ExtPoint& beta, Route route) const;

  struct State;

 private:
  std::shared_ptr<const State> s_;
};

/// d g_{C \ arc}(gamma(t), a) / d n_side for t in (-1, 1).
double arc_normal_density(const OpenUp& ou, double t, const ExtPoint& a, Side side,
                          Route route = Route::Interior);

struct OmegaValue {
  Endpoint endpoint;
  ExtPoint pole;
  double value = 0.0;
  std::string method;  // "openup-exact" or "extrapolation"
  double cross_check = 0.0;  // the other method's value, when computed
};

/// Omega_a at an endpoint via the open-up formula; with `cross_check` the
/// sqrt-distance extrapolation is also run and must agree to 1e-4.
OmegaValue omega(const OpenUp& ou, Endpoint e, const ExtPoint& a, bool cross_check = false,
                 Route route = Route::Interior);

/// lim sqrt|z - E| dg/dn_side by polynomial extrapolation in r = sqrt|z - E|.
double omega_limit(const OpenUp& ou, Endpoint e, const ExtPoint& a, Side side);

/// Gamma* = {z : z^2 in Gamma} for an arc with A = 0, parametrized so that
/// Gamma*(tau)^2 = gamma(2 tau^2 - 1); Gamma*(0) = 0.
Arc symmetrize(const Arc& arc, const GeometryOptions& opts = {});

}  // namespace gf
