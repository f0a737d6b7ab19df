#pragma once

// Smooth Jordan curves and arcs with exact first and second derivatives.
//
// Curves are parametrized on [0, 2pi) and always stored counterclockwise,
// so the bounded component G- lies to the left. Arcs are parametrized on
// [-1, 1] with A = gamma(-1) and B = gamma(1); every arc is held as a complex
// Chebyshev series, which keeps gamma' and gamma'' exact.

#include <functional>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "gf/types.hpp"

namespace gf {

struct Circle {
  cplx center{};
  double radius = 1.0;
};

struct Ellipse {
  cplx center{};
  double semi_x = 1.0;
  double semi_y = 1.0;
};

/// gamma(t) = sum_k coeffs[k - kmin] e^{ikt}.
struct FourierCurve {
  int kmin = 0;
  std::vector<cplx> coeffs;
  /// Declares the orientation of the given coefficients; a clockwise
  /// series is reparametrized by t -> -t.
  bool counterclockwise = true;
};

using CurveSpec = std::variant<Circle, Ellipse, FourierCurve>;

struct Segment {
  cplx a{};
  cplx b{};
};

/// Graph over the chord AB: gamma(t) = A + (B-A)/2 (t+1) + i (B-A)/2 (f(t) - l(t)),
/// where f = sum offset_k T_k and l is the linear interpolant of f(-1), f(1),
/// so the endpoints are exactly A and B.
struct ChebGraph {
  cplx a{};
  cplx b{};
  std::vector<double> offset;
};

/// gamma(t) = sum coeffs_k T_k(t).
struct ChebyshevArc {
  std::vector<cplx> coeffs;
};

using ArcSpec = std::variant<Segment, ChebGraph, ChebyshevArc>;

struct BoundaryFrame {
  cplx point;
  cplx tangent;   // unit
  cplx n_minus;   // i * tangent; into G- for curves, left normal for arcs
  cplx n_plus;    // -n_minus
};

enum class Location { Interior, Exterior, OnBoundary };

struct NearestPoint {
  double t;
  cplx point;
  double distance;
};

struct GeometryOptions {
  std::size_t samples = 4096;
  double simple_rel_tol = 1e-9;    // minimum sample separation, relative to diam
  double tangent_rel_tol = 1e-10;  // minimum |gamma'|, relative to diam
};

class Curve {
 public:
  static Curve make(const CurveSpec& spec, const GeometryOptions& opts = {});

  cplx point(double t) const;
  cplx d1(double t) const;
  cplx d2(double t) const;
  double speed(double t) const { return std::abs(d1(t)); }
  BoundaryFrame frame(double t) const;

  /// Winding-number classification; points within `tol` of the curve are
  /// OnBoundary. A negative tol means 1e-9 * diam.
  Location side_of(cplx z, double tol = -1.0) const;
  NearestPoint nearest(cplx z) const;
  double distance(cplx z) const { return nearest(z).distance; }

  double diameter() const { return diam_; }
  double signed_area() const;
  double length(std::size_t nodes = 1024) const;
  /// Some interior point far from the boundary (centroid when it qualifies).
  cplx interior_point() const { return interior_; }

  const CurveSpec& spec() const { return spec_; }
  std::optional<Circle> as_circle() const;
  const std::vector<cplx>& samples() const { return samples_->pts; }

 private:
  struct Samples {
    std::vector<cplx> pts;
  };
  CurveSpec spec_;
  std::shared_ptr<const Samples> samples_;
  double diam_ = 0.0;
  cplx interior_{};
  double winding(cplx z) const;
};

enum class Endpoint { A, B };

class Arc {
 public:
  static Arc make(const ArcSpec& spec, const GeometryOptions& opts = {});
  /// Arc from an arbitrary smooth map of [-1, 1], via an adaptive Chebyshev fit.
  static Arc fit(const std::function<cplx(double)>& f, const GeometryOptions& opts = {});

  cplx point(double t) const;
  cplx d1(double t) const;
  cplx d2(double t) const;
  /// Throws EndpointFrame at t = +-1.
  BoundaryFrame frame(double t) const;

  cplx endpoint(Endpoint e) const { return e == Endpoint::A ? a_ : b_; }
  cplx a() const { return a_; }
  cplx b() const { return b_; }

  NearestPoint nearest(cplx z) const;
  double distance(cplx z) const { return nearest(z).distance; }
  double diameter() const { return diam_; }

  bool is_segment() const { return std::holds_alternative<Segment>(spec_); }
  const ArcSpec& spec() const { return spec_; }
  const std::vector<cplx>& coefficients() const { return c_; }
  const std::vector<cplx>& samples() const { return samples_->pts; }

 private:
  struct Samples {
    std::vector<cplx> pts;
  };
  ArcSpec spec_;
  std::vector<cplx> c_, c1_, c2_;
  cplx a_{}, b_{};
  std::shared_ptr<const Samples> samples_;
  double diam_ = 0.0;
};

/// Complex Chebyshev coefficients representing the arc spec exactly.
std::vector<cplx> chebyshev_coefficients(const ArcSpec& spec);

namespace detail {
/// True when the closed (or open) polyline has two non-adjacent segments
/// that intersect or come closer than `min_sep`.
bool polyline_self_intersects(const std::vector<cplx>& pts, bool closed, double min_sep);
}  // namespace detail

}  // namespace gf
