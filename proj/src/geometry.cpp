#include "gf/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gf/numeric.hpp"

namespace gf {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// sum_j c_j (i k_j)^m e^{i k_j t}, k_j = kmin + j, by Horner in e^{it}
cplx fourier_sum(const FourierCurve& f, double t, int m) {
  const cplx e = std::polar(1.0, t);
  cplx acc{};
  for (std::size_t j = f.coeffs.size(); j-- > 0;) {
    const double k = f.kmin + static_cast<double>(j);
    cplx c = f.coeffs[j];
    if (m == 1) c *= cplx(0.0, k);
    if (m == 2) c *= -k * k;
    acc = acc * e + c;
  }
  return acc * std::polar(1.0, f.kmin * t);
}

double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

double point_segment_distance(cplx p, cplx a, cplx b) {
  const cplx ab = b - a;
  const double len2 = std::norm(ab);
  double s = len2 > 0.0 ? std::real(std::conj(p - a) * ab) / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return std::abs(p - (a + s * ab));
}

double segment_distance(cplx a, cplx b, cplx c, cplx d) {
  const double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return 0.0;
  return std::min({point_segment_distance(a, c, d), point_segment_distance(b, c, d),
                   point_segment_distance(c, a, b), point_segment_distance(d, a, b)});
}

double sample_diameter(const std::vector<cplx>& pts) {
  const std::size_t stride = std::max<std::size_t>(1, pts.size() / 512);
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); i += stride)
    for (std::size_t j = i + stride; j < pts.size(); j += stride) d = std::max(d, std::abs(pts[i] - pts[j]));
  return d;
}

// Newton refinement of the nearest parameter; `lo`/`hi` bound the search.
NearestPoint refine_nearest(cplx z, double t, double lo, double hi,
                            const std::function<cplx(double)>& p,
                            const std::function<cplx(double)>& p1,
                            const std::function<cplx(double)>& p2) {
  for (int it = 0; it < 30; ++it) {
    const cplx r = p(t) - z;
    const cplx g1 = p1(t);
    const double f = std::real(std::conj(r) * g1);
    const double fp = std::norm(g1) + std::real(std::conj(r) * p2(t));
    if (fp <= 0.0) break;
    const double tn = std::clamp(t - f / fp, lo, hi);
    const bool done = std::abs(tn - t) < 1e-15 * (1.0 + std::abs(t));
    t = tn;
    if (done) break;
  }
  const cplx q = p(t);
  return {t, q, std::abs(q - z)};
}

}  // namespace

namespace detail {

bool polyline_self_intersects(const std::vector<cplx>& pts, bool closed, double min_sep) {
  const std::size_t n = pts.size();
  const std::size_t nseg = closed ? n : n - 1;
  struct Seg {
    double xmin, xmax;
    std::size_t i;
  };
  std::vector<Seg> segs(nseg);
  for (std::size_t i = 0; i < nseg; ++i) {
    const cplx a = pts[i], b = pts[(i + 1) % n];
    segs[i] = {std::min(a.real(), b.real()) - min_sep, std::max(a.real(), b.real()) + min_sep, i};
  }
  std::sort(segs.begin(), segs.end(), [](const Seg& x, const Seg& y) { return x.xmin < y.xmin; });
  for (std::size_t p = 0; p < nseg; ++p) {
    for (std::size_t q = p + 1; q < nseg && segs[q].xmin <= segs[p].xmax; ++q) {
      const std::size_t i = segs[p].i, j = segs[q].i;
      const std::size_t gap = i > j ? i - j : j - i;
      if (gap <= 1 || (closed && gap == nseg - 1)) continue;
      const double d = segment_distance(pts[i], pts[(i + 1) % n], pts[j], pts[(j + 1) % n]);
      if (d <= min_sep) return true;
    }
  }
  return false;
}

}  // namespace detail

// ---- Curve -----------------------------------------------------------------

Curve Curve::make(const CurveSpec& input, const GeometryOptions& opts) {
  Curve c;
  c.spec_ = input;
  if (auto* f = std::get_if<FourierCurve>(&c.spec_)) {
    if (f->coeffs.empty()) throw Error(ErrorCode::ConfigInvalid, "fourier curve without coefficients");
    if (!f->counterclockwise) {
      std::reverse(f->coeffs.begin(), f->coeffs.end());
      f->kmin = -(f->kmin + static_cast<int>(f->coeffs.size()) - 1);
      f->counterclockwise = true;
    }
  }
  if (auto* ci = std::get_if<Circle>(&c.spec_); ci && !(ci->radius > 0.0))
    throw Error(ErrorCode::ConfigInvalid, "circle radius must be positive");
  if (auto* e = std::get_if<Ellipse>(&c.spec_); e && !(e->semi_x > 0.0 && e->semi_y > 0.0))
    throw Error(ErrorCode::ConfigInvalid, "ellipse semi-axes must be positive");

  const std::size_t n = std::max<std::size_t>(opts.samples, 64);
  auto s = std::make_shared<Samples>();
  s->pts.resize(n);
  for (std::size_t j = 0; j < n; ++j) s->pts[j] = c.point(two_pi * static_cast<double>(j) / n);
  c.samples_ = s;
  c.diam_ = sample_diameter(s->pts);
  if (!(c.diam_ > 0.0)) throw Error(ErrorCode::DegenerateTangent, "curve collapses to a point");

  for (std::size_t j = 0; j < n; ++j) {
    if (c.speed(two_pi * static_cast<double>(j) / n) < opts.tangent_rel_tol * c.diam_)
      throw Error(ErrorCode::DegenerateTangent, "|gamma'| vanishes on the sample grid");
  }
  if (detail::polyline_self_intersects(s->pts, true, opts.simple_rel_tol * c.diam_))
    throw Error(ErrorCode::NonSimple, "self-intersection detected");
  if (!(c.signed_area() > 0.0))
    throw Error(ErrorCode::NotCounterclockwise, "curve is not counterclockwise oriented");

  // polygon centroid as the default interior point
  cplx cen{};
  double area2 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const cplx a = s->pts[j], b = s->pts[(j + 1) % n];
    const double w = cross(a, b);
    area2 += w;
    cen += (a + b) * w;
  }
  cen /= 3.0 * area2;
  c.interior_ = cen;
  if (c.side_of(cen) != Location::Interior || c.distance(cen) < 0.05 * c.diam_) {
    double best = -1.0;
    double xmin = s->pts[0].real(), xmax = xmin, ymin = s->pts[0].imag(), ymax = ymin;
    for (const auto& p : s->pts) {
      xmin = std::min(xmin, p.real());
      xmax = std::max(xmax, p.real());
      ymin = std::min(ymin, p.imag());
      ymax = std::max(ymax, p.imag());
    }
    constexpr int g = 48;
    for (int i = 1; i < g; ++i)
      for (int j = 1; j < g; ++j) {
        const cplx z(xmin + (xmax - xmin) * i / g, ymin + (ymax - ymin) * j / g);
        if (c.winding(z) < 0.5) continue;
        const double d = c.distance(z);
        if (d > best) {
          best = d;
          c.interior_ = z;
        }
      }
  }
  return c;
}

cplx Curve::point(double t) const {
  return std::visit(overloaded{
                        [t](const Circle& c) { return c.center + std::polar(c.radius, t); },
                        [t](const Ellipse& e) {
                          return e.center + cplx(e.semi_x * std::cos(t), e.semi_y * std::sin(t));
                        },
                        [t](const FourierCurve& f) { return fourier_sum(f, t, 0); },
                    },
                    spec_);
}

cplx Curve::d1(double t) const {
  return std::visit(overloaded{
                        [t](const Circle& c) { return cplx(0.0, 1.0) * std::polar(c.radius, t); },
                        [t](const Ellipse& e) {
                          return cplx(-e.semi_x * std::sin(t), e.semi_y * std::cos(t));
                        },
                        [t](const FourierCurve& f) { return fourier_sum(f, t, 1); },
                    },
                    spec_);
}

cplx Curve::d2(double t) const {
  return std::visit(overloaded{
                        [t](const Circle& c) { return -std::polar(c.radius, t); },
                        [t](const Ellipse& e) {
                          return cplx(-e.semi_x * std::cos(t), -e.semi_y * std::sin(t));
                        },
                        [t](const FourierCurve& f) { return fourier_sum(f, t, 2); },
                    },
                    spec_);
}

BoundaryFrame Curve::frame(double t) const {
  const cplx d = d1(t);
  const cplx tan = d / std::abs(d);
  const cplx nm = cplx(0.0, 1.0) * tan;
  return {point(t), tan, nm, -nm};
}

double Curve::winding(cplx z) const {
  const auto& p = samples_->pts;
  double total = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j)
    total += std::arg((p[(j + 1) % p.size()] - z) / (p[j] - z));
  return total / two_pi;
}

NearestPoint Curve::nearest(cplx z) const {
  const auto& p = samples_->pts;
  std::size_t best = 0;
  double bd = std::abs(p[0] - z);
  for (std::size_t j = 1; j < p.size(); ++j) {
    const double d = std::abs(p[j] - z);
    if (d < bd) {
      bd = d;
      best = j;
    }
  }
  const double h = two_pi / static_cast<double>(p.size());
  const double t0 = h * static_cast<double>(best);
  auto r = refine_nearest(
      z, t0, t0 - h, t0 + h, [this](double t) { return point(t); }, [this](double t) { return d1(t); },
      [this](double t) { return d2(t); });
  if (r.distance > bd) r = {t0, p[best], bd};
  r.t = std::fmod(r.t + two_pi, two_pi);
  return r;
}

Location Curve::side_of(cplx z, double tol) const {
  if (tol < 0.0) tol = 1e-9 * diam_;
  const auto np = nearest(z);
  if (np.distance <= tol) return Location::OnBoundary;
  if (np.distance < 0.05 * diam_) {
    const auto fr = frame(np.t);
    return std::real(std::conj(fr.n_minus) * (z - np.point)) > 0.0 ? Location::Interior
                                                                     : Location::Exterior;
  }
  return winding(z) > 0.5 ? Location::Interior : Location::Exterior;
}

double Curve::signed_area() const {
  // (1/2) \oint Im(conj(gamma) gamma') dt, trapezoid (spectral for periodic data)
  constexpr std::size_t n = 1024;
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double t = two_pi * static_cast<double>(j) / n;
    s += std::imag(std::conj(point(t)) * d1(t));
  }
  return 0.5 * s * two_pi / n;
}

double Curve::length(std::size_t nodes) const {
  double s = 0.0;
  for (std::size_t j = 0; j < nodes; ++j) s += speed(two_pi * static_cast<double>(j) / nodes);
  return s * two_pi / static_cast<double>(nodes);
}

std::optional<Circle> Curve::as_circle() const {
  if (auto* c = std::get_if<Circle>(&spec_)) return *c;
  if (auto* e = std::get_if<Ellipse>(&spec_); e && e->semi_x == e->semi_y)
    return Circle{e->center, e->semi_x};
  return std::nullopt;
}

// ---- Arc -------------------------------------------------------------------

std::vector<cplx> chebyshev_coefficients(const ArcSpec& spec) {
  return std::visit(
      overloaded{
          [](const Segment& s) { return std::vector<cplx>{0.5 * (s.a + s.b), 0.5 * (s.b - s.a)}; },
          [](const ChebGraph& g) {
            const cplx h = 0.5 * (g.b - g.a);
            const cplx ih = cplx(0.0, 1.0) * h;
            double fp = 0.0, fm = 0.0;
            for (std::size_t k = 0; k < g.offset.size(); ++k) {
              fp += g.offset[k];
              fm += (k % 2 ? -1.0 : 1.0) * g.offset[k];
            }
            const double l0 = 0.5 * (fp + fm), l1 = 0.5 * (fp - fm);
            std::vector<cplx> c(std::max<std::size_t>(2, g.offset.size()), cplx{});
            for (std::size_t k = 0; k < g.offset.size(); ++k) c[k] = ih * g.offset[k];
            c[0] += g.a + h - ih * l0;
            c[1] += h - ih * l1;
            return c;
          },
          [](const ChebyshevArc& a) { return a.coeffs; },
      },
      spec);
}

Arc Arc::make(const ArcSpec& spec, const GeometryOptions& opts) {
  Arc arc;
  arc.spec_ = spec;
  arc.c_ = chebyshev_coefficients(spec);
  if (arc.c_.size() < 2) throw Error(ErrorCode::ConfigInvalid, "arc needs at least a linear term");
  arc.c1_ = num::cheb_derivative(arc.c_);
  arc.c2_ = num::cheb_derivative(arc.c1_);
  if (auto* s = std::get_if<Segment>(&spec)) {
    arc.a_ = s->a;
    arc.b_ = s->b;
  } else if (auto* g = std::get_if<ChebGraph>(&spec)) {
    arc.a_ = g->a;
    arc.b_ = g->b;
  } else {
    arc.a_ = num::cheb_eval(arc.c_, cplx(-1.0));
    arc.b_ = num::cheb_eval(arc.c_, cplx(1.0));
  }
  if (arc.a_ == arc.b_) throw Error(ErrorCode::ConfigInvalid, "arc endpoints coincide");

  const std::size_t n = std::max<std::size_t>(opts.samples, 64);
  auto s = std::make_shared<Samples>();
  s->pts.resize(n + 1);
  for (std::size_t j = 0; j <= n; ++j) s->pts[j] = arc.point(-1.0 + 2.0 * static_cast<double>(j) / n);
  arc.samples_ = s;
  arc.diam_ = sample_diameter(s->pts);
  for (std::size_t j = 0; j <= n; ++j) {
    if (std::abs(arc.d1(-1.0 + 2.0 * static_cast<double>(j) / n)) < opts.tangent_rel_tol * arc.diam_)
      throw Error(ErrorCode::DegenerateTangent, "|gamma'| vanishes on the sample grid");
  }
  if (detail::polyline_self_intersects(s->pts, false, opts.simple_rel_tol * arc.diam_))
    throw Error(ErrorCode::NonSimple, "arc self-intersects");
  return arc;
}

Arc Arc::fit(const std::function<cplx(double)>& f, const GeometryOptions& opts) {
  return make(ChebyshevArc{num::cheb_fit(f, 1e-15)}, opts);
}

cplx Arc::point(double t) const { return num::cheb_eval(c_, cplx(t)); }
cplx Arc::d1(double t) const { return num::cheb_eval(c1_, cplx(t)); }
cplx Arc::d2(double t) const { return num::cheb_eval(c2_, cplx(t)); }

BoundaryFrame Arc::frame(double t) const {
  if (!(t > -1.0 && t < 1.0)) {
    if (t == -1.0 || t == 1.0) throw Error(ErrorCode::EndpointFrame, "normals are undefined at arc endpoints");
    throw Error(ErrorCode::ConfigInvalid, "arc parameter outside [-1, 1]");
  }
  const cplx d = d1(t);
  const cplx tan = d / std::abs(d);
  const cplx nm = cplx(0.0, 1.0) * tan;
  return {point(t), tan, nm, -nm};
}

NearestPoint Arc::nearest(cplx z) const {
  const auto& p = samples_->pts;
  std::size_t best = 0;
  double bd = std::abs(p[0] - z);
  for (std::size_t j = 1; j < p.size(); ++j) {
    const double d = std::abs(p[j] - z);
    if (d < bd) {
      bd = d;
      best = j;
    }
  }
  const double h = 2.0 / static_cast<double>(p.size() - 1);
  const double t0 = -1.0 + h * static_cast<double>(best);
  auto r = refine_nearest(
      z, t0, std::max(-1.0, t0 - h), std::min(1.0, t0 + h), [this](double t) { return point(t); },
      [this](double t) { return d1(t); }, [this](double t) { return d2(t); });
  if (r.distance > bd) r = {t0, p[best], bd};
  return r;
}

}  // namespace gf
