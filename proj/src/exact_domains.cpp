#include "gf/exact_domains.hpp"

#include <cmath>

namespace gf::exact {

double disk_normal_density(cplx w, const ExtPoint& a) {
  if (std::abs(std::abs(w) - 1.0) > 1e-12)
    throw Error(ErrorCode::ConfigInvalid, "disk_normal_density needs |w| = 1");
  if (a.is_infinite()) return 1.0;
  const cplx z = a.value();
  const double r2 = std::norm(z);
  if (std::abs(std::sqrt(r2) - 1.0) < pole_margin)
    throw Error(ErrorCode::PoleOnBoundary, "pole on the unit circle");
  return std::abs(1.0 - r2) / std::norm(w - z);
}

double circle_normal_density(const Circle& c, cplx z0, const ExtPoint& a) {
  cplx w = (z0 - c.center) / c.radius;
  w /= std::abs(w);
  if (a.is_infinite()) return 1.0 / c.radius;
  return disk_normal_density(w, (a.value() - c.center) / c.radius) / c.radius;
}

double disk_green(cplx z, const ExtPoint& a) {
  if (a.is_infinite()) return std::log(std::abs(z));
  const cplx b = a.value();
  if (std::norm(b) < 1.0) return std::log(std::abs((1.0 - std::conj(b) * z) / (z - b)));
  return std::log(std::abs((std::conj(b) * z - 1.0) / (z - b)));
}

cplx blaschke_factor(cplx a, cplx v) { return (1.0 - std::conj(a) * v) / (v - a); }

cplx blaschke_eval(std::span<const cplx> poles, cplx v) {
  cplx h{1.0, 0.0};
  for (const cplx a : poles) {
    if (v == a) throw Error(ErrorCode::EvalAtPole, "evaluation at a Blaschke pole");
    h *= blaschke_factor(a, v);
  }
  return h;
}

cplx blaschke_deriv(std::span<const cplx> poles, cplx v) {
  // B'/B = (|a|^2 - 1) / ((v - a)(1 - conj(a) v))
  cplx logd{};
  for (const cplx a : poles) {
    if (v == a) throw Error(ErrorCode::EvalAtPole, "evaluation at a Blaschke pole");
    logd += (std::norm(a) - 1.0) / ((v - a) * (1.0 - std::conj(a) * v));
  }
  return blaschke_eval(poles, v) * logd;
}

cplx joukowski_inside(cplx z) {
  const cplx s = std::sqrt(z - 1.0) * std::sqrt(z + 1.0);
  const cplx u1 = z - s, u2 = z + s;
  return std::abs(u1) <= std::abs(u2) ? u1 : u2;
}

double segment_normal_density(double x, const ExtPoint& a, Side side) {
  if (!(x > -1.0 && x < 1.0)) throw Error(ErrorCode::EndpointRequested, "x must lie in (-1, 1)");
  const double sn = std::sqrt(1.0 - x * x);
  if (a.is_infinite()) return 1.0 / sn;
  const cplx z = a.value();
  if (std::abs(z.imag()) < pole_margin && std::abs(z.real()) <= 1.0 + pole_margin)
    throw Error(ErrorCode::PoleOnSegment, "pole on the segment");
  // The disk interior near e^{i theta}, theta in (0, pi), lands below the
  // segment, i.e. on the n_+ side.
  const cplx u = side == Side::Plus ? cplx(x, sn) : cplx(x, -sn);
  return disk_normal_density(u, joukowski_inside(z)) / sn;
}

MobiusTransfer mobius_transfer(const Circle& c, cplx a, cplx z0) {
  const double dist = std::abs(std::abs(a - c.center) - c.radius);
  if (dist < pole_margin * c.radius) throw Error(ErrorCode::PoleOnBoundary, "pole on the circle");
  MobiusTransfer t;
  const cplx d0 = z0 - a;
  // phi'(z0) = -xi / d0^2 > 0
  t.map = MobiusMap{a, -d0 * d0 / std::norm(d0)};
  const cplx d = c.center - a;
  const double den = std::norm(d) - c.radius * c.radius;
  t.image = Circle{t.map.xi * std::conj(d) / den, c.radius / std::abs(den)};
  t.z0_image = t.map(z0);
  t.jacobian = 1.0 / std::norm(d0);
  return t;
}

}  // namespace gf::exact
