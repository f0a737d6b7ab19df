#pragma once

// Closed-form Green's functions for the disk, the exterior disk and the
// segment [-1, 1], Blaschke products, and the Moebius pole transfer.

#include <span>
#include <vector>

#include "gf/geometry.hpp"
#include "gf/types.hpp"

namespace gf::exact {

/// Minimum relative distance of a pole from the unit circle / boundary.
inline constexpr double pole_margin = 1e-8;

/// Normal derivative of the disk Green's function at the unit-circle point w,
/// taken into the side containing the pole:
///   (1-|a|^2)/|w-a|^2 inside, (|a|^2-1)/|w-a|^2 outside, 1 for a = inf.
double disk_normal_density(cplx w, const ExtPoint& a);

/// Same for an arbitrary circle (densities scale by 1/radius).
double circle_normal_density(const Circle& c, cplx z0, const ExtPoint& a);

/// g of the unit disk (|a| < 1) or its exterior (|a| > 1 or a = inf).
double disk_green(cplx z, const ExtPoint& a);

/// B(a, v) = (1 - conj(a) v) / (v - a).
cplx blaschke_factor(cplx a, cplx v);

/// prod_j B(a_j, v).
cplx blaschke_eval(std::span<const cplx> poles, cplx v);

/// Derivative of the product by logarithmic differentiation.
cplx blaschke_deriv(std::span<const cplx> poles, cplx v);

/// Preimage of z under F(u) = (u + 1/u)/2 inside the closed unit disk.
cplx joukowski_inside(cplx z);

/// Normal derivative of g_{C \ [-1,1]}(., a) at x in (-1, 1) on the given side.
/// The segment runs from -1 to 1, so n_- points up.
double segment_normal_density(double x, const ExtPoint& a, Side side);

/// phi(z) = xi / (z - a).
struct MobiusMap {
  cplx a{};
  cplx xi{1.0, 0.0};

  cplx operator()(cplx z) const { return xi / (z - a); }
  cplx derivative(cplx z) const { return -xi / ((z - a) * (z - a)); }
};

struct MobiusTransfer {
  MobiusMap map;
  Circle image;          // phi(Gamma)
  cplx z0_image{};       // phi(z0)
  double jacobian = 0;   // |phi'(z0)| = 1/|z0 - a|^2
};

/// Transfer of a circle with a finite pole a to the image circle with the pole
/// at infinity; xi makes phi'(z0) > 0.
MobiusTransfer mobius_transfer(const Circle& c, cplx a, cplx z0);

}  // namespace gf::exact
