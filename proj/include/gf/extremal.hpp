#pragma once

// Near-extremal rational functions realizing the sharp factors.

#include <string>
#include <vector>

#include "gf/geometry.hpp"
#include "gf/rational.hpp"

namespace gf {

struct ExtremalMember {
  std::string family;  // blaschke_inside, blaschke_outside, lemniscate_power, mobius_power, symmetrized_markov
  RationalFn fn;
  int requested_n = 0;
  int degree = 0;
  int slack = 0;  // requested_n - degree
  cplx z0{};
  double jacobian = 0.0;  // |phi'(z0)| for Moebius members
  // max over the segment of sum |term| (sup |R| is 1); partial fractions lose
  // about log10 of this many digits (symmetrized_markov only)
  double conditioning = 1.0;
};

/// prod_j B(a_j, v) for poles all inside or all outside the unit circle.
ExtremalMember extremal_blaschke(const std::vector<cplx>& poles);

/// T^[n/N] for a polynomial T of degree N with T(z0) = 1 and T'(z0) > 0.
ExtremalMember lemniscate_power(const RationalFn& t, cplx z0, int n);

/// S_n(phi_a(z)) on a circle, with the transferred circle's base polynomial
/// T(w) = (w - c')/(w0 - c'); a = infinity gives the plain lemniscate power.
ExtremalMember mobius_power(const Circle& circle, const ExtPoint& a, cplx z0, int n);

/// Symmetrized endpoint construction on a segment: R(z) with R(M(z)) built from
/// an even Chebyshev-Markov function on Gamma* = [-1, 1], where M sends the
/// endpoint to 0 and the segment to [0, 1].
ExtremalMember markov_extremal(const Arc& segment, const PoleSet& poles, Endpoint e);

}  // namespace gf
