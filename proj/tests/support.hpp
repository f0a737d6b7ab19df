#pragma once

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "gf/types.hpp"

namespace gft {

using gf::cplx;

inline double rel_err(double got, double want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }
inline double rel_err(cplx got, cplx want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(12345);
  return g;
}

inline double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng()); }

inline cplx polar_in(double r0, double r1) { return std::polar(uniform(r0, r1), uniform(0.0, gf::two_pi)); }

}  // namespace gft
