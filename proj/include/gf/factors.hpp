#pragma once

// Sharp Bernstein and Markov factors assembled from Green's densities.

#include <string>
#include <vector>

#include "gf/geometry.hpp"
#include "gf/greens.hpp"
#include "gf/openup.hpp"
#include "gf/rational.hpp"

namespace gf {

struct PoleContribution {
  ExtPoint pole;
  int order = 1;
  Side side = Side::Plus;
  double density = 0.0;  // normal derivative, or Omega for Markov reports
  std::string endpoint;  // A or B for Markov reports
};

enum class MarkovEndpoint { A, B, Global };

struct FactorReport {
  std::string kind;      // bernstein_curve, bernstein_arc, markov
  cplx z0{};
  double t = 0.0;
  std::string endpoint;  // A, B, global for Markov reports
  int k = 1;
  std::vector<PoleContribution> parts;
  double s_plus = 0.0;
  double s_minus = 0.0;
  double omega_a = 0.0;  // sum n_i Omega_{a_i}(A)
  double omega_b = 0.0;
  double omega_sum = 0.0;  // the M entering the Markov factor
  double factor = 0.0;
  std::size_t nq = 0;
  double accuracy = 0.0;
};

struct FactorOptions {
  GreenOptions green;
  NormalMethod method = NormalMethod::FiniteDifference;
};

/// max(S+, S-) at gamma(t).
FactorReport bernstein_factor_curve(const Curve& curve, const PoleSet& poles, double t,
                                    const FactorOptions& opts = {});
/// Same, at a point given in the plane (must lie on the curve).
FactorReport bernstein_factor_curve_at(const Curve& curve, const PoleSet& poles, cplx z0,
                                       const FactorOptions& opts = {});
/// Circle factor where every finite pole is first moved to infinity by a
/// Moebius map; must agree with the direct route.
FactorReport bernstein_factor_circle_transfer(const Circle& circle, const PoleSet& poles, double t);

/// max(S+, S-)^k at the interior arc parameter t.
FactorReport bernstein_factor_arc(const OpenUp& ou, const PoleSet& poles, double t, int k = 1);

/// 2^k/(2k-1)!! * M^{2k}, M = sum n_i Omega_{a_i} at the endpoint (max over
/// both for Global).
FactorReport markov_factor(const OpenUp& ou, const PoleSet& poles, MarkovEndpoint e, int k = 1);

/// 2^k / (2k-1)!!.
double markov_constant(int k);

}  // namespace gf
