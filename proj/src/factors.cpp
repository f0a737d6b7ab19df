#include "gf/factors.hpp"

#include <cmath>
#include <future>
#include <optional>

#include "gf/exact_domains.hpp"
#include "gf/numeric.hpp"

namespace gf {

namespace {

Side curve_side(const Curve& curve, const ExtPoint& a) {
  if (a.is_infinite()) return Side::Plus;
  const cplx z = a.value();
  if (curve.distance(z) < exact::pole_margin * curve.diameter())
    throw Error(ErrorCode::PoleOnBoundary, "pole on the curve: " + to_string(a));
  const Location l = curve.side_of(z);
  if (l == Location::OnBoundary) throw Error(ErrorCode::PoleOnBoundary, "pole on the curve: " + to_string(a));
  return l == Location::Interior ? Side::Minus : Side::Plus;
}

void sum_sides(FactorReport& r) {
  r.s_plus = r.s_minus = 0.0;
  for (const auto& p : r.parts) (p.side == Side::Plus ? r.s_plus : r.s_minus) += p.order * p.density;
}

}  // namespace

double markov_constant(int k) { return std::pow(2.0, k) / num::double_factorial(2 * k - 1); }

FactorReport bernstein_factor_curve(const Curve& curve, const PoleSet& poles, double t,
                                    const FactorOptions& opts) {
  FactorReport r;
  r.kind = "bernstein_curve";
  r.t = t;
  r.z0 = curve.point(t);
  for (const auto& p : poles.poles()) r.parts.push_back({p.at, p.order, curve_side(curve, p.at), 0.0, {}});

  if (auto c = curve.as_circle()) {
    for (auto& p : r.parts) p.density = exact::circle_normal_density(*c, r.z0, p.pole);
  } else {
    r.nq = opts.green.nq;
    std::optional<GreenSolver> in, out;
    for (const auto& p : r.parts) {
      if (p.side == Side::Minus && !in) in.emplace(curve, DomainSide::Interior, opts.green);
      if (p.side == Side::Plus && !out) out.emplace(curve, DomainSide::Exterior, opts.green);
    }
    std::vector<std::future<std::pair<double, double>>> jobs;
    for (const auto& p : r.parts) {
      const GreenSolver& s = p.side == Side::Minus ? *in : *out;
      jobs.push_back(std::async(std::launch::async, [&s, &p, t, &opts] {
        const GreenSolution sol = s.solve(p.pole);
        return std::make_pair(sol.normal_derivative(t, opts.method), sol.accuracy());
      }));
    }
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      const auto [d, acc] = jobs[i].get();
      r.parts[i].density = d;
      r.accuracy = std::max(r.accuracy, acc);
    }
  }
  sum_sides(r);
  r.factor = std::max(r.s_plus, r.s_minus);
  return r;
}

FactorReport bernstein_factor_curve_at(const Curve& curve, const PoleSet& poles, cplx z0,
                                       const FactorOptions& opts) {
  const auto np = curve.nearest(z0);
  if (np.distance > 1e-9 * curve.diameter())
    throw Error(ErrorCode::ConfigInvalid, "target point is not on the curve");
  return bernstein_factor_curve(curve, poles, np.t, opts);
}

FactorReport bernstein_factor_circle_transfer(const Circle& circle, const PoleSet& poles, double t) {
  const Curve curve = Curve::make(circle);
  FactorReport r;
  r.kind = "bernstein_curve";
  r.t = t;
  r.z0 = curve.point(t);
  for (const auto& p : poles.poles()) {
    const Side side = curve_side(curve, p.at);
    double d;
    if (p.at.is_infinite()) {
      d = 1.0 / circle.radius;
    } else {
      const auto tr = exact::mobius_transfer(circle, p.at.value(), r.z0);
      d = exact::circle_normal_density(tr.image, tr.z0_image, ExtPoint::infinity()) * tr.jacobian;
    }
    r.parts.push_back({p.at, p.order, side, d, {}});
  }
  sum_sides(r);
  r.factor = std::max(r.s_plus, r.s_minus);
  return r;
}

FactorReport bernstein_factor_arc(const OpenUp& ou, const PoleSet& poles, double t, int k) {
  if (k < 1) throw Error(ErrorCode::ConfigInvalid, "derivative order must be >= 1");
  if (!(t > -1.0 && t < 1.0)) throw Error(ErrorCode::EndpointRequested, "arc parameter must lie in (-1, 1)");
  FactorReport r;
  r.kind = "bernstein_arc";
  r.t = t;
  r.k = k;
  r.z0 = ou.arc().point(t);
  r.nq = ou.is_circle() ? 0 : ou.options().green.nq;
  for (const auto& p : poles.poles())
    for (Side s : {Side::Plus, Side::Minus})
      r.parts.push_back({p.at, p.order, s, arc_normal_density(ou, t, p.at, s), {}});
  sum_sides(r);
  r.factor = std::pow(std::max(r.s_plus, r.s_minus), k);
  return r;
}

FactorReport markov_factor(const OpenUp& ou, const PoleSet& poles, MarkovEndpoint e, int k) {
  if (k < 1) throw Error(ErrorCode::ConfigInvalid, "derivative order must be >= 1");
  FactorReport r;
  r.kind = "markov";
  r.k = k;
  r.nq = ou.is_circle() ? 0 : ou.options().green.nq;
  r.endpoint = e == MarkovEndpoint::A ? "A" : e == MarkovEndpoint::B ? "B" : "global";
  for (const auto& p : poles.poles()) {
    if (e != MarkovEndpoint::B) {
      const double w = omega(ou, Endpoint::A, p.at).value;
      r.omega_a += p.order * w;
      r.parts.push_back({p.at, p.order, Side::Minus, w, "A"});
    }
    if (e != MarkovEndpoint::A) {
      const double w = omega(ou, Endpoint::B, p.at).value;
      r.omega_b += p.order * w;
      r.parts.push_back({p.at, p.order, Side::Plus, w, "B"});
    }
  }
  switch (e) {
    case MarkovEndpoint::A:
      r.omega_sum = r.omega_a;
      r.z0 = ou.arc().a();
      r.t = -1.0;
      break;
    case MarkovEndpoint::B:
      r.omega_sum = r.omega_b;
      r.z0 = ou.arc().b();
      r.t = 1.0;
      break;
    case MarkovEndpoint::Global:
      r.omega_sum = std::max(r.omega_a, r.omega_b);
      r.z0 = r.omega_a >= r.omega_b ? ou.arc().a() : ou.arc().b();
      r.t = r.omega_a >= r.omega_b ? -1.0 : 1.0;
      break;
  }
  r.factor = markov_constant(k) * std::pow(r.omega_sum, 2 * k);
  return r;
}

}  // namespace gf
