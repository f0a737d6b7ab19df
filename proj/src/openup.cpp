#include "gf/openup.hpp"

#include <cmath>
#include <mutex>
#include <optional>
#include <vector>

#include "gf/exact_domains.hpp"
#include "gf/numeric.hpp"

namespace gf {

struct OpenUp::State {
  Arc arc;
  OpenUpOptions opts;
  cplx lp{};      // L'(z)
  cplx shift{};   // L(z) = lp z - shift
  bool circle = false;
  std::vector<cplx> zeta, zeta1;  // normalized arc and its derivative, Chebyshev
  std::vector<cplx> root;         // sqrt(q), Chebyshev
  Curve curve;
  bool upper_minus = false;
  double residual = 0.0;

  mutable std::once_flag in_once, out_once;
  mutable std::optional<GreenSolver> in_solver, out_solver;
  mutable std::mutex cache_mu;
  struct Cached {
    Route route;
    ExtPoint beta;
    GreenSolution sol;
  };
  mutable std::vector<Cached> cache;

  State(const Arc& a, const OpenUpOptions& o) : arc(a), opts(o) {}

  cplx gamma_pre(double theta) const {
    const double s = std::cos(theta);
    return num::cheb_eval(zeta, cplx(s)) + cplx(0.0, std::sin(theta)) * num::cheb_eval(root, cplx(s));
  }

  const GreenSolver& solver(Route r) const {
    if (r == Route::Interior) {
      std::call_once(in_once, [this] { in_solver.emplace(curve, DomainSide::Interior, opts.green); });
      return *in_solver;
    }
    std::call_once(out_once, [this] { out_solver.emplace(curve, DomainSide::Exterior, opts.green); });
    return *out_solver;
  }

  GreenSolution solution(Route r, const ExtPoint& beta) const {
    {
      std::lock_guard lock(cache_mu);
      for (const auto& c : cache)
        if (c.route == r && c.beta == beta) return c.sol;
    }
    GreenSolution sol = solver(r).solve(beta);
    std::lock_guard lock(cache_mu);
    if (cache.size() > 64) cache.erase(cache.begin());
    cache.push_back({r, beta, sol});
    return sol;
  }
};

namespace {

// mean of f' over [p, q] for a Chebyshev series, exact for polynomials
cplx mean_derivative(const std::vector<cplx>& d, const num::Quadrature& gl, double p, double q) {
  cplx s{};
  for (std::size_t i = 0; i < gl.x.size(); ++i)
    s += gl.w[i] * num::cheb_eval(d, cplx(0.5 * (p + q) + 0.5 * (q - p) * gl.x[i]));
  return 0.5 * s;
}

double polygon_area(const std::vector<cplx>& p) {
  double a = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    const cplx u = p[j], v = p[(j + 1) % p.size()];
    a += u.real() * v.imag() - u.imag() * v.real();
  }
  return 0.5 * a;
}

}  // namespace

OpenUp OpenUp::make(const Arc& arc, const OpenUpOptions& opts) {
  auto st = std::make_shared<State>(arc, opts);
  const cplx a = arc.a(), b = arc.b();
  st->lp = 2.0 / (b - a);
  st->shift = (a + b) / (b - a);
  st->circle = arc.is_segment();

  if (st->circle) {
    st->zeta = {cplx{}, cplx(1.0)};
    st->root = {cplx(1.0)};
    st->curve = Curve::make(Circle{cplx{}, 1.0});
  } else {
    st->zeta = arc.coefficients();
    for (auto& c : st->zeta) c *= st->lp;
    st->zeta[0] -= st->shift;
    st->zeta1 = num::cheb_derivative(st->zeta);
    const auto gl = num::gauss_legendre(st->zeta.size() / 2 + 2);
    // q = [(zeta - 1)/(s - 1)] [(zeta + 1)/(s + 1)], both as mean slopes
    auto sampler = [&](const std::vector<double>& xs) {
      std::vector<cplx> q(xs.size());
      for (std::size_t j = 0; j < xs.size(); ++j) {
        const double s = xs[j];
        q[j] = mean_derivative(st->zeta1, gl, s, 1.0) * mean_derivative(st->zeta1, gl, -1.0, s);
      }
      return num::continuous_sqrt(q);
    };
    st->root = num::cheb_fit_batch(sampler, 1e-15, 4096);

    const std::size_t n = opts.fourier_samples;
    if (!num::is_power_of_two(n) || n < 64)
      throw Error(ErrorCode::ConfigInvalid, "fourier_samples must be a power of two >= 64");
    std::vector<cplx> v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = st->gamma_pre(two_pi * static_cast<double>(j) / n);
    if (polygon_area(v) < 0.0) {
      for (auto& c : st->root) c = -c;
      for (std::size_t j = 0; j < n; ++j) v[j] = st->gamma_pre(two_pi * static_cast<double>(j) / n);
    }
    num::fft(v, false);
    const int kmax = static_cast<int>(n / 2) - 1;
    std::vector<cplx> coeffs(2 * kmax + 1);
    double big = 0.0;
    for (int k = -kmax; k <= kmax; ++k) {
      coeffs[k + kmax] = v[(k + static_cast<int>(n)) % static_cast<int>(n)] / static_cast<double>(n);
      big = std::max(big, std::abs(coeffs[k + kmax]));
    }
    std::size_t lo = 0, hi = coeffs.size();
    while (hi - lo > 3 && std::abs(coeffs[lo]) < 2e-16 * big && std::abs(coeffs[hi - 1]) < 2e-16 * big) {
      ++lo;
      --hi;
    }
    FourierCurve fc;
    fc.kmin = -kmax + static_cast<int>(lo);
    fc.coeffs.assign(coeffs.begin() + static_cast<long>(lo), coeffs.begin() + static_cast<long>(hi));
    try {
      st->curve = Curve::make(fc);
    } catch (const Error& e) {
      throw Error(ErrorCode::BranchTrackingFailed, std::string("open-up curve rejected: ") + e.what());
    }
  }

  double res = 0.0;
  for (int j = 0; j <= 256; ++j) {
    const double th = two_pi * j / 256.0;
    const cplx u = st->curve.point(th);
    const cplx target = num::cheb_eval(st->zeta, cplx(std::cos(th)));
    res = std::max(res, std::abs(0.5 * (u + 1.0 / u) - target));
  }
  st->residual = res;
  if (res > 1e-8) throw Error(ErrorCode::BranchTrackingFailed, "open-up residual too large");

  // side pairing at the middle of the arc
  const double th = pi / 2;
  const cplx u = st->curve.point(th);
  const cplx d1 = st->curve.d1(th);
  const cplx n_in = cplx(0.0, 1.0) * d1 / std::abs(d1);
  const cplx dz = 0.5 * (1.0 - 1.0 / (u * u)) * n_in;
  const cplx nm = arc.frame(0.0).n_minus * st->lp;
  st->upper_minus = std::real(std::conj(dz) * nm) > 0.0;

  OpenUp ou;
  ou.s_ = std::move(st);
  return ou;
}

const Arc& OpenUp::arc() const { return s_->arc; }
const OpenUpOptions& OpenUp::options() const { return s_->opts; }
cplx OpenUp::normalize(cplx z) const { return s_->lp * z - s_->shift; }
double OpenUp::affine_derivative() const { return std::abs(s_->lp); }
bool OpenUp::is_circle() const { return s_->circle; }
const Curve& OpenUp::preimage() const { return s_->curve; }
cplx OpenUp::preimage_point(double theta) const { return s_->gamma_pre(theta); }
double OpenUp::residual() const { return s_->residual; }
bool OpenUp::upper_interior_is_minus() const { return s_->upper_minus; }

ExtPoint OpenUp::inside_preimage(const ExtPoint& a) const {
  if (a.is_infinite()) return cplx{};
  const cplx x = normalize(a.value());
  const cplx s = std::sqrt(x - 1.0) * std::sqrt(x + 1.0);
  const cplx u1 = x - s, u2 = x + s;
  if (s_->circle) {
    const double m = std::min(std::abs(u1), std::abs(u2));
    if (std::abs(m - 1.0) < exact::pole_margin) throw Error(ErrorCode::PoleOnArc, "pole on the arc");
    return std::abs(u1) < std::abs(u2) ? u1 : u2;
  }
  const Location l1 = s_->curve.side_of(u1), l2 = s_->curve.side_of(u2);
  if (l1 == Location::OnBoundary || l2 == Location::OnBoundary)
    throw Error(ErrorCode::PoleOnArc, "pole on the arc");
  if (l1 == Location::Interior && l2 == Location::Exterior) return u1;
  if (l2 == Location::Interior && l1 == Location::Exterior) return u2;
  throw Error(ErrorCode::BranchTrackingFailed, "could not separate the Joukowski preimages");
}

ExtPoint OpenUp::outside_preimage(const ExtPoint& a) const {
  if (a.is_infinite()) return ExtPoint::infinity();
  return 1.0 / inside_preimage(a).value();
}

double OpenUp::theta_for(double t, Side side, Route route) const {
  const double th = std::acos(t);
  bool upper = (side == Side::Minus) == s_->upper_minus;
  if (route == Route::Exterior) upper = !upper;
  return upper ? th : two_pi - th;
}

double OpenUp::curve_density(double theta, const ExtPoint& beta, Route route) const {
  if (s_->circle) {
    const cplx u = std::polar(1.0, theta);
    if (route == Route::Interior && beta.is_infinite())
      throw Error(ErrorCode::PoleOnWrongSide, "infinity is not inside the preimage");
    return exact::disk_normal_density(u, beta);
  }
  const GreenSolution sol = s_->solution(route, beta);
  return sol.normal_derivative(std::fmod(theta + two_pi, two_pi), s_->opts.method);
}

double arc_normal_density(const OpenUp& ou, double t, const ExtPoint& a, Side side, Route route) {
  if (!(t > -1.0 && t < 1.0)) throw Error(ErrorCode::EndpointRequested, "arc parameter must lie in (-1, 1)");
  const Arc& arc = ou.arc();
  if (a.is_finite() && arc.distance(a.value()) < exact::pole_margin * arc.diameter())
    throw Error(ErrorCode::PoleOnArc, "pole on the arc");
  const ExtPoint beta = route == Route::Interior ? ou.inside_preimage(a) : ou.outside_preimage(a);
  const double th = ou.theta_for(t, side, route);
  const cplx u = ou.is_circle() ? std::polar(1.0, th) : ou.preimage().point(th);
  const double fprime = 0.5 * std::abs(1.0 - 1.0 / (u * u));
  return ou.affine_derivative() * ou.curve_density(th, beta, route) / fprime;
}

double omega_limit(const OpenUp& ou, Endpoint e, const ExtPoint& a, Side side) {
  const cplx end = ou.arc().endpoint(e);
  std::vector<double> rs, ys;
  for (int k = 1; k <= 8; ++k) {
    const double delta = 0.02 * k;
    const double t = e == Endpoint::B ? std::cos(delta) : -std::cos(delta);
    const double r = std::sqrt(std::abs(ou.arc().point(t) - end));
    rs.push_back(r);
    ys.push_back(r * arc_normal_density(ou, t, a, side));
  }
  return num::extrapolate_to_zero(rs, ys);
}

OmegaValue omega(const OpenUp& ou, Endpoint e, const ExtPoint& a, bool cross_check, Route route) {
  const Arc& arc = ou.arc();
  if (a.is_finite() && arc.distance(a.value()) < exact::pole_margin * arc.diameter())
    throw Error(ErrorCode::PoleOnArc, "pole on the arc");
  const ExtPoint beta = route == Route::Interior ? ou.inside_preimage(a) : ou.outside_preimage(a);
  const double th = e == Endpoint::A ? pi : 0.0;
  const double d = ou.curve_density(th, beta, route);
  OmegaValue v{e, a, d * std::sqrt(ou.affine_derivative()) / std::sqrt(2.0), "openup-exact", 0.0};
  if (cross_check) {
    v.cross_check = omega_limit(ou, e, a, Side::Minus);
    if (std::abs(v.cross_check - v.value) > 1e-4 * v.value)
      throw Error(ErrorCode::ExtrapolationMismatch, "open-up and extrapolated Omega disagree");
  }
  return v;
}

Arc symmetrize(const Arc& arc, const GeometryOptions& opts) {
  if (std::abs(arc.a()) > 1e-12 * std::max(1.0, arc.diameter()))
    throw Error(ErrorCode::NotNormalized, "symmetrization needs the endpoint A at 0");
  if (arc.is_segment()) {
    const cplx r = std::sqrt(arc.b());
    return Arc::make(Segment{-r, r}, opts);
  }
  const auto c1 = num::cheb_derivative(arc.coefficients());
  const auto gl = num::gauss_legendre(arc.coefficients().size() / 2 + 2);
  // gamma(2 tau^2 - 1) / tau^2 = 2 * mean of gamma' over [-1, 2 tau^2 - 1]
  auto sampler = [&](const std::vector<double>& xs) {
    std::vector<cplx> h(xs.size());
    for (std::size_t j = 0; j < xs.size(); ++j) {
      const double s = 2.0 * xs[j] * xs[j] - 1.0;
      h[j] = 2.0 * mean_derivative(c1, gl, -1.0, s);
    }
    auto r = num::continuous_sqrt(h);
    for (std::size_t j = 0; j < xs.size(); ++j) r[j] *= xs[j];
    return r;
  };
  auto coeffs = num::cheb_fit_batch(sampler, 1e-15, 4096);
  return Arc::make(ChebyshevArc{std::move(coeffs)}, opts);
}

}  // namespace gf
