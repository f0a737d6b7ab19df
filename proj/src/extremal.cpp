#include "gf/extremal.hpp"

#include <algorithm>
#include <cmath>


#include "gf/exact_domains.hpp"
#include "gf/numeric.hpp"

namespace gf {

namespace {

// truncated power series in d = v - a
using Series = std::vector<cplx>;

Series mul(const Series& x, const Series& y) {
  Series r(x.size(), cplx{});
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; i + j < x.size(); ++j) r[i + j] += x[i] * y[j];
  return r;
}

// (p0 + p1 d) / (q0 + d)
Series linear_ratio(cplx p0, cplx p1, cplx q0, std::size_t n) {
  // 1/(q0 + d) = sum (-1)^k d^k / q0^{k+1}
  Series inv(n);
  for (std::size_t k = 0; k < n; ++k) inv[k] = (k % 2 ? -1.0 : 1.0) / std::pow(q0, static_cast<int>(k) + 1);
  Series num(n, cplx{});
  num[0] = p0;
  if (n > 1) num[1] = p1;
  return mul(num, inv);
}

ExtremalMember finish(ExtremalMember m) {
  m.degree = m.fn.degree();
  m.slack = m.requested_n - m.degree;
  return m;
}

std::vector<cplx> poly_mul(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  std::vector<cplx> r(a.size() + b.size() - 1, cplx{});
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

}  // namespace

ExtremalMember extremal_blaschke(const std::vector<cplx>& poles) {
  if (poles.empty()) throw Error(ErrorCode::ConfigInvalid, "empty pole list");
  int inside = 0, outside = 0;
  for (const cplx a : poles) {
    const double r = std::abs(a);
    if (std::abs(r - 1.0) < exact::pole_margin) throw Error(ErrorCode::PoleOnCircle, "pole on the unit circle");
    (r < 1.0 ? inside : outside) += 1;
  }
  if (inside && outside) throw Error(ErrorCode::MixedSides, "poles on both sides of the unit circle");

  // distinct poles with multiplicities
  std::vector<std::pair<cplx, int>> mult;
  for (const cplx a : poles) {
    auto it = std::find_if(mult.begin(), mult.end(), [&](const auto& p) { return p.first == a; });
    if (it == mult.end())
      mult.push_back({a, 1});
    else
      ++it->second;
  }

  cplx outer{1.0, 0.0};
  for (const cplx a : poles) outer *= -std::conj(a);

  std::vector<PrincipalPart> parts;
  for (const auto& [a, m] : mult) {
    const auto n = static_cast<std::size_t>(m);
    // h(v) = (v - a)^{-m} phi(v), phi = (1 - conj(a) v)^m prod_{b != a} B(b, v)
    Series phi(n, cplx{});
    phi[0] = 1.0;
    Series lin(n, cplx{});
    lin[0] = 1.0 - std::conj(a) * a;
    if (n > 1) lin[1] = -std::conj(a);
    for (int i = 0; i < m; ++i) phi = mul(phi, lin);
    for (const auto& [b, mb] : mult) {
      if (b == a) continue;
      // B(b, v) = (1 - conj(b) a - conj(b) d) / ((a - b) + d)
      const Series f = linear_ratio(1.0 - std::conj(b) * a, -std::conj(b), a - b, n);
      for (int i = 0; i < mb; ++i) phi = mul(phi, f);
    }
    PrincipalPart p{a, std::vector<cplx>(n + 1, cplx{})};
    // coefficient of (v - a)^{-j} is phi_{m - j}
    for (std::size_t j = 1; j <= n; ++j) p.coeffs[j] = phi[n - j];
    parts.push_back(std::move(p));
  }
  ExtremalMember m;
  m.family = inside ? "blaschke_inside" : "blaschke_outside";
  ProductForm pf;
  for (const cplx a : poles) {
    pf.poles.push_back(a);
    if (a == 0.0) continue;
    pf.scale *= -std::conj(a);
    pf.zeros.push_back(1.0 / std::conj(a));
  }
  m.fn = with_product_form(make_rational(OuterPoly{OuterPoly::Basis::Monomial, {}, 1.0, {outer}}, parts), pf);
  m.requested_n = static_cast<int>(poles.size());
  m.z0 = 1.0;
  return finish(m);
}

ExtremalMember lemniscate_power(const RationalFn& t, cplx z0, int n) {
  if (!t.parts().empty() || t.outer().basis != OuterPoly::Basis::Monomial)
    throw Error(ErrorCode::ConfigInvalid, "lemniscate base must be a monomial-basis polynomial");
  const int big_n = t.outer_degree();
  if (big_n < 1) throw Error(ErrorCode::ConfigInvalid, "lemniscate base must have degree >= 1");
  if (n < big_n) throw Error(ErrorCode::ConfigInvalid, "target degree below the base degree");
  const cplx v = t(z0), d = t.eval_deriv(z0, 1);
  if (std::abs(v - 1.0) > 1e-10 || !(d.real() > 0.0) || std::abs(d.imag()) > 1e-10 * std::abs(d))
    throw Error(ErrorCode::NotNormalizedAtPoint, "base polynomial needs T(z0) = 1 and T'(z0) > 0");
  const int m = n / big_n;
  std::vector<cplx> c = {1.0};
  for (int i = 0; i < m; ++i) c = poly_mul(c, t.outer().coeffs);
  ExtremalMember e;
  e.family = "lemniscate_power";
  e.fn = make_rational(OuterPoly{OuterPoly::Basis::Monomial, t.outer().center, t.outer().half, c}, {});
  e.requested_n = n;
  e.z0 = z0;
  return finish(e);
}

ExtremalMember mobius_power(const Circle& circle, const ExtPoint& a, cplx z0, int n) {
  if (n < 1) throw Error(ErrorCode::ConfigInvalid, "order must be >= 1");
  ExtremalMember e;
  e.family = "mobius_power";
  e.requested_n = n;
  e.z0 = z0;
  if (a.is_infinite()) {
    // T(z) = (z - c)/(z0 - c), a degree-1 lemniscate of the circle itself
    const cplx s = 1.0 / (z0 - circle.center);
    std::vector<cplx> c(static_cast<std::size_t>(n) + 1, cplx{});
    c[n] = std::pow(s, n);
    e.fn = make_rational(OuterPoly{OuterPoly::Basis::Monomial, circle.center, 1.0, c}, {});
    e.jacobian = 1.0;
    return finish(e);
  }
  const auto tr = exact::mobius_transfer(circle, a.value(), z0);
  // T(phi(z)) = alpha + beta/(z - a)
  const cplx den = tr.z0_image - tr.image.center;
  const cplx alpha = -tr.image.center / den, beta = tr.map.xi / den;
  std::vector<cplx> coeffs(static_cast<std::size_t>(n) + 1, cplx{});
  for (int j = 1; j <= n; ++j) coeffs[j] = num::binomial(n, j) * std::pow(alpha, n - j) * std::pow(beta, j);
  ProductForm pf{std::pow(beta, n), {}, std::vector<cplx>(static_cast<std::size_t>(n), a.value())};
  if (alpha != 0.0) {
    pf.scale = std::pow(alpha, n);
    pf.zeros.assign(static_cast<std::size_t>(n), a.value() - beta / alpha);
  }
  e.fn = with_product_form(make_rational(OuterPoly{OuterPoly::Basis::Monomial, {}, 1.0, {std::pow(alpha, n)}},
                                         {PrincipalPart{a.value(), coeffs}}),
                           pf);
  e.jacobian = tr.jacobian;
  return finish(e);
}

ExtremalMember markov_extremal(const Arc& segment, const PoleSet& poles, Endpoint e) {
  if (!segment.is_segment()) throw Error(ErrorCode::UnsupportedArc, "markov_extremal supports segments only");
  const cplx end = segment.endpoint(e);
  const cplx other = segment.endpoint(e == Endpoint::A ? Endpoint::B : Endpoint::A);
  const cplx scale = 1.0 / (other - end);  // M(z) = (z - end) scale, segment -> [0, 1]

  // zeros of the Blaschke product in the disk for Gamma* = [-1, 1]
  std::vector<cplx> alpha;
  int n_inf = 0;
  for (const auto& p : poles.poles()) {
    if (p.at.is_infinite()) {
      n_inf += p.order;
      for (int i = 0; i < 2 * p.order; ++i) alpha.push_back(0.0);
      continue;
    }
    if (segment.distance(p.at.value()) < exact::pole_margin * segment.diameter())
      throw Error(ErrorCode::PoleOnArc, "pole on the segment");
    const cplx r = std::sqrt((p.at.value() - end) * scale);
    const cplx u1 = exact::joukowski_inside(r), u2 = exact::joukowski_inside(-r);
    for (int i = 0; i < p.order; ++i) {
      alpha.push_back(u1);
      alpha.push_back(u2);
    }
  }

  // R(z) = T(sqrt(M(z))), T(zeta) = (B(u) + B(1/u))/2
  auto eval = [&](cplx z) {
    const cplx zeta = std::sqrt((z - end) * scale);
    const cplx u = exact::joukowski_inside(zeta);
    cplx b1{1.0, 0.0}, b2{1.0, 0.0};
    for (const cplx al : alpha) {
      b1 *= (1.0 - std::conj(al) * u) / (u - al);
      b2 *= (u - std::conj(al)) / (1.0 - al * u);
    }
    return 0.5 * (b1 + b2);
  };

  std::vector<PrincipalPart> parts;
  for (const auto& p : poles.poles()) {
    if (p.at.is_infinite()) continue;
    const cplx a = p.at.value();
    double rho = segment.distance(a);
    for (const auto& q : poles.poles())
      if (q.at.is_finite() && !(q.at == p.at)) rho = std::min(rho, std::abs(q.at.value() - a));
    rho *= 0.5;
    constexpr std::size_t nodes = 256;
    std::vector<cplx> c(static_cast<std::size_t>(p.order) + 1, cplx{});
    for (std::size_t m = 0; m < nodes; ++m) {
      const cplx d = std::polar(rho, two_pi * static_cast<double>(m) / nodes);
      const cplx f = eval(a + d);
      cplx dj = d;
      for (int j = 1; j <= p.order; ++j, dj *= d) c[j] += f * dj;
    }
    for (auto& x : c) x /= static_cast<double>(nodes);
    parts.push_back({a, c});
  }

  // polynomial part by Chebyshev interpolation along the segment
  const cplx center = 0.5 * (segment.a() + segment.b()), half = 0.5 * (segment.b() - segment.a());
  const RationalFn principal = make_rational(OuterPoly{}, parts);
  const std::size_t deg = static_cast<std::size_t>(n_inf);
  std::vector<cplx> outer;
  if (deg == 0) {
    outer = {eval(center) - principal(center)};
  } else {
    std::vector<cplx> v(deg + 1);
    for (std::size_t j = 0; j <= deg; ++j) {
      const cplx z = center + half * std::cos(pi * static_cast<double>(j) / static_cast<double>(deg));
      v[j] = eval(z) - principal(z);
    }
    outer = num::cheb_fit_values(v);
    double big = 0.0;
    for (const auto& x : outer) big = std::max(big, std::abs(x));
    for (auto& x : outer)
      if (std::abs(x) < 1e-14 * big) x = 0.0;
  }

  ExtremalMember m;
  m.family = "symmetrized_markov";
  m.fn = make_rational(OuterPoly{OuterPoly::Basis::Chebyshev, center, half, outer}, parts);
  double outer_abs = 0.0;
  for (const auto& x : outer) outer_abs += std::abs(x);
  for (int j = 0; j <= 64; ++j) {
    const cplx z = center + half * std::cos(pi * j / 64.0);
    double s = outer_abs;
    for (const auto& p : m.fn.parts()) s += std::abs(make_rational(OuterPoly{}, {p})(z));
    m.conditioning = std::max(m.conditioning, s);  // sup of R on the segment is 1
  }
  m.requested_n = poles.total_order();
  m.z0 = end;

  // With finite poles the partial fractions cancel badly, so a product form is
  // attached. On u = e^{i theta}, B(u) = e^{i psi(theta)} with psi decreasing,
  // and T(cos theta) = 0 exactly when psi(theta) - psi(-theta) = -pi (2m + 1);
  // all zeros of R therefore lie on the segment.
  std::vector<cplx> pz;
  for (const auto& p : poles.poles())
    if (p.at.is_finite()) pz.insert(pz.end(), static_cast<std::size_t>(p.order), p.at.value());
  if (!pz.empty()) {
    const auto psi = [&](double th) {
      const cplx u = std::polar(1.0, th);
      double s = 0.0;
      for (const cplx al : alpha) s += 2.0 * std::arg(1.0 - std::conj(al) * u) - th;
      return s;
    };
    const auto phase = [&](double th) { return psi(th) - psi(-th); };
    ProductForm pf;
    pf.poles = pz;
    for (std::size_t j = 0; j < alpha.size() / 2; ++j) {
      const double target = -pi * static_cast<double>(2 * j + 1);
      double lo = 0.0, hi = 0.5 * pi;
      for (int it = 0; it < 64 && hi - lo > 1e-17; ++it) {
        const double mid = 0.5 * (lo + hi);
        (phase(mid) > target ? lo : hi) = mid;
      }
      const double zeta = std::cos(0.5 * (lo + hi));
      pf.zeros.push_back(end + zeta * zeta / scale);
    }
    const auto unscaled = [&](cplx z) {
      cplx q{1.0, 0.0};
      for (std::size_t i = 0; i < std::max(pf.zeros.size(), pz.size()); ++i) {
        if (i < pf.zeros.size()) q *= z - pf.zeros[i];
        if (i < pz.size()) q /= z - pz[i];
      }
      return q;
    };
    cplx num{}, den{};
    for (int j = 0; j <= 32; ++j) {
      const cplx z = center + half * std::cos(pi * (j + 0.5) / 33.0);
      const cplx q = unscaled(z);
      num += std::conj(q) * eval(z);
      den += std::norm(q);
    }
    pf.scale = num / den;
    const RationalFn cand = with_product_form(m.fn, pf);
    double err = 0.0;
    for (int j = 0; j <= 256; ++j) {
      const cplx z = center + half * std::cos(pi * j / 256.0);
      const double e = std::abs(cand(z) - eval(z));
      err = std::isfinite(e) ? std::max(err, e) : HUGE_VAL;
    }
    if (err < 1e-10) m.fn = cand;
  }
  return finish(m);
}

}  // namespace gf
