#include "gf/rational.hpp"

#include <algorithm>
#include <cmath>

#include "gf/exact_domains.hpp"
#include "gf/numeric.hpp"

namespace gf {

PoleSet PoleSet::make(const std::vector<Pole>& poles) {
  PoleSet s;
  for (const auto& p : poles) {
    if (p.order < 1) throw Error(ErrorCode::ConfigInvalid, "pole orders must be >= 1");
    auto it = std::find_if(s.poles_.begin(), s.poles_.end(), [&](const Pole& q) { return q.at == p.at; });
    if (it != s.poles_.end())
      it->order += p.order;
    else
      s.poles_.push_back(p);
  }
  return s;
}

int PoleSet::total_order() const {
  int n = 0;
  for (const auto& p : poles_) n += p.order;
  return n;
}

PoleSet PoleSet::scaled(int c) const {
  PoleSet s = *this;
  for (auto& p : s.poles_) p.order *= c;
  return s;
}

namespace {
template <class T>
void drop_zeros(std::vector<T>& c) {
  while (c.size() > 1 && c.back() == T{}) c.pop_back();
}

int part_degree(const PrincipalPart& p) {
  for (std::size_t j = p.coeffs.size(); j-- > 1;)
    if (p.coeffs[j] != cplx{}) return static_cast<int>(j);
  return 0;
}
}  // namespace

RationalFn make_rational(const OuterPoly& outer, const std::vector<PrincipalPart>& parts) {
  RationalFn r;
  r.outer_ = outer;
  if (r.outer_.coeffs.empty()) r.outer_.coeffs = {cplx{}};
  if (r.outer_.half == cplx{}) throw Error(ErrorCode::ConfigInvalid, "outer polynomial scale must be nonzero");
  drop_zeros(r.outer_.coeffs);
  for (const auto& p : parts) {
    if (!p.coeffs.empty() && p.coeffs[0] != cplx{})
      throw Error(ErrorCode::ConstantLeak, "principal part has a nonzero constant term");
    for (const auto& q : r.parts_)
      if (q.pole == p.pole) throw Error(ErrorCode::DuplicatePole, "two parts share the pole " + to_string(ExtPoint(p.pole)));
    PrincipalPart c = p;
    if (c.coeffs.empty()) c.coeffs = {cplx{}};
    drop_zeros(c.coeffs);
    if (part_degree(c) == 0) continue;
    r.parts_.push_back(std::move(c));
  }
  return r;
}

RationalFn make_polynomial(std::vector<cplx> monomial_coeffs, cplx center) {
  return make_rational(OuterPoly{OuterPoly::Basis::Monomial, center, 1.0, std::move(monomial_coeffs)}, {});
}

int RationalFn::outer_degree() const {
  if (outer_.coeffs.size() == 1 && outer_.coeffs[0] == cplx{}) return 0;
  return static_cast<int>(outer_.coeffs.size()) - 1;
}

int RationalFn::degree() const {
  if (product_) return static_cast<int>(std::max(product_->zeros.size(), product_->poles.size()));
  int n = outer_degree();
  for (const auto& p : parts_) n += part_degree(p);
  return n;
}

PoleSet RationalFn::pole_set() const {
  std::vector<Pole> v;
  if (product_) {
    // the product form is the trustworthy one when both are present
    const int extra = static_cast<int>(product_->zeros.size()) - static_cast<int>(product_->poles.size());
    if (extra > 0) v.push_back({ExtPoint::infinity(), extra});
    for (const cplx p : product_->poles) v.push_back({p, 1});
    return PoleSet::make(v);
  }
  if (outer_degree() > 0) v.push_back({ExtPoint::infinity(), outer_degree()});
  for (const auto& p : parts_) v.push_back({p.pole, part_degree(p)});
  return PoleSet::make(v);
}

cplx RationalFn::eval_deriv(cplx z, int k) const {
  if (!product_) return eval_partial(z, k);
  if (k < 0) throw Error(ErrorCode::ConfigInvalid, "negative derivative order");
  const auto& pf = *product_;
  for (const cplx p : pf.poles)
    if (z == p) throw Error(ErrorCode::EvalAtPole, "evaluation at the pole " + to_string(ExtPoint(p)));
  for (const cplx q : pf.zeros)
    if (z == q) return eval_partial(z, k);
  // interleaved so that long products neither overflow nor underflow
  cplx value = pf.scale;
  for (std::size_t i = 0; i < std::max(pf.zeros.size(), pf.poles.size()); ++i) {
    if (i < pf.zeros.size()) value *= z - pf.zeros[i];
    if (i < pf.poles.size()) value /= z - pf.poles[i];
  }
  // R' = R L with L the logarithmic derivative; Leibniz for higher orders
  std::vector<cplx> ld(static_cast<std::size_t>(k));
  for (int m = 0; m < k; ++m) {
    cplx s{};
    for (const cplx q : pf.zeros) s += std::pow(1.0 / (z - q), m + 1);
    for (const cplx p : pf.poles) s -= std::pow(1.0 / (z - p), m + 1);
    ld[m] = s * num::factorial(m) * (m % 2 ? -1.0 : 1.0);
  }
  std::vector<cplx> d(static_cast<std::size_t>(k) + 1);
  d[0] = value;
  for (int n = 1; n <= k; ++n) {
    cplx acc{};
    for (int j = 0; j < n; ++j) acc += num::binomial(n - 1, j) * d[j] * ld[n - 1 - j];
    d[n] = acc;
  }
  return d[k];
}

RationalFn with_product_form(RationalFn r, ProductForm p) {
  r.product_ = std::make_shared<const ProductForm>(std::move(p));
  return r;
}

cplx RationalFn::eval_partial(cplx z, int k) const {
  if (k < 0) throw Error(ErrorCode::ConfigInvalid, "derivative order must be >= 0");
  cplx total{};
  // outer polynomial
  const cplx x = (z - outer_.center) / outer_.half;
  const cplx scale = std::pow(outer_.half, -k);
  if (outer_.basis == OuterPoly::Basis::Monomial) {
    cplx acc{};
    const auto n = static_cast<int>(outer_.coeffs.size());
    for (int j = n - 1; j >= k; --j) {
      double f = 1.0;
      for (int i = 0; i < k; ++i) f *= j - i;
      acc = acc * x + outer_.coeffs[j] * f;
    }
    total += acc * scale;
  } else {
    std::vector<cplx> c = outer_.coeffs;
    for (int i = 0; i < k; ++i) c = num::cheb_derivative(c);
    total += num::cheb_eval(c, x) * scale;
  }
  // principal parts: d^k/dz^k w^j = (-1)^k j (j+1) ... (j+k-1) w^{j+k}
  for (const auto& p : parts_) {
    if (z == p.pole) throw Error(ErrorCode::EvalAtPole, "evaluation at the pole " + to_string(ExtPoint(p.pole)));
    const cplx w = 1.0 / (z - p.pole);
    cplx acc{};
    for (std::size_t j = p.coeffs.size(); j-- > 1;) {
      double f = 1.0;
      for (int i = 0; i < k; ++i) f *= static_cast<double>(j) + i;
      acc = acc * w + p.coeffs[j] * f;
    }
    acc *= w;  // lowest power is w^1
    total += acc * std::pow(w, k) * (k % 2 ? -1.0 : 1.0);
  }
  return total;
}

cplx eval_deriv(const RationalFn& r, cplx z, int k) { return r.eval_deriv(z, k); }

SupNorm sup_norm(const RationalFn& r, const Boundary& boundary, std::size_t samples) {
  const bool closed = std::holds_alternative<Curve>(boundary);
  auto point = [&](double t) {
    return closed ? std::get<Curve>(boundary).point(t) : std::get<Arc>(boundary).point(t);
  };
  const double diam = closed ? std::get<Curve>(boundary).diameter() : std::get<Arc>(boundary).diameter();
  for (const auto& p : r.parts()) {
    const double d = closed ? std::get<Curve>(boundary).distance(p.pole) : std::get<Arc>(boundary).distance(p.pole);
    if (d < exact::pole_margin * diam) throw Error(ErrorCode::PoleNearBoundary, "pole too close to the boundary");
  }
  const double lo = closed ? 0.0 : -1.0;
  const double span = closed ? two_pi : 2.0;
  const std::size_t n = std::max<std::size_t>(samples, 16);
  const std::size_t m = closed ? n : n + 1;
  const double h = span / static_cast<double>(n);
  std::vector<double> v(m);
  for (std::size_t j = 0; j < m; ++j) v[j] = std::abs(r(point(lo + h * static_cast<double>(j))));

  std::vector<std::size_t> peaks;
  for (std::size_t j = 0; j < m; ++j) {
    const double left = closed ? v[(j + m - 1) % m] : (j > 0 ? v[j - 1] : -1.0);
    const double right = closed ? v[(j + 1) % m] : (j + 1 < m ? v[j + 1] : -1.0);
    if (v[j] >= left && v[j] >= right) peaks.push_back(j);
  }
  std::sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
  if (peaks.size() > 8) peaks.resize(8);

  SupNorm best;
  for (const std::size_t j : peaks) {
    const double t0 = lo + h * static_cast<double>(j);
    if (v[j] > best.value) best = {v[j], t0, point(t0)};
    double a = t0 - h, b = t0 + h;
    if (!closed) {
      a = std::max(a, -1.0);
      b = std::min(b, 1.0);
    }
    const auto mx = num::golden_max([&](double t) { return std::abs(r(point(t))); }, a, b, 1e-12);
    if (mx.value > best.value) best = {mx.value, mx.x, point(mx.x)};
  }
  if (closed) best.t = std::fmod(best.t + two_pi, two_pi);
  return best;
}

cplx contour_derivative(const std::function<cplx(cplx)>& f, cplx z0, int m, double radius,
                        std::size_t nodes) {
  cplx s{};
  for (std::size_t j = 0; j < nodes; ++j) {
    const double th = two_pi * static_cast<double>(j) / static_cast<double>(nodes);
    s += f(z0 + std::polar(radius, th)) * std::polar(1.0, -m * th);
  }
  return s * num::factorial(m) / (static_cast<double>(nodes) * std::pow(radius, m));
}

}  // namespace gf
