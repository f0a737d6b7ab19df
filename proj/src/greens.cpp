#include "gf/greens.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <vector>

#include "gf/numeric.hpp"

namespace gf {

struct GreenSolver::Impl {
  Curve curve;
  DomainSide side;
  GreenOptions opts;
  cplx c{};  // inversion center for the exterior problem
  std::size_t n = 0;
  double h = 0.0;
  std::vector<cplx> w, w1;  // nodes W(s_j) and W'(s_j) in the zeta plane
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;

  Impl(const Curve& cv, DomainSide sd, const GreenOptions& o) : curve(cv), side(sd), opts(o) {}

  // zeta-plane parameter for the curve parameter t
  double s_of(double t) const { return side == DomainSide::Interior ? t : -t; }

  cplx to_zeta(cplx z) const { return side == DomainSide::Interior ? z : 1.0 / (z - c); }

  cplx W(double s) const {
    if (side == DomainSide::Interior) return curve.point(s);
    return 1.0 / (curve.point(-s) - c);
  }
  cplx W1(double s) const {
    if (side == DomainSide::Interior) return curve.d1(s);
    const cplx d = curve.point(-s) - c;
    return curve.d1(-s) / (d * d);
  }
  cplx W2(double s) const {
    if (side == DomainSide::Interior) return curve.d2(s);
    const cplx d = curve.point(-s) - c;
    const cplx g1 = curve.d1(-s);
    return -curve.d2(-s) / (d * d) + 2.0 * g1 * g1 / (d * d * d);
  }
};

struct GreenSolution::Data {
  cplx beta{};              // pole in the zeta plane
  std::vector<cplx> phi;    // boundary values of Phi at the nodes
  num::TrigInterpolant dphi;  // dPhi/ds along the boundary
};

GreenSolver::GreenSolver(const Curve& curve, DomainSide side, const GreenOptions& opts) {
  if (opts.nq < 64 || !num::is_power_of_two(opts.nq))
    throw Error(ErrorCode::ConfigInvalid, "nq must be a power of two >= 64");
  auto im = std::make_shared<Impl>(curve, side, opts);
  im->c = curve.interior_point();
  const std::size_t n = opts.nq;
  im->n = n;
  im->h = two_pi / static_cast<double>(n);
  im->w.resize(n);
  im->w1.resize(n);
  std::vector<cplx> w2(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double s = im->h * static_cast<double>(j);
    im->w[j] = im->W(s);
    im->w1[j] = im->W1(s);
    w2[j] = im->W2(s);
  }
  Eigen::MatrixXd a(n, n);
  const double f = im->h / two_pi;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) {
        a(i, j) = 0.5 + f * std::imag(w2[i] / (2.0 * im->w1[i]));
      } else {
        a(i, j) = f * std::imag(im->w1[j] / (im->w[j] - im->w[i]));
      }
    }
  }
  im->lu.compute(a);
  if (!(im->lu.rcond() > 1e-13)) throw Error(ErrorCode::SolveFailed, "ill-conditioned Nystrom system");
  impl_ = std::move(im);
}

const Curve& GreenSolver::curve() const { return impl_->curve; }
DomainSide GreenSolver::side() const { return impl_->side; }
const GreenOptions& GreenSolver::options() const { return impl_->opts; }

GreenSolution GreenSolver::solve(const ExtPoint& pole) const {
  const Impl& im = *impl_;
  const Curve& cv = im.curve;
  if (pole.is_infinite()) {
    if (im.side == DomainSide::Interior)
      throw Error(ErrorCode::PoleOnWrongSide, "infinity is not in the interior domain");
  } else {
    const cplx a = pole.value();
    if (cv.distance(a) < 1e-8 * cv.diameter())
      throw Error(ErrorCode::PoleOnBoundary, "pole on the curve");
    const Location want = im.side == DomainSide::Interior ? Location::Interior : Location::Exterior;
    if (cv.side_of(a) != want) throw Error(ErrorCode::PoleOnWrongSide, "pole not in the requested domain");
  }

  auto d = std::make_shared<GreenSolution::Data>();
  d->beta = pole.is_infinite() ? cplx{} : im.to_zeta(pole.value());
  const std::size_t n = im.n;

  Eigen::VectorXd rhs(n);
  for (std::size_t i = 0; i < n; ++i) rhs(i) = std::log(std::abs(im.w[i] - d->beta));
  const Eigen::VectorXd mu = im.lu.solve(rhs);
  if (!mu.allFinite()) throw Error(ErrorCode::SolveFailed, "non-finite layer density");

  std::vector<cplx> muc(n);
  for (std::size_t i = 0; i < n; ++i) muc[i] = mu(i);
  const auto dmu = num::spectral_derivative(muc);

  // Phi on the boundary: Re Phi = data, Im Phi from the regularized Cauchy integral
  d->phi.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    cplx sum = im.h * dmu[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      sum += (mu(j) - mu(i)) * im.w1[j] * im.h / (im.w[j] - im.w[i]);
    }
    const cplx v = sum / cplx(0.0, two_pi);
    d->phi[i] = cplx(rhs(i), v.imag());
  }
  d->dphi = num::TrigInterpolant(num::spectral_derivative(d->phi));

  // trailing modes of the boundary data
  std::vector<cplx> spec(d->phi.begin(), d->phi.end());
  num::fft(spec, false);
  double big = 0.0, tail = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t m = std::min(k, n - k);
    big = std::max(big, std::abs(spec[k]));
    if (m >= n / 2 - n / 16) tail = std::max(tail, std::abs(spec[k]));
  }

  GreenSolution sol;
  sol.solver_ = impl_;
  sol.data_ = std::move(d);
  sol.pole_ = pole;
  sol.accuracy_ = big > 0.0 ? tail / big : 0.0;
  return sol;
}

DomainSide GreenSolution::side() const { return solver_->side; }
std::size_t GreenSolution::nq() const { return solver_->n; }

double GreenSolution::value_unchecked(cplx z) const {
  const auto& im = *solver_;
  const auto& d = *data_;
  const cplx zeta = im.to_zeta(z);
  if (zeta == d.beta) return std::numeric_limits<double>::infinity();
  // barycentric Cauchy interpolation stays accurate up to the boundary
  cplx num{}, den{};
  for (std::size_t j = 0; j < im.n; ++j) {
    const cplx diff = im.w[j] - zeta;
    if (diff == cplx{}) return -std::log(std::abs(zeta - d.beta)) + d.phi[j].real();
    const cplx q = im.w1[j] / diff;
    num += d.phi[j] * q;
    den += q;
  }
  return -std::log(std::abs(zeta - d.beta)) + std::real(num / den);
}

double GreenSolution::value(cplx z) const {
  const Location want =
      solver_->side == DomainSide::Interior ? Location::Interior : Location::Exterior;
  if (solver_->curve.side_of(z) != want)
    throw Error(ErrorCode::WrongSideEvaluation, "point is not strictly inside the domain");
  return value_unchecked(z);
}

double GreenSolution::layer_normal_derivative(double t) const {
  const auto& im = *solver_;
  const auto& d = *data_;
  const double s = im.s_of(t);
  const cplx wv = im.W(s), w1 = im.W1(s);
  const cplx nrm = cplx(0.0, 1.0) * w1 / std::abs(w1);  // into the zeta-plane interior
  const cplx dphi = d.dphi(s) / w1;
  double g = -std::real(nrm / (wv - d.beta)) + std::real(dphi * nrm);
  if (im.side == DomainSide::Exterior) g /= std::norm(im.curve.point(t) - im.c);
  return g;
}

double GreenSolution::normal_derivative(double t, NormalMethod method) const {
  const double layer = layer_normal_derivative(t);
  if (method == NormalMethod::Layer) return layer;
  const auto& im = *solver_;
  const auto fr = im.curve.frame(t);
  const cplx nrm = im.side == DomainSide::Interior ? fr.n_minus : fr.n_plus;
  const double h = im.opts.fd_step * im.curve.diameter();
  const double d1 = value_unchecked(fr.point + h * nrm) / h;
  const double d2 = value_unchecked(fr.point + 0.5 * h * nrm) / (0.5 * h);
  const double rich = 2.0 * d2 - d1;
  if (std::abs(rich - layer) > im.opts.fd_tolerance * std::abs(layer))
    throw Error(ErrorCode::ExtrapolationUnstable, "finite-difference and layer normal derivatives disagree");
  return rich;
}

std::optional<double> GreenSolution::log_capacity() const {
  if (solver_->side != DomainSide::Exterior || !pole_.is_infinite()) return std::nullopt;
  const auto& im = *solver_;
  const auto& d = *data_;
  cplx num{}, den{};
  for (std::size_t j = 0; j < im.n; ++j) {
    const cplx q = im.w1[j] / im.w[j];
    num += d.phi[j] * q;
    den += q;
  }
  return -std::real(num / den);
}

GreenSolution solve_green(const Curve& curve, DomainSide side, const ExtPoint& pole,
                          const GreenOptions& opts) {
  return GreenSolver(curve, side, opts).solve(pole);
}

double green_value(const GreenSolution& sol, cplx z) { return sol.value(z); }

double normal_derivative(const GreenSolution& sol, double t, NormalMethod method) {
  return sol.normal_derivative(t, method);
}

}  // namespace gf
