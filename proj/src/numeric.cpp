#include "gf/numeric.hpp"

#include <algorithm>
#include <cmath>

namespace gf {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::NonSimple: return "NonSimple";
    case ErrorCode::DegenerateTangent: return "DegenerateTangent";
    case ErrorCode::NotCounterclockwise: return "NotCounterclockwise";
    case ErrorCode::DuplicatePole: return "DuplicatePole";
    case ErrorCode::ConstantLeak: return "ConstantLeak";
    case ErrorCode::MixedSides: return "MixedSides";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NotNormalizedAtPoint: return "NotNormalizedAtPoint";
    case ErrorCode::UnsupportedCurve: return "UnsupportedCurve";
    case ErrorCode::UnsupportedArc: return "UnsupportedArc";
    case ErrorCode::EndpointFrame: return "EndpointFrame";
    case ErrorCode::EndpointRequested: return "EndpointRequested";
    case ErrorCode::PoleOnBoundary: return "PoleOnBoundary";
    case ErrorCode::PoleOnSegment: return "PoleOnSegment";
    case ErrorCode::PoleOnArc: return "PoleOnArc";
    case ErrorCode::PoleOnCircle: return "PoleOnCircle";
    case ErrorCode::PoleNearBoundary: return "PoleNearBoundary";
    case ErrorCode::PoleOnWrongSide: return "PoleOnWrongSide";
    case ErrorCode::WrongSideEvaluation: return "WrongSideEvaluation";
    case ErrorCode::EvalAtPole: return "EvalAtPole";
    case ErrorCode::SolveFailed: return "SolveFailed";
    case ErrorCode::ExtrapolationUnstable: return "ExtrapolationUnstable";
    case ErrorCode::ExtrapolationMismatch: return "ExtrapolationMismatch";
    case ErrorCode::BranchTrackingFailed: return "BranchTrackingFailed";
  }
  return "Unknown";
}

bool is_config_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::SolveFailed:
    case ErrorCode::ExtrapolationUnstable:
    case ErrorCode::ExtrapolationMismatch:
    case ErrorCode::BranchTrackingFailed:
      return false;
    default:
      return true;
  }
}

std::string to_string(const ExtPoint& p) {
  if (p.is_infinite()) return "inf";
  const cplx z = p.value();
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.17g,%.17g)", z.real(), z.imag());
  return buf;
}

}  // namespace gf

namespace gf::num {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void fft(std::vector<cplx>& a, bool inverse) {
  const std::size_t n = a.size();
  if (!is_power_of_two(n)) throw Error(ErrorCode::ConfigInvalid, "fft size must be a power of two");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? two_pi : -two_pi) / static_cast<double>(len);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        // exact twiddles; recurrences lose a few digits at n = 4096
        const cplx w = std::polar(1.0, ang * static_cast<double>(k));
        const cplx u = a[i + k];
        const cplx v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
      }
    }
  }
  if (inverse)
    for (auto& x : a) x /= static_cast<double>(n);
}

std::vector<cplx> spectral_derivative(std::span<const cplx> samples) {
  std::vector<cplx> a(samples.begin(), samples.end());
  const auto n = static_cast<long>(a.size());
  fft(a, false);
  for (long k = 0; k < n; ++k) {
    long m = k <= n / 2 ? k : k - n;
    if (2 * k == n) m = 0;
    a[k] *= cplx(0.0, static_cast<double>(m));
  }
  fft(a, true);
  return a;
}

TrigInterpolant::TrigInterpolant(std::span<const cplx> samples) {
  std::vector<cplx> a(samples.begin(), samples.end());
  const auto n = static_cast<int>(a.size());
  fft(a, false);
  kmax_ = n / 2 - 1;
  coef_.assign(2 * kmax_ + 1, cplx{});
  for (int k = -kmax_; k <= kmax_; ++k) coef_[k + kmax_] = a[(k + n) % n] / static_cast<double>(n);
}

cplx TrigInterpolant::operator()(double t) const {
  // Horner in e^{it} from the top mode down, then shift by e^{-i kmax t}
  const cplx e = std::polar(1.0, t);
  cplx acc{};
  for (int j = static_cast<int>(coef_.size()) - 1; j >= 0; --j) acc = acc * e + coef_[j];
  return acc * std::polar(1.0, -kmax_ * t);
}

cplx TrigInterpolant::coefficient(int k) const {
  if (k < -kmax_ || k > kmax_) return {};
  return coef_[k + kmax_];
}

TrigInterpolant TrigInterpolant::derivative() const {
  TrigInterpolant d = *this;
  for (int k = -kmax_; k <= kmax_; ++k) d.coef_[k + kmax_] *= cplx(0.0, k);
  return d;
}

namespace {
template <class T, class X>
T clenshaw(std::span<const T> c, X x) {
  if (c.empty()) return T{};
  T b1{}, b2{};
  for (std::size_t k = c.size() - 1; k >= 1; --k) {
    const T b0 = c[k] + X(2.0) * x * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return c[0] + x * b1 - b2;
}

template <class T>
std::vector<T> cheb_diff(std::span<const T> c) {
  const std::size_t n = c.size();
  if (n <= 1) return {T{}};
  std::vector<T> d(n - 1, T{});
  // d_{k-1} = d_{k+1} + 2k c_k, with d_0 halved at the end
  T dk1{}, dk2{};
  for (std::size_t k = n - 1; k >= 1; --k) {
    const T dk = dk2 + 2.0 * static_cast<double>(k) * c[k];
    d[k - 1] = dk;
    dk2 = dk1;
    dk1 = dk;
  }
  d[0] *= 0.5;
  return d;
}
}  // namespace

cplx cheb_eval(std::span<const cplx> c, cplx x) { return clenshaw<cplx, cplx>(c, x); }
double cheb_eval(std::span<const double> c, double x) { return clenshaw<double, double>(c, x); }
std::vector<cplx> cheb_derivative(std::span<const cplx> c) { return cheb_diff<cplx>(c); }
std::vector<double> cheb_derivative(std::span<const double> c) { return cheb_diff<double>(c); }

std::vector<cplx> cheb_fit_values(std::span<const cplx> values) {
  const std::size_t n = values.size() - 1;
  if (n == 0) return {values[0]};
  // DCT-I via an FFT of the even extension when possible, direct sum otherwise
  std::vector<cplx> c(n + 1);
  if (is_power_of_two(2 * n)) {
    std::vector<cplx> ext(2 * n);
    for (std::size_t j = 0; j <= n; ++j) ext[j] = values[j];
    for (std::size_t j = 1; j < n; ++j) ext[2 * n - j] = values[j];
    fft(ext, false);
    for (std::size_t k = 0; k <= n; ++k) c[k] = ext[k] / static_cast<double>(n);
  } else {
    for (std::size_t k = 0; k <= n; ++k) {
      cplx s = 0.5 * (values[0] + values[n] * (k % 2 ? -1.0 : 1.0));
      for (std::size_t j = 1; j < n; ++j)
        s += values[j] * std::cos(pi * static_cast<double>(j * k) / static_cast<double>(n));
      c[k] = s * (2.0 / static_cast<double>(n));
    }
  }
  c[0] *= 0.5;
  c[n] *= 0.5;
  return c;
}

std::vector<cplx> cheb_fit_batch(
    const std::function<std::vector<cplx>(const std::vector<double>&)>& sampler, double rel_tol,
    std::size_t max_degree) {
  for (std::size_t n = 16;; n *= 2) {
    std::vector<double> xs(n + 1);
    for (std::size_t j = 0; j <= n; ++j) xs[j] = std::cos(pi * static_cast<double>(j) / static_cast<double>(n));
    xs[n / 2] = 0.0;
    auto c = cheb_fit_values(sampler(xs));
    double big = 0.0;
    for (const auto& x : c) big = std::max(big, std::abs(x));
    double tail = 0.0;
    for (std::size_t k = n - n / 8; k <= n; ++k) tail = std::max(tail, std::abs(c[k]));
    if (tail <= rel_tol * big * 8.0 || n >= max_degree) {
      trim_trailing(c, rel_tol * big);
      return c;
    }
  }
}

std::vector<cplx> cheb_fit(const std::function<cplx(double)>& f, double rel_tol,
                           std::size_t max_degree) {
  return cheb_fit_batch(
      [&f](const std::vector<double>& xs) {
        std::vector<cplx> v(xs.size());
        for (std::size_t j = 0; j < xs.size(); ++j) v[j] = f(xs[j]);
        return v;
      },
      rel_tol, max_degree);
}

Quadrature gauss_legendre(std::size_t n) {
  Quadrature q;
  q.x.resize(n);
  q.w.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Newton on P_n from the Chebyshev-like initial guess
    double x = std::cos(pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    q.x[i] = x;
    q.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return q;
}

Maximum golden_max(const std::function<double(double)>& f, double a, double b, double tol) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - r * (b - a), x2 = a + r * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + r * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - r * (b - a);
      f1 = f(x1);
    }
  }
  return f1 > f2 ? Maximum{x1, f1} : Maximum{x2, f2};
}

double extrapolate_to_zero(std::span<const double> xs, std::span<const double> ys) {
  std::vector<double> p(ys.begin(), ys.end());
  const std::size_t n = p.size();
  for (std::size_t m = 1; m < n; ++m)
    for (std::size_t i = 0; i + m < n; ++i)
      p[i] = (xs[i + m] * p[i] - xs[i] * p[i + 1]) / (xs[i + m] - xs[i]);
  return p[0];
}

std::vector<cplx> continuous_sqrt(std::span<const cplx> values) {
  std::vector<cplx> out(values.size());
  if (values.empty()) return out;
  out[0] = std::sqrt(values[0]);
  for (std::size_t i = 1; i < values.size(); ++i) {
    const cplx r = std::sqrt(values[i]);
    out[i] = std::abs(r - out[i - 1]) <= std::abs(r + out[i - 1]) ? r : -r;
  }
  return out;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double double_factorial(int n) {
  double f = 1.0;
  for (int i = n; i > 1; i -= 2) f *= i;
  return f;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

}  // namespace gf::num
