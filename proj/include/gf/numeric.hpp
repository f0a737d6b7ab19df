#pragma once

// Small numerical kernels shared by the domain modules: radix-2 FFT,
// trigonometric and Chebyshev series helpers, 1-D maximization and
// polynomial extrapolation.

#include <functional>
#include <span>
#include <vector>

#include "gf/types.hpp"

namespace gf::num {

bool is_power_of_two(std::size_t n);

/// In-place radix-2 FFT. `inverse` uses the +i convention and divides by n.
void fft(std::vector<cplx>& a, bool inverse);

/// Periodic samples f(2*pi*j/N) -> derivative samples f'(2*pi*j/N).
/// N must be a power of two. The Nyquist mode is dropped.
std::vector<cplx> spectral_derivative(std::span<const cplx> samples);

/// Trigonometric interpolant of periodic samples on the uniform grid.
class TrigInterpolant {
 public:
  TrigInterpolant() = default;
  explicit TrigInterpolant(std::span<const cplx> samples);

  cplx operator()(double t) const;
  /// Coefficient of e^{ikt}, |k| < N/2.
  cplx coefficient(int k) const;
  int max_mode() const { return kmax_; }
  TrigInterpolant derivative() const;

 private:
  std::vector<cplx> coef_;  // k = -kmax..kmax
  int kmax_ = 0;
};

// ---- Chebyshev series on [-1, 1] ------------------------------------------

/// Clenshaw evaluation of sum c_k T_k(x) for complex argument.
cplx cheb_eval(std::span<const cplx> c, cplx x);
double cheb_eval(std::span<const double> c, double x);

/// Coefficients of the derivative series.
std::vector<cplx> cheb_derivative(std::span<const cplx> c);
std::vector<double> cheb_derivative(std::span<const double> c);

/// Chebyshev coefficients of the degree-n interpolant through the
/// Chebyshev extreme points x_j = cos(pi j / n), j = 0..n.
std::vector<cplx> cheb_fit_values(std::span<const cplx> values);

/// Adaptive Chebyshev fit of f on [-1, 1]; doubles the degree until the
/// tail coefficients fall below `rel_tol` relative to the largest one.
std::vector<cplx> cheb_fit(const std::function<cplx(double)>& f, double rel_tol = 1e-15,
                           std::size_t max_degree = 4096);

/// As cheb_fit, but the sampler receives all Chebyshev points of one level at
/// once (ordered from 1 down to -1), so it can post-process them jointly.
std::vector<cplx> cheb_fit_batch(
    const std::function<std::vector<cplx>(const std::vector<double>&)>& sampler,
    double rel_tol = 1e-15, std::size_t max_degree = 4096);

/// Drop trailing coefficients below `abs_tol`.
template <class T>
void trim_trailing(std::vector<T>& c, double abs_tol) {
  while (c.size() > 1 && std::abs(c.back()) <= abs_tol) c.pop_back();
}

// ---- misc ------------------------------------------------------------------

/// Golden-section maximization of f on [a, b].
struct Maximum {
  double x;
  double value;
};
Maximum golden_max(const std::function<double(double)>& f, double a, double b, double tol);

/// Value at x = 0 of the polynomial interpolating (xs, ys) (Neville).
double extrapolate_to_zero(std::span<const double> xs, std::span<const double> ys);

/// Continuous branch of sqrt along a sequence of nonzero samples; the first
/// element uses the principal branch.
std::vector<cplx> continuous_sqrt(std::span<const cplx> values);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct Quadrature {
  std::vector<double> x, w;
};
Quadrature gauss_legendre(std::size_t n);

double double_factorial(int n);
double factorial(int n);
double binomial(int n, int k);

}  // namespace gf::num
