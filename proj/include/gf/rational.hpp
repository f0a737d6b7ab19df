#pragma once

// Rational functions in partial-fraction form
//   R(z) = P0(z) + sum_i P_i(1/(z - a_i)),  P_i(0) = 0,
// with exact derivatives of every order.

#include <functional>
#include <memory>
#include <variant>
#include <vector>

#include "gf/geometry.hpp"
#include "gf/types.hpp"

namespace gf {

struct Pole {
  ExtPoint at;
  int order = 1;
};

class PoleSet {
 public:
  PoleSet() = default;
  /// Merges equal locations (orders add); orders must be >= 1.
  static PoleSet make(const std::vector<Pole>& poles);

  const std::vector<Pole>& poles() const { return poles_; }
  int total_order() const;
  PoleSet scaled(int c) const;

 private:
  std::vector<Pole> poles_;
};

/// P0(z) = sum_k c_k b_k(x), x = (z - center)/half, b_k = x^k or T_k(x).
struct OuterPoly {
  enum class Basis { Monomial, Chebyshev };
  Basis basis = Basis::Monomial;
  cplx center{};
  cplx half{1.0, 0.0};
  std::vector<cplx> coeffs;
};

/// P(w) = sum_j coeffs[j] w^j, w = 1/(z - pole); coeffs[0] must vanish.
struct PrincipalPart {
  cplx pole{};
  std::vector<cplx> coeffs;
};

/// scale * prod (z - zeros) / prod (z - poles). Partial fractions cancel badly
/// for clustered or far-out poles, so when a constructor knows this form it is
/// attached and used for evaluation.
struct ProductForm {
  cplx scale{1.0, 0.0};
  std::vector<cplx> zeros;
  std::vector<cplx> poles;  // repeated by multiplicity
};

class RationalFn {
 public:
  RationalFn() = default;

  const OuterPoly& outer() const { return outer_; }
  const std::vector<PrincipalPart>& parts() const { return parts_; }

  int outer_degree() const;
  int degree() const;  // deg P0 + sum of part degrees
  /// Poles with orders; infinity carries the outer degree when positive.
  PoleSet pole_set() const;

  cplx operator()(cplx z) const { return eval_deriv(z, 0); }
  /// k-th derivative; throws EvalAtPole at a finite pole.
  cplx eval_deriv(cplx z, int k) const;
  /// Same, from the partial fractions even when a product form is attached.
  cplx eval_partial(cplx z, int k) const;

  const ProductForm* product_form() const { return product_.get(); }

 private:
  friend RationalFn make_rational(const OuterPoly&, const std::vector<PrincipalPart>&);
  friend RationalFn with_product_form(RationalFn r, ProductForm p);
  OuterPoly outer_;
  std::vector<PrincipalPart> parts_;
  std::shared_ptr<const ProductForm> product_;
};

/// Canonical form with trailing zero coefficients dropped. Throws
/// DuplicatePole when two parts share a pole, ConstantLeak when P_i(0) != 0.
RationalFn make_rational(const OuterPoly& outer, const std::vector<PrincipalPart>& parts);

/// Attaches an equivalent product form (not checked).
RationalFn with_product_form(RationalFn r, ProductForm p);

RationalFn make_polynomial(std::vector<cplx> monomial_coeffs, cplx center = {});

cplx eval_deriv(const RationalFn& r, cplx z, int k);

struct SupNorm {
  double value = 0.0;
  double t = 0.0;    // boundary parameter of the maximizer
  cplx point{};
};

using Boundary = std::variant<Curve, Arc>;

/// max |R| over a dense parameter grid, refined by golden section near the
/// eight largest local maxima.
SupNorm sup_norm(const RationalFn& r, const Boundary& boundary, std::size_t samples = 4096);

/// m-th derivative at z0 from a trapezoid Cauchy integral on |z - z0| = radius.
cplx contour_derivative(const std::function<cplx(cplx)>& f, cplx z0, int m, double radius,
                        std::size_t nodes = 64);

}  // namespace gf
