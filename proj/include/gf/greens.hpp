#pragma once

// Numerical Green's functions of the interior and exterior of a smooth Jordan
// curve.
//
// The interior Dirichlet problem is solved with a Nystrom discretization of a
// double layer written as the real part of a Cauchy integral
//   Phi(zeta) = 1/(2 pi i) \oint mu(s) W'(s) / (W(s) - zeta) ds,
// discretized by the trapezoid rule. Exterior problems are inverted to interior
// ones through zeta = 1/(z - c) around an interior point c.

#include <memory>
#include <optional>

#include "gf/geometry.hpp"
#include "gf/types.hpp"

namespace gf {

enum class DomainSide { Interior, Exterior };

enum class NormalMethod {
  FiniteDifference,  // Richardson on g(z0 + h n)/h, cross-checked against the layer
  Layer,             // differentiate the layer representation directly
};

struct GreenOptions {
  std::size_t nq = 512;
  double fd_step = 1e-5;        // relative to the diameter
  double fd_tolerance = 1e-4;   // relative disagreement raising ExtrapolationUnstable
};

class GreenSolution;

/// Discretized curve plus a factorized system for one side; poles are cheap
/// once the solver exists.
class GreenSolver {
 public:
  GreenSolver(const Curve& curve, DomainSide side, const GreenOptions& opts = {});

  GreenSolution solve(const ExtPoint& pole) const;

  const Curve& curve() const;
  DomainSide side() const;
  const GreenOptions& options() const;

  struct Impl;

 private:
  std::shared_ptr<const Impl> impl_;
};

class GreenSolution {
 public:
  /// g(z, a); throws WrongSideEvaluation when z is not strictly on the side.
  double value(cplx z) const;

  /// dg/dn at gamma(t), normal pointing into the solution's side.
  double normal_derivative(double t, NormalMethod method = NormalMethod::FiniteDifference) const;
  double layer_normal_derivative(double t) const;

  const ExtPoint& pole() const { return pole_; }
  DomainSide side() const;
  std::size_t nq() const;
  /// Size of the trailing Fourier modes of the boundary data, relative.
  double accuracy() const { return accuracy_; }
  /// log cap(Gamma) for the exterior problem with pole at infinity.
  std::optional<double> log_capacity() const;

 private:
  friend class GreenSolver;
  struct Data;
  std::shared_ptr<const GreenSolver::Impl> solver_;
  std::shared_ptr<const Data> data_;
  ExtPoint pole_;
  double accuracy_ = 0.0;

  double value_unchecked(cplx z) const;
};

GreenSolution solve_green(const Curve& curve, DomainSide side, const ExtPoint& pole,
                          const GreenOptions& opts = {});
double green_value(const GreenSolution& sol, cplx z);
double normal_derivative(const GreenSolution& sol, double t,
                         NormalMethod method = NormalMethod::FiniteDifference);

}  // namespace gf
