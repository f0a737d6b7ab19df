#include "gf/greens.hpp"

#include "gf/exact_domains.hpp"
#include "support.hpp"

using namespace gf;
using gft::rel_err;

namespace {

// ellipse = Joukowski image of |w| = 2
cplx w_of(cplx z) {
  cplx w = z + std::sqrt(z - 1.0) * std::sqrt(z + 1.0);
  return std::abs(w) < 1.0 ? 1.0 / w : w;
}

double ellipse_green(cplx z) { return std::log(std::abs(w_of(z)) / 2.0); }

double ellipse_density(cplx z) {
  const cplx w = w_of(z);
  return 1.0 / (std::abs(w) * std::abs(0.5 * (1.0 - 1.0 / (w * w))));
}

}  // namespace

TEST_SUITE("greens_numeric") {
  TEST_CASE("disk oracles") {
    const Curve c = Curve::make(Circle{0.0, 1.0});
    const auto ext = solve_green(c, DomainSide::Exterior, ExtPoint::infinity());
    CHECK(std::abs(green_value(ext, 2.0) - std::log(2.0)) < 1e-12);
    const auto in = solve_green(c, DomainSide::Interior, 0.0);
    CHECK(std::abs(green_value(in, 0.5) - std::log(2.0)) < 1e-12);
    const auto half = solve_green(c, DomainSide::Interior, 0.5);
    for (double t : {0.0, 1.0, 3.0}) {
      CHECK(std::abs(normal_derivative(ext, t) - 1.0) < 1e-8);
      CHECK(std::abs(normal_derivative(in, t) - 1.0) < 1e-8);
    }
    CHECK(std::abs(normal_derivative(half, 0.0) - 3.0) < 1e-7);
    CHECK(std::abs(half.layer_normal_derivative(0.0) - 3.0) < 1e-10);
    CHECK(ext.log_capacity().has_value());
    CHECK(std::abs(*ext.log_capacity()) < 1e-12);
  }

  TEST_CASE("ellipse oracle") {
    const Curve e = Curve::make(Ellipse{0.0, 1.25, 0.75});
    const auto sol = solve_green(e, DomainSide::Exterior, ExtPoint::infinity());
    CHECK(std::abs(green_value(sol, 5.0 / 3.0) - std::log(1.5)) < 1e-10);
    for (int j = 0; j < 10; ++j) {
      const double t = two_pi * j / 10.0 + 0.1;
      const cplx z = e.point(t);
      CHECK(std::abs(normal_derivative(sol, t) - ellipse_density(z)) < 1e-8);
      CHECK(std::abs(sol.layer_normal_derivative(t) - ellipse_density(z)) < 1e-10);
      const cplx far = 1.7 * z;
      CHECK(std::abs(green_value(sol, far) - ellipse_green(far)) < 1e-10);
    }
    CHECK(std::abs(*sol.log_capacity()) < 1e-12);  // cap = R/2 = 1
  }

  TEST_CASE("spectral convergence before the round-off floor") {
    const Curve e = Curve::make(Ellipse{0.0, 1.25, 0.75});
    auto err = [&](std::size_t nq) {
      GreenOptions o;
      o.nq = nq;
      const auto sol = solve_green(e, DomainSide::Exterior, ExtPoint::infinity(), o);
      double m = 0.0;
      for (int j = 0; j < 20; ++j) {
        const double t = two_pi * j / 20.0 + 0.05;
        m = std::max(m, std::abs(sol.layer_normal_derivative(t) - ellipse_density(e.point(t))));
      }
      return m;
    };
    const double e64 = err(64), e128 = err(128);
    CHECK(e64 / e128 >= 10.0);
    CHECK(err(512) < 1e-10);
  }

  TEST_CASE("wrong-side and boundary errors") {
    const Curve c = Curve::make(Circle{0.0, 1.0});
    const auto in = solve_green(c, DomainSide::Interior, 0.3);
    CHECK_THROWS_AS(green_value(in, 2.0), Error);
    CHECK_THROWS_AS(solve_green(c, DomainSide::Interior, 3.0), Error);
    CHECK_THROWS_AS(solve_green(c, DomainSide::Interior, ExtPoint::infinity()), Error);
    CHECK_THROWS_AS(solve_green(c, DomainSide::Exterior, 1.0), Error);
    GreenOptions bad;
    bad.nq = 100;
    CHECK_THROWS_AS(GreenSolver(c, DomainSide::Interior, bad), Error);
  }

  TEST_CASE("boundary vanishing") {
    const Curve e = Curve::make(Ellipse{0.0, 2.0, 1.0});
    const auto sol = solve_green(e, DomainSide::Interior, cplx(0.3, 0.2));
    for (double t : {0.0, 1.3, 2.9, 4.4}) {
      const auto f = e.frame(t);
      CHECK(green_value(sol, f.point + 1e-6 * f.n_minus) < 1e-4);
    }
  }

  TEST_CASE("symmetry g(z, a) = g(a, z)") {
    const Curve c = Curve::make(Circle{0.0, 1.0});
    CHECK(std::abs(green_value(solve_green(c, DomainSide::Interior, 0.3), 0.6) -
                   green_value(solve_green(c, DomainSide::Interior, 0.6), 0.3)) < 1e-8);
    const Curve f = Curve::make(FourierCurve{-1, {0.1, 0.0, 1.0, cplx(0.0, 0.05), 0.08}, true});
    const GreenSolver in(f, DomainSide::Interior);
    const GreenSolver out(f, DomainSide::Exterior);
    for (int k = 0; k < 10; ++k) {
      const cplx a = gft::polar_in(0.0, 0.5), b = gft::polar_in(0.0, 0.5);
      CHECK(std::abs(in.solve(a).value(b) - in.solve(b).value(a)) < 1e-8);
      const cplx p = gft::polar_in(1.8, 3.0), q = gft::polar_in(1.8, 3.0);
      CHECK(std::abs(out.solve(p).value(q) - out.solve(q).value(p)) < 1e-8);
    }
  }

  TEST_CASE("harmonic-measure mass and positivity") {
    const Curve f = Curve::make(FourierCurve{-1, {0.1, 0.0, 1.0, cplx(0.0, 0.05), 0.08}, true});
    for (const auto& [side, pole] : {std::pair{DomainSide::Interior, ExtPoint(cplx(0.1, 0.2))},
                                     std::pair{DomainSide::Exterior, ExtPoint::infinity()},
                                     std::pair{DomainSide::Exterior, ExtPoint(cplx(2.0, -1.0))}}) {
      const auto sol = solve_green(f, side, pole);
      const int n = 256;
      double mass = 0.0;
      for (int j = 0; j < n; ++j) {
        const double t = two_pi * j / n;
        const double d = sol.layer_normal_derivative(t);
        CHECK(d > 0.0);
        mass += d * f.speed(t) * two_pi / n;
      }
      CHECK(std::abs(mass - two_pi) < 1e-8);
      for (double t : {0.2, 2.2, 4.2}) CHECK(rel_err(sol.normal_derivative(t), sol.layer_normal_derivative(t)) < 1e-8);
      for (int k = 0; k < 8; ++k) {
        const cplx z = side == DomainSide::Interior ? gft::polar_in(0.0, 0.6) : gft::polar_in(1.6, 4.0);
        CHECK(sol.value(z) > 0.0);
      }
    }
  }

  TEST_CASE("comparability of densities for two poles") {
    const Curve e = Curve::make(Ellipse{0.0, 2.0, 1.0});
    const GreenSolver in(e, DomainSide::Interior);
    const auto s1 = in.solve(cplx(0.2, 0.1)), s2 = in.solve(cplx(-0.5, -0.3));
    double lo = 1e300, hi = 0.0;
    for (int j = 0; j < 64; ++j) {
      const double r = s1.layer_normal_derivative(two_pi * j / 64) / s2.layer_normal_derivative(two_pi * j / 64);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    CHECK(lo > 0.1);
    CHECK(hi < 10.0);
  }

  TEST_CASE("disk interior with a finite pole matches the closed form") {
    const Curve c = Curve::make(Circle{cplx(0.5, -0.2), 2.0});
    const auto sol = solve_green(c, DomainSide::Exterior, cplx(3.0, 2.0));
    for (double t : {0.0, 1.0, 2.5}) {
      const double want = exact::circle_normal_density(Circle{cplx(0.5, -0.2), 2.0}, c.point(t), cplx(3.0, 2.0));
      CHECK(rel_err(sol.normal_derivative(t), want) < 1e-8);
    }
  }
}
