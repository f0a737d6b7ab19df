#include "gf/rational.hpp"

#include "gf/extremal.hpp"
#include "support.hpp"

using namespace gf;
using gft::rel_err;

namespace {

RationalFn runge() {
  return make_rational({}, {{cplx(0, 0.1), {0.0, cplx(0, -0.05)}}, {cplx(0, -0.1), {0.0, cplx(0, 0.05)}}});
}

RationalFn chebyshev(int n) {
  OuterPoly p;
  p.basis = OuterPoly::Basis::Chebyshev;
  p.coeffs.assign(n + 1, 0.0);
  p.coeffs[n] = 1.0;
  return make_rational(p, {});
}

RationalFn mixed() {
  OuterPoly p;
  p.center = cplx(0.1, 0.2);
  p.half = 1.5;
  p.coeffs = {1.0, cplx(0.5, -0.2), cplx(0, 0.3), 0.25};
  return make_rational(p, {{cplx(2, 1), {0.0, 1.0, cplx(0.2, 0.1)}},
                           {cplx(-0.3, 0.2), {0.0, cplx(0, 0.1), 0.0, 0.02}},
                           {cplx(0, -3), {0.0, 2.0}}});
}

}  // namespace

TEST_SUITE("rational") {
  TEST_CASE("construction") {
    const RationalFn z = make_polynomial({0.0, 1.0});
    CHECK(z.degree() == 1);
    CHECK(std::abs(z(cplx(0.3, 0.4)) - cplx(0.3, 0.4)) < 1e-15);

    const RationalFn r = make_rational({}, {{2.0, {0.0, 1.0}}});
    CHECK(r.degree() == 1);
    CHECK(std::abs(r(0.0) + 0.5) < 1e-15);

    const RationalFn s = make_rational({}, {{cplx(0, 1), {0.0, 0.0, 1.0}}});
    CHECK(s.degree() == 2);
    const cplx w = cplx(0.5, 0.5);
    CHECK(rel_err(s(w), 1.0 / ((w - cplx(0, 1)) * (w - cplx(0, 1)))) < 1e-15);

    CHECK(mixed().degree() == 3 + 2 + 3 + 1);
    CHECK(mixed().outer_degree() == 3);
    const PoleSet ps = mixed().pole_set();
    CHECK(ps.total_order() == 9);

    // trailing zeros drop
    OuterPoly p;
    p.coeffs = {1.0, 2.0, 0.0, 0.0};
    CHECK(make_rational(p, {{1.0, {0.0, 1.0, 0.0}}}).degree() == 2);
  }

  TEST_CASE("construction errors") {
    auto code = [](auto&& f) {
      try {
        f();
      } catch (const Error& e) {
        return e.code();
      }
      return ErrorCode::SolveFailed;
    };
    CHECK(code([] { make_rational({}, {{2.0, {0.0, 1.0}}, {2.0, {0.0, 3.0}}}); }) == ErrorCode::DuplicatePole);
    CHECK(code([] { make_rational({}, {{2.0, {1.0, 1.0}}}); }) == ErrorCode::ConstantLeak);
    CHECK(code([] { runge().eval_deriv(cplx(0, 0.1), 0); }) == ErrorCode::EvalAtPole);
  }

  TEST_CASE("pole sets merge") {
    const PoleSet p = PoleSet::make({{2.0, 1}, {ExtPoint::infinity(), 3}, {2.0, 2}});
    CHECK(p.poles().size() == 2);
    CHECK(p.total_order() == 6);
    CHECK(p.scaled(3).total_order() == 18);
    CHECK_THROWS_AS(PoleSet::make({{2.0, 0}}), Error);
  }

  TEST_CASE("derivative examples") {
    const RationalFn r = make_rational({}, {{2.0, {0.0, 1.0}}});
    CHECK(std::abs(r.eval_deriv(0.0, 1) + 0.25) < 1e-15);
    CHECK(std::abs(make_polynomial({0.0, 0.0, 0.0, 1.0}).eval_deriv(1.0, 2) - 6.0) < 1e-14);
    CHECK(std::abs(std::abs(runge().eval_deriv(0.1, 1)) - 5.0) < 1e-12);
    CHECK(std::abs(runge()(0.0) - 1.0) < 1e-14);
    // Chebyshev basis
    CHECK(std::abs(chebyshev(11).eval_deriv(0.0, 1) - (-11.0)) < 1e-12);
    CHECK(std::abs(chebyshev(100).eval_deriv(1.0, 1) - 1e4) < 1e-8);
    CHECK(std::abs(gf::eval_deriv(runge(), 0.1, 1) - runge().eval_deriv(0.1, 1)) == 0.0);
  }

  TEST_CASE("derivatives match finite differences") {
    const RationalFn r = mixed();
    for (int i = 0; i < 10; ++i) {
      const cplx z = gft::polar_in(0.6, 1.4);
      for (int k = 1; k <= 4; ++k) {
        const double h = 1e-5;
        const cplx fd = (r.eval_deriv(z + h, k - 1) - r.eval_deriv(z - h, k - 1)) / (2 * h);
        const cplx fdi = (r.eval_deriv(z + cplx(0, h), k - 1) - r.eval_deriv(z - cplx(0, h), k - 1)) / cplx(0, 2 * h);
        CHECK(rel_err(fd, r.eval_deriv(z, k)) < 1e-6);
        CHECK(rel_err(fdi, r.eval_deriv(z, k)) < 1e-6);
      }
    }
  }

  TEST_CASE("sup norm examples") {
    const Curve circle = Curve::make(Circle{0.0, 1.0});
    const Arc seg = Arc::make(Segment{-1.0, 1.0});
    CHECK(std::abs(sup_norm(make_polynomial({0, 0, 0, 0, 0, 0, 0, 1.0}), circle).value - 1.0) < 1e-12);
    CHECK(std::abs(sup_norm(chebyshev(5), seg).value - 1.0) < 1e-12);
    const SupNorm s = sup_norm(runge(), seg);
    CHECK(std::abs(s.value - 1.0) < 1e-12);
    CHECK(std::abs(s.point) < 1e-6);
    CHECK_THROWS_AS(sup_norm(make_rational({}, {{cplx(0.5, 1e-14), {0.0, 1.0}}}), seg), Error);
  }

  TEST_CASE("sup norm is stable under refinement") {
    const Curve ell = Curve::make(Ellipse{0.0, 1.25, 0.75});
    const Arc seg = Arc::make(Segment{-1.0, 1.0});
    for (const Boundary& b : {Boundary(ell), Boundary(seg)}) {
      for (const RationalFn& r : {mixed(), runge(), chebyshev(40)}) {
        const double a = sup_norm(r, b, 4096).value, c = sup_norm(r, b, 8192).value;
        CHECK(std::abs(a - c) < 1e-8 * std::max(1.0, a));
      }
    }
  }

  TEST_CASE("blaschke products have unit norm") {
    const Curve circle = Curve::make(Circle{0.0, 1.0});
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<cplx> poles;
      const bool inside = trial % 2 == 0;
      const int m = 1 + trial;
      for (int j = 0; j < m; ++j) poles.push_back(inside ? gft::polar_in(0.1, 0.9) : gft::polar_in(1.1, 10.0));
      const auto b = extremal_blaschke(poles);
      CHECK(std::abs(sup_norm(b.fn, circle).value - 1.0) < 1e-10);
    }
  }

  TEST_CASE("product form agrees with partial fractions") {
    std::vector<cplx> poles = {cplx(0.3, 0.2), cplx(-0.5, 0.1), cplx(0.1, -0.6)};
    const auto b = extremal_blaschke(poles);
    REQUIRE(b.fn.product_form() != nullptr);
    for (int i = 0; i < 10; ++i) {
      const cplx z = gft::polar_in(0.95, 1.05);
      for (int k = 0; k <= 4; ++k) CHECK(rel_err(b.fn.eval_deriv(z, k), b.fn.eval_partial(z, k)) < 1e-10);
    }
    const auto m = mobius_power(Circle{0.0, 1.0}, ExtPoint(2.0), 1.0, 4);
    REQUIRE(m.fn.product_form() != nullptr);
    for (int k = 0; k <= 3; ++k) CHECK(rel_err(m.fn.eval_deriv(cplx(0.6, 0.8), k), m.fn.eval_partial(cplx(0.6, 0.8), k)) < 1e-10);
  }

  TEST_CASE("contour derivative") {
    const RationalFn r = mixed();
    const cplx z0 = cplx(0.8, 0.1);
    for (int m = 0; m <= 3; ++m)
      CHECK(rel_err(contour_derivative([&](cplx z) { return r(z); }, z0, m, 0.2, 128), r.eval_deriv(z0, m)) < 1e-10);
  }
}
