#include "gf/geometry.hpp"

#include "support.hpp"

using namespace gf;
using gft::rel_err;

TEST_SUITE("geometry") {
  TEST_CASE("unit circle parametrization") {
    const Curve c = Curve::make(Circle{0.0, 1.0});
    for (double t : {0.0, 0.4, 2.0, 5.5}) {
      CHECK(std::abs(c.point(t) - std::polar(1.0, t)) < 1e-15);
      CHECK(std::abs(c.speed(t) - 1.0) < 1e-15);
    }
  }

  TEST_CASE("ellipse signed area is pi a b") {
    const Curve e = Curve::make(Ellipse{0.0, 2.0, 1.0});
    CHECK(rel_err(e.signed_area(), 2.0 * pi) < 1e-12);
  }

  TEST_CASE("fourier c1 = 1 reproduces the circle") {
    const Curve f = Curve::make(FourierCurve{1, {1.0}, true});
    const Curve c = Curve::make(Circle{0.0, 1.0});
    for (std::size_t j = 0; j < c.samples().size(); j += 97) CHECK(std::abs(f.samples()[j] - c.samples()[j]) < 1e-14);
  }

  TEST_CASE("clockwise fourier input is reoriented") {
    const Curve f = Curve::make(FourierCurve{-1, {2.0}, false});
    CHECK(f.signed_area() > 0.0);
    CHECK(rel_err(f.signed_area(), 4.0 * pi) < 1e-12);
  }

  TEST_CASE("frames") {
    const Curve c = Curve::make(Circle{0.0, 1.0});
    auto f = c.frame(0.0);
    CHECK(std::abs(f.point - 1.0) < 1e-15);
    CHECK(std::abs(f.n_minus - cplx(-1, 0)) < 1e-15);
    CHECK(std::abs(f.n_plus - cplx(1, 0)) < 1e-15);

    const Arc s = Arc::make(Segment{-1.0, 1.0});
    const auto g = s.frame(0.0);
    CHECK(std::abs(g.point) < 1e-15);
    CHECK(std::abs(g.n_minus - cplx(0, 1)) < 1e-15);
    CHECK(std::abs(g.n_plus - cplx(0, -1)) < 1e-15);

    const Curve e = Curve::make(Ellipse{0.0, 2.0, 1.0});
    const auto h = e.frame(pi / 2);
    CHECK(std::abs(h.point - cplx(0, 1)) < 1e-14);
    CHECK(std::abs(h.n_plus - cplx(0, 1)) < 1e-14);
  }

  TEST_CASE("arc endpoint frames are errors") {
    const Arc s = Arc::make(Segment{-1.0, 1.0});
    CHECK_THROWS_AS(s.frame(1.0), Error);
    try {
      s.frame(-1.0);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::EndpointFrame);
    }
  }

  TEST_CASE("side_of") {
    const Curve c = Curve::make(Circle{0.0, 1.0});
    CHECK(c.side_of(0.0) == Location::Interior);
    CHECK(c.side_of(3.0) == Location::Exterior);
    CHECK(c.side_of(1.0) == Location::OnBoundary);
    const Curve e = Curve::make(Ellipse{0.0, 2.0, 1.0});
    CHECK(e.side_of(1.5) == Location::Interior);
  }

  TEST_CASE("normal offsets land on the expected sides") {
    for (const CurveSpec& spec : {CurveSpec{Circle{cplx(0.3, -0.2), 0.7}}, CurveSpec{Ellipse{0.0, 2.0, 1.0}},
                                  CurveSpec{FourierCurve{-1, {0.2, 0.0, 1.0, 0.0, 0.1}, true}}}) {
      const Curve c = Curve::make(spec);
      const double d = 1e-3 * c.diameter();
      for (int j = 0; j < 64; ++j) {
        const double t = two_pi * j / 64.0;
        const auto f = c.frame(t);
        CHECK(c.side_of(f.point + d * f.n_minus) == Location::Interior);
        CHECK(c.side_of(f.point + d * f.n_plus) == Location::Exterior);
        // counterclockwise: the chord turns left of n_plus
        const cplx step = c.point(t + 1e-4) - f.point;
        CHECK((std::conj(f.n_plus) * step).imag() > 0.0);
        CHECK(std::abs(std::abs(f.n_plus) - 1.0) < 1e-14);
      }
    }
  }

  TEST_CASE("circle arclength") {
    for (double r : {0.5, 1.0, 3.0}) CHECK(rel_err(Curve::make(Circle{1.0, r}).length(), two_pi * r) < 1e-10);
  }

  TEST_CASE("construction errors") {
    const auto code = [](auto f) {
      try {
        f();
      } catch (const Error& e) {
        return e.code();
      }
      return ErrorCode::ConfigInvalid;
    };
    CHECK(code([] { Curve::make(FourierCurve{1, {1.0, 1.2}, true}); }) ==
          ErrorCode::NonSimple);
    CHECK(code([] { Curve::make(FourierCurve{-1, {1.0, 0.0, 1.0}, true}); }) == ErrorCode::DegenerateTangent);
    CHECK(code([] { Curve::make(FourierCurve{-1, {1.0}, true}); }) == ErrorCode::NotCounterclockwise);
    CHECK_THROWS_AS(Arc::make(Segment{1.0, 1.0}), Error);
  }

  TEST_CASE("cheb_graph keeps its endpoints and is a graph over the chord") {
    const Arc a = Arc::make(ChebGraph{cplx(-1, 0), cplx(1, 0), {0.125, 0.0, 0.125}});
    CHECK(std::abs(a.point(-1.0) - cplx(-1, 0)) < 1e-15);
    CHECK(std::abs(a.point(1.0) - cplx(1, 0)) < 1e-15);
    for (double x : {-0.5, 0.0, 0.3}) {
      const cplx z = a.point(x);
      CHECK(std::abs(z.real() - x) < 1e-15);
      // offset 1/8 + T2/8 = x^2/4, minus the linear interpolant 1/4
      CHECK(std::abs(z.imag() - (x * x / 4 - 0.25)) < 1e-15);
    }
  }

  TEST_CASE("nearest point") {
    const Curve e = Curve::make(Ellipse{0.0, 2.0, 1.0});
    const auto np = e.nearest(cplx(0.0, 1.5));
    CHECK(std::abs(np.point - cplx(0, 1)) < 1e-10);
    CHECK(std::abs(np.distance - 0.5) < 1e-10);
  }
}
