#include "gf/factors.hpp"

#include "support.hpp"

using namespace gf;
using gft::rel_err;

namespace {

PoleSet at_infinity(int n) { return PoleSet::make({{ExtPoint::infinity(), n}}); }

const OpenUp& unit_segment() {
  static const OpenUp ou = OpenUp::make(Arc::make(Segment{-1.0, 1.0}));
  return ou;
}

}  // namespace

TEST_SUITE("factors") {
  TEST_CASE("circle examples") {
    const Curve c = Curve::make(Circle{0.0, 1.0});
    for (double t : {0.0, 1.0, 4.0}) {
      const auto r = bernstein_factor_curve(c, at_infinity(7), t);
      CHECK(std::abs(r.factor - 7.0) < 1e-10);
      CHECK(r.s_minus == 0.0);
    }
    const auto in = bernstein_factor_curve(c, PoleSet::make({{0.0, 7}}), 0.0);
    CHECK(std::abs(in.factor - 7.0) < 1e-10);
    CHECK(in.s_plus == 0.0);
    const auto both = bernstein_factor_curve(c, PoleSet::make({{0.5, 1}, {2.0, 1}}), 0.0);
    CHECK(std::abs(both.s_minus - 3.0) < 1e-10);
    CHECK(std::abs(both.s_plus - 3.0) < 1e-10);
    CHECK(std::abs(both.factor - 3.0) < 1e-10);
    for (const auto& p : both.parts) CHECK(p.density > 0.0);
    CHECK_THROWS_AS(bernstein_factor_curve(c, PoleSet::make({{cplx(0, 1), 1}}), 0.0), Error);
  }

  TEST_CASE("curve factor at a plane point") {
    const Curve c = Curve::make(Circle{0.0, 1.0});
    const auto r = bernstein_factor_curve_at(c, PoleSet::make({{0.5, 2}}), cplx(0, 1));
    CHECK(std::abs(r.z0 - cplx(0, 1)) < 1e-12);
    CHECK(std::abs(r.factor - 2.0 * 0.75 / 1.25) < 1e-10);
  }

  TEST_CASE("arc examples") {
    for (int n : {1, 5, 40}) {
      CHECK(rel_err(bernstein_factor_arc(unit_segment(), at_infinity(n), 0.0).factor, n) < 1e-12);
      CHECK(rel_err(bernstein_factor_arc(unit_segment(), at_infinity(n), 0.6).factor, 1.25 * n) < 1e-12);
      CHECK(rel_err(bernstein_factor_arc(unit_segment(), at_infinity(n), 0.0, 2).factor, double(n) * n) < 1e-12);
      for (double x : {-0.9, -0.3, 0.3, 0.9})
        CHECK(rel_err(bernstein_factor_arc(unit_segment(), at_infinity(n), x).factor, n / std::sqrt(1 - x * x)) < 1e-8);
    }
    CHECK_THROWS_AS(bernstein_factor_arc(unit_segment(), at_infinity(3), 1.0), Error);
    CHECK_THROWS_AS(bernstein_factor_arc(unit_segment(), PoleSet::make({{0.2, 1}}), 0.0), Error);
  }

  TEST_CASE("markov examples") {
    for (int n : {1, 10, 100}) {
      const double n2 = double(n) * n;
      CHECK(rel_err(markov_factor(unit_segment(), at_infinity(n), MarkovEndpoint::Global).factor, n2) < 1e-10);
      CHECK(rel_err(markov_factor(unit_segment(), at_infinity(n), MarkovEndpoint::Global, 2).factor, n2 * n2 / 3) <
            1e-10);
      const OpenUp half = OpenUp::make(Arc::make(Segment{0.0, 1.0}));
      CHECK(rel_err(markov_factor(half, at_infinity(n), MarkovEndpoint::A).factor, 2 * n2) < 1e-10);
    }
    double dfact = 1.0;
    for (int k = 1; k <= 6; ++k) {
      dfact *= 2 * k - 1;
      CHECK(rel_err(markov_constant(k), std::pow(2.0, k) / dfact) < 1e-15);
      const auto r = markov_factor(unit_segment(), at_infinity(100), MarkovEndpoint::Global, k);
      CHECK(rel_err(r.factor, markov_constant(k) * std::pow(r.omega_sum, 2 * k)) < 1e-14);
    }
  }

  TEST_CASE("k = 1 markov is the plain formula") {
    const OpenUp ou = OpenUp::make(Arc::make(ChebGraph{-1.0, 1.0, {0.125, 0.0, 0.125}}));
    const PoleSet p = PoleSet::make({{ExtPoint::infinity(), 3}, {cplx(0, 2), 2}});
    for (auto e : {MarkovEndpoint::A, MarkovEndpoint::B, MarkovEndpoint::Global}) {
      const auto r = markov_factor(ou, p, e, 1);
      CHECK(r.factor == 2.0 * r.omega_sum * r.omega_sum);
    }
    const auto g = markov_factor(ou, p, MarkovEndpoint::Global);
    CHECK(g.omega_sum == std::max(g.omega_a, g.omega_b));
  }

  TEST_CASE("monotonicity and scaling") {
    const Curve ell = Curve::make(Ellipse{0.0, 1.25, 0.75});
    const PoleSet base = PoleSet::make({{ExtPoint::infinity(), 2}, {cplx(0.2, 0.1), 1}});
    const PoleSet more = PoleSet::make({{ExtPoint::infinity(), 2}, {cplx(0.2, 0.1), 1}, {cplx(2, 1), 1}, {-0.3, 1}});
    for (double t : {0.0, 1.3, 3.9}) {
      const auto a = bernstein_factor_curve(ell, base, t), b = bernstein_factor_curve(ell, more, t);
      CHECK(b.s_plus >= a.s_plus);
      CHECK(b.s_minus >= a.s_minus);
      const auto c = bernstein_factor_curve(ell, base.scaled(3), t);
      CHECK(rel_err(c.factor, 3 * a.factor) < 1e-12);
    }
    const OpenUp ou = OpenUp::make(Arc::make(ChebGraph{-1.0, 1.0, {0.125, 0.0, 0.125}}));
    const PoleSet p = PoleSet::make({{ExtPoint::infinity(), 1}, {3.0, 1}});
    for (int k : {1, 2, 3}) {
      const double m1 = markov_factor(ou, p, MarkovEndpoint::A, k).factor;
      const double m4 = markov_factor(ou, p.scaled(4), MarkovEndpoint::A, k).factor;
      CHECK(rel_err(m4, std::pow(4.0, 2 * k) * m1) < 1e-12);
    }
    const double b1 = bernstein_factor_arc(ou, p, 0.2).factor;
    CHECK(rel_err(bernstein_factor_arc(ou, p.scaled(5), 0.2).factor, 5 * b1) < 1e-12);
    CHECK(bernstein_factor_arc(ou, PoleSet::make({{ExtPoint::infinity(), 1}, {3.0, 1}, {cplx(0, 2), 1}}), 0.2).factor >
          b1);
  }

  TEST_CASE("side selection") {
    const Curve ell = Curve::make(Ellipse{0.0, 1.25, 0.75});
    const auto r = bernstein_factor_curve(ell, PoleSet::make({{cplx(0.2, 0.1), 2}, {-0.4, 1}}), 0.7);
    CHECK(r.s_plus == 0.0);
    CHECK(r.factor == r.s_minus);
    CHECK(r.s_minus > 0.0);
    const auto o = bernstein_factor_curve(ell, PoleSet::make({{ExtPoint::infinity(), 2}, {cplx(3, 0), 1}}), 0.7);
    CHECK(o.s_minus == 0.0);
    CHECK(o.factor == o.s_plus);
  }

  TEST_CASE("moebius invariance on circles") {
    const Circle circ{cplx(0.2, -0.1), 1.5};
    const Curve c = Curve::make(circ);
    const PoleSet p = PoleSet::make({{ExtPoint::infinity(), 2}, {cplx(0.3, 0.4), 3}, {cplx(2.5, 1), 1}, {-0.9, 2}});
    for (double t : {0.0, 1.0, 2.5, 5.0}) {
      const auto direct = bernstein_factor_curve(c, p, t);
      const auto via = bernstein_factor_circle_transfer(circ, p, t);
      CHECK(rel_err(via.s_plus, direct.s_plus) < 1e-10);
      CHECK(rel_err(via.s_minus, direct.s_minus) < 1e-10);
    }
  }

  TEST_CASE("numeric curve factor is invariant under reparametrization") {
    // the same circle through the Fourier route
    const Curve f = Curve::make(FourierCurve{0, {0.0, 1.0}});
    const Curve c = Curve::make(Circle{0.0, 1.0});
    const PoleSet p = PoleSet::make({{ExtPoint::infinity(), 2}, {0.5, 1}, {cplx(0, 2), 1}});
    for (double t : {0.0, 2.0}) CHECK(rel_err(bernstein_factor_curve(f, p, t).factor, bernstein_factor_curve(c, p, t).factor) < 1e-6);
  }
}
