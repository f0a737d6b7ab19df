#include "gf/extremal.hpp"

#include "gf/exact_domains.hpp"
#include "gf/factors.hpp"
#include "support.hpp"

using namespace gf;
using gft::rel_err;

namespace {

double disk_sum(const std::vector<cplx>& poles) {
  double s = 0.0;
  for (cplx a : poles) s += std::abs(std::norm(a) - 1.0) / std::norm(1.0 - a);
  return s;
}

double double_factorial(int m) {
  double r = 1.0;
  for (int j = m; j > 1; j -= 2) r *= j;
  return r;
}

double factorial(int m) {
  double r = 1.0;
  for (int j = 2; j <= m; ++j) r *= j;
  return r;
}

RationalFn random_rational() {
  std::vector<PrincipalPart> parts;
  const int m = 1 + int(gft::uniform(0, 3));
  for (int i = 0; i < m; ++i) {
    PrincipalPart p{gft::polar_in(0.6, 2.0), {0.0}};
    const int d = 1 + int(gft::uniform(0, 3));
    for (int j = 0; j < d; ++j) p.coeffs.push_back(cplx(gft::uniform(-1, 1), gft::uniform(-1, 1)));
    parts.push_back(p);
  }
  OuterPoly o;
  for (int j = 0; j < 4; ++j) o.coeffs.push_back(cplx(gft::uniform(-1, 1), gft::uniform(-1, 1)));
  return make_rational(o, parts);
}

}  // namespace

TEST_SUITE("extremal") {
  TEST_CASE("blaschke examples") {
    CHECK(std::abs(std::abs(extremal_blaschke({0.5}).fn.eval_deriv(1.0, 1)) - 3.0) < 1e-12);
    CHECK(std::abs(std::abs(extremal_blaschke({0.5, 0.5}).fn.eval_deriv(1.0, 1)) - 6.0) < 1e-12);
    const auto out = extremal_blaschke({2.0, 3.0});
    CHECK(out.family == "blaschke_outside");
    CHECK(std::abs(std::abs(out.fn.eval_deriv(1.0, 1)) - 5.0) < 1e-12);
    CHECK(extremal_blaschke({0.5}).family == "blaschke_inside");
  }

  TEST_CASE("blaschke errors") {
    auto code = [](std::vector<cplx> p) {
      try {
        extremal_blaschke(p);
      } catch (const Error& e) {
        return e.code();
      }
      return ErrorCode::SolveFailed;
    };
    CHECK(code({0.5, 2.0}) == ErrorCode::MixedSides);
    CHECK(code({cplx(0, 1)}) == ErrorCode::PoleOnCircle);
  }

  TEST_CASE("random one-sided sets reach equality") {
    const Curve circle = Curve::make(Circle{0.0, 1.0});
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<cplx> poles;
      const bool inside = trial % 2;
      const int m = 1 + trial % 20;
      for (int j = 0; j < m; ++j) poles.push_back(inside ? gft::polar_in(0.1, 0.9) : gft::polar_in(1.1, 10.0));
      const auto b = extremal_blaschke(poles);
      CHECK(b.degree == m);
      CHECK(std::abs(std::abs(b.fn.eval_deriv(1.0, 1)) / disk_sum(poles) - 1.0) < 1e-10);
      CHECK(sup_norm(b.fn, circle).value <= 1.0 + 1e-9);
    }
  }

  TEST_CASE("lemniscate examples") {
    const auto a = lemniscate_power(make_polynomial({0, 0, 0, 1.0}), 1.0, 10);
    CHECK(a.degree == 9);
    CHECK(a.slack == 1);
    CHECK(std::abs(a.fn.eval_deriv(1.0, 1) - 9.0) < 1e-12);
    const auto b = lemniscate_power(make_polynomial({0, 1.0}), 1.0, 7);
    CHECK(std::abs(b.fn.eval_deriv(1.0, 2) - 42.0) < 1e-12);
    CHECK(b.slack == 0);
    const auto c = lemniscate_power(make_polynomial({0, 0, 1.0}), 1.0, 9);
    CHECK(c.degree == 8);
    CHECK(c.slack == 1);
    CHECK_THROWS_AS(lemniscate_power(make_polynomial({0, 0, 2.0}), 1.0, 9), Error);
    CHECK_THROWS_AS(lemniscate_power(make_polynomial({0, 0, 1.0}), 1.0, 1), Error);
  }

  TEST_CASE("lemniscate ratio trend on the circle") {
    const Curve circle = Curve::make(Circle{0.0, 1.0});
    for (int offset : {0, 1}) {
      double prev = 0.0;
      for (int m = 1; m <= 20; ++m) {
        const int n = 3 * m + offset;
        const auto s = lemniscate_power(make_polynomial({0, 0, 0, 1.0}), 1.0, n);
        const double ratio = std::abs(s.fn.eval_deriv(1.0, 1)) / (n * 1.0);
        CHECK(ratio >= prev - 1e-14);
        CHECK(ratio <= 1.0 + 1e-12);
        CHECK(sup_norm(s.fn, circle).value <= 1.0 + 1e-9);
        prev = ratio;
      }
      CHECK(prev > 0.98);
    }
  }

  TEST_CASE("moebius power") {
    const Circle unit{0.0, 1.0};
    const Curve circle = Curve::make(unit);
    const auto s = mobius_power(unit, ExtPoint(2.0), 1.0, 5);
    CHECK(s.degree == 5);
    CHECK(s.fn.pole_set().poles().size() == 1);
    CHECK(s.fn.pole_set().poles()[0].at == ExtPoint(2.0));
    CHECK(s.fn.pole_set().poles()[0].order == 5);
    CHECK(std::abs(s.jacobian - 1.0) < 1e-14);
    const double ratio = std::abs(s.fn.eval_deriv(1.0, 1)) / (5 * exact::disk_normal_density(1.0, ExtPoint(2.0)));
    CHECK(ratio >= 0.8);
    CHECK(sup_norm(s.fn, circle).value <= 1.0 + 1e-9);

    const auto j = mobius_power(unit, ExtPoint(cplx(0.5, 2)), cplx(0.6, 0.8), 3);
    CHECK(rel_err(j.jacobian, 1.0 / std::norm(cplx(0.6, 0.8) - cplx(0.5, 2))) < 1e-12);

    const auto inf = mobius_power(unit, ExtPoint::infinity(), 1.0, 6);
    const auto lem = lemniscate_power(make_polynomial({0, 1.0}), 1.0, 6);
    for (cplx z : {cplx(0.3, 0.2), cplx(1.0, 0.0), cplx(-0.5, 0.7)})
      CHECK(std::abs(inf.fn(z) - lem.fn(z)) < 1e-13);
    CHECK_THROWS_AS(mobius_power(unit, ExtPoint(cplx(0, 1)), 1.0, 3), Error);
  }

  TEST_CASE("markov member on the segment") {
    const Arc seg = Arc::make(Segment{-1.0, 1.0});
    for (Endpoint e : {Endpoint::A, Endpoint::B}) {
      const auto m = markov_extremal(seg, PoleSet::make({{ExtPoint::infinity(), 50}}), e);
      CHECK(m.degree <= 50);
      CHECK(m.slack == 50 - m.degree);
      const double norm = sup_norm(m.fn, seg).value;
      CHECK(norm <= 1.0 + 1e-9);
      const cplx E = seg.endpoint(e);
      CHECK(std::abs(m.fn.eval_deriv(E, 1)) / (norm * 2500.0) >= 0.95);
      CHECK(std::abs(m.fn.eval_deriv(E, 2)) / (norm * 2500.0 * 2500.0 / 3.0) >= 0.99);
    }
    CHECK_THROWS_AS(markov_extremal(Arc::make(ChebGraph{-1.0, 1.0, {0.1, 0.0, 0.1}}),
                                    PoleSet::make({{ExtPoint::infinity(), 5}}), Endpoint::A),
                    Error);
  }

  TEST_CASE("markov member with finite poles") {
    const Arc seg = Arc::make(Segment{-1.0, 1.0});
    const OpenUp ou = OpenUp::make(seg);
    const PoleSet p = PoleSet::make({{ExtPoint::infinity(), 1}, {cplx(0, 2), 1}, {3.0, 1}});
    double prev = 2.0;
    for (int n : {1, 2, 4, 16, 40}) {
      const auto m = markov_extremal(seg, p.scaled(n), Endpoint::A);
      CHECK(m.family == "symmetrized_markov");
      CHECK(m.conditioning >= 1.0);
      const double norm = sup_norm(m.fn, seg).value;
      INFO("n=" << n);
      CHECK(norm <= 1.0 + 1e-9);
      const double f = markov_factor(ou, p.scaled(n), MarkovEndpoint::A).factor;
      const double ratio = std::abs(m.fn.eval_deriv(-1.0, 1)) / (norm * f);
      CHECK(m.fn.product_form() != nullptr);
      CHECK(m.degree == 3 * n);
      CHECK(ratio < prev);
      CHECK(ratio > 1.0);
      CHECK(ratio < 1.0 + 2e-3);
      prev = ratio;
    }
  }

  TEST_CASE("faa di bruno collapse") {
    for (int trial = 0; trial < 5; ++trial) {
      const RationalFn r = random_rational();
      for (int k = 1; k <= 3; ++k) {
        const cplx lhs = contour_derivative([&](cplx z) { return r(z * z); }, 0.0, 2 * k, 0.3, 128);
        const cplx rhs = double_factorial(2 * k - 1) * std::pow(2.0, k) * r.eval_deriv(0.0, k);
        CHECK(rel_err(lhs, rhs) < 1e-6);
      }
    }
    // the markov member in the coordinate where the endpoint sits at 0
    const Arc seg = Arc::make(Segment{-1.0, 1.0});
    const auto m = markov_extremal(seg, PoleSet::make({{ExtPoint::infinity(), 8}, {cplx(0, 2), 2}}), Endpoint::A);
    for (int k = 1; k <= 3; ++k) {
      const cplx lhs = contour_derivative([&](cplx z) { return m.fn(-1.0 + 2.0 * z * z); }, 0.0, 2 * k, 0.2, 128);
      const cplx rhs = factorial(2 * k) / factorial(k) * std::pow(2.0, k) * m.fn.eval_deriv(-1.0, k);
      CHECK(rel_err(lhs, rhs) < 1e-6);
    }
  }

  TEST_CASE("double factorial identity") {
    for (int k = 1; k <= 6; ++k)
      CHECK(factorial(2 * k) / (factorial(k) * std::pow(2.0, k)) == double_factorial(2 * k - 1));
  }
}
