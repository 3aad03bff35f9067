#include <cmath>
#include <complex>

#include "doctest.h"
#include "edd/discriminants.hpp"
#include "edd/oracle.hpp"

using namespace edd;

namespace {

Poly2 X() { return Poly2::x(); }
Poly2 Y() { return Poly2::y(); }
Poly2 cusp() { return Y().pow(2) - X().pow(3); }
Poly2 circle() { return X().pow(2) + Y().pow(2) - Poly2(1); }
Poly2 x2y_cubic() { return X().pow(2) * Y() - X() - Poly2(1); }

ApproxComplex c(double re, double im = 0) { return ApproxComplex(re, im, 212); }
std::complex<double> sd(const ApproxComplex& z) { return z.to_std(); }

bool near(const ApproxPoint& p, std::complex<double> x, std::complex<double> y, double tol = 1e-20) {
  return std::abs(sd(p.x) - x) < tol && std::abs(sd(p.y) - y) < tol;
}

}  // namespace

TEST_CASE("critical points of the circle from the centre direction") {
  // u2 x - u1 y = 0 on x^2 + y^2 = 1 with u = (3, 0): y = 0, x = +-1
  auto cl = solve_critical(CurveInput::make(circle()), c(3), c(0));
  REQUIRE(cl.count() == 2);
  CHECK(cl.unreliable.empty());
  int plus = 0, minus = 0;
  for (const auto& p : cl.points) {
    plus += near(p.z, 1, 0);
    minus += near(p.z, -1, 0);
    CHECK(p.residual < 1e-30);
    CHECK(p.second.abs().to_double() > 1e-3);
  }
  CHECK(plus == 1);
  CHECK(minus == 1);
}

TEST_CASE("foot of the perpendicular on a line") {
  auto cl = solve_critical(CurveInput::make(Y()), c(0.75, 0.5), c(-2, 1));
  REQUIRE(cl.count() == 1);
  CHECK(near(cl.points[0].z, {0.75, 0.5}, 0));
}

TEST_CASE("numeric counts agree with the exact ED degree") {
  std::vector<std::pair<Poly2, Coords>> curves = {
      {cusp(), Coords::Cartesian},
      {circle(), Coords::Cartesian},
      {X() * Y() - Poly2(1), Coords::Cartesian},
      {Y() - X().pow(2), Coords::Cartesian},
      {X().pow(2) + Y().pow(2).scaled(4) - Poly2(1), Coords::Cartesian},
      {x2y_cubic(), Coords::Isotropic},
      {Y().pow(2) - X().pow(3) - X().pow(2), Coords::Cartesian},
  };
  for (const auto& [f, mode] : curves) {
    auto in = CurveInput::make(f, mode);
    int ed = ed_degree(in, 3, 7).degree;
    auto cl = solve_critical(in, c(0.3141, -0.2718), c(-0.577, 0.1414), OracleOptions{.seed = 3});
    CHECK(cl.count() == ed);
    CHECK(cl.unreliable.empty());
    for (const auto& p : cl.points) CHECK(p.residual < 1e-28);
  }
}

TEST_CASE("singular points are excluded from the critical cloud") {
  // the nodal cubic: ED degree 5 with the node removed
  auto in = CurveInput::make(Y().pow(2) - X().pow(3) - X().pow(2));
  auto cl = solve_critical(in, c(0.42, 0.1), c(-0.33, 0.2));
  for (const auto& p : cl.points) CHECK(std::abs(sd(p.z.x)) + std::abs(sd(p.z.y)) > 1e-6);
}

TEST_CASE("circle: two Morse points run off to the isotropic point") {
  PathRequest req{c(3), c(1), c(1), c(0, 1)};
  auto tr = track_path(CurveInput::make(circle()), req);
  REQUIRE(tr.points.size() == 2);
  CHECK(tr.abutting_infinity(c(1), c(0, 1)) == 2);
  CHECK(tr.count(Fate::Survives) == 0);
  CHECK(tr.count(Fate::Lost) == 0);
}

TEST_CASE("cusp: one Morse point abuts the singular point on u1 = 0") {
  PathRequest req{c(1), c(1), c(0), c(1)};
  auto tr = track_path(CurveInput::make(cusp()), req);
  REQUIRE(tr.points.size() == 4);
  CHECK(tr.abutting_point({c(0), c(0)}) == 1);
  CHECK(tr.count(Fate::Singular) == 1);
  CHECK(tr.count(Fate::Survives) == 3);
}

TEST_CASE("x^2 y - x - 1 in isotropic coordinates: all Morse points escape at the focal point") {
  auto in = CurveInput::make(x2y_cubic(), Coords::Isotropic);
  auto tr = track_path(in, radial_path(c(1), c(0), 11));
  REQUIRE(tr.points.size() == 3);
  CHECK(tr.abutting_infinity(c(1), c(0)) == 3);
}

TEST_CASE("attractor tallies do not depend on the path") {
  auto in = CurveInput::make(cusp());
  auto a = track_path(in, radial_path(c(0), c(0.5, 0.25), 1));
  auto b = track_path(in, radial_path(c(0), c(0.5, 0.25), 2));
  CHECK(a.abutting_point({c(0), c(0)}) == 1);
  CHECK(b.abutting_point({c(0), c(0)}) == 1);
  CHECK(a.count(Fate::Survives) == b.count(Fate::Survives));
  // the assignments partition the initial points
  int total = 0;
  for (const auto& t : a.tallies()) total += t.count;
  CHECK(total == static_cast<int>(a.points.size()));
  CHECK(a.clouds.size() == a.s.size());
  CHECK(a.path.size() == a.s.size());
}

TEST_CASE("tracked counts match the symbolic Morse data of the report") {
  auto in = CurveInput::make(x2y_cubic(), Coords::Isotropic);
  auto rep = assemble_report(in);
  for (const auto& comp : rep.components)
    for (const auto& an : comp.anchors) {
      if (!an.infinity || !an.m_generic) continue;
      // a point of the line away from the focal point
      const AffineForm& l = comp.line.form();
      ApproxComplex a = l.a.approx(212), b = l.b.approx(212), cc = l.c.approx(212);
      ApproxComplex u1(212), u2(212);
      if (b.abs().to_double() > a.abs().to_double()) {
        u1 = c(0.37, 0.21);
        u2 = -(a * u1 + cc) / b;
      } else {
        u2 = c(0.37, 0.21);
        u1 = -(b * u2 + cc) / a;
      }
      auto tr = track_path(in, radial_path(u1, u2, 5));
      CHECK(tr.abutting_infinity(an.infinity->first.approx(212), an.infinity->second.approx(212)) == *an.m_generic);
    }
}

TEST_CASE("cross validation of the cusp report") {
  auto in = CurveInput::make(cusp());
  auto checks = cross_validate(in, assemble_report(in));
  REQUIRE(checks.size() == 2);
  for (const auto& c : checks) {
    CHECK(c.ok);
    CHECK(c.tracked[0] == 4);
    CHECK(c.expected == (c.exceptional ? 2 : 1));
  }
}

TEST_CASE("a survivor close to a flat singular point is not absorbed by it") {
  // y^3 = x^5 with u = (0, 0.091 + 0.079i): one regular critical point lies
  // about 0.0044 from the cusp, where the gradient is already tiny
  auto in = CurveInput::make(Y().pow(3) - X().pow(5));
  auto tr = track_path(in, radial_path(c(0), c(0.0910452, 0.0789817), 12));
  REQUIRE(tr.points.size() == 7);
  CHECK(tr.abutting_point({c(0), c(0)}) == 2);
  CHECK(tr.count(Fate::Survives) == 5);
}
