#include <map>
#include <set>
#include <tuple>

#include "doctest.h"
#include "edd/branches.hpp"

using namespace edd;

namespace {

Number q(long n, long d = 1) { return Number(Rational(mpz_class(n), mpz_class(d))); }
Number gi(long re, long im) { return Number(GaussianRational(re, im)); }
Poly2 X() { return Poly2::x(); }
Poly2 Y() { return Poly2::y(); }

BranchOptions opts(int n = 20) {
  BranchOptions o;
  o.truncation = n;
  return o;
}

Poly2 circle() { return X().pow(2) + Y().pow(2) - Poly2(1); }
Poly2 quintic() {
  return X() * Y().pow(4) - (Y().pow(5).scaled(gi(0, 1)) + Y().pow(3) - Y().pow(2).scaled(3) + Y().scaled(3) - Poly2(1));
}
Poly2 x2y_cubic() { return X().pow(2) * Y() - X() - Poly2(1); }

// f(x(t), y(t)) vanishes to the known order
void check_on_curve(const Poly2& f, const FiniteBranch& b) {
  Series r = eval_series(f, b.x, b.y);
  CHECK_FALSE(r.order().has_value());
}

bool vanishes_within_tolerance(const Series& s) {
  for (const auto& c : s.coeffs())
    if (!c.is_zero()) return false;
  return true;
}

}  // namespace

TEST_CASE("cusp has one branch with alpha 2 and beta 3") {
  Poly2 f = Y().pow(2) - X().pow(3);
  auto bs = local_branches(f, {Number(0), Number(0)}, opts());
  REQUIRE(bs.size() == 1);
  CHECK(bs[0].alpha == 2);
  CHECK(bs[0].beta == 3);
  CHECK(bs[0].exact);
  // a terminating expansion: x = lam t^2, y = lam' t^3 exactly
  CHECK(bs[0].x.exact_to_all_orders());
  CHECK(bs[0].y.exact_to_all_orders());
  check_on_curve(f, bs[0]);
}

TEST_CASE("xy splits into two smooth branches") {
  auto bs = local_branches(X() * Y(), {Number(0), Number(0)}, opts());
  REQUIRE(bs.size() == 2);
  for (const auto& b : bs) CHECK(b.alpha == 1);
}

TEST_CASE("node branches match the binomial series of sqrt(1+x)") {
  Poly2 f = Y().pow(2) - X().pow(2) * (X() + Poly2(1));
  auto bs = local_branches(f, {Number(0), Number(0)}, opts(12));
  REQUIRE(bs.size() == 2);
  // binomial(1/2, n) by the recurrence c_{n+1} = c_n (1/2 - n) / (n + 1)
  std::vector<Number> c{Number(1)};
  for (int n = 0; n < 10; ++n) c.push_back(c.back() * (q(1, 2) - Number(n)) / Number(n + 1));
  std::vector<int> signs;
  for (const auto& b : bs) {
    CHECK(b.alpha == 1);
    check_on_curve(f, b);
    // normalize so x = t
    REQUIRE(b.x.coeff(1) != Number(0));
    REQUIRE(b.x.coeffs().size() == 2);
    Number lam = b.x.coeff(1);
    Number sgn = b.y.coeff(1) / lam;
    signs.push_back(sgn == Number(1) ? 1 : -1);
    for (int n = 0; n < 9; ++n) {
      // y = sgn * x * sum c_n x^n with x = lam t
      CHECK(b.y.coeff(n + 1) == sgn * c[n] * lam.pow(n + 1));
    }
  }
  CHECK(signs[0] == -signs[1]);
}

TEST_CASE("sum of branch multiplicities equals the point multiplicity") {
  std::vector<Poly2> curves = {
      Y().pow(2) - X().pow(3),
      Y().pow(2) - X().pow(2) * (X() + Poly2(1)),
      (Y() - X().pow(2)) * (Y() + X().pow(2)),
      Y().pow(3) - X().pow(4),
      Y().pow(3) - X().pow(5),
      (Y() - X().pow(2)).pow(2) - X().pow(5),
      X() * Y() * (X() + Y()),
      Y().pow(2) - X().pow(7),
  };
  for (const auto& f : curves) {
    Point o{Number(0), Number(0)};
    auto bs = local_branches(f, o, opts(30));
    int sum = 0;
    for (const auto& b : bs) {
      sum += b.alpha;
      check_on_curve(f, b);
    }
    CHECK(sum == local_multiplicity(f, o));
  }
}

TEST_CASE("field extension is reported or degraded explicitly") {
  Poly2 f = Y().pow(2) - X().pow(2).scaled(2) - X().pow(3);
  BranchOptions strict = opts();
  strict.allow_fallback = false;
  CHECK_THROWS_AS(local_branches(f, {Number(0), Number(0)}, strict), FieldExtensionRequired);
  auto bs = local_branches(f, {Number(0), Number(0)}, opts());
  REQUIRE(bs.size() == 2);
  for (const auto& b : bs) {
    CHECK_FALSE(b.exact);
    CHECK(vanishes_within_tolerance(eval_series(f, b.x, b.y)));
  }
}

TEST_CASE("points at infinity") {
  auto pc = points_at_infinity(circle(), Coords::Cartesian);
  REQUIRE(pc.size() == 2);
  for (const auto& p : pc) {
    CHECK(p.a == Number(1));
    CHECK((p.b == gi(0, 1) || p.b == gi(0, -1)));
    CHECK(p.multiplicity == 1);
    CHECK(p.isotropic);
  }
  auto p62 = points_at_infinity(quintic(), Coords::Cartesian);
  REQUIRE(p62.size() == 2);
  bool saw_10 = false, saw_i1 = false;
  for (const auto& p : p62) {
    if (p.a == Number(1) && p.b == Number(0)) saw_10 = true;
    // [i; 1] normalized to [1; -i]
    if (p.a == Number(1) && p.b == gi(0, -1)) saw_i1 = p.isotropic;
  }
  CHECK(saw_10);
  CHECK(saw_i1);
  auto pp = points_at_infinity(Y() - X().pow(2), Coords::Cartesian);
  REQUIRE(pp.size() == 1);
  CHECK(pp[0].a == Number(0));
  CHECK(pp[0].b == Number(1));
  CHECK(pp[0].multiplicity == 2);
  auto p64 = points_at_infinity(x2y_cubic(), Coords::Isotropic);
  REQUIRE(p64.size() == 2);
  for (const auto& p : p64) CHECK(p.isotropic);
}

TEST_CASE("branches at infinity") {
  auto bc = branches_at_infinity(circle(), Number(1), gi(0, 1), Coords::Cartesian, opts());
  REQUIRE(bc.size() == 1);
  CHECK(bc[0].k == 1);
  CHECK_FALSE(bc[0].tangent_to_line_at_infinity);
  CHECK(bc[0].isotropic);
  CHECK(branches_at_infinity(circle(), Number(1), Number(0), Coords::Cartesian, opts()).empty());

  auto b64 = branches_at_infinity(x2y_cubic(), Number(0), Number(1), Coords::Isotropic, opts());
  REQUIRE(b64.size() == 1);
  CHECK(b64[0].k == 2);
  CHECK_FALSE(b64[0].tangent_to_line_at_infinity);
  auto b64b = branches_at_infinity(x2y_cubic(), Number(1), Number(0), Coords::Isotropic, opts());
  REQUIRE(b64b.size() == 1);
  CHECK(b64b[0].k == 1);

  // parabola: the branch at [0;1] is tangent to the line at infinity
  auto bp = branches_at_infinity(Y() - X().pow(2), Number(0), Number(1), Coords::Cartesian, opts());
  REQUIRE(bp.size() == 1);
  CHECK(bp[0].tangent_to_line_at_infinity);
  CHECK(bp[0].k == 2);
}

TEST_CASE("pole orders add up to the multiplicity at infinity") {
  std::vector<std::pair<Poly2, Coords>> curves = {
      {circle(), Coords::Cartesian},
      {quintic(), Coords::Cartesian},
      {x2y_cubic(), Coords::Isotropic},
      {Y() - X().pow(2), Coords::Cartesian},
      {Y().pow(2) - X().pow(3), Coords::Cartesian},
      {X().pow(3) * Y() - Y().pow(2) + Poly2(1), Coords::Cartesian},
  };
  for (const auto& [f, mode] : curves) {
    for (const auto& pt : points_at_infinity(f, mode)) {
      if (!pt.rational) continue;
      auto bs = branches_at_infinity(f, pt.a, pt.b, mode, opts(24));
      int sum = 0;
      for (const auto& b : bs) {
        CHECK(b.k >= 1);
        sum += b.k;
      }
      CHECK(sum == pt.multiplicity);
    }
  }
}

TEST_CASE("branch invariants do not depend on the coordinates chosen") {
  // rotation by (3/5, 4/5) and a translation fix the isotropic points
  Number c = q(3, 5), s = q(4, 5);
  std::vector<Poly2> curves = {circle(), quintic(), Y().pow(2) - X().pow(3) + X()};
  for (const auto& f : curves) {
    Poly2 g = f.compose(X().scaled(c) - Y().scaled(s) + Poly2(q(1, 3)), X().scaled(s) + Y().scaled(c) - Poly2(2));
    for (Number b : {gi(0, 1), gi(0, -1)}) {
      using Triple = std::tuple<int, bool, bool>;
      std::multiset<Triple> A, B;
      for (const auto& br : branches_at_infinity(f, Number(1), b, Coords::Cartesian, opts()))
        A.insert({br.k, br.tangent_to_line_at_infinity, br.isotropic});
      for (const auto& br : branches_at_infinity(g, Number(1), b, Coords::Cartesian, opts()))
        B.insert({br.k, br.tangent_to_line_at_infinity, br.isotropic});
      CHECK(A == B);
    }
  }
}
