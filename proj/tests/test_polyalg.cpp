#include <random>

#include "doctest.h"
#include "edd/poly.hpp"

using namespace edd;

namespace {

Number q(long n, long d = 1) { return Number(Rational(mpz_class(n), mpz_class(d))); }
Number gi(long re, long im) { return Number(GaussianRational(re, im)); }

QPoly poly(std::vector<Number> c) { return QPoly(std::move(c)); }

// Independent oracle: determinant of the Sylvester matrix by Gaussian
// elimination over Q(i).
Number sylvester_resultant(const QPoly& p, const QPoly& r) {
  int m = p.degree(), n = r.degree();
  int size = m + n;
  std::vector<std::vector<Number>> M(size, std::vector<Number>(size, Number(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) M[i][i + j] = p.coeff(m - j);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) M[n + i][i + j] = r.coeff(n - j);
  Number det(1);
  for (int c = 0; c < size; ++c) {
    int piv = -1;
    for (int r2 = c; r2 < size; ++r2)
      if (!M[r2][c].is_zero()) { piv = r2; break; }
    if (piv < 0) return Number(0);
    if (piv != c) { std::swap(M[piv], M[c]); det = -det; }
    det *= M[c][c];
    for (int r2 = c + 1; r2 < size; ++r2) {
      Number f = M[r2][c] / M[c][c];
      for (int k = c; k < size; ++k) M[r2][k] -= f * M[c][k];
    }
  }
  return det;
}

QPoly random_qpoly(std::mt19937_64& rng, int deg) {
  std::uniform_int_distribution<long> d(-9, 9);
  std::vector<Number> c;
  for (int i = 0; i <= deg; ++i) c.push_back(gi(d(rng), d(rng)));
  if (c.back().is_zero()) c.back() = Number(1);
  return QPoly(c);
}

Poly2 cusp() { return Poly2::y().pow(2) - Poly2::x().pow(3); }

}  // namespace

TEST_CASE("univariate resultants") {
  Number a = gi(2, 1), b = q(-3, 5);
  CHECK(resultant(poly({-a, 1}), poly({-b, 1})) == a - b);
  std::mt19937_64 rng(3);
  for (int k = 0; k < 30; ++k) {
    QPoly p = random_qpoly(rng, 1 + k % 5), r = random_qpoly(rng, 1 + (k * 7) % 6);
    Number res = resultant(p, r);
    CHECK(res == sylvester_resultant(p, r));
    long sign = (p.degree() * r.degree()) % 2 ? -1 : 1;
    CHECK(resultant(r, p) == res * Number(sign));
    CHECK(resultant(p, p.derivative()).is_zero() == (gcd(p, p.derivative()).degree() > 0));
  }
  QPoly sq = poly({1, 2, 1});  // (x+1)^2
  CHECK(resultant(sq, sq.derivative()).is_zero());
  CHECK_THROWS(resultant(QPoly(Number(2)), QPoly(Number(3))));
}

TEST_CASE("bivariate resultants") {
  Poly2 x = Poly2::x(), y = Poly2::y();
  // Res_y(y^2 - x, y) = -x
  QPoly r = resultant_y(y.pow(2) - x, y);
  CHECK(r == poly({0, -1}));
  // Res_y(y^2 - x^3, g) for the cusp critical polynomial at u = (1/2, 1/3):
  // every value at x0 matches the Sylvester determinant of the fibres.
  Number u1 = q(1, 2), u2 = q(1, 3);
  Poly2 f = cusp();
  Poly2 g = (x - Poly2(u1)) * f.dy() - (y - Poly2(u2)) * f.dx();
  QPoly R = resultant_y(f, g);
  for (long x0 = -3; x0 <= 3; ++x0) {
    Number xv = q(x0, 2);
    CHECK(R.eval(xv) == sylvester_resultant(f.restrict_x(xv), g.restrict_x(xv)));
  }
  // four critical abscissae plus the singular abscissa 0 of multiplicity 3
  CHECK(R.degree() == 7);
  CHECK(squarefree_part(R).degree() == 5);
  CHECK(R.coeff(0).is_zero());
}

TEST_CASE("squarefree part and decomposition") {
  QPoly xm1 = poly({-1, 1});
  CHECK(squarefree_part(xm1.pow(3)) == xm1);
  QPoly x2p1 = poly({1, 0, 1});
  CHECK(squarefree_part(x2p1) == x2p1);
  CHECK(squarefree_part(poly({0, 0, -1, 1})) == poly({0, -1, 1}));
  std::mt19937_64 rng(5);
  for (int k = 0; k < 20; ++k) {
    QPoly a = random_qpoly(rng, 1 + k % 3), b = random_qpoly(rng, 1 + k % 2);
    QPoly p = a * a * b;
    QPoly s = squarefree_part(p);
    CHECK(divmod(p, s).second.is_zero_poly());
    CHECK(gcd(s, s.derivative()).degree() == 0);
    auto parts = squarefree_decomposition(a.pow(3) * b);
    QPoly prod(Number(1));
    for (std::size_t i = 0; i < parts.size(); ++i) prod *= parts[i].pow(static_cast<unsigned>(i + 1));
    CHECK(prod == monic(a.pow(3) * b));
  }
}

TEST_CASE("bivariate gcd and exact division") {
  Poly2 x = Poly2::x(), y = Poly2::y();
  Poly2 a = y - x.pow(2), b = y + x.pow(2) + Poly2(gi(0, 1));
  Poly2 g = gcd(a * b, a * (x + y));
  CHECK(g == a.normalized());
  CHECK(divexact(a * b, a) == b);
  CHECK_THROWS(divexact(a * b + x, a));
  CHECK(squarefree_part(a * a * b).normalized() == (a * b).normalized());
  CHECK(gcd(cusp(), cusp().dx()).is_constant());
}

TEST_CASE("series arithmetic respects truncation") {
  Series s({1, 1}, 5);  // 1 + t + O(t^5)
  Series inv = s.inverse();
  for (int j = 0; j < 5; ++j) CHECK(inv.coeff(j) == Number(j % 2 ? -1 : 1));
  Series p = s * inv;
  CHECK(p.prec() == 5);
  CHECK(p.coeff(0) == Number(1));
  CHECK_FALSE((p - Series::constant(Number(1))).order().has_value());
  Series t3 = Series::monomial(Number(1), 3);
  CHECK((t3 * s).prec() == 8);
  CHECK(Series({}, 6).order() == std::nullopt);
  CHECK((t3 + Series({0, 0, 0, 0, 0, 0, 1}, 9)).order() == 3);
  CHECK(Series::from_poly(poly({0, 0, 1})).is_identically_zero() == false);
  CHECK_THROWS_AS(s.coeff(5), std::out_of_range);
}

TEST_CASE("affine lines and restriction") {
  AffineForm f{Number(1), gi(0, 1), Number(0)};  // u1 + i u2
  AffineLine L(f);
  CHECK(restrict_to_line(f, L).is_zero_poly());
  AffineForm g{Number(-1), gi(0, 1), Number(0)};  // -u1 + i u2
  QPoly r = restrict_to_line(g, L);
  CHECK(r.degree() == 1);
  Number s = -r.coeff(0) / r.coeff(1);
  auto [b1, b2] = L.base();
  auto [d1, d2] = L.direction();
  CHECK((b1 + s * d1).is_zero());
  CHECK((b2 + s * d2).is_zero());

  AffineLine M(AffineForm{gi(0, 1), Number(1), Number(0)});  // i u1 + u2
  QPoly rr = restrict_to_line(AffineForm{Number(-1), Number(0), gi(0, -3)}, M);
  Number s2 = -rr.coeff(0) / rr.coeff(1);
  auto [mb1, mb2] = M.base();
  auto [md1, md2] = M.direction();
  CHECK(mb1 + s2 * md1 == gi(0, -3));
  CHECK(mb2 + s2 * md2 == Number(-3));

  // normalization makes scalar multiples equal
  CHECK(AffineLine(AffineForm{gi(0, 2), Number(2), Number(4)}) == AffineLine(AffineForm{Number(1), gi(0, -1), gi(0, -2)}));
}

TEST_CASE("rational functions") {
  RatFunc t(poly({0, 1}));
  RatFunc r = (t * t + RatFunc(QPoly(Number(1)))) / t;  // t + 1/t
  CHECK(r.eval(Number(2)) == q(5, 2));
  CHECK(r.derivative().eval(Number(2)) == q(3, 4));
  CHECK_FALSE(r.try_eval(Number(0)).has_value());
  CHECK((r - t).num() == QPoly(Number(1)));
}
