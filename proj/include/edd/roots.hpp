#pragma once

// Univariate root finding (Aberth iteration at MPFR precision), exact
// extraction of Q(i)-rational roots, and finite common zeros of bivariate
// systems.

#include <utility>
#include <vector>

#include "edd/poly.hpp"

namespace edd {

// All complex roots of p (with multiplicity) by Aberth iteration. Works best on
// squarefree input; use roots_with_multiplicity otherwise.
std::vector<ApproxComplex> aberth_roots(const QPoly& p, mpfr_prec_t prec);

struct RootSet {
  std::vector<std::pair<GaussianRational, int>> exact;   // root, multiplicity
  std::vector<std::pair<ApproxComplex, int>> approx;     // roots outside Q(i)
  std::vector<std::pair<QPoly, int>> unresolved;         // factors with no Q(i) root
};

// Distinct roots of p grouped by multiplicity (Yun), Q(i)-rational roots exact.
RootSet roots_with_multiplicity(const QPoly& p, mpfr_prec_t prec = 212);

// Q(i)-rational roots of an exact squarefree polynomial.
std::vector<GaussianRational> gaussian_rational_roots(const QPoly& p);

struct Point {
  Number x, y;
  bool is_exact() const { return x.is_exact() && y.is_exact(); }
};

struct CommonPoints {
  std::vector<Point> points;
  bool infinite = false;  // the polynomials share a curve component
  bool all_exact() const;
};

// Finite common zeros of the given polynomials.
CommonPoints common_points(const std::vector<Poly2>& polys, mpfr_prec_t prec = 212);

}  // namespace edd
