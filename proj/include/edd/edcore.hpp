#pragma once

// The critical system of the squared distance function on a plane curve, the
// ED degree, and the h-series of a branch.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "edd/branches.hpp"

namespace edd {

struct CurveInput {
  Poly2 f;            // squarefree
  Coords mode = Coords::Cartesian;
  bool reduced = false;  // f was replaced by its squarefree part
  Poly2 original;

  // Rejects constants; replaces f by its squarefree part.
  static CurveInput make(const Poly2& f, Coords mode = Coords::Cartesian);
  int degree() const { return f.total_degree(); }
};

// g = c0 + u1*cu1 + u2*cu2; its zeros on X are the critical points of D_u.
struct CriticalPoly {
  Poly2 c0, cu1, cu2;
  Poly2 at(const Number& u1, const Number& u2) const { return c0 + cu1.scaled(u1) + cu2.scaled(u2); }
  ApproxComplex eval(const ApproxComplex& x, const ApproxComplex& y, const ApproxComplex& u1,
                     const ApproxComplex& u2) const;
};

CriticalPoly critical_poly(const CurveInput& in);

// Squared distance D_u(x, y): (x-u1)^2 + (y-u2)^2, or (z1-v1)(z2-v2).
Number distance_value(Coords mode, const Number& x, const Number& y, const Number& u1, const Number& u2);

class UnstableCount : public std::runtime_error {
 public:
  explicit UnstableCount(const std::string& log) : std::runtime_error("unstable count: " + log) {}
};

struct EDTrial {
  GaussianRational u1, u2;
  Rational shear;
  int resultant_degree = 0;  // deg_x Res_y(f', g')
  int squarefree_degree = 0;
  int singular_overlap = 0;  // roots shared with the singular-locus resultant
  int count = 0;
  int attempt = 0;
};

struct EDResult {
  int degree = 0;
  std::uint64_t seed = 0;
  std::vector<EDTrial> trials;
};

EDResult ed_degree(const CurveInput& in, int trials = 5, std::uint64_t seed = 0);

// One ED-degree style count at an explicit data point (used by the trials).
EDTrial critical_count(const CurveInput& in, const GaussianRational& u1, const GaussianRational& u2,
                       const Rational& shear);

// h(t, u) as three series: h = s0 + u1*s1 + u2*s2.
struct HSeries {
  Series s0, s1, s2;
  int prec() const { return std::min({s0.prec(), s1.prec(), s2.prec()}); }
  AffineForm coeff(int j) const { return {s1.coeff(j), s2.coeff(j), s0.coeff(j)}; }
  bool is_exact() const { return s0.is_exact() && s1.is_exact() && s2.is_exact(); }
  bool exact_to_all_orders() const {
    return s0.exact_to_all_orders() && s1.exact_to_all_orders() && s2.exact_to_all_orders();
  }
  // h(t, u) at a fixed data point.
  Series at(const Number& u1, const Number& u2) const { return s0 + s1.scaled(u1) + s2.scaled(u2); }
};

HSeries h_series(const FiniteBranch& b, Coords mode);
HSeries h_series(const InfinityBranch& b, Coords mode);

// Morse data read off an h-series along the line {h_idx = 0}.
struct MorseData {
  std::optional<AffineLine> line;
  std::optional<int> m_generic;
  std::optional<Point> focal_point;
  std::optional<int> m_exceptional;
  bool focal_non_isolated = false;
  bool needs_more_terms = false;  // an order query answered "beyond truncation"
  bool exact = true;
};

MorseData line_morse(const HSeries& h, int idx);

}  // namespace edd
