#pragma once

// Newton-Puiseux expansion of plane curve branches at finite points and at
// points at infinity. Ramification is resolved (Duval's rational transform),
// so every branch is returned with integer exponents in a uniformizing t.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "edd/poly.hpp"
#include "edd/roots.hpp"

namespace edd {

class FieldExtensionRequired : public std::runtime_error {
 public:
  explicit FieldExtensionRequired(const std::string& edge_poly)
      : std::runtime_error("field extension required: edge polynomial " + edge_poly +
                           " has no root in Q(i)"),
        edge_poly_(edge_poly) {}
  const std::string& edge_polynomial() const { return edge_poly_; }

 private:
  std::string edge_poly_;
};

struct BranchOptions {
  int truncation = 16;
  bool allow_fallback = true;
  mpfr_prec_t precision = 212;
};

int default_truncation(int degree);  // 2 d^2 + 8
int max_truncation(int degree);      // 8 d^2 + 64

struct FiniteBranch {
  Point p;
  Series x, y;  // x(0) = p.x, y(0) = p.y
  int alpha = 1;
  std::optional<int> beta;  // nullopt: beyond truncation, or a straight line branch
  Number cx, cy;            // coefficient vector of t^alpha
  bool exact = true;
};

struct InfinityBranch {
  Number a, b;  // the point [a; b], first nonzero coordinate equal to 1
  Series P, Q;  // x = P / t^k, y = Q / t^k
  int k = 1;
  bool isotropic = false;
  bool tangent_to_line_at_infinity = false;
  bool exact = true;
};

struct PointAtInfinity {
  Number a, b;
  int multiplicity = 1;
  bool rational = true;   // coordinates in Q(i)
  bool isotropic = false;
  std::optional<QPoly> unresolved_factor;  // set when !rational
};

// A branch y = S(t), x = lam * t^e of {g = 0} at the origin, from the Newton
// polygon with respect to the first variable.
struct PuiseuxBranch {
  Number lam;
  int e = 1;
  Series S;
  bool exact = true;
};

// Requires g(0, 0) = 0 and x not dividing g.
std::vector<PuiseuxBranch> puiseux_branches(const Poly2& g, const BranchOptions& opt);

std::vector<FiniteBranch> local_branches(const Poly2& f, const Point& p, const BranchOptions& opt);

std::vector<InfinityBranch> branches_at_infinity(const Poly2& f, const Number& a, const Number& b,
                                                 Coords mode, const BranchOptions& opt);

std::vector<PointAtInfinity> points_at_infinity(const Poly2& f, Coords mode);

bool is_isotropic_direction(const Number& a, const Number& b, Coords mode);

// Sum of the local multiplicity: lowest total degree of f translated to p.
int local_multiplicity(const Poly2& f, const Point& p);

}  // namespace edd
