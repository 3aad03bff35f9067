#pragma once

// Polynomial and series algebra over Q(i): dense univariate polynomials over
// a coefficient ring, sparse bivariate polynomials, truncated power series,
// affine-linear forms in the data point u and rational functions.

#include <algorithm>
#include <climits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "edd/numkernel.hpp"

namespace edd {

// ---------------------------------------------------------------------------
// Dense univariate polynomial over a ring R. R needs R(0), R(1), + - *, a free
// is_zero(R) and divexact(a, b) when division is used.

template <class R>
class UPoly {
 public:
  UPoly() = default;
  UPoly(R c) { if (!is_zero(c)) c_.push_back(std::move(c)); }  // NOLINT
  explicit UPoly(std::vector<R> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UPoly monomial(R c, int e) {
    if (is_zero(c)) return {};
    std::vector<R> v(static_cast<std::size_t>(e) + 1, R(0));
    v.back() = std::move(c);
    return UPoly(std::move(v));
  }
  static UPoly x() { return monomial(R(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero_poly() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<R>& coeffs() const { return c_; }
  R coeff(int i) const {
    if (i < 0 || i > degree()) return R(0);
    return c_[static_cast<std::size_t>(i)];
  }
  const R& lc() const { return c_.back(); }
  void set_coeff(int i, R v) {
    if (i >= static_cast<int>(c_.size())) c_.resize(static_cast<std::size_t>(i) + 1, R(0));
    c_[static_cast<std::size_t>(i)] = std::move(v);
    trim();
  }

  template <class T>
  T eval(const T& t) const {
    T acc = T(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + T(*it);
    return acc;
  }

  UPoly derivative() const {
    std::vector<R> v;
    for (std::size_t i = 1; i < c_.size(); ++i) v.push_back(c_[i] * R(static_cast<long>(i)));
    return UPoly(std::move(v));
  }

  UPoly shifted(int k) const {
    if (c_.empty()) return {};
    std::vector<R> v(static_cast<std::size_t>(k), R(0));
    v.insert(v.end(), c_.begin(), c_.end());
    UPoly r;
    r.c_ = std::move(v);
    return r;
  }

  UPoly operator-() const {
    UPoly r = *this;
    for (auto& a : r.c_) a = -a;
    return r;
  }
  UPoly& operator+=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), R(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
    trim();
    return *this;
  }
  UPoly& operator-=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), R(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
    trim();
    return *this;
  }
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.c_.empty() || b.c_.empty()) return {};
    std::vector<R> v(a.c_.size() + b.c_.size() - 1, R(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = v[i + j] + a.c_[i] * b.c_[j];
    }
    return UPoly(std::move(v));
  }
  UPoly& operator*=(const UPoly& o) { return *this = *this * o; }
  UPoly scaled(const R& s) const {
    std::vector<R> v;
    v.reserve(c_.size());
    for (const auto& a : c_) v.push_back(a * s);
    return UPoly(std::move(v));
  }
  friend bool operator==(const UPoly& a, const UPoly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (!is_zero(a.c_[i] - b.c_[i])) return false;
    return true;
  }

  UPoly pow(unsigned e) const {
    UPoly r(R(1)), b = *this;
    while (e) {
      if (e & 1u) r *= b;
      e >>= 1u;
      if (e) b *= b;
    }
    return r;
  }

  // this(q(x))
  UPoly compose(const UPoly& q) const {
    UPoly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + UPoly(*it);
    return acc;
  }

 private:
  void trim() {
    while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
  }
  std::vector<R> c_;
};

template <class R>
bool is_zero(const UPoly<R>& p) {
  return p.is_zero_poly();
}

using QPoly = UPoly<Number>;   // Q(i)[x]
using YPoly = UPoly<QPoly>;    // Q(i)[x][y], outer variable y

inline Number divexact(const Number& a, const Number& b) { return a / b; }

// Division with remainder over the field Q(i).
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
QPoly divexact(const QPoly& a, const QPoly& b);
QPoly monic(const QPoly& p);
QPoly gcd(QPoly a, QPoly b);
QPoly squarefree_part(const QPoly& p);
// Yun decomposition: factors[i] is the product of the irreducible factors of
// multiplicity i + 1 (monic).
std::vector<QPoly> squarefree_decomposition(const QPoly& p);
bool is_exact(const QPoly& p);
std::string to_string(const QPoly& p, const std::string& var = "x");
ApproxComplex eval_approx(const QPoly& p, const ApproxComplex& t);

template <class R>
R ring_pow(const R& a, int e) {
  R r(1), b = a;
  while (e > 0) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

// Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b over an integral domain.
template <class R>
UPoly<R> pseudo_remainder(UPoly<R> a, const UPoly<R>& b) {
  if (b.is_zero_poly()) throw DivisionByZero();
  int db = b.degree();
  int e = a.degree() - db + 1;
  if (e <= 0) return a;
  const R& l = b.lc();
  while (!a.is_zero_poly() && a.degree() >= db) {
    int k = a.degree() - db;
    R top = a.lc();
    a = a.scaled(l) - (b.scaled(top)).shifted(k);
    --e;
  }
  if (e > 0) a = a.scaled(ring_pow(l, e));
  return a;
}

// Resultant via the subresultant PRS.
template <class R>
R resultant(UPoly<R> A, UPoly<R> B) {
  if (A.is_zero_poly() || B.is_zero_poly()) return R(0);
  if (A.degree() == 0 && B.degree() == 0)
    throw std::invalid_argument("resultant: both polynomials have degree 0");
  R s(1);
  if (A.degree() < B.degree()) {
    if ((A.degree() % 2) && (B.degree() % 2)) s = -s;
    std::swap(A, B);
  }
  if (B.degree() == 0) return s * ring_pow(B.lc(), A.degree());
  R g(1), h(1);
  for (;;) {
    int delta = A.degree() - B.degree();
    if ((A.degree() % 2) && (B.degree() % 2)) s = -s;
    UPoly<R> Rm = pseudo_remainder(A, B);
    A = B;
    R den = g * ring_pow(h, delta);
    std::vector<R> q;
    for (const auto& c : Rm.coeffs()) q.push_back(divexact(c, den));
    B = UPoly<R>(std::move(q));
    g = A.lc();
    if (delta == 0) {
      // h unchanged
    } else if (delta == 1) {
      h = g;
    } else {
      h = divexact(ring_pow(g, delta), ring_pow(h, delta - 1));
    }
    if (B.is_zero_poly()) return R(0);
    if (B.degree() == 0) break;
  }
  int da = A.degree();
  R res = ring_pow(B.lc(), da);
  if (da > 1) res = divexact(res, ring_pow(h, da - 1));
  return s * res;
}

// ---------------------------------------------------------------------------
// Sparse bivariate polynomial. Exponent pair (i, j) stands for x^i y^j, or
// z1^i z2^j in isotropic coordinates.

enum class Coords { Cartesian, Isotropic };

class Poly2 {
 public:
  using Key = std::pair<int, int>;
  Poly2() = default;
  Poly2(Number c) { add_term(0, 0, std::move(c)); }  // NOLINT
  Poly2(int c) : Poly2(Number(c)) {}                 // NOLINT
  static Poly2 x() { Poly2 p; p.add_term(1, 0, Number(1)); return p; }
  static Poly2 y() { Poly2 p; p.add_term(0, 1, Number(1)); return p; }
  static Poly2 monomial(int i, int j, Number c) { Poly2 p; p.add_term(i, j, std::move(c)); return p; }

  const std::map<Key, Number>& terms() const { return t_; }
  Number coeff(int i, int j) const;
  void add_term(int i, int j, const Number& c);
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const;
  bool is_exact() const;

  int total_degree() const;
  int degree_x() const;
  int degree_y() const;
  // Lowest total degree of a term; -1 for the zero polynomial.
  int order() const;
  Poly2 homogeneous_part(int d) const;

  Poly2 operator-() const;
  Poly2& operator+=(const Poly2& o);
  Poly2& operator-=(const Poly2& o);
  friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
  friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
  friend Poly2 operator*(const Poly2& a, const Poly2& b);
  Poly2& operator*=(const Poly2& o) { return *this = *this * o; }
  Poly2 scaled(const Number& s) const;
  Poly2 pow(unsigned e) const;
  friend bool operator==(const Poly2& a, const Poly2& b) { return (a - b).is_zero(); }

  Poly2 dx() const;
  Poly2 dy() const;
  Poly2 swapped() const;
  Number eval(const Number& x, const Number& y) const;
  ApproxComplex eval_approx(const ApproxComplex& x, const ApproxComplex& y) const;
  // f(X, Y) for polynomial substitutions X, Y.
  Poly2 compose(const Poly2& X, const Poly2& Y) const;
  Poly2 translated(const Number& a, const Number& b) const;  // f(x + a, y + b)
  Poly2 sheared(const Number& lambda) const;               // f(x + lambda*y, y)
  QPoly restrict_x(const Number& x0) const;                 // f(x0, y) in y
  QPoly restrict_y(const Number& y0) const;                 // f(x, y0) in x

  // Divide by the leading numeric coefficient in a fixed term order so that
  // scalar multiples share one representative.
  Poly2 normalized() const;

  std::string str(Coords mode = Coords::Cartesian) const;

 private:
  std::map<Key, Number> t_;
};

inline bool is_zero(const Poly2& p) { return p.is_zero(); }

YPoly to_ypoly(const Poly2& p);
Poly2 from_ypoly(const YPoly& p);
QPoly resultant_y(const Poly2& p, const Poly2& q);
QPoly resultant_x(const Poly2& p, const Poly2& q);

QPoly content(const YPoly& p);
YPoly primitive_part(const YPoly& p);
Poly2 gcd(const Poly2& a, const Poly2& b);
// Exact quotient; throws std::domain_error when b does not divide a.
Poly2 divexact(const Poly2& a, const Poly2& b);
Poly2 squarefree_part(const Poly2& f);

// ---------------------------------------------------------------------------
// Truncated power series sum c_j t^j, j < prec. Coefficients at or beyond prec
// are unknown. prec == kExactSeries marks a polynomial known to all orders.

class Series {
 public:
  static constexpr int kExactSeries = INT_MAX / 4;

  Series() = default;
  explicit Series(int prec) : prec_(prec) {}
  Series(std::vector<Number> c, int prec);
  static Series constant(Number c, int prec = kExactSeries);
  static Series monomial(Number c, int e, int prec = kExactSeries);
  static Series from_poly(const QPoly& p) { return Series(p.coeffs(), kExactSeries); }

  int prec() const { return prec_; }
  bool exact_to_all_orders() const { return prec_ >= kExactSeries; }
  bool is_exact() const;
  Number coeff(int j) const;
  const std::vector<Number>& coeffs() const { return c_; }
  // Index of the first nonzero coefficient, or nullopt when every known
  // coefficient vanishes ("ord > prec").
  std::optional<int> order() const;
  bool is_identically_zero() const { return exact_to_all_orders() && !order(); }

  Series operator-() const;
  friend Series operator+(const Series& a, const Series& b);
  friend Series operator-(const Series& a, const Series& b);
  friend Series operator*(const Series& a, const Series& b);
  Series scaled(const Number& s) const;
  Series shifted(int k) const;                         // t^k * this
  Series derivative() const;                           // d/dt
  Series euler_derivative() const;                     // t d/dt
  Series substitute_monomial(const Number& xi, int m) const;  // this(xi * t^m)
  Series truncated(int prec) const;
  // 1 / this; requires c_0 != 0.
  Series inverse() const;
  Series pow(unsigned e) const;

 private:
  void trim();
  std::vector<Number> c_;
  int prec_ = kExactSeries;
};

// Sum a_ij x(t)^i y(t)^j.
Series eval_series(const Poly2& f, const Series& x, const Series& y);

// ---------------------------------------------------------------------------
// a*u1 + b*u2 + c

struct AffineForm {
  Number a, b, c;
  bool is_constant() const { return a.is_zero() && b.is_zero(); }
  bool is_zero() const { return is_constant() && c.is_zero(); }
  bool is_exact() const { return a.is_exact() && b.is_exact() && c.is_exact(); }
  Number eval(const Number& u1, const Number& u2) const { return a * u1 + b * u2 + c; }
  friend AffineForm operator+(const AffineForm& x, const AffineForm& y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c};
  }
  AffineForm scaled(const Number& s) const { return {a * s, b * s, c * s}; }
  std::string str(Coords mode = Coords::Cartesian) const;
};

// The line {a*u1 + b*u2 + c = 0}, normalized so the first nonzero of (a, b)
// equals 1.
class AffineLine {
 public:
  explicit AffineLine(const AffineForm& f);
  const AffineForm& form() const { return f_; }
  // Exact parametrization u(s) = base + s*direction.
  std::pair<Number, Number> base() const;
  std::pair<Number, Number> direction() const;
  bool contains(const Number& u1, const Number& u2) const { return f_.eval(u1, u2).is_zero(); }
  bool is_exact() const { return f_.is_exact(); }
  friend bool operator==(const AffineLine& x, const AffineLine& y) {
    return x.f_.a == y.f_.a && x.f_.b == y.f_.b && x.f_.c == y.f_.c;
  }
  std::string str(Coords mode = Coords::Cartesian) const;

 private:
  AffineForm f_;
};

// form(base + s*direction) as a polynomial of degree <= 1 in s.
QPoly restrict_to_line(const AffineForm& form, const AffineLine& line);

// ---------------------------------------------------------------------------
// Rational function num/den in one variable over Q(i).

class RatFunc {
 public:
  RatFunc() : num_(), den_(Number(1)) {}
  RatFunc(QPoly num) : num_(std::move(num)), den_(Number(1)) {}  // NOLINT
  RatFunc(QPoly num, QPoly den);

  const QPoly& num() const { return num_; }
  const QPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero_poly(); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc operator-() const { return RatFunc(-num_, den_); }
  RatFunc derivative() const;
  // Throws DivisionByZero at a pole.
  Number eval(const Number& t) const;
  std::optional<Number> try_eval(const Number& t) const;

 private:
  QPoly num_, den_;
};

}  // namespace edd
