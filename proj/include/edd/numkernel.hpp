#pragma once

// Exact arithmetic over Q and Q(i), plus MPFR-backed approximate complex
// values used by the numeric fallback and the path-tracking oracle.

#include <gmpxx.h>
#include <mpfr.h>

#include <complex>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace edd {

class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("division by zero") {}
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column)
      : std::runtime_error(what + " at line " + std::to_string(line) + ", column " +
                           std::to_string(column)),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// ---------------------------------------------------------------------------
// Rational: always canonical (gcd(|num|, den) = 1, den > 0).

class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : q_(v) {}   // NOLINT(google-explicit-constructor)
  explicit Rational(const mpz_class& num) : q_(num) {}
  Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  static Rational parse(std::string_view text);

  const mpq_class& value() const { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  int sign() const { return sgn(q_); }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  Rational inverse() const;
  Rational abs() const { return Rational(mpq_class(::abs(q_))); }
  double to_double() const { return q_.get_d(); }
  std::string str() const;
  // Bit length of numerator plus denominator, a rough height measure.
  std::size_t height_bits() const;

 private:
  mpq_class q_{0};
};

// ---------------------------------------------------------------------------
// GaussianRational: re + im*i with canonical rational parts.

class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(int v) : re_(v) {}   // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }
  // Literal grammar: a/b, a/b+c/d*i, i, -i, 3*i, with optional whitespace.
  static GaussianRational parse(std::string_view text);

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_one() const { return re_.is_one() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }

  GaussianRational operator-() const { return {-re_, -im_}; }
  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  GaussianRational conj() const { return {re_, -im_}; }
  Rational norm() const { return re_ * re_ + im_ * im_; }
  GaussianRational inverse() const;
  GaussianRational pow(unsigned e) const;
  GaussianRational pow(int e) const;

  std::string str() const;
  std::size_t height_bits() const { return re_.height_bits() + im_.height_bits(); }

 private:
  Rational re_;
  Rational im_;
};

std::optional<GaussianRational> try_div(const GaussianRational& a, const GaussianRational& b);

std::ostream& operator<<(std::ostream& os, const Rational& r);
std::ostream& operator<<(std::ostream& os, const GaussianRational& g);

// ---------------------------------------------------------------------------
// BigFloat: RAII wrapper over mpfr_t. Binary operations round to the larger
// of the operand precisions.

class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = 212);
  BigFloat(double v, mpfr_prec_t prec);
  BigFloat(long v, mpfr_prec_t prec);
  BigFloat(const mpq_class& q, mpfr_prec_t prec);
  BigFloat(const BigFloat& o);
  BigFloat(BigFloat&& o) noexcept;
  BigFloat& operator=(const BigFloat& o);
  BigFloat& operator=(BigFloat&& o) noexcept;
  ~BigFloat();

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  BigFloat operator-() const;
  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
  BigFloat& operator+=(const BigFloat& o) { return *this = *this + o; }
  BigFloat& operator-=(const BigFloat& o) { return *this = *this - o; }
  BigFloat& operator*=(const BigFloat& o) { return *this = *this * o; }
  BigFloat& operator/=(const BigFloat& o) { return *this = *this / o; }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_); }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_); }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_); }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_); }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  BigFloat abs() const;
  BigFloat sqrt() const;
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long exponent() const;  // e with |v| in [2^(e-1), 2^e); LONG_MIN for zero
  // Nearest integer (ties away from zero).
  mpz_class round_to_integer() const;
  std::string str(int digits = 0) const;

  static BigFloat pow2(long e, mpfr_prec_t prec);
  static BigFloat hypot(const BigFloat& a, const BigFloat& b);
  static BigFloat atan2(const BigFloat& y, const BigFloat& x);
  static BigFloat cos(const BigFloat& a);
  static BigFloat sin(const BigFloat& a);
  static BigFloat pi(mpfr_prec_t prec);

 private:
  mpfr_t v_;
};

// ---------------------------------------------------------------------------
// ApproxComplex

class ApproxComplex {
 public:
  explicit ApproxComplex(mpfr_prec_t prec = 212) : re_(prec), im_(prec) {}
  ApproxComplex(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {}
  ApproxComplex(double re, double im, mpfr_prec_t prec) : re_(re, prec), im_(im, prec) {}

  const BigFloat& re() const { return re_; }
  const BigFloat& im() const { return im_; }
  mpfr_prec_t precision() const { return std::max(re_.precision(), im_.precision()); }

  ApproxComplex operator-() const { return {-re_, -im_}; }
  friend ApproxComplex operator+(const ApproxComplex& a, const ApproxComplex& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend ApproxComplex operator-(const ApproxComplex& a, const ApproxComplex& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend ApproxComplex operator*(const ApproxComplex& a, const ApproxComplex& b);
  friend ApproxComplex operator/(const ApproxComplex& a, const ApproxComplex& b);
  ApproxComplex& operator+=(const ApproxComplex& o);
  ApproxComplex& operator-=(const ApproxComplex& o);
  ApproxComplex& operator*=(const ApproxComplex& o) { return *this = *this * o; }
  ApproxComplex& operator/=(const ApproxComplex& o) { return *this = *this / o; }

  ApproxComplex conj() const { return {re_, -im_}; }
  BigFloat norm() const { return re_ * re_ + im_ * im_; }
  BigFloat abs() const { return BigFloat::hypot(re_, im_); }
  ApproxComplex sqrt() const;
  bool is_finite() const { return re_.is_finite() && im_.is_finite(); }
  bool is_exact_zero() const { return re_.is_zero() && im_.is_zero(); }
  std::complex<double> to_std() const;
  std::string str(int digits = 0) const;

  static ApproxComplex polar(const BigFloat& r, const BigFloat& theta);

 private:
  BigFloat re_;
  BigFloat im_;
};

// Correctly rounded conversion of each part (round-to-nearest).
ApproxComplex to_approx(const GaussianRational& a, mpfr_prec_t precision_bits);

// Decimal digits carried by a binary precision.
int precision_digits(mpfr_prec_t bits);
// Zero tolerance used for approximate values: 10^-(digits/4).
BigFloat approx_tolerance(mpfr_prec_t bits);

// ---------------------------------------------------------------------------
// Number: an exact Gaussian rational, or an approximate complex value produced
// by the numeric fallback. Exact op exact stays exact; anything touching an
// approximate value becomes approximate.

class Number {
 public:
  Number() = default;
  Number(long v) : v_(GaussianRational(v)) {}           // NOLINT
  Number(int v) : v_(GaussianRational(v)) {}            // NOLINT
  Number(GaussianRational g) : v_(std::move(g)) {}      // NOLINT
  Number(Rational r) : v_(GaussianRational(std::move(r))) {}  // NOLINT
  Number(ApproxComplex a) : v_(std::move(a)) {}         // NOLINT

  bool is_exact() const { return std::holds_alternative<GaussianRational>(v_); }
  const GaussianRational& exact() const;
  ApproxComplex approx(mpfr_prec_t prec = 212) const;
  mpfr_prec_t precision() const;

  // Exact: structural zero. Approximate: |v| <= approx_tolerance(precision).
  bool is_zero() const;
  bool is_one() const { return (*this - Number(1)).is_zero(); }

  Number operator-() const;
  friend Number operator+(const Number& a, const Number& b);
  friend Number operator-(const Number& a, const Number& b);
  friend Number operator*(const Number& a, const Number& b);
  friend Number operator/(const Number& a, const Number& b);
  Number& operator+=(const Number& o) { return *this = *this + o; }
  Number& operator-=(const Number& o) { return *this = *this - o; }
  Number& operator*=(const Number& o) { return *this = *this * o; }
  Number& operator/=(const Number& o) { return *this = *this / o; }
  friend bool operator==(const Number& a, const Number& b) { return (a - b).is_zero(); }

  Number conj() const;
  Number pow(int e) const;
  std::complex<double> to_std() const;
  std::string str() const;

 private:
  std::variant<GaussianRational, ApproxComplex> v_;
};

std::ostream& operator<<(std::ostream& os, const Number& n);

inline bool is_zero(const Number& n) { return n.is_zero(); }
inline bool is_zero(const GaussianRational& g) { return g.is_zero(); }

}  // namespace edd
