#include "edd/numkernel.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <cmath>
#include <sstream>

namespace edd {

// ----------------------------------------------------------------- Rational

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw DivisionByZero();
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DivisionByZero();
  q_ /= o.q_;
  return *this;
}

Rational Rational::inverse() const {
  if (is_zero()) throw DivisionByZero();
  return Rational(mpq_class(1 / q_));
}

std::string Rational::str() const { return q_.get_str(); }

std::size_t Rational::height_bits() const {
  return mpz_sizeinbase(q_.get_num_mpz_t(), 2) + mpz_sizeinbase(q_.get_den_mpz_t(), 2);
}

namespace {

void skip_ws(std::string_view s, std::size_t& pos) {
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
}

bool read_integer(std::string_view s, std::size_t& pos, mpz_class& out) {
  std::size_t start = pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos == start) return false;
  out = mpz_class(std::string(s.substr(start, pos - start)));
  return true;
}

[[noreturn]] void literal_error(std::string_view what, std::size_t pos) {
  throw ParseError(std::string(what), 1, static_cast<int>(pos) + 1);
}

// unsigned rational: digits [ '/' digits ]
Rational read_unsigned_rational(std::string_view s, std::size_t& pos) {
  mpz_class num;
  if (!read_integer(s, pos, num)) literal_error("expected digits", pos);
  std::size_t save = pos;
  skip_ws(s, pos);
  if (pos < s.size() && s[pos] == '/') {
    ++pos;
    skip_ws(s, pos);
    mpz_class den;
    if (!read_integer(s, pos, den)) literal_error("expected denominator", pos);
    if (den == 0) literal_error("zero denominator", pos);
    return Rational(num, den);
  }
  pos = save;
  return Rational(num);
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  std::size_t pos = 0;
  skip_ws(text, pos);
  bool neg = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    neg = text[pos] == '-';
    ++pos;
    skip_ws(text, pos);
  }
  Rational r = read_unsigned_rational(text, pos);
  skip_ws(text, pos);
  if (pos != text.size()) literal_error("unexpected character in rational", pos);
  return neg ? -r : r;
}

// --------------------------------------------------------- GaussianRational

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (im_.is_zero() && o.im_.is_zero()) {
    re_ *= o.re_;
    return *this;
  }
  Rational r = re_ * o.re_ - im_ * o.im_;
  Rational i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

GaussianRational GaussianRational::inverse() const {
  if (is_zero()) throw DivisionByZero();
  if (im_.is_zero()) return {re_.inverse()};
  Rational n = norm().inverse();
  return {re_ * n, -im_ * n};
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.im_.is_zero()) {
    if (o.re_.is_zero()) throw DivisionByZero();
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  return *this *= o.inverse();
}

GaussianRational GaussianRational::pow(unsigned e) const {
  GaussianRational result(1);
  GaussianRational base = *this;
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return result;
}

GaussianRational GaussianRational::pow(int e) const {
  if (e >= 0) return pow(static_cast<unsigned>(e));
  return inverse().pow(static_cast<unsigned>(-e));
}

std::optional<GaussianRational> try_div(const GaussianRational& a, const GaussianRational& b) {
  if (b.is_zero()) return std::nullopt;
  return a / b;
}

std::string GaussianRational::str() const {
  if (im_.is_zero()) return re_.str();
  std::string imag;
  Rational mag = im_.abs();
  if (mag.is_one()) {
    imag = "i";
  } else {
    imag = mag.str() + "*i";
  }
  if (re_.is_zero()) return (im_.sign() < 0 ? "-" : "") + imag;
  return re_.str() + (im_.sign() < 0 ? "-" : "+") + imag;
}

GaussianRational GaussianRational::parse(std::string_view text) {
  std::size_t pos = 0;
  GaussianRational acc;
  bool any = false;
  skip_ws(text, pos);
  while (pos < text.size()) {
    bool neg = false;
    if (text[pos] == '+' || text[pos] == '-') {
      neg = text[pos] == '-';
      ++pos;
      skip_ws(text, pos);
    } else if (any) {
      literal_error("expected '+' or '-'", pos);
    }
    GaussianRational term;
    if (pos < text.size() && text[pos] == 'i') {
      ++pos;
      term = GaussianRational::i();
    } else {
      Rational r = read_unsigned_rational(text, pos);
      std::size_t save = pos;
      skip_ws(text, pos);
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        skip_ws(text, pos);
        if (pos >= text.size() || text[pos] != 'i') literal_error("expected 'i'", pos);
        ++pos;
        term = GaussianRational(Rational(0), r);
      } else if (pos < text.size() && text[pos] == 'i') {
        ++pos;
        term = GaussianRational(Rational(0), r);
      } else {
        pos = save;
        term = GaussianRational(r);
      }
    }
    acc += neg ? -term : term;
    any = true;
    skip_ws(text, pos);
  }
  if (!any) literal_error("empty literal", pos);
  return acc;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }
std::ostream& operator<<(std::ostream& os, const GaussianRational& g) { return os << g.str(); }

// ----------------------------------------------------------------- BigFloat

BigFloat::BigFloat(mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(double v, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_d(v_, v, MPFR_RNDN);
}

BigFloat::BigFloat(long v, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_si(v_, v, MPFR_RNDN);
}

BigFloat::BigFloat(const mpq_class& q, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& o) {
  mpfr_init2(v_, o.precision());
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
  mpfr_init2(v_, o.precision());
  mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
  if (this != &o) {
    mpfr_set_prec(v_, o.precision());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
  if (this != &o) mpfr_swap(v_, o.v_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::operator-() const {
  BigFloat r(precision());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
  BigFloat r(std::max(a.precision(), b.precision()));
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b) {
  BigFloat r(std::max(a.precision(), b.precision()));
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigFloat operator*(const BigFloat& a, const BigFloat& b) {
  BigFloat r(std::max(a.precision(), b.precision()));
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
  BigFloat r(std::max(a.precision(), b.precision()));
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::abs() const {
  BigFloat r(precision());
  mpfr_abs(r.v_, v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::sqrt() const {
  BigFloat r(precision());
  mpfr_sqrt(r.v_, v_, MPFR_RNDN);
  return r;
}

long BigFloat::exponent() const {
  if (!mpfr_regular_p(v_)) return LONG_MIN;
  return mpfr_get_exp(v_);
}

mpz_class BigFloat::round_to_integer() const {
  BigFloat r(precision());
  mpfr_round(r.v_, v_);
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), r.v_, MPFR_RNDN);
  return z;
}

std::string BigFloat::str(int digits) const {
  if (digits <= 0) digits = std::max(1, precision_digits(precision()));
  char* buf = nullptr;
  std::string fmt = "%." + std::to_string(digits) + "Rg";
  mpfr_asprintf(&buf, fmt.c_str(), v_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

BigFloat BigFloat::pow2(long e, mpfr_prec_t prec) {
  BigFloat r(prec);
  mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::hypot(const BigFloat& a, const BigFloat& b) {
  BigFloat r(std::max(a.precision(), b.precision()));
  mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::atan2(const BigFloat& y, const BigFloat& x) {
  BigFloat r(std::max(y.precision(), x.precision()));
  mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::cos(const BigFloat& a) {
  BigFloat r(a.precision());
  mpfr_cos(r.v_, a.v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::sin(const BigFloat& a) {
  BigFloat r(a.precision());
  mpfr_sin(r.v_, a.v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::pi(mpfr_prec_t prec) {
  BigFloat r(prec);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

// ------------------------------------------------------------ ApproxComplex

ApproxComplex operator*(const ApproxComplex& a, const ApproxComplex& b) {
  ApproxComplex r(std::max(a.precision(), b.precision()));
  mpfr_fmms(r.re_.get(), a.re_.get(), b.re_.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
  mpfr_fmma(r.im_.get(), a.re_.get(), b.im_.get(), a.im_.get(), b.re_.get(), MPFR_RNDN);
  return r;
}

ApproxComplex& ApproxComplex::operator+=(const ApproxComplex& o) {
  if (o.precision() > precision()) return *this = *this + o;
  mpfr_add(re_.get(), re_.get(), o.re_.get(), MPFR_RNDN);
  mpfr_add(im_.get(), im_.get(), o.im_.get(), MPFR_RNDN);
  return *this;
}

ApproxComplex& ApproxComplex::operator-=(const ApproxComplex& o) {
  if (o.precision() > precision()) return *this = *this - o;
  mpfr_sub(re_.get(), re_.get(), o.re_.get(), MPFR_RNDN);
  mpfr_sub(im_.get(), im_.get(), o.im_.get(), MPFR_RNDN);
  return *this;
}

ApproxComplex operator/(const ApproxComplex& a, const ApproxComplex& b) {
  BigFloat n = b.norm();
  if (n.is_zero()) throw DivisionByZero();
  ApproxComplex num = a * b.conj();
  return {num.re_ / n, num.im_ / n};
}

ApproxComplex ApproxComplex::sqrt() const {
  // principal branch: sqrt((|z|+re)/2) + i*sign(im)*sqrt((|z|-re)/2)
  BigFloat r = abs();
  BigFloat two(2L, precision());
  BigFloat a = ((r + re_) / two).sqrt();
  BigFloat b = ((r - re_) / two).sqrt();
  if (im_.sign() < 0) b = -b;
  return {a, b};
}

std::complex<double> ApproxComplex::to_std() const { return {re_.to_double(), im_.to_double()}; }

std::string ApproxComplex::str(int digits) const {
  return "(" + re_.str(digits) + "," + im_.str(digits) + ")";
}

ApproxComplex ApproxComplex::polar(const BigFloat& r, const BigFloat& theta) {
  return {r * BigFloat::cos(theta), r * BigFloat::sin(theta)};
}

ApproxComplex to_approx(const GaussianRational& a, mpfr_prec_t precision_bits) {
  return {BigFloat(a.re().value(), precision_bits), BigFloat(a.im().value(), precision_bits)};
}

int precision_digits(mpfr_prec_t bits) {
  return static_cast<int>(std::floor(static_cast<double>(bits) * std::log10(2.0)));
}

BigFloat approx_tolerance(mpfr_prec_t bits) {
  // 10^-(digits/4) expressed through a power of two close to it
  double digits = static_cast<double>(precision_digits(bits)) / 4.0;
  long e = -static_cast<long>(std::ceil(digits * std::log2(10.0)));
  return BigFloat::pow2(e, bits);
}

// ------------------------------------------------------------------- Number

const GaussianRational& Number::exact() const {
  if (!is_exact()) throw std::logic_error("Number::exact on approximate value");
  return std::get<GaussianRational>(v_);
}

ApproxComplex Number::approx(mpfr_prec_t prec) const {
  if (is_exact()) return to_approx(std::get<GaussianRational>(v_), prec);
  return std::get<ApproxComplex>(v_);
}

mpfr_prec_t Number::precision() const {
  if (is_exact()) return 0;
  return std::get<ApproxComplex>(v_).precision();
}

bool Number::is_zero() const {
  if (is_exact()) return std::get<GaussianRational>(v_).is_zero();
  const auto& a = std::get<ApproxComplex>(v_);
  return a.abs() <= approx_tolerance(a.precision());
}

Number Number::operator-() const {
  if (is_exact()) return Number(-std::get<GaussianRational>(v_));
  return Number(-std::get<ApproxComplex>(v_));
}

namespace {
mpfr_prec_t joint_precision(const Number& a, const Number& b) {
  return std::max(a.precision(), b.precision());
}
}  // namespace

Number operator+(const Number& a, const Number& b) {
  if (a.is_exact() && b.is_exact()) return Number(a.exact() + b.exact());
  mpfr_prec_t p = joint_precision(a, b);
  return Number(a.approx(p) + b.approx(p));
}

Number operator-(const Number& a, const Number& b) {
  if (a.is_exact() && b.is_exact()) return Number(a.exact() - b.exact());
  mpfr_prec_t p = joint_precision(a, b);
  return Number(a.approx(p) - b.approx(p));
}

Number operator*(const Number& a, const Number& b) {
  if (a.is_exact() && b.is_exact()) return Number(a.exact() * b.exact());
  mpfr_prec_t p = joint_precision(a, b);
  return Number(a.approx(p) * b.approx(p));
}

Number operator/(const Number& a, const Number& b) {
  if (a.is_exact() && b.is_exact()) return Number(a.exact() / b.exact());
  mpfr_prec_t p = joint_precision(a, b);
  return Number(a.approx(p) / b.approx(p));
}

Number Number::conj() const {
  if (is_exact()) return Number(exact().conj());
  return Number(std::get<ApproxComplex>(v_).conj());
}

Number Number::pow(int e) const {
  if (is_exact()) return Number(exact().pow(e));
  Number base = e >= 0 ? *this : Number(1) / *this;
  unsigned n = static_cast<unsigned>(e >= 0 ? e : -e);
  Number result(ApproxComplex(1.0, 0.0, precision()));
  while (n) {
    if (n & 1u) result *= base;
    n >>= 1u;
    if (n) base *= base;
  }
  return result;
}

std::complex<double> Number::to_std() const {
  if (is_exact()) return {exact().re().to_double(), exact().im().to_double()};
  return std::get<ApproxComplex>(v_).to_std();
}

std::string Number::str() const {
  if (is_exact()) return exact().str();
  // approximate values: decimal parts in literal form, prefixed with '~'
  const auto& a = std::get<ApproxComplex>(v_);
  int digits = std::max(8, precision_digits(a.precision()) / 2);
  std::string re = a.re().str(digits);
  std::string im = a.im().str(digits);
  if (a.im().is_zero()) return "~" + re;
  bool neg = !im.empty() && im[0] == '-';
  if (neg) im.erase(0, 1);
  return "~" + re + (neg ? "-" : "+") + im + "*i";
}

std::ostream& operator<<(std::ostream& os, const Number& n) { return os << n.str(); }

}  // namespace edd
