#include <optional>
#include "edd/poly.hpp"

#include <sstream>

namespace edd {

// --------------------------------------------------------------- univariate

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero_poly()) throw DivisionByZero();
  std::vector<Number> r = a.coeffs();
  int db = b.degree();
  int da = a.degree();
  if (da < db) return {QPoly(), a};
  std::vector<Number> q(static_cast<std::size_t>(da - db + 1), Number(0));
  Number inv = Number(1) / b.lc();
  for (int k = da - db; k >= 0; --k) {
    Number c = r[static_cast<std::size_t>(k + db)] * inv;
    q[static_cast<std::size_t>(k)] = c;
    if (c.is_zero()) continue;
    for (int j = 0; j <= db; ++j) {
      auto idx = static_cast<std::size_t>(k + j);
      r[idx] = r[idx] - c * b.coeffs()[static_cast<std::size_t>(j)];
    }
    r[static_cast<std::size_t>(k + db)] = Number(0);
  }
  r.resize(static_cast<std::size_t>(db));
  return {QPoly(std::move(q)), QPoly(std::move(r))};
}

QPoly divexact(const QPoly& a, const QPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero_poly()) throw std::domain_error("divexact: nonzero remainder");
  return q;
}

QPoly monic(const QPoly& p) {
  if (p.is_zero_poly()) return p;
  return p.scaled(Number(1) / p.lc());
}

QPoly gcd(QPoly a, QPoly b) {
  while (!b.is_zero_poly()) {
    QPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

QPoly squarefree_part(const QPoly& p) {
  if (p.is_zero_poly()) throw std::invalid_argument("squarefree_part of zero");
  if (p.degree() == 0) return QPoly(Number(1));
  return monic(divexact(p, gcd(p, p.derivative())));
}

std::vector<QPoly> squarefree_decomposition(const QPoly& p) {
  std::vector<QPoly> out;
  if (p.degree() <= 0) return out;
  QPoly a = monic(p);
  QPoly b = a.derivative();
  QPoly c = gcd(a, b);
  QPoly w = divexact(a, c);
  QPoly y = divexact(b, c);
  QPoly z = y - w.derivative();
  while (w.degree() > 0) {
    QPoly g = gcd(w, z);
    out.push_back(g);
    w = divexact(w, g);
    y = divexact(z, g);
    z = y - w.derivative();
  }
  while (!out.empty() && out.back().degree() == 0) out.pop_back();
  return out;
}

bool is_exact(const QPoly& p) {
  return std::all_of(p.coeffs().begin(), p.coeffs().end(),
                     [](const Number& c) { return c.is_exact(); });
}

ApproxComplex eval_approx(const QPoly& p, const ApproxComplex& t) {
  ApproxComplex acc(t.precision());
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it)
    acc = acc * t + it->approx(t.precision());
  return acc;
}

namespace {

std::string monomial_str(int i, const std::string& v) {
  if (i == 0) return "";
  if (i == 1) return v;
  return v + "^" + std::to_string(i);
}

// Append "c*m" to out with sign handling; m may be empty.
void append_term(std::string& out, const Number& c, const std::string& m) {
  std::string cs = c.str();
  bool compound = cs.find_first_of("+-", 1) != std::string::npos;
  bool neg = !compound && !cs.empty() && cs[0] == '-';
  if (neg) cs.erase(0, 1);
  if (compound) cs = "(" + cs + ")";
  if (out.empty()) {
    if (neg) out += "-";
  } else {
    out += neg ? " - " : " + ";
  }
  if (m.empty()) {
    out += cs;
  } else if (cs == "1") {
    out += m;
  } else {
    out += cs + "*" + m;
  }
}

}  // namespace

std::string to_string(const QPoly& p, const std::string& var) {
  if (p.is_zero_poly()) return "0";
  std::string out;
  for (int i = p.degree(); i >= 0; --i) {
    const Number& c = p.coeffs()[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    append_term(out, c, monomial_str(i, var));
  }
  return out;
}

// ---------------------------------------------------------------- bivariate

Number Poly2::coeff(int i, int j) const {
  auto it = t_.find({i, j});
  return it == t_.end() ? Number(0) : it->second;
}

void Poly2::add_term(int i, int j, const Number& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = t_.emplace(Key{i, j}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

bool Poly2::is_constant() const {
  return t_.empty() || (t_.size() == 1 && t_.begin()->first == Key{0, 0});
}

bool Poly2::is_exact() const {
  return std::all_of(t_.begin(), t_.end(), [](const auto& kv) { return kv.second.is_exact(); });
}

int Poly2::total_degree() const {
  int d = -1;
  for (const auto& [k, c] : t_) d = std::max(d, k.first + k.second);
  return d;
}

int Poly2::degree_x() const {
  int d = -1;
  for (const auto& [k, c] : t_) d = std::max(d, k.first);
  return d;
}

int Poly2::degree_y() const {
  int d = -1;
  for (const auto& [k, c] : t_) d = std::max(d, k.second);
  return d;
}

int Poly2::order() const {
  if (t_.empty()) return -1;
  int d = INT_MAX;
  for (const auto& [k, c] : t_) d = std::min(d, k.first + k.second);
  return d;
}

Poly2 Poly2::homogeneous_part(int d) const {
  Poly2 r;
  for (const auto& [k, c] : t_)
    if (k.first + k.second == d) r.t_.emplace(k, c);
  return r;
}

Poly2 Poly2::operator-() const {
  Poly2 r = *this;
  for (auto& [k, c] : r.t_) c = -c;
  return r;
}

Poly2& Poly2::operator+=(const Poly2& o) {
  for (const auto& [k, c] : o.t_) add_term(k.first, k.second, c);
  return *this;
}

Poly2& Poly2::operator-=(const Poly2& o) {
  for (const auto& [k, c] : o.t_) add_term(k.first, k.second, -c);
  return *this;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
  Poly2 r;
  for (const auto& [ka, ca] : a.t_)
    for (const auto& [kb, cb] : b.t_) r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
  return r;
}

Poly2 Poly2::scaled(const Number& s) const {
  if (s.is_zero()) return {};
  Poly2 r;
  for (const auto& [k, c] : t_) r.add_term(k.first, k.second, c * s);
  return r;
}

Poly2 Poly2::pow(unsigned e) const {
  Poly2 r(1), b = *this;
  while (e) {
    if (e & 1u) r *= b;
    e >>= 1u;
    if (e) b *= b;
  }
  return r;
}

Poly2 Poly2::dx() const {
  Poly2 r;
  for (const auto& [k, c] : t_)
    if (k.first > 0) r.add_term(k.first - 1, k.second, c * Number(k.first));
  return r;
}

Poly2 Poly2::dy() const {
  Poly2 r;
  for (const auto& [k, c] : t_)
    if (k.second > 0) r.add_term(k.first, k.second - 1, c * Number(k.second));
  return r;
}

Poly2 Poly2::swapped() const {
  Poly2 r;
  for (const auto& [k, c] : t_) r.t_.emplace(Key{k.second, k.first}, c);
  return r;
}

namespace {

template <class T>
std::vector<T> power_table(const T& base, int n, const T& one) {
  std::vector<T> p;
  p.reserve(static_cast<std::size_t>(n) + 1);
  p.push_back(one);
  for (int i = 1; i <= n; ++i) p.push_back(p.back() * base);
  return p;
}

}  // namespace

Number Poly2::eval(const Number& x, const Number& y) const {
  if (t_.empty()) return Number(0);
  auto px = power_table(x, degree_x(), Number(1));
  auto py = power_table(y, degree_y(), Number(1));
  Number acc(0);
  for (const auto& [k, c] : t_)
    acc += c * px[static_cast<std::size_t>(k.first)] * py[static_cast<std::size_t>(k.second)];
  return acc;
}

ApproxComplex Poly2::eval_approx(const ApproxComplex& x, const ApproxComplex& y) const {
  mpfr_prec_t prec = std::max(x.precision(), y.precision());
  ApproxComplex one(1.0, 0.0, prec);
  ApproxComplex acc(prec);
  if (t_.empty()) return acc;
  auto px = power_table(x, degree_x(), one);
  auto py = power_table(y, degree_y(), one);
  for (const auto& [k, c] : t_)
    acc += c.approx(prec) * px[static_cast<std::size_t>(k.first)] * py[static_cast<std::size_t>(k.second)];
  return acc;
}

Poly2 Poly2::compose(const Poly2& X, const Poly2& Y) const {
  if (t_.empty()) return {};
  auto px = power_table(X, degree_x(), Poly2(1));
  auto py = power_table(Y, degree_y(), Poly2(1));
  Poly2 r;
  for (const auto& [k, c] : t_)
    r += (px[static_cast<std::size_t>(k.first)] * py[static_cast<std::size_t>(k.second)]).scaled(c);
  return r;
}

Poly2 Poly2::translated(const Number& a, const Number& b) const {
  return compose(Poly2::x() + Poly2(a), Poly2::y() + Poly2(b));
}

Poly2 Poly2::sheared(const Number& lambda) const {
  return compose(Poly2::x() + Poly2::y().scaled(lambda), Poly2::y());
}

QPoly Poly2::restrict_x(const Number& x0) const {
  int dy = degree_y();
  if (dy < 0) return {};
  std::vector<Number> c(static_cast<std::size_t>(dy) + 1, Number(0));
  auto px = power_table(x0, std::max(0, degree_x()), Number(1));
  for (const auto& [k, v] : t_)
    c[static_cast<std::size_t>(k.second)] += v * px[static_cast<std::size_t>(k.first)];
  return QPoly(std::move(c));
}

QPoly Poly2::restrict_y(const Number& y0) const { return swapped().restrict_x(y0); }

Poly2 Poly2::normalized() const {
  if (t_.empty()) return *this;
  // leading term: highest total degree, then highest x exponent
  const Number* lead = nullptr;
  int best_d = -1, best_i = -1;
  for (const auto& [k, c] : t_) {
    int d = k.first + k.second;
    if (d > best_d || (d == best_d && k.first > best_i)) {
      best_d = d;
      best_i = k.first;
      lead = &c;
    }
  }
  return scaled(Number(1) / *lead);
}

std::string Poly2::str(Coords mode) const {
  if (t_.empty()) return "0";
  std::string vx = mode == Coords::Cartesian ? "x" : "z1";
  std::string vy = mode == Coords::Cartesian ? "y" : "z2";
  // descending total degree, then descending x exponent
  std::vector<std::pair<Key, Number>> v(t_.begin(), t_.end());
  std::sort(v.begin(), v.end(), [](const auto& p, const auto& q) {
    int dp = p.first.first + p.first.second, dq = q.first.first + q.first.second;
    if (dp != dq) return dp > dq;
    return p.first.first > q.first.first;
  });
  std::string out;
  for (const auto& [k, c] : v) {
    std::string m = monomial_str(k.first, vx);
    std::string my = monomial_str(k.second, vy);
    if (!m.empty() && !my.empty()) m += "*";
    m += my;
    append_term(out, c, m);
  }
  return out;
}

YPoly to_ypoly(const Poly2& p) {
  int dy = p.degree_y();
  if (dy < 0) return {};
  std::vector<std::vector<Number>> rows(static_cast<std::size_t>(dy) + 1);
  for (const auto& [k, c] : p.terms()) {
    auto& row = rows[static_cast<std::size_t>(k.second)];
    if (row.size() <= static_cast<std::size_t>(k.first)) row.resize(static_cast<std::size_t>(k.first) + 1, Number(0));
    row[static_cast<std::size_t>(k.first)] = c;
  }
  std::vector<QPoly> coeffs;
  coeffs.reserve(rows.size());
  for (auto& r : rows) coeffs.emplace_back(std::move(r));
  return YPoly(std::move(coeffs));
}

Poly2 from_ypoly(const YPoly& p) {
  Poly2 r;
  for (int j = 0; j <= p.degree(); ++j) {
    const QPoly& c = p.coeffs()[static_cast<std::size_t>(j)];
    for (int i = 0; i <= c.degree(); ++i) r.add_term(i, j, c.coeffs()[static_cast<std::size_t>(i)]);
  }
  return r;
}

QPoly resultant_y(const Poly2& p, const Poly2& q) {
  if (p.degree_y() <= 0 && q.degree_y() <= 0)
    throw std::invalid_argument("resultant_y: neither polynomial involves y");
  return resultant(to_ypoly(p), to_ypoly(q));
}

QPoly resultant_x(const Poly2& p, const Poly2& q) { return resultant_y(p.swapped(), q.swapped()); }

QPoly content(const YPoly& p) {
  QPoly g;
  for (const auto& c : p.coeffs()) {
    g = gcd(g, c);
    if (g.degree() == 0) break;
  }
  return g;
}

YPoly primitive_part(const YPoly& p) {
  if (p.is_zero_poly()) return p;
  QPoly c = content(p);
  std::vector<QPoly> v;
  for (const auto& a : p.coeffs()) v.push_back(divexact(a, c));
  YPoly r(std::move(v));
  // normalize the leading coefficient's leading number to 1
  return r.scaled(QPoly(Number(1) / r.lc().lc()));
}

Poly2 gcd(const Poly2& a, const Poly2& b) {
  if (a.is_zero()) return b.normalized();
  if (b.is_zero()) return a.normalized();
  YPoly A = to_ypoly(a), B = to_ypoly(b);
  QPoly cg = gcd(content(A), content(B));
  A = primitive_part(A);
  B = primitive_part(B);
  if (A.degree() < B.degree()) std::swap(A, B);
  while (!B.is_zero_poly() && B.degree() > 0) {
    YPoly R = pseudo_remainder(A, B);
    A = std::move(B);
    B = R.is_zero_poly() ? R : primitive_part(R);
  }
  if (!B.is_zero_poly()) A = YPoly(QPoly(Number(1)));  // B is a nonzero constant in y
  YPoly g = A.scaled(cg);
  return from_ypoly(g).normalized();
}

Poly2 divexact(const Poly2& a, const Poly2& b) {
  if (b.is_zero()) throw DivisionByZero();
  YPoly A = to_ypoly(a), B = to_ypoly(b);
  int db = B.degree();
  std::vector<QPoly> q(static_cast<std::size_t>(std::max(0, A.degree() - db + 1)));
  while (!A.is_zero_poly() && A.degree() >= db) {
    int k = A.degree() - db;
    auto [c, rem] = divmod(A.lc(), B.lc());
    if (!rem.is_zero_poly()) throw std::domain_error("divexact: not divisible");
    q[static_cast<std::size_t>(k)] = c;
    A = A - B.scaled(c).shifted(k);
  }
  if (!A.is_zero_poly()) throw std::domain_error("divexact: not divisible");
  return from_ypoly(YPoly(std::move(q)));
}

namespace {

// True when f(x, y0) and f(x0, y) are squarefree of full degree for some
// sample abscissae; then f itself has no repeated factor.
bool squarefree_by_restriction(const Poly2& f) {
  static const int samples[] = {3, -7, 11, 2, -5};
  auto ok = [](const QPoly& r, int deg) {
    if (r.degree() != deg) return std::optional<bool>{};
    if (deg < 1) return std::optional<bool>{true};
    return std::optional<bool>{gcd(r, r.derivative()).degree() == 0};
  };
  bool x_ok = f.degree_x() < 1, y_ok = f.degree_y() < 1;
  for (int s : samples) {
    Number v(Rational(mpz_class(s), mpz_class(s > 0 ? 13 : 17)));
    if (!x_ok)
      if (auto r = ok(f.restrict_y(v), f.degree_x())) {
        if (!*r) return false;
        x_ok = true;
      }
    if (!y_ok)
      if (auto r = ok(f.restrict_x(v), f.degree_y())) {
        if (!*r) return false;
        y_ok = true;
      }
    if (x_ok && y_ok) return true;
  }
  return false;
}

}  // namespace

Poly2 squarefree_part(const Poly2& f) {
  if (f.is_constant()) return f;
  if (squarefree_by_restriction(f)) return f;
  Poly2 g = gcd(gcd(f, f.dx()), f.dy());
  if (g.is_constant()) return f;
  return divexact(f, g);
}

// ------------------------------------------------------------------- series

namespace {
int sat_add(int a, int b) {
  long s = static_cast<long>(a) + b;
  return static_cast<int>(std::min<long>(s, Series::kExactSeries));
}
}  // namespace

Series::Series(std::vector<Number> c, int prec) : c_(std::move(c)), prec_(prec) { trim(); }

Series Series::constant(Number c, int prec) { return Series({std::move(c)}, prec); }

Series Series::monomial(Number c, int e, int prec) {
  std::vector<Number> v(static_cast<std::size_t>(e) + 1, Number(0));
  v.back() = std::move(c);
  return Series(std::move(v), prec);
}

void Series::trim() {
  if (static_cast<int>(c_.size()) > prec_) c_.resize(static_cast<std::size_t>(std::max(prec_, 0)));
  while (!c_.empty() && c_.back().is_exact() && c_.back().is_zero()) c_.pop_back();
}

bool Series::is_exact() const {
  return std::all_of(c_.begin(), c_.end(), [](const Number& c) { return c.is_exact(); });
}

Number Series::coeff(int j) const {
  if (j >= prec_) throw std::out_of_range("series coefficient beyond truncation");
  if (j < 0 || j >= static_cast<int>(c_.size())) return Number(0);
  return c_[static_cast<std::size_t>(j)];
}

std::optional<int> Series::order() const {
  for (std::size_t j = 0; j < c_.size() && static_cast<int>(j) < prec_; ++j)
    if (!c_[j].is_zero()) return static_cast<int>(j);
  return std::nullopt;
}

Series Series::operator-() const {
  Series r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Series operator+(const Series& a, const Series& b) {
  int prec = std::min(a.prec_, b.prec_);
  std::vector<Number> v(std::max(a.c_.size(), b.c_.size()), Number(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return Series(std::move(v), prec);
}

Series operator-(const Series& a, const Series& b) { return a + (-b); }

Series operator*(const Series& a, const Series& b) {
  int va = a.order().value_or(a.prec_);
  int vb = b.order().value_or(b.prec_);
  int prec = std::min(sat_add(a.prec_, vb), sat_add(b.prec_, va));
  if (a.c_.empty() || b.c_.empty()) return Series({}, prec);
  std::size_t n = a.c_.size() + b.c_.size() - 1;
  if (prec < Series::kExactSeries) n = std::min(n, static_cast<std::size_t>(std::max(prec, 0)));
  std::vector<Number> v(n, Number(0));
  for (std::size_t i = 0; i < a.c_.size() && i < n; ++i) {
    if (a.c_[i].is_exact() && a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size() && i + j < n; ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return Series(std::move(v), prec);
}

Series Series::scaled(const Number& s) const {
  std::vector<Number> v;
  v.reserve(c_.size());
  for (const auto& c : c_) v.push_back(c * s);
  return Series(std::move(v), prec_);
}

Series Series::shifted(int k) const {
  std::vector<Number> v(static_cast<std::size_t>(k), Number(0));
  v.insert(v.end(), c_.begin(), c_.end());
  return Series(std::move(v), sat_add(prec_, k));
}

Series Series::derivative() const {
  std::vector<Number> v;
  for (std::size_t i = 1; i < c_.size(); ++i) v.push_back(c_[i] * Number(static_cast<long>(i)));
  int prec = prec_ >= kExactSeries ? kExactSeries : prec_ - 1;
  return Series(std::move(v), prec);
}

Series Series::euler_derivative() const {
  std::vector<Number> v;
  for (std::size_t i = 0; i < c_.size(); ++i) v.push_back(c_[i] * Number(static_cast<long>(i)));
  return Series(std::move(v), prec_);
}

Series Series::substitute_monomial(const Number& xi, int m) const {
  if (c_.empty()) return Series({}, prec_ >= kExactSeries ? kExactSeries : prec_ * m);
  std::vector<Number> v((c_.size() - 1) * static_cast<std::size_t>(m) + 1, Number(0));
  Number p(1);
  for (std::size_t j = 0; j < c_.size(); ++j) {
    v[j * static_cast<std::size_t>(m)] = c_[j] * p;
    p *= xi;
  }
  long prec = prec_ >= kExactSeries ? kExactSeries : static_cast<long>(prec_) * m;
  return Series(std::move(v), static_cast<int>(std::min<long>(prec, kExactSeries)));
}

Series Series::truncated(int prec) const {
  Series r = *this;
  r.prec_ = std::min(prec_, prec);
  r.trim();
  return r;
}

Series Series::inverse() const {
  if (c_.empty() || c_[0].is_zero()) throw DivisionByZero();
  int n = prec_;
  if (n >= kExactSeries) {
    if (c_.size() == 1) return Series({Number(1) / c_[0]}, kExactSeries);
    throw std::invalid_argument("inverse of a non-constant polynomial needs a truncation");
  }
  std::vector<Number> r(static_cast<std::size_t>(n), Number(0));
  Number inv0 = Number(1) / c_[0];
  if (n > 0) r[0] = inv0;
  for (int k = 1; k < n; ++k) {
    Number acc(0);
    for (int j = 1; j <= k && j < static_cast<int>(c_.size()); ++j)
      acc += c_[static_cast<std::size_t>(j)] * r[static_cast<std::size_t>(k - j)];
    r[static_cast<std::size_t>(k)] = -acc * inv0;
  }
  return Series(std::move(r), n);
}

Series Series::pow(unsigned e) const {
  Series r = Series::constant(Number(1));
  Series b = *this;
  while (e) {
    if (e & 1u) r = r * b;
    e >>= 1u;
    if (e) b = b * b;
  }
  return r;
}

Series eval_series(const Poly2& f, const Series& x, const Series& y) {
  if (f.is_zero()) return Series({}, std::min(x.prec(), y.prec()));
  std::vector<Series> px{Series::constant(Number(1))};
  for (int i = 1; i <= f.degree_x(); ++i) px.push_back(px.back() * x);
  std::vector<Series> py{Series::constant(Number(1))};
  for (int j = 1; j <= f.degree_y(); ++j) py.push_back(py.back() * y);
  Series acc = Series::constant(Number(0));
  for (const auto& [k, c] : f.terms())
    acc = acc + (px[static_cast<std::size_t>(k.first)] * py[static_cast<std::size_t>(k.second)]).scaled(c);
  return acc;
}

// ------------------------------------------------------------ affine forms

std::string AffineForm::str(Coords mode) const {
  std::string v1 = mode == Coords::Cartesian ? "u1" : "v1";
  std::string v2 = mode == Coords::Cartesian ? "u2" : "v2";
  std::string out;
  if (!a.is_zero()) append_term(out, a, v1);
  if (!b.is_zero()) append_term(out, b, v2);
  if (!c.is_zero() || out.empty()) append_term(out, c, "");
  return out;
}

AffineLine::AffineLine(const AffineForm& f) {
  if (f.is_constant()) throw std::invalid_argument("AffineLine: constant form");
  Number s = !f.a.is_zero() ? f.a : f.b;
  f_ = f.scaled(Number(1) / s);
  if (!f.a.is_zero()) f_.a = Number(1);
  else f_.b = Number(1);
}

std::pair<Number, Number> AffineLine::base() const {
  if (!f_.a.is_zero()) return {-f_.c, Number(0)};
  return {Number(0), -f_.c};
}

std::pair<Number, Number> AffineLine::direction() const {
  if (!f_.a.is_zero()) return {-f_.b, Number(1)};
  return {Number(1), Number(0)};
}

std::string AffineLine::str(Coords mode) const { return f_.str(mode) + " = 0"; }

QPoly restrict_to_line(const AffineForm& form, const AffineLine& line) {
  auto [b1, b2] = line.base();
  auto [d1, d2] = line.direction();
  Number c0 = form.a * b1 + form.b * b2 + form.c;
  Number c1 = form.a * d1 + form.b * d2;
  return QPoly(std::vector<Number>{c0, c1});
}

// ----------------------------------------------------------- rational funcs

RatFunc::RatFunc(QPoly num, QPoly den) {
  if (den.is_zero_poly()) throw DivisionByZero();
  if (num.is_zero_poly()) {
    num_ = QPoly();
    den_ = QPoly(Number(1));
    return;
  }
  QPoly g = gcd(num, den);
  if (g.degree() > 0) {
    num = divexact(num, g);
    den = divexact(den, g);
  }
  Number l = den.lc();
  num_ = num.scaled(Number(1) / l);
  den_ = den.scaled(Number(1) / l);
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw DivisionByZero();
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

RatFunc RatFunc::derivative() const {
  return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

Number RatFunc::eval(const Number& t) const {
  Number d = den_.eval(t);
  if (d.is_zero()) throw DivisionByZero();
  return num_.eval(t) / d;
}

std::optional<Number> RatFunc::try_eval(const Number& t) const {
  Number d = den_.eval(t);
  if (d.is_zero()) return std::nullopt;
  return num_.eval(t) / d;
}

}  // namespace edd
