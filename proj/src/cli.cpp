#include "edd/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "edd/roots.hpp"

namespace edd {

// ------------------------------------------------------------------ grammar

namespace {

class CurveParser {
 public:
  explicit CurveParser(std::string_view text) : s_(text) {}

  Poly2 parse_all() {
    skip();
    if (at_end()) fail("empty input");
    Poly2 p = expr();
    skip();
    if (!at_end()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return p;
  }

  GaussianRational parse_constant() {
    Poly2 p = parse_all();
    if (!p.is_constant()) fail_at("expected a number", 1, 1);
    Number c = p.coeff(0, 0);
    return c.exact();
  }

  // Which variable spelling was used: 0 none, 1 x/y, 2 z1/z2.
  int spelling() const { return spelling_; }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  int spelling_ = 0;

  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }
  void advance() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  void skip() {
    for (;;) {
      while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
      if (peek() != '#') return;
      while (!at_end() && peek() != '\n') advance();
    }
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, col_); }
  [[noreturn]] static void fail_at(const std::string& what, int line, int col) { throw ParseError(what, line, col); }

  Poly2 expr() {
    Poly2 acc = term();
    for (;;) {
      skip();
      char c = peek();
      if (c != '+' && c != '-') return acc;
      advance();
      Poly2 t = term();
      acc = c == '+' ? acc + t : acc - t;
    }
  }

  Poly2 term() {
    Poly2 acc = unary();
    for (;;) {
      skip();
      char c = peek();
      if (c != '*' && c != '/') {
        if (!at_end() && (std::isalnum(static_cast<unsigned char>(c)) || c == '('))
          fail("expected an operator before '" + std::string(1, c) + "'");
        return acc;
      }
      int line = line_, col = col_;
      advance();
      Poly2 t = unary();
      if (c == '*') {
        acc = acc * t;
      } else {
        if (!t.is_constant() || t.is_zero()) fail_at("division by a non-constant or zero", line, col);
        acc = acc.scaled(Number(1) / t.coeff(0, 0));
      }
    }
  }

  Poly2 unary() {
    skip();
    if (peek() == '-') {
      advance();
      return -unary();
    }
    if (peek() == '+') {
      advance();
      return unary();
    }
    return power();
  }

  Poly2 power() {
    Poly2 base = atom();
    skip();
    if (peek() != '^') return base;
    advance();
    skip();
    int line = line_, col = col_;
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a non-negative integer exponent");
    mpz_class e = integer();
    if (e > 1000) fail_at("exponent too large", line, col);
    return base.pow(static_cast<unsigned>(e.get_ui()));
  }

  mpz_class integer() {
    std::string digits;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      digits += peek();
      advance();
    }
    if (peek() == '.' || peek() == 'e' || peek() == 'E') fail("floating-point literals are not allowed");
    return mpz_class(digits);
  }

  void variable(int which, int line, int col) {
    if (spelling_ != 0 && spelling_ != which) fail_at("mixed variable names (x, y) and (z1, z2)", line, col);
    spelling_ = which;
  }

  Poly2 atom() {
    skip();
    char c = peek();
    if (at_end()) fail("unexpected end of input");
    if (std::isdigit(static_cast<unsigned char>(c))) return Poly2(Number(Rational(integer())));
    if (c == '.') fail("floating-point literals are not allowed");
    if (c == '(') {
      advance();
      Poly2 p = expr();
      skip();
      if (peek() != ')') fail("expected ')'");
      advance();
      return p;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      int line = line_, col = col_;
      std::string name;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
        name += peek();
        advance();
      }
      if (name == "i") return Poly2(Number(GaussianRational::i()));
      if (name == "x" || name == "y") {
        variable(1, line, col);
        return name == "x" ? Poly2::x() : Poly2::y();
      }
      if (name == "z1" || name == "z2") {
        variable(2, line, col);
        return name == "z1" ? Poly2::x() : Poly2::y();
      }
      fail_at("unknown identifier '" + name + "'", line, col);
    }
    fail(std::string("unexpected '") + c + "'");
  }
};

}  // namespace

ParsedCurve parse_curve(std::string_view text, Coords mode) {
  CurveParser p(text);
  Poly2 f = p.parse_all();
  if (f.is_zero()) throw ParseError("the zero polynomial does not define a curve", 1, 1);
  if (f.is_constant()) throw ParseError("a constant polynomial does not define a curve", 1, 1);
  ParsedCurve out{CurveInput::make(f, mode), {}};
  if (out.input.reduced) out.warnings.push_back("input polynomial is not squarefree; its squarefree part is analysed");
  return out;
}

GaussianRational parse_number(std::string_view text) {
  CurveParser p(text);
  return p.parse_constant();
}

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = std::stod(s, &used);
  while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) ++used;
  if (used != s.size()) throw std::invalid_argument("bad number '" + s + "'");
  return v;
}

}  // namespace

Window parse_window(std::string_view text) {
  auto parts = split(text, ',');
  if (parts.size() != 4) throw std::invalid_argument("--window expects x0,y0,x1,y1");
  Window w{parse_double(parts[0]), parse_double(parts[1]), parse_double(parts[2]), parse_double(parts[3])};
  if (!(w.x0 < w.x1) || !(w.y0 < w.y1)) throw std::invalid_argument("--window needs x0 < x1 and y0 < y1");
  return w;
}

PathRequest parse_path(std::string_view text, mpfr_prec_t prec) {
  auto arrow = text.find("->");
  if (arrow == std::string_view::npos) throw std::invalid_argument("--path expects \"u1,u2 -> u1,u2\"");
  auto point = [&](std::string_view s) {
    auto parts = split(s, ',');
    if (parts.size() != 2) throw std::invalid_argument("--path expects \"u1,u2 -> u1,u2\"");
    return std::pair{to_approx(parse_number(parts[0]), prec), to_approx(parse_number(parts[1]), prec)};
  };
  auto [a1, a2] = point(text.substr(0, arrow));
  auto [b1, b2] = point(text.substr(arrow + 2));
  return {a1, a2, b1, b2};
}

std::vector<std::string> RunConfig::validate() const {
  std::vector<std::string> e;
  if (poly.empty() == curve_file.empty()) e.push_back("give exactly one of --poly and --curve");
  if (truncation != 0 && (truncation < 4 || truncation > 4096)) e.push_back("--truncation must be 0 or in 4..4096");
  if (trials < 1 || trials > 64) e.push_back("--trials must be in 1..64");
  if (precision < 64 || precision > 4096) e.push_back("--precision must be in 64..4096");
  if (degree_cap < 1 || degree_cap > 64) e.push_back("--degree-cap must be in 1..64");
  if (!(window.x0 < window.x1) || !(window.y0 < window.y1)) e.push_back("--window needs x0 < x1 and y0 < y1");
  return e;
}

// ------------------------------------------------------------------ JSON

namespace {

const char* mode_name(Coords m) { return m == Coords::Cartesian ? "cartesian" : "isotropic"; }

json point_json(const Point& p) { return json::array({p.x.str(), p.y.str()}); }

template <class T>
json opt_int(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

json anchor_json(const Anchor& a) {
  json j;
  j["kind"] = to_string(a.kind);
  if (a.infinity)
    j["at_infinity"] = json::array({a.infinity->first.str(), a.infinity->second.str()});
  if (a.point) j["point"] = point_json(*a.point);
  j["branch"] = a.branch;
  j["exact"] = a.exact;
  j["truncation"] = a.truncation;
  return j;
}

json anchor_full_json(const Anchor& a) {
  json j = anchor_json(a);
  j["m_generic"] = opt_int(a.m_generic);
  j["focal_point"] = a.focal_point ? point_json(*a.focal_point) : json(nullptr);
  j["m_exceptional"] = opt_int(a.m_exceptional);
  j["focal_non_isolated"] = a.focal_non_isolated;
  return j;
}

std::string monomial(int i, int j, Coords mode) {
  const char* a = mode == Coords::Cartesian ? "u1" : "v1";
  const char* b = mode == Coords::Cartesian ? "u2" : "v2";
  std::string s;
  auto put = [&](const char* v, int e) {
    if (e == 0) return;
    if (!s.empty()) s += "*";
    s += v;
    if (e > 1) s += "^" + std::to_string(e);
  };
  put(a, i);
  put(b, j);
  return s.empty() ? "1" : s;
}

}  // namespace

json report_json(const DiscriminantReport& r, const RunConfig& cfg) {
  json j;
  j["curve"] = r.f.str(r.mode);
  j["coords"] = mode_name(r.mode);
  j["config"] = {{"truncation", cfg.truncation},
                 {"trials", cfg.trials},
                 {"seed", cfg.seed},
                 {"precision", cfg.precision},
                 {"degree_cap", cfg.degree_cap}};
  j["ed_degree"] = r.ed.degree;

  json trials = json::array();
  for (const auto& t : r.ed.trials)
    trials.push_back({{"u1", t.u1.str()},
                      {"u2", t.u2.str()},
                      {"shear", t.shear.str()},
                      {"resultant_degree", t.resultant_degree},
                      {"squarefree_degree", t.squarefree_degree},
                      {"singular_overlap", t.singular_overlap},
                      {"count", t.count},
                      {"attempt", t.attempt}});
  j["certificate"] = {{"seed", r.ed.seed}, {"trials", trials}};

  const Classification& c = r.classification;
  j["classification"] = {{"is_line", c.is_line},
                         {"is_isotropic_line", c.is_isotropic_line},
                         {"is_circle_type", c.is_circle_type},
                         {"centre", c.centre ? point_json(*c.centre) : json(nullptr)},
                         {"implied_ed_degree", opt_int(c.implied_ed_degree)}};
  j["decomposition"] = {{"total_is_curve", r.total_is_curve},
                        {"total_equals_strict", r.total_equals_strict},
                        {"strict_equals_atyp", r.strict_equals_atyp}};

  json comps = json::array();
  for (const auto& comp : r.components) {
    json k = json::array();
    for (auto kind : comp.kinds()) k.push_back(to_string(kind));
    const AffineForm& l = comp.line.form();
    const Anchor& a = comp.primary();
    json anchors = json::array();
    for (const auto& an : comp.anchors) anchors.push_back(anchor_full_json(an));
    comps.push_back({{"kind", k},
                     {"line", {{"a", l.a.str()}, {"b", l.b.str()}, {"c", l.c.str()}}},
                     {"equation", comp.line.str(r.mode)},
                     {"anchor", anchor_json(a)},
                     {"m_generic", opt_int(a.m_generic)},
                     {"focal_point", a.focal_point ? point_json(*a.focal_point) : json(nullptr)},
                     {"m_exceptional", opt_int(a.m_exceptional)},
                     {"focal_non_isolated", a.focal_non_isolated},
                     {"anchors", anchors}});
  }
  j["components"] = comps;

  const FocalComponent& fc = r.focal;
  json focal;
  focal["computed"] = fc.computed;
  focal["degenerate"] = fc.degenerate;
  focal["point"] = fc.point ? point_json(*fc.point) : json(nullptr);
  focal["empty"] = fc.empty;
  if (fc.implicit) {
    json coeffs;
    for (const auto& [key, v] : fc.implicit->terms()) coeffs[monomial(key.first, key.second, r.mode)] = v.str();
    focal["implicit"] = coeffs;
    focal["degree"] = fc.implicit->total_degree();
  } else {
    focal["implicit"] = nullptr;
    focal["degree"] = nullptr;
  }
  json samples = json::array();
  for (const auto& s : fc.samples)
    samples.push_back({{"t", s.t.str()}, {"u", point_json(s.u)}, {"exact", s.exact}});
  focal["samples"] = samples;
  focal["samples_satisfy_implicit"] = fc.samples_satisfy_implicit;
  focal["exact"] = fc.exact;
  j["focal"] = focal;

  j["warnings"] = r.warnings;
  j["exact"] = r.exact;
  return j;
}

json oracle_json(const std::vector<CrossCheck>& checks) {
  json arr = json::array();
  for (const auto& c : checks)
    arr.push_back({{"component", c.component},
                   {"anchor", c.anchor},
                   {"kind", to_string(c.kind)},
                   {"at", c.exceptional ? "focal point" : "generic point"},
                   {"u", json::array({Number(c.u1).str(), Number(c.u2).str()})},
                   {"expected", c.expected},
                   {"observed", json::array({c.observed[0], c.observed[1]})},
                   {"survivors", json::array({c.survivors[0], c.survivors[1]})},
                   {"tracked", json::array({c.tracked[0], c.tracked[1]})},
                   {"lost", json::array({c.lost[0], c.lost[1]})},
                   {"ed_degree", c.ed_degree},
                   {"agrees", c.ok}});
  return arr;
}

json path_json(const PathTrace& t) {
  auto num = [](const ApproxComplex& z) { return Number(z).str(); };
  json j;
  j["from"] = json::array({num(t.request.from_u1), num(t.request.from_u2)});
  j["to"] = json::array({num(t.request.to_u1), num(t.request.to_u2)});
  j["steps"] = static_cast<int>(t.s.size());
  json pts = json::array();
  for (const auto& p : t.points)
    pts.push_back({{"start", json::array({num(p.start.x), num(p.start.y)})},
                   {"end", json::array({num(p.end.x), num(p.end.y)})},
                   {"fate", p.label()}});
  j["points"] = pts;
  json tallies = json::array();
  for (const auto& ta : t.tallies()) {
    static const char* names[] = {"survives", "infinity", "singular point", "regular attractor", "tracking lost"};
    tallies.push_back({{"fate", names[static_cast<int>(ta.fate)]},
                       {"where", json::array({num(ta.where.x), num(ta.where.y)})},
                       {"count", ta.count}});
  }
  j["tallies"] = tallies;
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string round_trip(const std::string& text) { return dump(json::parse(text)); }

// ------------------------------------------------------------------ SVG

namespace {

// Real and imaginary parts of a polynomial with Gaussian rational coefficients.
std::pair<Poly2, Poly2> split_parts(const Poly2& p) {
  Poly2 re, im;
  for (const auto& [k, c] : p.terms()) {
    GaussianRational g = c.exact();
    if (!g.re().is_zero()) re.add_term(k.first, k.second, Number(g.re()));
    if (!g.im().is_zero()) im.add_term(k.first, k.second, Number(g.im()));
  }
  return {re, im};
}

// The polynomial in real coordinates (x, y): isotropic coordinates are z1 = x + iy, z2 = x - iy.
Poly2 in_real_coordinates(const Poly2& p, Coords mode) {
  if (mode == Coords::Cartesian) return p;
  Poly2 x = Poly2::x(), y = Poly2::y();
  Poly2 iy = y.scaled(Number(GaussianRational::i()));
  return p.compose(x + iy, x - iy);
}

// Coprimality from univariate restrictions: a common factor G(x, y) depends on
// x or on y, so it survives one of the restrictions at a generic point.
bool surely_coprime(const Poly2& a, const Poly2& b) {
  const Number x0 = Number(Rational(mpq_class(7, 19))), y0 = Number(Rational(mpq_class(-5, 23)));
  QPoly ax = a.restrict_x(x0), bx = b.restrict_x(x0), ay = a.restrict_y(y0), by = b.restrict_y(y0);
  return ax.degree() == a.degree_y() && bx.degree() == b.degree_y() && ay.degree() == a.degree_x() &&
         by.degree() == b.degree_x() && gcd(ax, bx).is_constant() && gcd(ay, by).is_constant();
}

// The real polynomial whose zeros are the one-dimensional real points, or nullopt.
std::optional<Poly2> real_trace(const Poly2& p, Coords mode) {
  if (!p.is_exact()) return std::nullopt;
  auto [re, im] = split_parts(in_real_coordinates(p, mode));
  if (!im.is_zero() && !re.is_zero() && surely_coprime(re, im)) return std::nullopt;
  Poly2 g = im.is_zero() ? re : re.is_zero() ? im : gcd(re, im);
  if (g.is_constant()) return std::nullopt;
  return g;
}

// Isolated real points: common real zeros of the real and imaginary parts.
// Skipped (nullopt) above the degree limit, where elimination gets costly.
std::optional<std::vector<std::pair<double, double>>> isolated_real_points(const Poly2& p, Coords mode,
                                                                           int max_degree = 6) {
  if (!p.is_exact() || p.total_degree() > max_degree) return std::nullopt;
  auto [re, im] = split_parts(in_real_coordinates(p, mode));
  std::vector<std::pair<double, double>> out;
  if (re.is_zero() || im.is_zero()) return out;
  CommonPoints cp = common_points({re, im});
  for (const auto& q : cp.points) {
    auto x = q.x.to_std(), y = q.y.to_std();
    double tol = 1e-20 * (1 + std::abs(x) + std::abs(y));
    if (std::abs(x.imag()) < tol && std::abs(y.imag()) < tol) out.emplace_back(x.real(), y.real());
  }
  return out;
}

struct Plot {
  Window w;
  double size = 560, margin = 20;
  double sx(double x) const { return margin + (x - w.x0) / (w.x1 - w.x0) * size; }
  double sy(double y) const { return margin + (w.y1 - y) / (w.y1 - w.y0) * size; }
};

std::string fmt2(double a, double b) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f %.2f", a, b);
  return buf;
}

// Zero set of a real polynomial by marching squares, as SVG path data.
std::string contour(const Poly2& p, const Plot& plot, int n = 240) {
  std::vector<std::tuple<int, int, double>> terms;
  for (const auto& [k, c] : p.terms()) terms.emplace_back(k.first, k.second, c.to_std().real());
  double scale = 0;
  for (const auto& t : terms) scale = std::max(scale, std::abs(std::get<2>(t)));
  auto f = [&](double x, double y) {
    double s = 0;
    for (const auto& [i, j, c] : terms) s += c / scale * std::pow(x, i) * std::pow(y, j);
    return s;
  };
  const Window& w = plot.w;
  double hx = (w.x1 - w.x0) / n, hy = (w.y1 - w.y0) / n;
  std::vector<double> v(static_cast<std::size_t>((n + 1) * (n + 1)));
  auto at = [&](int i, int j) -> double& { return v[static_cast<std::size_t>(j * (n + 1) + i)]; };
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) at(i, j) = f(w.x0 + (i + 0.5e-3) * hx, w.y0 + (j + 0.7e-3) * hy);
  std::string d;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      double c[4] = {at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)};
      double px[4] = {w.x0 + i * hx, w.x0 + (i + 1) * hx, w.x0 + (i + 1) * hx, w.x0 + i * hx};
      double py[4] = {w.y0 + j * hy, w.y0 + j * hy, w.y0 + (j + 1) * hy, w.y0 + (j + 1) * hy};
      std::vector<std::pair<double, double>> cross;
      for (int e = 0; e < 4; ++e) {
        int a = e, b = (e + 1) % 4;
        if ((c[a] < 0) == (c[b] < 0)) continue;
        double t = c[a] / (c[a] - c[b]);
        cross.emplace_back(px[a] + t * (px[b] - px[a]), py[a] + t * (py[b] - py[a]));
      }
      // four crossings: pair them along the sign of the centre value
      if (cross.size() == 4) {
        double centre = (c[0] + c[1] + c[2] + c[3]) / 4;
        if ((centre < 0) != (c[0] < 0)) std::swap(cross[1], cross[3]);
      }
      for (std::size_t k = 0; k + 1 < cross.size(); k += 2)
        d += "M" + fmt2(plot.sx(cross[k].first), plot.sy(cross[k].second)) + "L" +
             fmt2(plot.sx(cross[k + 1].first), plot.sy(cross[k + 1].second));
    }
  return d;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

// A line a u1 + b u2 + c = 0 in real coordinates: the real line, a single real point, or nothing.
struct RealLine {
  std::optional<Poly2> line;
  std::optional<std::pair<double, double>> point;
};

RealLine real_line(const AffineLine& l, Coords mode) {
  const AffineForm& f = l.form();
  Poly2 p = Poly2(f.c) + Poly2::x().scaled(f.a) + Poly2::y().scaled(f.b);
  RealLine out;
  if (auto t = real_trace(p, mode)) {
    out.line = *t;
    return out;
  }
  if (!p.is_exact()) return out;
  auto [re, im] = split_parts(in_real_coordinates(p, mode));
  auto d = [](const Poly2& q, int i, int j) { return q.coeff(i, j).exact().re(); };
  Rational a1 = d(re, 1, 0), b1 = d(re, 0, 1), c1 = d(re, 0, 0), a2 = d(im, 1, 0), b2 = d(im, 0, 1), c2 = d(im, 0, 0);
  Rational det = a1 * b2 - a2 * b1;
  if (det.is_zero()) return out;
  Rational x = (b1 * c2 - b2 * c1) / det, y = (a2 * c1 - a1 * c2) / det;
  out.point = std::pair{x.to_double(), y.to_double()};
  return out;
}

}  // namespace

std::string render_svg(const DiscriminantReport& r, const Window& w) {
  Plot plot{w};
  double legend_x = plot.size + 2 * plot.margin + 10;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << plot.size + 2 * plot.margin + 340 << "\" height=\""
      << plot.size + 2 * plot.margin << "\">\n";
  svg << "<rect x=\"" << plot.margin << "\" y=\"" << plot.margin << "\" width=\"" << plot.size << "\" height=\""
      << plot.size << "\" fill=\"white\" stroke=\"#999\"/>\n";
  // axes
  if (w.x0 < 0 && w.x1 > 0)
    svg << "<line x1=\"" << plot.sx(0) << "\" y1=\"" << plot.sy(w.y0) << "\" x2=\"" << plot.sx(0) << "\" y2=\""
        << plot.sy(w.y1) << "\" stroke=\"#ddd\"/>\n";
  if (w.y0 < 0 && w.y1 > 0)
    svg << "<line x1=\"" << plot.sx(w.x0) << "\" y1=\"" << plot.sy(0) << "\" x2=\"" << plot.sx(w.x1) << "\" y2=\""
        << plot.sy(0) << "\" stroke=\"#ddd\"/>\n";

  int row = 0;
  auto legend = [&](const std::string& colour, const std::string& text) {
    double y = plot.margin + 16 + 20 * row++;
    svg << "<rect x=\"" << legend_x << "\" y=\"" << y - 9 << "\" width=\"14\" height=\"4\" fill=\"" << colour
        << "\"/><text x=\"" << legend_x + 22 << "\" y=\"" << y << "\" font-family=\"sans-serif\" font-size=\"12\">"
        << escape(text) << "</text>\n";
  };
  auto path = [&](const std::string& d, const std::string& colour, double width) {
    if (!d.empty())
      svg << "<path d=\"" << d << "\" fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"" << width
          << "\"/>\n";
  };
  auto dot = [&](double x, double y, const std::string& colour) {
    svg << "<circle cx=\"" << plot.sx(x) << "\" cy=\"" << plot.sy(y) << "\" r=\"3.5\" fill=\"" << colour << "\"/>\n";
  };

  // Draws the real trace of p and returns a note for the legend.
  auto draw_real = [&](const Poly2& p, const std::string& colour, double width) -> std::string {
    if (auto t = real_trace(p, r.mode)) {
      std::string d = contour(*t, plot);
      path(d, colour, width);
      return d.empty() ? " (no real points in the window)" : "";
    }
    auto pts = isolated_real_points(p, r.mode);
    if (!pts) return " (no real curve)";
    if (pts->empty()) return " (no real points)";
    for (const auto& [x, y] : *pts) dot(x, y, colour);
    return " (" + std::to_string(pts->size()) + " isolated real point" + (pts->size() > 1 ? "s)" : ")");
  };

  const std::string green = "#2a9d3a", blue = "#1f5fbf", brown = "#8b5a2b", red = "#c0392b", purple = "#7d3c98";
  legend(green, "X: " + r.f.str(r.mode) + draw_real(r.f, green, 2));

  const FocalComponent& fc = r.focal;
  if (fc.implicit) {
    std::string note = draw_real(*fc.implicit, blue, 1.5);
    legend(blue, "focal curve, degree " + std::to_string(fc.implicit->total_degree()) + note);
  } else if (fc.degenerate && fc.point) {
    legend(blue, "focal point (" + fc.point->x.str() + ", " + fc.point->y.str() + ")");
    if (fc.point->x.is_exact() && fc.point->y.is_exact() && fc.point->x.exact().is_real() &&
        fc.point->y.exact().is_real())
      dot(fc.point->x.to_std().real(), fc.point->y.to_std().real(), blue);
  }

  for (const auto& comp : r.components) {
    ComponentKind k = comp.primary().kind;
    const std::string& colour = k == ComponentKind::Atyp ? brown : k == ComponentKind::Sing ? red : purple;
    std::string kinds;
    for (auto kk : comp.kinds()) kinds += (kinds.empty() ? "" : "+") + to_string(kk);
    std::string label = kinds + ": " + comp.line.str(r.mode);
    RealLine rl = real_line(comp.line, r.mode);
    if (rl.line) {
      path(contour(*rl.line, plot, 120), colour, 1.5);
    } else if (rl.point) {
      dot(rl.point->first, rl.point->second, colour);
      label += " (one real point)";
    } else {
      label += " (no real points)";
    }
    legend(colour, label);
  }
  svg << "</svg>\n";
  return svg.str();
}

// ------------------------------------------------------------------ run

int run(const RunConfig& cfg, std::ostream& out, const Logger& log_fn) {
  auto log = [&](LogLevel l, const std::string& m) {
    if (log_fn) log_fn(l, m);
  };
  auto errors = cfg.validate();
  if (!errors.empty()) {
    for (const auto& e : errors) log(LogLevel::Error, e);
    return 1;
  }
  try {
    std::string text = cfg.poly;
    if (!cfg.curve_file.empty()) {
      std::ifstream in(cfg.curve_file);
      if (!in) {
        log(LogLevel::Error, "cannot read " + cfg.curve_file);
        return 1;
      }
      std::stringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    }
    ParsedCurve pc = parse_curve(text, cfg.mode);
    log(LogLevel::Info, "curve " + pc.input.f.str(cfg.mode));

    ReportConfig rc;
    rc.trials = cfg.trials;
    rc.seed = cfg.seed;
    rc.analyzer.truncation = cfg.truncation;
    rc.analyzer.precision = cfg.precision;
    rc.analyzer.focal_degree_cap = cfg.degree_cap;
    rc.analyzer.seed = cfg.seed;
    DiscriminantReport rep = assemble_report(pc.input, rc);
    for (auto it = pc.warnings.rbegin(); it != pc.warnings.rend(); ++it)
      if (std::find(rep.warnings.begin(), rep.warnings.end(), *it) == rep.warnings.end())
        rep.warnings.insert(rep.warnings.begin(), *it);
    log(LogLevel::Info, "ED degree " + std::to_string(rep.ed.degree) + ", " + std::to_string(rep.components.size()) +
                            " line components");

    json j = report_json(rep, cfg);
    OracleOptions oo;
    oo.precision = cfg.precision;
    oo.seed = cfg.seed;
    if (cfg.oracle) {
      auto checks = cross_validate(pc.input, rep, oo);
      for (const auto& c : checks)
        if (!c.ok) j["warnings"].push_back("oracle disagrees on component " + std::to_string(c.component));
      j["oracle"] = oracle_json(checks);
      log(LogLevel::Info, "oracle: " + std::to_string(checks.size()) + " checks");
    }
    if (cfg.path) {
      PathTrace tr = track_path(pc.input, parse_path(*cfg.path, cfg.precision), 40, oo);
      if (tr.count(Fate::Lost) > 0) j["warnings"].push_back("tracking lost on the requested path");
      j["path"] = path_json(tr);
    }

    std::string doc = dump(j);
    if (cfg.report_path.empty()) {
      out << doc;
    } else {
      std::ofstream f(cfg.report_path, std::ios::binary);
      if (!f || !(f << doc)) {
        log(LogLevel::Error, "cannot write " + cfg.report_path);
        return 1;
      }
      log(LogLevel::Info, "report written to " + cfg.report_path);
    }
    if (!cfg.svg_path.empty()) {
      std::ofstream f(cfg.svg_path, std::ios::binary);
      if (!f || !(f << render_svg(rep, cfg.window))) {
        log(LogLevel::Error, "cannot write " + cfg.svg_path);
        return 1;
      }
      log(LogLevel::Info, "picture written to " + cfg.svg_path);
    }
    for (const auto& w : j["warnings"]) log(LogLevel::Warn, w.get<std::string>());
    return j["warnings"].empty() ? 0 : 2;
  } catch (const ParseError& e) {
    log(LogLevel::Error, std::string("parse error: ") + e.what());
  } catch (const std::exception& e) {
    log(LogLevel::Error, e.what());
  }
  return 1;
}

}  // namespace edd
