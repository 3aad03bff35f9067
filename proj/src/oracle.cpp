#include "edd/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>

#include "edd/roots.hpp"

namespace edd {

double distance(const ApproxPoint& a, const ApproxPoint& b) {
  ApproxComplex dx = a.x - b.x, dy = a.y - b.y;
  return (dx.norm() + dy.norm()).sqrt().to_double();
}

namespace {

double mag(const ApproxComplex& z) { return z.abs().to_double(); }

ApproxComplex one(mpfr_prec_t p) { return ApproxComplex(1.0, 0.0, p); }

// Dense-enough evaluation form of a bivariate polynomial at working precision.
class NumPoly {
 public:
  NumPoly() = default;
  NumPoly(const Poly2& p, mpfr_prec_t prec) : prec_(prec) {
    for (const auto& [k, c] : p.terms()) {
      terms_.push_back({k.first, k.second, c.approx(prec)});
      dx_ = std::max(dx_, k.first);
      dy_ = std::max(dy_, k.second);
    }
  }

  ApproxComplex eval(const ApproxComplex& x, const ApproxComplex& y) const {
    return eval(powers(x, dx_), powers(y, dy_));
  }
  // With precomputed powers of x and y, at least up to the degrees in x and y.
  ApproxComplex eval(const std::vector<ApproxComplex>& px, const std::vector<ApproxComplex>& py) const {
    ApproxComplex s(prec_);
    for (const auto& t : terms_) s += t.c * px[static_cast<std::size_t>(t.i)] * py[static_cast<std::size_t>(t.j)];
    return s;
  }
  int degree_x() const { return dx_; }

  static std::vector<ApproxComplex> powers(const ApproxComplex& v, int n) {
    std::vector<ApproxComplex> p{one(v.precision())};
    for (int k = 1; k <= n; ++k) p.push_back(p.back() * v);
    return p;
  }

  // Sum of |terms|, the scale against which a value counts as zero.
  double scale(const ApproxComplex& x, const ApproxComplex& y) const {
    double ax = mag(x), ay = mag(y), s = 0;
    for (const auto& t : terms_) s += mag(t.c) * std::pow(ax, t.i) * std::pow(ay, t.j);
    return s;
  }

  // Coefficients in y at a fixed x, up to formal degree deg_y.
  std::vector<ApproxComplex> in_y(const ApproxComplex& x) const {
    std::vector<ApproxComplex> c(static_cast<std::size_t>(dy_ + 1), ApproxComplex(prec_));
    auto px = powers(x, dx_);
    for (const auto& t : terms_) c[static_cast<std::size_t>(t.j)] += t.c * px[static_cast<std::size_t>(t.i)];
    return c;
  }
  int degree_y() const { return dy_; }

 private:
  struct Term {
    int i, j;
    ApproxComplex c;
  };
  mpfr_prec_t prec_ = 212;
  std::vector<Term> terms_;
  int dx_ = 0, dy_ = 0;
};

// f, g_u and the derivatives needed for Newton steps and the tangent field.
struct System {
  Coords mode;
  mpfr_prec_t prec;
  NumPoly f, fx, fy, fxx, fxy, fyy;
  NumPoly c0, c0x, c0y, a, ax, ay, b, bx, by;  // g = c0 + u1 a + u2 b

  System(const CurveInput& in, mpfr_prec_t p) : mode(in.mode), prec(p) {
    const Poly2& F = in.f;
    CriticalPoly g = critical_poly(in);
    f = {F, p};
    fx = {F.dx(), p};
    fy = {F.dy(), p};
    fxx = {F.dx().dx(), p};
    fxy = {F.dx().dy(), p};
    fyy = {F.dy().dy(), p};
    c0 = {g.c0, p};
    c0x = {g.c0.dx(), p};
    c0y = {g.c0.dy(), p};
    a = {g.cu1, p};
    ax = {g.cu1.dx(), p};
    ay = {g.cu1.dy(), p};
    b = {g.cu2, p};
    bx = {g.cu2.dx(), p};
    by = {g.cu2.dy(), p};
  }

  struct Eval {
    ApproxComplex F, G, Fx, Fy, Gx, Gy, A, B;  // A, B: dg/du1, dg/du2
  };
  Eval eval(const ApproxPoint& z, const ApproxComplex& u1, const ApproxComplex& u2) const {
    int n = f.degree_x() + f.degree_y() + 1;
    auto px = NumPoly::powers(z.x, n), py = NumPoly::powers(z.y, n);
    Eval e{f.eval(px, py), c0.eval(px, py), fx.eval(px, py), fy.eval(px, py), c0x.eval(px, py),
           c0y.eval(px, py), a.eval(px, py), b.eval(px, py)};
    e.G += u1 * e.A + u2 * e.B;
    e.Gx += u1 * ax.eval(px, py) + u2 * bx.eval(px, py);
    e.Gy += u1 * ay.eval(px, py) + u2 * by.eval(px, py);
    return e;
  }

  double residual(const ApproxPoint& z, const ApproxComplex& u1, const ApproxComplex& u2) const {
    Eval e = eval(z, u1, u2);
    double sf = std::max(f.scale(z.x, z.y), 1e-300);
    double sg = c0.scale(z.x, z.y) + mag(u1) * a.scale(z.x, z.y) + mag(u2) * b.scale(z.x, z.y);
    return std::max(mag(e.F) / sf, mag(e.G) / std::max(sg, 1e-300));
  }

  double gradient(const ApproxPoint& z) const {
    ApproxComplex gx = fx.eval(z.x, z.y), gy = fy.eval(z.x, z.y);
    return (gx.norm() + gy.norm()).sqrt().to_double();
  }

  // Tangential second derivative of the Lagrangian D_u - lambda f.
  ApproxComplex second(const ApproxPoint& z, const ApproxComplex& u1, const ApproxComplex& u2) const {
    ApproxComplex Fx = fx.eval(z.x, z.y), Fy = fy.eval(z.x, z.y);
    ApproxComplex Dx(prec), Dy(prec), Hxx(prec), Hxy(prec), Hyy(prec);
    ApproxComplex two(2.0, 0.0, prec);
    if (mode == Coords::Cartesian) {
      Dx = two * (z.x - u1);
      Dy = two * (z.y - u2);
      Hxx = two;
      Hyy = two;
    } else {
      Dx = z.y - u2;
      Dy = z.x - u1;
      Hxy = one(prec);
    }
    ApproxComplex lam = mag(Fx) > mag(Fy) ? Dx / Fx : Dy / Fy;
    Hxx -= lam * fxx.eval(z.x, z.y);
    Hxy -= lam * fxy.eval(z.x, z.y);
    Hyy -= lam * fyy.eval(z.x, z.y);
    return Fy * Fy * Hxx - two * Fx * Fy * Hxy + Fx * Fx * Hyy;
  }

  // Newton correction at fixed u; nullopt when the Jacobian is singular.
  std::optional<ApproxPoint> newton_step(const ApproxPoint& z, const ApproxComplex& u1,
                                         const ApproxComplex& u2) const {
    Eval e = eval(z, u1, u2);
    ApproxComplex det = e.Fx * e.Gy - e.Fy * e.Gx;
    if (det.is_exact_zero()) return std::nullopt;
    ApproxComplex dx = (e.F * e.Gy - e.Fy * e.G) / det;
    ApproxComplex dy = (e.Fx * e.G - e.F * e.Gx) / det;
    if (!dx.is_finite() || !dy.is_finite()) return std::nullopt;
    return ApproxPoint{dx, dy};
  }

  // dz/ds along u(s) with du/ds = (d1, d2).
  std::optional<ApproxPoint> tangent(const ApproxPoint& z, const ApproxComplex& u1, const ApproxComplex& u2,
                                     const ApproxComplex& d1, const ApproxComplex& d2) const {
    Eval e = eval(z, u1, u2);
    ApproxComplex Gs = d1 * e.A + d2 * e.B;
    ApproxComplex det = e.Fx * e.Gy - e.Fy * e.Gx;
    if (det.is_exact_zero()) return std::nullopt;
    // J dz = -(0, Gs)
    ApproxComplex dx = (e.Fy * Gs) / det;
    ApproxComplex dy = -(e.Fx * Gs) / det;
    if (!dx.is_finite() || !dy.is_finite()) return std::nullopt;
    return ApproxPoint{dx, dy};
  }
};

double size(const ApproxPoint& z) { return std::max(mag(z.x), mag(z.y)); }

// Newton iteration to the residual target; the flag reports convergence.
std::pair<ApproxPoint, bool> refine(const System& sys, ApproxPoint z, const ApproxComplex& u1,
                                    const ApproxComplex& u2, double tol, int iters) {
  double prev = HUGE_VAL;
  for (int k = 0; k < iters; ++k) {
    auto d = sys.newton_step(z, u1, u2);
    if (!d) return {z, false};
    z = {z.x - d->x, z.y - d->y};
    double step = size(*d);
    if (step <= tol * (1 + size(z))) return {z, true};
    if (k > 3 && step > prev) return {z, false};
    prev = step;
  }
  return {z, false};
}

// Determinant by Gaussian elimination with partial pivoting.
ApproxComplex determinant(std::vector<std::vector<ApproxComplex>> m, mpfr_prec_t prec) {
  std::size_t n = m.size();
  ApproxComplex det = one(prec);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (m[r][c].norm() > m[piv][c].norm()) piv = r;
    if (m[piv][c].is_exact_zero()) return ApproxComplex(prec);
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      ApproxComplex k = m[r][c] / m[c][c];
      if (k.is_exact_zero()) continue;
      for (std::size_t j = c; j < n; ++j) m[r][j] -= k * m[c][j];
    }
  }
  return det;
}

ApproxComplex sylvester(const std::vector<ApproxComplex>& p, const std::vector<ApproxComplex>& q, mpfr_prec_t prec) {
  int m = static_cast<int>(p.size()) - 1, n = static_cast<int>(q.size()) - 1;
  if (n == 0) {
    ApproxComplex r = one(prec);
    for (int k = 0; k < m; ++k) r *= q[0];
    return r;
  }
  auto N = static_cast<std::size_t>(m + n);
  std::vector<std::vector<ApproxComplex>> M(N, std::vector<ApproxComplex>(N, ApproxComplex(prec)));
  for (int r = 0; r < n; ++r)
    for (int j = 0; j <= m; ++j)
      M[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + j)] = p[static_cast<std::size_t>(m - j)];
  for (int r = 0; r < m; ++r)
    for (int j = 0; j <= n; ++j)
      M[static_cast<std::size_t>(n + r)][static_cast<std::size_t>(r + j)] = q[static_cast<std::size_t>(n - j)];
  return determinant(std::move(M), prec);
}

// A shear x -> x + lambda*y making the top-degree coefficient in y constant.
Rational monic_shear(const Poly2& f, std::mt19937_64& rng) {
  Poly2 top = f.homogeneous_part(f.total_degree());
  std::uniform_int_distribution<long> num(-23, 23), den(1, 11);
  for (;;) {
    Rational lam(mpz_class(num(rng)), mpz_class(den(rng)));
    if (!top.eval(Number(lam), Number(1)).is_zero()) return lam;
  }
}

}  // namespace

CriticalCloud solve_critical(const CurveInput& in, const ApproxComplex& u1, const ApproxComplex& u2,
                             const OracleOptions& opt) {
  const mpfr_prec_t prec = opt.precision;
  const int digits = precision_digits(prec);
  const double tol = std::pow(10.0, -digits / 2.0);
  CriticalCloud cloud;
  System sys(in, prec);

  std::mt19937_64 rng(opt.seed ^ 0x51ed270b27c5a3f1ULL);
  Rational lam = monic_shear(in.f, rng);
  Number L(lam);
  CriticalPoly g = critical_poly(in);
  NumPoly fs(in.f.sheared(L), prec);
  NumPoly g0(g.c0.sheared(L), prec), ga(g.cu1.sheared(L), prec), gb(g.cu2.sheared(L), prec);
  int ny = std::max({g0.degree_y(), ga.degree_y(), gb.degree_y()});
  auto g_in_y = [&](const ApproxComplex& x) {
    auto c0 = g0.in_y(x), ca = ga.in_y(x), cb = gb.in_y(x);
    std::vector<ApproxComplex> c(static_cast<std::size_t>(ny + 1), ApproxComplex(prec));
    for (std::size_t k = 0; k < c0.size(); ++k) c[k] += c0[k];
    for (std::size_t k = 0; k < ca.size(); ++k) c[k] += u1 * ca[k];
    for (std::size_t k = 0; k < cb.size(); ++k) c[k] += u2 * cb[k];
    return c;
  };

  // Res_y(f', g') by interpolation on N roots of unity
  int d = in.f.total_degree();
  int bound = d * std::max(1, std::max({g.c0.total_degree(), g.cu1.total_degree(), g.cu2.total_degree()}));
  int N = bound + 1;
  BigFloat two_pi = BigFloat::pi(prec) * BigFloat(2L, prec);
  std::vector<ApproxComplex> w, vals;
  for (int k = 0; k < N; ++k) {
    w.push_back(ApproxComplex::polar(BigFloat(1L, prec), two_pi * BigFloat(static_cast<double>(k), prec) /
                                                             BigFloat(static_cast<long>(N), prec)));
    vals.push_back(sylvester(fs.in_y(w.back()), g_in_y(w.back()), prec));
  }
  std::vector<Number> coeffs;
  double cmax = 0;
  std::vector<ApproxComplex> cs;
  for (int j = 0; j < N; ++j) {
    ApproxComplex s(prec);
    for (int k = 0; k < N; ++k) s += vals[static_cast<std::size_t>(k)] * w[static_cast<std::size_t>((j * k) % N)].conj();
    s /= ApproxComplex(static_cast<double>(N), 0.0, prec);
    cmax = std::max(cmax, mag(s));
    cs.push_back(s);
  }
  if (cmax == 0) return cloud;  // f and g_u share a component
  double trim = cmax * std::pow(10.0, -0.6 * digits);
  while (!cs.empty() && mag(cs.back()) <= trim) cs.pop_back();
  for (auto& c : cs) coeffs.emplace_back(c);
  QPoly R{std::vector<Number>(coeffs)};

  auto push_unique = [&](std::vector<CriticalPointN>& v, CriticalPointN p) {
    for (const auto& q : v)
      if (distance(q.z, p.z) < opt.cluster_radius) return;
    v.push_back(std::move(p));
  };
  for (const auto& X : aberth_roots(R, prec)) {
    auto fy_coeffs = fs.in_y(X);
    auto ys = aberth_roots(QPoly(std::vector<Number>(fy_coeffs.begin(), fy_coeffs.end())), prec);
    if (ys.empty()) continue;
    auto gy = g_in_y(X);
    auto gval = [&](const ApproxComplex& y) {
      ApproxComplex s(prec);
      for (auto it = gy.rbegin(); it != gy.rend(); ++it) s = s * y + *it;
      return mag(s);
    };
    ApproxComplex Y = *std::min_element(ys.begin(), ys.end(), [&](const auto& p, const auto& q) {
      return gval(p) < gval(q);
    });
    ApproxPoint z{X + to_approx(GaussianRational(lam), prec) * Y, Y};
    auto [zr, ok] = refine(sys, z, u1, u2, tol, 80);
    CriticalPointN cp;
    cp.z = zr;
    cp.gradient = sys.gradient(zr);
    cp.residual = sys.residual(zr, u1, u2);
    double gscale = std::max(1.0, size(zr));
    if (cp.gradient < 1e-6 * std::pow(gscale, std::max(0, d - 1))) continue;  // singular point of X
    cp.second = sys.second(zr, u1, u2);
    cp.reliable = ok && cp.residual <= tol;
    push_unique(cp.reliable ? cloud.points : cloud.unreliable, std::move(cp));
  }
  // a point listed as unreliable may coincide with a reliable one
  std::erase_if(cloud.unreliable, [&](const CriticalPointN& p) {
    return std::any_of(cloud.points.begin(), cloud.points.end(),
                       [&](const CriticalPointN& q) { return distance(p.z, q.z) < opt.cluster_radius; });
  });
  return cloud;
}

// ---------------------------------------------------------------------- paths

std::string TrackedPoint::label() const {
  switch (fate) {
    case Fate::Survives:
      return "survives";
    case Fate::Infinity:
      return "infinity [" + direction->x.str(8) + "; " + direction->y.str(8) + "]";
    case Fate::Singular:
      return "singular point (" + end.x.str(8) + ", " + end.y.str(8) + ")";
    case Fate::Regular:
      return "regular attractor (" + end.x.str(8) + ", " + end.y.str(8) + ")";
    case Fate::Lost:
      return "tracking lost";
  }
  return "";
}

PathRequest radial_path(const ApproxComplex& u1, const ApproxComplex& u2, std::uint64_t seed, double radius,
                        mpfr_prec_t prec) {
  std::mt19937_64 rng(seed ^ 0x2545f4914f6cdd1dULL);
  std::normal_distribution<double> n01;
  double a = n01(rng), b = n01(rng), c = n01(rng), d = n01(rng);
  double norm = std::sqrt(a * a + b * b + c * c + d * d);
  double k = radius / norm;
  PathRequest r{u1 + ApproxComplex(a * k, b * k, prec), u2 + ApproxComplex(c * k, d * k, prec), u1, u2};
  return r;
}

namespace {

// A tracked point on the manifold, with its tangent in sigma = ln s.
struct Node {
  double sigma;
  ApproxPoint z, dz;
};

struct Tracker {
  const System& sys;
  const PathRequest& req;
  double tol;
  ApproxComplex d1, d2;

  std::pair<ApproxComplex, ApproxComplex> u_at(double s) const {
    ApproxComplex S(s, 0.0, sys.prec);
    return {req.to_u1 + S * d1, req.to_u2 + S * d2};
  }

  std::optional<Node> node(const ApproxPoint& z, double sigma) const {
    double s = std::exp(sigma);
    auto [a, b] = u_at(s);
    auto t = sys.tangent(z, a, b, d1, d2);
    if (!t) return std::nullopt;
    ApproxComplex S(s, 0.0, sys.prec);
    return Node{sigma, z, {S * t->x, S * t->y}};
  }

  // Cubic Hermite extrapolation through the last two nodes, or Euler from one.
  ApproxPoint predict(const Node* prev, const Node& cur, double sigma) const {
    mpfr_prec_t p = sys.prec;
    if (!prev) {
      ApproxComplex h(sigma - cur.sigma, 0.0, p);
      return {cur.z.x + h * cur.dz.x, cur.z.y + h * cur.dz.y};
    }
    double h = cur.sigma - prev->sigma, t = (sigma - prev->sigma) / h;
    ApproxComplex h00(2 * t * t * t - 3 * t * t + 1, 0.0, p), h10(h * (t * t * t - 2 * t * t + t), 0.0, p),
        h01(-2 * t * t * t + 3 * t * t, 0.0, p), h11(h * (t * t * t - t * t), 0.0, p);
    return {h00 * prev->z.x + h10 * prev->dz.x + h01 * cur.z.x + h11 * cur.dz.x,
            h00 * prev->z.y + h10 * prev->dz.y + h01 * cur.z.y + h11 * cur.dz.y};
  }

  // A point leading a merged pair sits next to a near-double root, where
  // Newton stalls; it only needs relative accuracy against the other paths.
  std::optional<ApproxPoint> correct(ApproxPoint p, double s, double moved, bool leading) const {
    auto [u1, u2] = u_at(s);
    double prev = HUGE_VAL;
    for (int it = 0; it < 8; ++it) {
      auto dz = sys.newton_step(p, u1, u2);
      if (!dz) return std::nullopt;
      double c = size(*dz);
      double floor = leading ? std::max(tol * (1 + size(p)), 1e-6 * size(p)) : tol * (1 + size(p));
      // outside the quadratic region of this path: shorten the step
      if (it == 0 && c > 0.25 * moved + floor) return std::nullopt;
      if (it > 0 && c > 0.25 * prev && c > floor) return std::nullopt;
      p = {p.x - dz->x, p.y - dz->y};
      if (c <= floor) return p;
      prev = c;
    }
    return std::nullopt;
  }

  // Advances the history to s1 with step control; false on step underflow.
  bool advance(std::vector<Node>& hist, double s1, int min_pieces = 1, bool leading = false) const {
    double target = std::log(s1);
    double h = (target - hist.back().sigma) / min_pieces;
    double span = std::abs(target - hist.back().sigma);
    while (hist.back().sigma != target) {
      const Node& cur = hist.back();
      const Node* prev = hist.size() > 1 ? &hist[hist.size() - 2] : nullptr;
      // extrapolate no further than the previous step length
      if (prev) h = std::copysign(std::min(std::abs(h), 2 * std::abs(cur.sigma - prev->sigma)), h);
      double next = std::abs(target - cur.sigma) <= std::abs(h) * (1 + 1e-12) ? target : cur.sigma + h;
      ApproxPoint pred = predict(prev, cur, next);
      auto z = correct(pred, std::exp(next), distance(pred, cur.z), leading);
      std::optional<Node> n;
      if (z) n = node(*z, next);
      if (n) {
        hist.push_back(std::move(*n));
        if (hist.size() > 2) hist.erase(hist.begin());
        h *= 2;
        continue;
      }
      h /= 2;
      if (std::abs(h) < 1e-13 * std::max(1.0, span)) return false;
    }
    return true;
  }
};

bool at_infinity(const ApproxPoint& z, const OracleOptions& opt) {
  return mag(z.x) + mag(z.y) > opt.infinity_threshold;
}

// Distance between two directions [a; b] in the projective line.
double projective_distance(const ApproxPoint& p, const ApproxPoint& q) {
  ApproxComplex cross = p.x * q.y - p.y * q.x;
  double np = (p.x.norm() + p.y.norm()).sqrt().to_double(), nq = (q.x.norm() + q.y.norm()).sqrt().to_double();
  return mag(cross) / (np * nq);
}

ApproxPoint direction_of(const ApproxPoint& z) {
  if (mag(z.x) >= mag(z.y)) return {one(z.x.precision()), z.y / z.x};
  return {z.x / z.y, one(z.y.precision())};
}

}  // namespace

PathTrace track_path(const CurveInput& in, const PathRequest& req, int steps, const OracleOptions& opt) {
  const mpfr_prec_t prec = opt.precision;
  const double tol = std::pow(10.0, -precision_digits(prec) / 2.0);
  System sys(in, prec);
  Tracker tr{sys, req, tol, req.from_u1 - req.to_u1, req.from_u2 - req.to_u2};

  PathTrace out;
  out.request = req;
  // linear on [0.1, 1], geometric below
  for (int k = 0; k <= steps; ++k) out.s.push_back(1.0 - 0.9 * k / steps);
  while (out.s.back() / 4 >= opt.final_s) out.s.push_back(out.s.back() / 4);

  CriticalCloud c0 = solve_critical(in, req.from_u1, req.from_u2, opt);
  struct State {
    std::vector<Node> hist;
    bool frozen = false;
    bool lost = false;
    std::optional<std::size_t> shadow_of;  // coincides with that point from here on
    bool leading = false;
    const ApproxPoint& z() const { return hist.back().z; }
  };
  std::vector<State> st;
  for (const auto& p : c0.points) {
    State x;
    auto n = tr.node(p.z, 0.0);
    if (n) {
      x.hist.push_back(std::move(*n));
    } else {
      x.hist.push_back(Node{0.0, p.z, p.z});
      x.lost = true;
    }
    st.push_back(std::move(x));
    TrackedPoint tp;
    tp.start = tp.end = p.z;
    out.points.push_back(std::move(tp));
  }
  auto snapshot = [&](double s) {
    auto [u1, u2] = tr.u_at(s);
    out.path.emplace_back(u1, u2);
    CriticalCloud cl;
    for (const auto& x : st) {
      CriticalPointN p;
      p.z = x.z();
      p.reliable = !x.lost;
      p.residual = sys.residual(x.z(), u1, u2);
      cl.points.push_back(std::move(p));
    }
    out.clouds.push_back(std::move(cl));
  };
  snapshot(out.s.front());

  for (std::size_t k = 1; k < out.s.size(); ++k) {
    double s1 = out.s[k];
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < st.size(); ++i)
      if (!st[i].frozen && !st[i].lost && !st[i].shadow_of) active.push_back(i);
    std::vector<State> before = st;
    auto run = [&](std::size_t i, int pieces) { return tr.advance(st[i].hist, s1, pieces, st[i].leading); };
    std::vector<char> ok(st.size(), 1);
    if (opt.threads > 1) {
      std::vector<std::future<bool>> fut;
      for (auto i : active) fut.push_back(std::async(std::launch::async, run, i, 1));
      for (std::size_t j = 0; j < active.size(); ++j) ok[active[j]] = fut[j].get();
    } else {
      for (auto i : active) ok[i] = run(i, 1);
    }
    // collisions are retried with finer steps; a collision that persists is a
    // genuine merge, and the second point follows the first from then on
    std::vector<std::pair<std::size_t, std::size_t>> pending;
    for (int round = 0; round <= 3; ++round) {
      pending.clear();
      std::vector<std::size_t> coll;
      for (std::size_t a = 0; a < active.size(); ++a)
        for (std::size_t b = a + 1; b < active.size(); ++b) {
          auto i = active[a], j = active[b];
          if (ok[i] && ok[j] && distance(st[i].z(), st[j].z()) < opt.cluster_radius) {
            pending.emplace_back(i, j);
            coll.push_back(i);
            coll.push_back(j);
          }
        }
      if (coll.empty() || round == 3) break;
      std::sort(coll.begin(), coll.end());
      coll.erase(std::unique(coll.begin(), coll.end()), coll.end());
      for (auto i : coll) {
        st[i] = before[i];
        ok[i] = run(i, 8 << (2 * round));
      }
    }
    for (const auto& [i, j] : pending)
      if (!st[j].shadow_of) {
        st[j].shadow_of = st[i].shadow_of.value_or(i);
        st[*st[j].shadow_of].leading = true;
      }
    for (auto i : active) {
      if (!ok[i]) {
        st[i].lost = true;
        continue;
      }
      if (at_infinity(st[i].z(), opt)) st[i].frozen = true;
    }
    for (auto& x : st)
      if (x.shadow_of) {
        const State& r = st[*x.shadow_of];
        x.hist = r.hist;
        x.frozen = r.frozen;
        x.lost = r.lost;
      }
    snapshot(s1);
  }

  // A survivor keeps a nonzero gradient in the limit; a point running into a
  // singular point loses it like a power of s.
  std::size_t mid = 0;
  while (mid + 1 < out.s.size() && out.s[mid] > std::sqrt(opt.final_s)) ++mid;
  for (std::size_t i = 0; i < st.size(); ++i) {
    TrackedPoint& tp = out.points[i];
    const ApproxPoint& z = st[i].z();
    tp.end = z;
    double grad = sys.gradient(z);
    bool singular = grad < 1e-6 * std::pow(std::max(1.0, size(z)), in.f.total_degree());
    if (!st[i].lost) singular = singular && grad < 0.1 * sys.gradient(out.clouds[mid].points[i].z);
    if (st[i].frozen) {
      tp.fate = Fate::Infinity;
      tp.direction = direction_of(z);
    } else if (singular) {
      // a step underflow this close to a singular point is the end of the path, not a failure
      tp.fate = Fate::Singular;
    } else if (st[i].lost) {
      tp.fate = Fate::Lost;
    }
  }
  for (std::size_t i = 0; i < st.size(); ++i) {
    if (out.points[i].fate != Fate::Survives) continue;
    for (std::size_t j = 0; j < st.size(); ++j) {
      if (i == j) continue;
      Fate fj = out.points[j].fate;
      if ((fj == Fate::Survives || fj == Fate::Regular) && distance(st[i].z(), st[j].z()) < opt.cluster_radius) {
        out.points[i].fate = Fate::Regular;
        out.points[j].fate = Fate::Regular;
      }
    }
  }
  return out;
}

int PathTrace::count(Fate f) const {
  return static_cast<int>(std::count_if(points.begin(), points.end(), [&](const TrackedPoint& p) {
    return p.fate == f;
  }));
}

std::vector<PathTrace::Tally> PathTrace::tallies(double radius) const {
  std::vector<Tally> out;
  for (const auto& p : points) {
    ApproxPoint where = p.fate == Fate::Infinity ? *p.direction : p.end;
    bool merged = false;
    if (p.fate != Fate::Survives && p.fate != Fate::Lost)
      for (auto& t : out)
        if (t.fate == p.fate &&
            (p.fate == Fate::Infinity ? projective_distance(t.where, where) < 1e-3 : distance(t.where, where) < radius)) {
          ++t.count;
          merged = true;
          break;
        }
    if (!merged) out.push_back({p.fate, where, 1});
  }
  return out;
}

int PathTrace::abutting_infinity(const ApproxComplex& a, const ApproxComplex& b, double tol) const {
  int n = 0;
  for (const auto& p : points)
    if (p.fate == Fate::Infinity && projective_distance(*p.direction, {a, b}) < tol) ++n;
  return n;
}

int PathTrace::abutting_point(const ApproxPoint& q, double tol) const {
  int n = 0;
  for (const auto& p : points)
    if ((p.fate == Fate::Singular || p.fate == Fate::Regular) && distance(p.end, q) < tol) ++n;
  return n;
}

}  // namespace edd

namespace edd {

namespace {

ApproxComplex approx_of(const Number& n, mpfr_prec_t prec) { return n.approx(prec); }

}  // namespace

std::vector<CrossCheck> cross_validate(const CurveInput& in, const DiscriminantReport& report,
                                       const OracleOptions& opt, int steps, bool focal_targets) {
  const mpfr_prec_t prec = opt.precision;
  std::mt19937_64 rng(opt.seed ^ 0x6a09e667f3bcc909ULL);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  struct Target {
    ApproxComplex u1, u2;
    std::vector<CrossCheck> checks;
  };
  std::vector<Target> targets;
  auto target_for = [&](const ApproxComplex& u1, const ApproxComplex& u2) -> Target& {
    for (auto& t : targets)
      if (distance({t.u1, t.u2}, {u1, u2}) < opt.cluster_radius) return t;
    targets.push_back({u1, u2, {}});
    return targets.back();
  };

  for (std::size_t ci = 0; ci < report.components.size(); ++ci) {
    const LineComponent& comp = report.components[ci];
    auto [base, dir] = std::pair{comp.line.base(), comp.line.direction()};
    ApproxComplex s(0.35 + 0.3 * unit(rng), 0.25 + 0.3 * unit(rng), prec);
    ApproxComplex g1 = approx_of(base.first, prec) + s * approx_of(dir.first, prec);
    ApproxComplex g2 = approx_of(base.second, prec) + s * approx_of(dir.second, prec);
    for (std::size_t ai = 0; ai < comp.anchors.size(); ++ai) {
      const Anchor& an = comp.anchors[ai];
      CrossCheck c;
      c.component = static_cast<int>(ci);
      c.anchor = static_cast<int>(ai);
      c.kind = an.kind;
      c.ed_degree = report.ed.degree;
      if (an.m_generic) {
        CrossCheck g = c;
        g.u1 = g1;
        g.u2 = g2;
        g.expected = *an.m_generic;
        target_for(g1, g2).checks.push_back(g);
      }
      if (focal_targets && an.focal_point && an.m_exceptional && !an.focal_non_isolated) {
        CrossCheck e = c;
        e.exceptional = true;
        e.u1 = approx_of(an.focal_point->x, prec);
        e.u2 = approx_of(an.focal_point->y, prec);
        e.expected = *an.m_exceptional;
        target_for(e.u1, e.u2).checks.push_back(e);
      }
    }
  }

  std::vector<CrossCheck> out;
  std::uint64_t path_seed = opt.seed;
  for (auto& t : targets) {
    PathTrace tr[2];
    for (auto& x : tr) x = track_path(in, radial_path(t.u1, t.u2, ++path_seed, 0.25, prec), steps, opt);
    for (auto& c : t.checks) {
      const Anchor& an = report.components[static_cast<std::size_t>(c.component)]
                             .anchors[static_cast<std::size_t>(c.anchor)];
      c.ok = true;
      for (int k = 0; k < 2; ++k) {
        if (an.infinity) {
          c.observed[k] = tr[k].abutting_infinity(approx_of(an.infinity->first, prec),
                                                  approx_of(an.infinity->second, prec));
        } else if (an.point) {
          c.observed[k] = tr[k].abutting_point({approx_of(an.point->x, prec), approx_of(an.point->y, prec)},
                                               opt.cluster_radius);
        }
        c.survivors[k] = tr[k].count(Fate::Survives);
        c.tracked[k] = static_cast<int>(tr[k].points.size());
        c.lost[k] = tr[k].count(Fate::Lost);
        c.ok = c.ok && c.observed[k] == c.expected && c.tracked[k] == c.ed_degree && c.lost[k] == 0;
      }
      c.ok = c.ok && c.survivors[0] == c.survivors[1];
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace edd
