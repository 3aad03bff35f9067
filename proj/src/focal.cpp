#include <array>
#include <random>

#include "edd/discriminants.hpp"

namespace edd {

namespace {

RatFunc eval_rat(const Poly2& f, const RatFunc& x, const RatFunc& y) {
  RatFunc acc;
  std::vector<RatFunc> xp{RatFunc(QPoly(Number(1)))}, yp{RatFunc(QPoly(Number(1)))};
  for (int i = 1; i <= f.degree_x(); ++i) xp.push_back(xp.back() * x);
  for (int j = 1; j <= f.degree_y(); ++j) yp.push_back(yp.back() * y);
  for (const auto& [k, c] : f.terms()) acc = acc + xp[k.first] * yp[k.second] * RatFunc(QPoly(c));
  return acc;
}

QPoly coeff_in_y(const Poly2& f, int j) {
  QPoly p;
  for (const auto& [k, c] : f.terms())
    if (k.second == j) p.set_coeff(k.first, p.coeff(k.first) + c);
  return p;
}

std::optional<RationalParam> branch_param(const CurveInput& in) {
  std::vector<RationalParam> cands;
  auto poly_of = [](const Series& s) { return QPoly(s.coeffs()); };
  BranchOptions bo;
  bo.truncation = default_truncation(in.degree());
  bo.allow_fallback = false;
  try {
    for (const auto& p : common_points({in.f, in.f.dx(), in.f.dy()}).points) {
      if (!p.is_exact()) continue;
      for (const auto& b : local_branches(in.f, p, bo))
        if (b.exact && b.x.exact_to_all_orders() && b.y.exact_to_all_orders())
          cands.push_back({RatFunc(poly_of(b.x)), RatFunc(poly_of(b.y)), "branch"});
    }
    for (const auto& pt : points_at_infinity(in.f, in.mode)) {
      if (!pt.rational) continue;
      for (const auto& b : branches_at_infinity(in.f, pt.a, pt.b, in.mode, bo)) {
        if (!(b.exact && b.P.exact_to_all_orders() && b.Q.exact_to_all_orders())) continue;
        QPoly tk = QPoly::monomial(Number(1), b.k);
        cands.push_back({RatFunc(poly_of(b.P), tk), RatFunc(poly_of(b.Q), tk), "branch"});
      }
    }
  } catch (const FieldExtensionRequired&) {
  }
  for (auto& c : cands) {
    if (c.x.derivative().is_zero() && c.y.derivative().is_zero()) continue;
    if (eval_rat(in.f, c.x, c.y).is_zero()) return c;
  }
  return std::nullopt;
}

}  // namespace

std::optional<RationalParam> rational_param(const CurveInput& in) {
  const Poly2& f = in.f;
  QPoly t = QPoly::x();
  if (f.degree_y() == 1) {
    QPoly A = coeff_in_y(f, 1), B = coeff_in_y(f, 0);
    return RationalParam{RatFunc(t), RatFunc(-B, A), "x = t"};
  }
  if (f.degree_x() == 1) {
    Poly2 g = f.swapped();
    QPoly A = coeff_in_y(g, 1), B = coeff_in_y(g, 0);
    return RationalParam{RatFunc(-B, A), RatFunc(t), "y = t"};
  }
  return branch_param(in);
}

EvoluteMap evolute_map(const RationalParam& r, Coords mode) {
  RatFunc x1 = r.x.derivative(), y1 = r.y.derivative();
  RatFunc x2 = x1.derivative(), y2 = y1.derivative();
  RatFunc D = x1 * y2 - y1 * x2;
  if (D.is_zero()) throw std::domain_error("evolute: the curve is a line");
  EvoluteMap m;
  if (mode == Coords::Cartesian) {
    RatFunc s = (x1 * x1 + y1 * y1) / D;
    m.u1 = r.x - y1 * s;
    m.u2 = r.y + x1 * s;
  } else {
    RatFunc s = RatFunc(QPoly(Number(2))) * x1 * y1 / D;
    m.u1 = r.x + x1 * s;
    m.u2 = r.y - y1 * s;
  }
  return m;
}

std::optional<Point> evolute_point(const RationalParam& r, Coords mode, const Number& t) {
  auto x = r.x.try_eval(t), y = r.y.try_eval(t);
  RatFunc dx = r.x.derivative(), dy = r.y.derivative();
  auto x1 = dx.try_eval(t), y1 = dy.try_eval(t);
  auto x2 = dx.derivative().try_eval(t), y2 = dy.derivative().try_eval(t);
  if (!x || !y || !x1 || !y1 || !x2 || !y2) return std::nullopt;
  Number D = *x1 * *y2 - *y1 * *x2;
  if (D.is_zero()) return std::nullopt;
  if (mode == Coords::Cartesian) {
    Number s = (*x1 * *x1 + *y1 * *y1) / D;
    return Point{*x - *y1 * s, *y + *x1 * s};
  }
  Number s = Number(2) * *x1 * *y1 / D;
  return Point{*x + *x1 * s, *y - *y1 * s};
}

ImplicitEvolute implicit_evolute(const Poly2& f, Coords mode) {
  Poly2 fx = f.dx(), fy = f.dy();
  Poly2 fxx = fx.dx(), fxy = fx.dy(), fyy = fy.dy();
  // tangent field tau and its derivative along itself
  Poly2 t1 = fy, t2 = -fx;
  Poly2 s1 = fxy * fy - fyy * fx;
  Poly2 s2 = fxy * fx - fxx * fy;
  Poly2 det = t1 * s2 - t2 * s1;
  ImplicitEvolute e;
  e.Den = det;
  Poly2 x = Poly2::x(), y = Poly2::y();
  if (mode == Coords::Cartesian) {
    Poly2 I = t1 * t1 + t2 * t2;
    e.N1 = x * det - t2 * I;
    e.N2 = y * det + t1 * I;
  } else {
    Poly2 I = (t1 * t2).scaled(Number(2));
    e.N1 = x * det + t1 * I;
    e.N2 = y * det - t2 * I;
  }
  return e;
}

namespace {

// Incremental reduced row echelon form over Q(i).
class Echelon {
 public:
  explicit Echelon(int n) : n_(n) {}
  int rank() const { return static_cast<int>(rows_.size()); }
  int cols() const { return n_; }

  void add(std::vector<Number> v) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      Number c = v[piv_[r]];
      if (c.is_zero()) continue;
      for (int j = 0; j < n_; ++j)
        if (!rows_[r][j].is_zero()) v[j] = v[j] - c * rows_[r][j];
    }
    int p = -1;
    for (int j = 0; j < n_; ++j)
      if (!v[j].is_zero()) {
        p = j;
        break;
      }
    if (p < 0) return;
    Number inv = Number(1) / v[p];
    for (auto& x : v) x = x * inv;
    for (auto& row : rows_) {
      Number c = row[p];
      if (c.is_zero()) continue;
      for (int j = 0; j < n_; ++j)
        if (!v[j].is_zero()) row[j] = row[j] - c * v[j];
    }
    rows_.push_back(std::move(v));
    piv_.push_back(p);
  }

  std::vector<std::vector<Number>> nullspace() const {
    std::vector<bool> is_piv(n_, false);
    for (int p : piv_) is_piv[p] = true;
    std::vector<std::vector<Number>> out;
    for (int f = 0; f < n_; ++f) {
      if (is_piv[f]) continue;
      std::vector<Number> v(n_, Number(0));
      v[f] = Number(1);
      for (std::size_t r = 0; r < rows_.size(); ++r) v[piv_[r]] = -rows_[r][f];
      out.push_back(std::move(v));
    }
    return out;
  }

 private:
  int n_;
  std::vector<std::vector<Number>> rows_;
  std::vector<int> piv_;
};

struct ImplicitSearch {
  enum Status { Cap, Found, Degenerate } status = Cap;
  Poly2 F;
  std::optional<Point> point;
};

QPoly mod(const QPoly& a, const QPoly& m) { return a.degree() < m.degree() ? a : divmod(a, m).second; }

// One fiber x = x0 of the sheared curve: the evolute map reduced modulo f'(x0, y).
struct Fiber {
  QPoly modulus;
  std::vector<QPoly> p1, p2, pd;  // powers of N1, N2, Den modulo the fiber
};

struct FiberSource {
  Poly2 fs, n1, n2, den;
  int next = 0;
  std::vector<Fiber> fibers;
  std::vector<std::array<QPoly, 3>> base_;

  const Fiber* get(std::size_t i, int dmax) {
    while (fibers.size() <= i) {
      if (next > 4000) return nullptr;
      long v = (next % 2 == 0) ? next / 2 : -(next + 1) / 2;
      ++next;
      Number x0(v);
      QPoly m = fs.restrict_x(x0);
      if (m.degree() != fs.degree_y()) continue;
      if (gcd(m, m.derivative()).degree() > 0) continue;
      Fiber fb;
      fb.modulus = m;
      fibers.push_back(std::move(fb));
      base_.push_back({mod(n1.restrict_x(x0), m), mod(n2.restrict_x(x0), m), mod(den.restrict_x(x0), m)});
    }
    Fiber& fb = fibers[i];
    auto grow = [&](std::vector<QPoly>& pw, const QPoly& b) {
      if (pw.empty()) pw.push_back(QPoly(Number(1)));
      while (static_cast<int>(pw.size()) <= dmax) pw.push_back(mod(pw.back() * b, fb.modulus));
    };
    grow(fb.p1, base_[i][0]);
    grow(fb.p2, base_[i][1]);
    grow(fb.pd, base_[i][2]);
    return &fb;
  }
};

Poly2 linear_factor(const AffineLine& l) {
  const AffineForm& f = l.form();
  return Poly2::x().scaled(f.a) + Poly2::y().scaled(f.b) + Poly2(f.c);
}

std::vector<std::pair<int, int>> monomials(int d) {
  std::vector<std::pair<int, int>> mons;
  for (int a = 0; a <= d; ++a)
    for (int b = 0; a + b <= d; ++b) mons.push_back({a, b});
  return mons;
}

// Smallest d <= cap with a nonzero F of degree d meeting every row; rows for
// degree d come from feed(d, i, E), i = 0, 1, ... until K(d) batches are in.
template <class Feed, class Batches>
ImplicitSearch implicit_search(int cap, Feed feed, Batches K) {
  ImplicitSearch out;
  for (int d = 1; d <= cap; ++d) {
    auto mons = monomials(d);
    int nunk = static_cast<int>(mons.size());
    Echelon E(nunk);
    bool full = false;
    for (int i = 0; i < K(d); ++i) {
      if (!feed(d, i, mons, E)) return out;
      if (E.rank() == nunk) {
        full = true;
        break;
      }
    }
    if (full) continue;
    auto ns = E.nullspace();
    if (d == 1 && ns.size() >= 2) {
      // constant map: two independent linear forms meet in the point
      const auto& p = ns[0];
      const auto& q = ns[1];
      auto idx = [&](int a, int b) {
        for (int c = 0; c < nunk; ++c)
          if (mons[c] == std::make_pair(a, b)) return c;
        return -1;
      };
      int c0 = idx(0, 0), c1 = idx(1, 0), c2 = idx(0, 1);
      Number a1 = p[c1], b1 = p[c2], e1 = p[c0], a2 = q[c1], b2 = q[c2], e2 = q[c0];
      Number det = a1 * b2 - a2 * b1;
      out.status = ImplicitSearch::Degenerate;
      if (!det.is_zero()) out.point = Point{(b1 * e2 - b2 * e1) / det, (a2 * e1 - a1 * e2) / det};
      return out;
    }
    for (int c = 0; c < nunk; ++c) out.F.add_term(mons[c].first, mons[c].second, ns[0][c]);
    out.status = ImplicitSearch::Found;
    return out;
  }
  return out;
}

ImplicitSearch implicitize_fibers(const Poly2& g, const ImplicitEvolute& ev, int cap) {
  Number lam(0);
  Poly2 fs;
  for (long k = 0;; ++k) {
    long v = (k % 2 == 0) ? k / 2 : -(k + 1) / 2;
    lam = Number(v);
    fs = g.sheared(lam);
    int d = fs.total_degree();
    if (fs.degree_y() == d && !fs.coeff(0, d).is_zero()) break;
    if (k > 200) throw std::runtime_error("focal: no admissible shear");
  }
  FiberSource src{fs, ev.N1.sheared(lam), ev.N2.sheared(lam), ev.Den.sheared(lam), 0, {}, {}};
  int M = std::max({ev.N1.total_degree(), ev.N2.total_degree(), ev.Den.total_degree()});
  int dy = fs.degree_y();
  auto feed = [&](int d, int i, const std::vector<std::pair<int, int>>& mons, Echelon& E) {
    const Fiber* fb = src.get(static_cast<std::size_t>(i), d);
    if (!fb) return false;
    std::vector<QPoly> cols;
    cols.reserve(mons.size());
    for (auto [a, b] : mons) cols.push_back(mod(fb->p1[a] * fb->p2[b] * fb->pd[d - a - b], fb->modulus));
    for (int r = 0; r < dy; ++r) {
      std::vector<Number> row(mons.size());
      for (std::size_t c = 0; c < mons.size(); ++c) row[c] = cols[c].coeff(r);
      E.add(std::move(row));
    }
    return true;
  };
  // a polynomial of degree d*M vanishing on more than d*M points of every
  // fiber's components contains the curve; one more full fiber certifies
  return implicit_search(cap, feed, [&](int d) { return d * M + 1; });
}

// F(u1, u2) = Res_t(A1 - u1 C, A2 - u2 C) for u = (A1 / C, A2 / C), squarefree.
ImplicitSearch implicitize_param(const RatFunc& u1, const RatFunc& u2) {
  ImplicitSearch out;
  if (u1.derivative().is_zero() && u2.derivative().is_zero()) {
    out.status = ImplicitSearch::Degenerate;
    out.point = Point{u1.eval(Number(0)), u2.eval(Number(0))};
    return out;
  }
  QPoly g = gcd(u1.den(), u2.den());
  QPoly C = divexact(u1.den() * u2.den(), g);
  QPoly A1 = u1.num() * divexact(C, u1.den()), A2 = u2.num() * divexact(C, u2.den());
  auto lift = [&](const QPoly& A, const Poly2& U) {
    int n = std::max(A.degree(), C.degree());
    std::vector<Poly2> c;
    for (int j = 0; j <= n; ++j) c.push_back(Poly2(A.coeff(j)) - U.scaled(C.coeff(j)));
    return UPoly<Poly2>(std::move(c));
  };
  UPoly<Poly2> P1 = lift(A1, Poly2::x()), P2 = lift(A2, Poly2::y());
  Poly2 R;
  if (P1.degree() == 0) {
    R = P1.coeff(0);
  } else if (P2.degree() == 0) {
    R = P2.coeff(0);
  } else {
    R = resultant(P1, P2);
  }
  if (R.is_zero() || R.is_constant()) return out;
  out.F = squarefree_part(R).normalized();
  out.status = ImplicitSearch::Found;
  return out;
}

// The parametrization traces the whole of g, not just one component.
bool covers(const RationalParam& r, const Poly2& g) {
  ImplicitSearch s = implicitize_param(r.x, r.y);
  return s.status == ImplicitSearch::Found && s.F == squarefree_part(g).normalized();
}

}  // namespace

FocalComponent focal_component(const CurveInput& in, const std::vector<AffineLine>& known_lines,
                               const AnalyzerOptions& opt, Warnings& warn) {
  FocalComponent fc;
  const Poly2& f = in.f;
  ImplicitEvolute ev = implicit_evolute(f, in.mode);
  Poly2 lines = gcd(f, ev.Den);
  Poly2 g = lines.is_constant() ? f : divexact(f, lines);
  if (!lines.is_constant() && !g.is_constant())
    warn.add("line components of the curve are left out of the focal set");
  if (g.is_constant()) {
    fc.computed = true;
    fc.empty = true;
    return fc;
  }

  // samples
  std::mt19937_64 rng(opt.seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<long> num(-60, 60), den(1, 17);
  if (auto rp = rational_param(in)) {
    for (int tries = 0; static_cast<int>(fc.samples.size()) < opt.focal_samples && tries < 20 * opt.focal_samples;
         ++tries) {
      Number t(Rational(mpz_class(num(rng)), mpz_class(den(rng))));
      auto u = evolute_point(*rp, in.mode, t);
      if (!u) continue;
      fc.samples.push_back({t, *u, u->is_exact()});
    }
  } else {
    fc.exact = false;
    for (int tries = 0; static_cast<int>(fc.samples.size()) < opt.focal_samples && tries < 20 * opt.focal_samples;
         ++tries) {
      Number x0(Rational(mpz_class(num(rng)), mpz_class(den(rng))));
      QPoly fib = g.restrict_x(x0);
      if (fib.degree() < 1) continue;
      for (const auto& y : aberth_roots(squarefree_part(fib), opt.precision)) {
        ApproxComplex X = x0.approx(opt.precision);
        ApproxComplex D = ev.Den.eval_approx(X, y);
        if (Number(D).is_zero()) continue;
        Point u{Number(ev.N1.eval_approx(X, y) / D), Number(ev.N2.eval_approx(X, y) / D)};
        fc.samples.push_back({x0, u, false});
        if (static_cast<int>(fc.samples.size()) >= opt.focal_samples) break;
      }
    }
  }

  ImplicitSearch res;
  std::optional<RationalParam> rp = opt.focal_use_param ? rational_param(in) : std::nullopt;
  if (rp && rp->source == "branch" && !covers(*rp, g)) rp.reset();
  if (rp) {
    EvoluteMap em = evolute_map(*rp, in.mode);
    res = implicitize_param(em.u1, em.u2);
  } else {
    res = implicitize_fibers(g, ev, opt.focal_degree_cap);
  }
  if (res.status == ImplicitSearch::Degenerate) {
    fc.computed = true;
    fc.degenerate = true;
    fc.point = res.point;
  } else if (res.status == ImplicitSearch::Found) {
    Poly2 F = res.F;
    for (const auto& l : known_lines) {
      Poly2 lf = linear_factor(l);
      for (;;) {
        try {
          Poly2 q = divexact(F, lf);
          if (q.is_constant()) break;
          F = q;
          warn.add("known line " + l.str(in.mode) + " divided out of the focal polynomial");
        } catch (const std::domain_error&) {
          break;
        }
      }
    }
    fc.implicit = F.normalized();
    fc.computed = true;
  }
  if (!fc.computed) warn.add("focal polynomial not computed: degree cap " + std::to_string(opt.focal_degree_cap) +
                             " reached");
  if (fc.implicit)
    for (const auto& s : fc.samples)
      if (s.exact && !fc.implicit->eval(s.u.x, s.u.y).is_zero()) fc.samples_satisfy_implicit = false;
  if (fc.degenerate && fc.point)
    for (const auto& s : fc.samples)
      if (s.exact && !(s.u.x == fc.point->x && s.u.y == fc.point->y)) fc.samples_satisfy_implicit = false;
  if (!fc.samples_satisfy_implicit) warn.add("an exact evolute sample does not satisfy the focal polynomial");
  return fc;
}

}  // namespace edd
