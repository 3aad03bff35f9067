#include "edd/branches.hpp"

#include <map>
#include <numeric>

namespace edd {

int default_truncation(int degree) { return 2 * degree * degree + 8; }
int max_truncation(int degree) { return 8 * degree * degree + 64; }

bool is_isotropic_direction(const Number& a, const Number& b, Coords mode) {
  if (mode == Coords::Isotropic) return (a * b).is_zero();
  return (a * a + b * b).is_zero();
}

int local_multiplicity(const Poly2& f, const Point& p) { return f.translated(p.x, p.y).order(); }

namespace {

Number binomial(int n, int k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Number(Rational(r));
}

Poly2 drop_low_terms(const Poly2& g, int r) {
  // the terms T^0 Y^k, k < r, vanish by construction; remove rounding noise
  Poly2 out;
  for (const auto& [k, c] : g.terms())
    if (!(k.first == 0 && k.second < r)) out.add_term(k.first, k.second, c);
  return out;
}

bool has_pure_x_term(const Poly2& g) {
  for (const auto& [k, c] : g.terms())
    if (k.second == 0) return true;
  return false;
}

bool has_pure_y_term(const Poly2& g) {
  for (const auto& [k, c] : g.terms())
    if (k.first == 0) return true;
  return false;
}

Poly2 divide_by_y(const Poly2& g) {
  Poly2 out;
  for (const auto& [k, c] : g.terms()) out.add_term(k.first, k.second - 1, c);
  return out;
}

// Solve G(T, Y(T)) = 0 with Y(0) = 0 when dG/dY(0, 0) != 0, to order M.
Series solve_simple(const Poly2& G, int M) {
  if (!has_pure_x_term(G)) return Series::constant(Number(0));
  if (G.degree_y() == 1) {
    bool constant_slope = true;
    for (const auto& [k, c] : G.terms())
      if (k.second == 1 && k.first != 0) constant_slope = false;
    if (constant_slope) {
      // Y = -G(T, 0) / c exactly
      Number c = G.coeff(0, 1);
      std::vector<Number> v(static_cast<std::size_t>(G.degree_x()) + 1, Number(0));
      for (const auto& [k, a] : G.terms())
        if (k.second == 0) v[static_cast<std::size_t>(k.first)] = -a / c;
      return Series(std::move(v), Series::kExactSeries);
    }
  }
  Poly2 GY = G.dy();
  Series T = Series::monomial(Number(1), 1);
  Series Y({}, M);
  int iters = 2;
  for (int m = 1; m < M; m *= 2) ++iters;
  for (int it = 0; it < iters; ++it) {
    Series val = eval_series(G, T, Y).truncated(M);
    if (!val.order()) break;
    Series der = eval_series(GY, T, Y).truncated(M);
    Y = (Y - val * der.inverse()).truncated(M);
  }
  return Y;
}

struct State {
  Number lam{1};
  int e = 1;
  Series S = Series::constant(Number(0));
  Number c{1};
  int Q = 0;
  bool exact = true;
};

class PuiseuxExpander {
 public:
  explicit PuiseuxExpander(const BranchOptions& opt) : opt_(opt) {}

  void expand(Poly2 g, const State& st, std::vector<PuiseuxBranch>& out) {
    if (!has_pure_x_term(g)) {
      // Y divides g: the branch Y = 0 terminates
      out.push_back({st.lam, st.e, st.S, st.exact && st.S.is_exact()});
      while (!g.is_zero() && !has_pure_x_term(g)) g = divide_by_y(g);
      if (g.is_zero() || !g.coeff(0, 0).is_zero()) return;
      g = drop_low_terms(g, 1);
    }
    // lower Newton polygon from (0, j0) to (i0, 0)
    int j0 = INT_MAX;
    for (const auto& [k, c] : g.terms())
      if (k.first == 0) j0 = std::min(j0, k.second);
    if (j0 == INT_MAX) throw std::logic_error("puiseux: x divides the polynomial");
    int ci = 0, cj = j0;
    while (cj > 0) {
      int bi = -1, bj = -1;
      for (const auto& [k, c] : g.terms()) {
        if (k.second >= cj) continue;
        if (bi < 0) {
          bi = k.first;
          bj = k.second;
          continue;
        }
        // compare (k.first - ci)/(cj - k.second) with (bi - ci)/(cj - bj)
        long lhs = static_cast<long>(k.first - ci) * (cj - bj);
        long rhs = static_cast<long>(bi - ci) * (cj - k.second);
        if (lhs < rhs || (lhs == rhs && k.second < bj)) {
          bi = k.first;
          bj = k.second;
        }
      }
      int di = bi - ci, dj = cj - bj;
      int gg = std::gcd(di, dj);
      int q = di / gg, m = dj / gg;
      process_edge(g, st, q, m, m * ci + q * cj, bj, out);
      ci = bi;
      cj = bj;
    }
  }

 private:
  void process_edge(const Poly2& g, const State& st, int q, int m, int ell, int jlow,
                    std::vector<PuiseuxBranch>& out) {
    std::vector<Number> psi_c;
    for (const auto& [k, c] : g.terms()) {
      if (m * k.first + q * k.second != ell) continue;
      auto idx = static_cast<std::size_t>((k.second - jlow) / m);
      if (psi_c.size() <= idx) psi_c.resize(idx + 1, Number(0));
      psi_c[idx] = c;
    }
    QPoly psi(std::move(psi_c));
    RootSet rs = roots_with_multiplicity(psi, opt_.precision);
    std::vector<std::pair<Number, int>> roots;
    for (const auto& [r, mult] : rs.exact) roots.emplace_back(Number(r), mult);
    if (!rs.unresolved.empty() && !opt_.allow_fallback) throw FieldExtensionRequired(to_string(psi, "Z"));
    for (const auto& [r, mult] : rs.approx) roots.emplace_back(Number(r), mult);

    // u*m - v*q = 1
    int u = 1;
    if (q > 1) {
      while ((u * m) % q != 1) ++u;
    }
    int v = (u * m - 1) / q;

    for (const auto& [xi, r] : roots) {
      if (xi.is_zero()) continue;
      std::map<int, Number> xp;
      auto xipow = [&](int e) -> const Number& {
        auto it = xp.find(e);
        if (it == xp.end()) it = xp.emplace(e, xi.pow(e)).first;
        return it->second;
      };
      Poly2 g1;
      for (const auto& [k, a] : g.terms()) {
        int texp = m * k.first + q * k.second - ell;
        Number base = a * xipow(v * k.first);
        for (int kk = 0; kk <= k.second; ++kk)
          g1.add_term(texp, kk, base * binomial(k.second, kk) * xipow(u * (k.second - kk)));
      }
      if (!xi.is_exact()) g1 = drop_low_terms(g1, r);

      State ns;
      ns.lam = st.lam * xipow(v * st.e);
      ns.e = m * st.e;
      ns.S = st.S.substitute_monomial(xipow(v), m) +
             Series::monomial(st.c * xipow(v * st.Q + u), m * st.Q + q);
      ns.c = st.c * xipow(v * st.Q);
      ns.Q = m * st.Q + q;
      ns.exact = st.exact && xi.is_exact();

      if (r == 1) {
        int M = std::max(1, opt_.truncation - ns.Q);
        Series Y = solve_simple(g1, M);
        Series y = ns.S + Y.shifted(ns.Q).scaled(ns.c);
        out.push_back({ns.lam, ns.e, y, ns.exact && y.is_exact()});
      } else {
        expand(g1, ns, out);
      }
    }
  }

  BranchOptions opt_;
};

}  // namespace

std::vector<PuiseuxBranch> puiseux_branches(const Poly2& g, const BranchOptions& opt) {
  std::vector<PuiseuxBranch> out;
  PuiseuxExpander(opt).expand(g, State{}, out);
  return out;
}

std::vector<FiniteBranch> local_branches(const Poly2& f, const Point& p, const BranchOptions& opt) {
  Poly2 g = f.translated(p.x, p.y);
  if (!g.coeff(0, 0).is_zero()) throw std::invalid_argument("local_branches: point is not on the curve");
  g = drop_low_terms(g, 1);
  std::vector<FiniteBranch> out;
  bool exact_point = p.is_exact();
  if (!has_pure_y_term(g)) {
    // the vertical line x = p1 is a component
    FiniteBranch b;
    b.p = p;
    b.x = Series::constant(p.x);
    b.y = Series::constant(p.y) + Series::monomial(Number(1), 1);
    b.alpha = 1;
    b.cx = Number(0);
    b.cy = Number(1);
    b.exact = exact_point;
    out.push_back(b);
    Poly2 h;
    for (const auto& [k, c] : g.terms()) h.add_term(k.first - 1, k.second, c);
    g = h;
    if (!g.coeff(0, 0).is_zero()) return out;
  }
  for (const auto& pb : puiseux_branches(g, opt)) {
    FiniteBranch b;
    b.p = p;
    Series xs = Series::monomial(pb.lam, pb.e);
    b.x = Series::constant(p.x) + xs;
    b.y = Series::constant(p.y) + pb.S;
    auto oy = pb.S.order();
    b.alpha = oy ? std::min(pb.e, *oy) : pb.e;
    b.cx = b.alpha == pb.e ? pb.lam : Number(0);
    b.cy = b.alpha < pb.S.prec() ? pb.S.coeff(b.alpha) : Number(0);
    Series w = xs.scaled(b.cy) - pb.S.scaled(b.cx);
    b.beta = w.order();
    b.exact = exact_point && pb.exact;
    out.push_back(b);
  }
  return out;
}

namespace {

// Chart at the point at infinity [a; b]; variables ordered (z, W).
Poly2 infinity_chart(const Poly2& f, const Number& a, const Number& b, Number& w0) {
  int d = f.total_degree();
  Poly2 g;
  bool bnz = !b.is_zero();
  for (const auto& [k, c] : f.terms()) {
    int zexp = d - k.first - k.second;
    int wexp = bnz ? k.first : k.second;
    g.add_term(zexp, wexp, c);
  }
  w0 = bnz ? a / b : Number(0);
  return g.translated(Number(0), w0);
}

}  // namespace

std::vector<InfinityBranch> branches_at_infinity(const Poly2& f, const Number& a, const Number& b,
                                                 Coords mode, const BranchOptions& opt) {
  Number w0;
  Poly2 g = infinity_chart(f, a, b, w0);
  std::vector<InfinityBranch> out;
  if (!g.coeff(0, 0).is_zero()) return out;
  g = drop_low_terms(g, 1);
  bool bnz = !b.is_zero();
  bool exact_point = a.is_exact() && b.is_exact();
  for (const auto& pb : puiseux_branches(g, opt)) {
    InfinityBranch ib;
    ib.a = a;
    ib.b = b;
    ib.k = pb.e;
    Number inv = Number(1) / pb.lam;
    Series w = Series::constant(w0) + pb.S;
    if (bnz) {
      ib.P = w.scaled(inv);
      ib.Q = Series::constant(inv);
    } else {
      ib.P = Series::constant(inv);
      ib.Q = w.scaled(inv);
    }
    auto ow = pb.S.order();
    ib.tangent_to_line_at_infinity = ow && *ow < ib.k;
    ib.isotropic = is_isotropic_direction(a, b, mode);
    ib.exact = exact_point && pb.exact;
    out.push_back(ib);
  }
  return out;
}

std::vector<PointAtInfinity> points_at_infinity(const Poly2& f, Coords mode) {
  std::vector<PointAtInfinity> out;
  int d = f.total_degree();
  if (d <= 0) return out;
  std::vector<Number> c(static_cast<std::size_t>(d) + 1, Number(0));
  for (const auto& [k, v] : f.terms())
    if (k.first + k.second == d) c[static_cast<std::size_t>(k.first)] = v;
  QPoly p(std::move(c));
  auto make = [&](const Number& x0, int mult, bool rational) {
    PointAtInfinity pt;
    if (x0.is_zero()) {
      pt.a = Number(0);
      pt.b = Number(1);
    } else {
      pt.a = Number(1);
      pt.b = Number(1) / x0;
    }
    pt.multiplicity = mult;
    pt.rational = rational;
    pt.isotropic = is_isotropic_direction(pt.a, pt.b, mode);
    return pt;
  };
  if (p.degree() > 0) {
    RootSet rs = roots_with_multiplicity(p);
    for (const auto& [r, m] : rs.exact) out.push_back(make(Number(r), m, true));
    for (const auto& [r, m] : rs.approx) {
      auto pt = make(Number(r), m, false);
      for (const auto& [fac, fm] : rs.unresolved)
        if (fm == m) pt.unresolved_factor = fac;
      out.push_back(pt);
    }
  }
  if (d - p.degree() > 0) {
    PointAtInfinity pt;
    pt.a = Number(1);
    pt.b = Number(0);
    pt.multiplicity = d - p.degree();
    pt.isotropic = is_isotropic_direction(pt.a, pt.b, mode);
    out.push_back(pt);
  }
  return out;
}

}  // namespace edd
