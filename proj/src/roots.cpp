#include "edd/roots.hpp"

#include <cmath>

namespace edd {

namespace {

// Coefficient size in bits, used to pick a working precision.
std::size_t coefficient_bits(const QPoly& p) {
  std::size_t b = 0;
  for (const auto& c : p.coeffs())
    if (c.is_exact()) b = std::max(b, c.exact().height_bits());
  return b;
}

}  // namespace

std::vector<ApproxComplex> aberth_roots(const QPoly& p, mpfr_prec_t prec) {
  int n = p.degree();
  std::vector<ApproxComplex> z;
  if (n <= 0) return z;
  std::vector<ApproxComplex> a;
  ApproxComplex lead = p.lc().approx(prec);
  for (const auto& c : p.coeffs()) a.push_back(c.approx(prec) / lead);
  if (n == 1) return {-a[0]};

  // Fujiwara-style bound for the initial circle
  double bound = 0;
  for (int k = 0; k < n; ++k) {
    double m = a[static_cast<std::size_t>(k)].abs().to_double();
    if (m > 0) bound = std::max(bound, 2 * std::pow(m, 1.0 / (n - k)));
  }
  if (bound == 0) bound = 1;
  BigFloat two_pi = BigFloat::pi(prec) * BigFloat(2L, prec);
  for (int k = 0; k < n; ++k) {
    BigFloat theta = two_pi * BigFloat(static_cast<double>(k) / n + 0.1234, prec);
    z.push_back(ApproxComplex::polar(BigFloat(bound * 0.9, prec), theta));
  }

  auto eval = [&](const ApproxComplex& x, ApproxComplex& v, ApproxComplex& d) {
    v = ApproxComplex(1.0, 0.0, prec);
    d = ApproxComplex(prec);
    for (int k = n - 1; k >= 0; --k) {
      d = d * x + v;
      v = v * x + a[static_cast<std::size_t>(k)];
    }
  };

  BigFloat eps = BigFloat::pow2(-static_cast<long>(prec) + 8, prec);
  std::vector<bool> done(static_cast<std::size_t>(n), false);
  for (int iter = 0; iter < 100 * n + 200; ++iter) {
    bool all = true;
    for (int k = 0; k < n; ++k) {
      auto ks = static_cast<std::size_t>(k);
      if (done[ks]) continue;
      ApproxComplex v(prec), d(prec);
      eval(z[ks], v, d);
      if (v.is_exact_zero()) {
        done[ks] = true;
        continue;
      }
      ApproxComplex ratio = v / d;
      ApproxComplex sum(prec);
      for (int j = 0; j < n; ++j)
        if (j != k) sum += ApproxComplex(1.0, 0.0, prec) / (z[ks] - z[static_cast<std::size_t>(j)]);
      ApproxComplex w = ratio / (ApproxComplex(1.0, 0.0, prec) - ratio * sum);
      if (!w.is_finite()) {
        // perturb a stuck approximation
        z[ks] = z[ks] + ApproxComplex(1e-3, 1e-3, prec);
        all = false;
        continue;
      }
      z[ks] = z[ks] - w;
      BigFloat scale = z[ks].abs();
      if (scale < BigFloat(1L, prec)) scale = BigFloat(1L, prec);
      if (w.abs() <= eps * scale) done[ks] = true;
      else all = false;
    }
    if (all) break;
  }
  return z;
}

std::vector<GaussianRational> gaussian_rational_roots(const QPoly& p) {
  std::vector<GaussianRational> out;
  if (p.degree() <= 0) return out;
  if (!is_exact(p)) throw std::invalid_argument("gaussian_rational_roots: approximate input");
  // clear denominators so coefficients lie in Z[i]
  mpz_class l = 1;
  for (const auto& c : p.coeffs()) {
    const auto& g = c.exact();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), g.re().denominator().get_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), g.im().denominator().get_mpz_t());
  }
  QPoly P = p.scaled(Number(Rational(l)));
  GaussianRational L = P.lc().exact();
  // zero roots first
  int v = 0;
  while (v <= P.degree() && P.coeff(v).is_zero()) ++v;
  if (v > 0) {
    out.emplace_back(0);
    std::vector<Number> c(P.coeffs().begin() + v, P.coeffs().end());
    P = QPoly(std::move(c));
  }
  if (P.degree() <= 0) return out;
  // a root r = a/b in lowest terms has b | L, so L*r lies in Z[i]
  mpfr_prec_t prec = static_cast<mpfr_prec_t>(std::max<std::size_t>(256, 4 * coefficient_bits(P) + 16 * P.degree()));
  auto approx = aberth_roots(P, prec);
  ApproxComplex La = to_approx(L, prec);
  for (const auto& r : approx) {
    ApproxComplex s = La * r;
    GaussianRational cand(Rational(s.re().round_to_integer()), Rational(s.im().round_to_integer()));
    cand /= L;
    if (P.eval(Number(cand)).is_zero()) {
      bool dup = std::any_of(out.begin(), out.end(), [&](const GaussianRational& g) { return g == cand; });
      if (!dup) out.push_back(cand);
    }
  }
  return out;
}

RootSet roots_with_multiplicity(const QPoly& p, mpfr_prec_t prec) {
  RootSet rs;
  auto parts = squarefree_decomposition(p);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const QPoly& part = parts[i];
    int mult = static_cast<int>(i) + 1;
    if (part.degree() <= 0) continue;
    if (!is_exact(part)) {
      for (auto& r : aberth_roots(part, prec)) rs.approx.emplace_back(r, mult);
      continue;
    }
    auto ex = gaussian_rational_roots(part);
    QPoly rest = part;
    for (const auto& r : ex) {
      rs.exact.emplace_back(r, mult);
      rest = divexact(rest, QPoly(std::vector<Number>{Number(-r), Number(1)}));
    }
    if (rest.degree() > 0) {
      rs.unresolved.emplace_back(rest, mult);
      for (auto& r : aberth_roots(rest, prec)) rs.approx.emplace_back(r, mult);
    }
  }
  return rs;
}

bool CommonPoints::all_exact() const {
  return std::all_of(points.begin(), points.end(), [](const Point& p) { return p.is_exact(); });
}

namespace {

void push_unique(std::vector<Point>& pts, Point p) {
  for (const auto& q : pts)
    if ((q.x - p.x).is_zero() && (q.y - p.y).is_zero()) return;
  pts.push_back(std::move(p));
}

BigFloat poly_scale(const Poly2& f, const ApproxComplex& x, const ApproxComplex& y) {
  mpfr_prec_t prec = x.precision();
  BigFloat mx = x.abs(), my = y.abs(), one(1L, prec);
  if (mx < one) mx = one;
  if (my < one) my = one;
  BigFloat s(0L, prec);
  for (const auto& [k, c] : f.terms()) {
    BigFloat t = c.approx(prec).abs();
    for (int i = 0; i < k.first; ++i) t *= mx;
    for (int j = 0; j < k.second; ++j) t *= my;
    s += t;
  }
  return s;
}

}  // namespace

CommonPoints common_points(const std::vector<Poly2>& polys, mpfr_prec_t prec) {
  CommonPoints out;
  std::vector<Poly2> ps;
  for (const auto& p : polys)
    if (!p.is_zero()) ps.push_back(p);
  if (ps.empty()) {
    out.infinite = true;
    return out;
  }
  for (const auto& p : ps)
    if (p.is_constant()) return out;  // nonzero constant: no common zero
  Poly2 g = ps[0];
  for (std::size_t i = 1; i < ps.size(); ++i) g = gcd(g, ps[i]);
  if (!g.is_constant()) {
    out.infinite = true;
    return out;
  }
  if (ps.size() == 1) {
    out.infinite = true;
    return out;
  }

  bool swap = std::all_of(ps.begin(), ps.end(), [](const Poly2& p) { return p.degree_y() <= 0; });
  if (swap)
    for (auto& p : ps) p = p.swapped();

  std::size_t lead = 0;
  while (ps[lead].degree_y() <= 0) ++lead;
  QPoly r;
  for (std::size_t j = 0; j < ps.size(); ++j) {
    if (j == lead) continue;
    QPoly res = ps[j].degree_y() <= 0 ? squarefree_part(to_ypoly(ps[j]).coeff(0)) : resultant_y(ps[lead], ps[j]);
    if (res.is_zero_poly()) continue;
    r = gcd(r, res);
    if (r.degree() == 0) return out;
  }
  if (r.is_zero_poly() || r.degree() <= 0) return out;

  auto emit = [&](Number x, Number y) {
    if (swap) std::swap(x, y);
    push_unique(out.points, Point{std::move(x), std::move(y)});
  };

  RootSet xr = roots_with_multiplicity(r, prec);
  for (const auto& [x0, m] : xr.exact) {
    Number xv(x0);
    QPoly gy;
    for (const auto& p : ps) gy = gcd(gy, p.restrict_x(xv));
    if (gy.degree() <= 0) continue;
    RootSet yr = roots_with_multiplicity(gy, prec);
    for (const auto& [y0, my] : yr.exact) emit(xv, Number(y0));
    for (const auto& [y0, my] : yr.approx) emit(xv, Number(y0));
  }
  BigFloat tol = BigFloat::pow2(-static_cast<long>(prec) / 3, prec);
  for (const auto& [x0, m] : xr.approx) {
    Number xv(x0);
    QPoly py = ps[lead].restrict_x(xv);
    for (const auto& y0 : aberth_roots(py, prec)) {
      bool ok = true;
      for (const auto& p : ps) {
        BigFloat res = p.eval_approx(x0, y0).abs();
        if (res > tol * poly_scale(p, x0, y0)) {
          ok = false;
          break;
        }
      }
      if (ok) emit(xv, Number(y0));
    }
  }
  return out;
}

}  // namespace edd
