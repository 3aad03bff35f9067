#include "edd/edcore.hpp"

#include <random>
#include <sstream>

namespace edd {

CurveInput CurveInput::make(const Poly2& f, Coords mode) {
  if (f.is_constant()) throw std::invalid_argument("curve polynomial is constant");
  CurveInput in;
  in.original = f;
  in.mode = mode;
  Poly2 s = squarefree_part(f);
  in.reduced = s.total_degree() != f.total_degree();
  in.f = in.reduced ? s : f;
  return in;
}

CriticalPoly critical_poly(const CurveInput& in) {
  const Poly2& f = in.f;
  Poly2 fx = f.dx(), fy = f.dy();
  Poly2 x = Poly2::x(), y = Poly2::y();
  CriticalPoly g;
  if (in.mode == Coords::Cartesian) {
    // (x - u1) f_y - (y - u2) f_x
    g.c0 = x * fy - y * fx;
    g.cu1 = -fy;
    g.cu2 = fx;
  } else {
    // (z2 - v2) f_z2 - (z1 - v1) f_z1
    g.c0 = y * fy - x * fx;
    g.cu1 = fx;
    g.cu2 = -fy;
  }
  return g;
}

ApproxComplex CriticalPoly::eval(const ApproxComplex& x, const ApproxComplex& y, const ApproxComplex& u1,
                                 const ApproxComplex& u2) const {
  return c0.eval_approx(x, y) + u1 * cu1.eval_approx(x, y) + u2 * cu2.eval_approx(x, y);
}

Number distance_value(Coords mode, const Number& x, const Number& y, const Number& u1, const Number& u2) {
  if (mode == Coords::Cartesian) return (x - u1) * (x - u1) + (y - u2) * (y - u2);
  return (x - u1) * (y - u2);
}

namespace {

bool monic_in_y(const Poly2& f) {
  int d = f.total_degree();
  return f.degree_y() == d && !f.coeff(0, d).is_zero();
}

}  // namespace

EDTrial critical_count(const CurveInput& in, const GaussianRational& u1, const GaussianRational& u2,
                       const Rational& shear) {
  EDTrial t;
  t.u1 = u1;
  t.u2 = u2;
  t.shear = shear;
  Number lam(shear);
  Poly2 fs = in.f.sheared(lam);
  if (!monic_in_y(fs)) {
    t.count = -1;
    return t;
  }
  Poly2 gs = critical_poly(in).at(Number(u1), Number(u2)).sheared(lam);
  QPoly R = resultant_y(fs, gs);
  if (R.is_zero_poly()) {
    t.count = -1;
    return t;
  }
  t.resultant_degree = R.degree();
  QPoly sq = R.degree() > 0 ? squarefree_part(R) : QPoly(Number(1));
  t.squarefree_degree = sq.degree();
  // singular abscissae: common roots of f and f_x + mu f_y for two values of mu
  Poly2 fx = fs.dx(), fy = fs.dy();
  QPoly S;
  for (long mu : {3L, -7L}) {
    Poly2 comb = fx + fy.scaled(Number(Rational(mpz_class(mu), mpz_class(2))));
    if (comb.is_zero()) continue;
    QPoly r = comb.degree_y() <= 0 && fs.degree_y() <= 0 ? QPoly() : resultant_y(fs, comb);
    if (r.is_zero_poly()) continue;
    S = gcd(S, r);
  }
  int overlap = 0;
  if (!S.is_zero_poly() && S.degree() > 0 && sq.degree() > 0) overlap = gcd(sq, S).degree();
  t.singular_overlap = overlap;
  t.count = t.squarefree_degree - overlap;
  return t;
}

namespace {

GaussianRational random_gq(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-997, 997), den(1, 997);
  return {Rational(mpz_class(num(rng)), mpz_class(den(rng))), Rational(mpz_class(num(rng)), mpz_class(den(rng)))};
}

Rational random_shear(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(1, 29), den(1, 13), sgn(0, 1);
  long n = num(rng) * (sgn(rng) ? 1 : -1);
  return Rational(mpz_class(n), mpz_class(den(rng)));
}

EDTrial run_trial(const CurveInput& in, std::mt19937_64& rng, int attempt) {
  for (int tries = 0; tries < 20; ++tries) {
    GaussianRational u1 = random_gq(rng), u2 = random_gq(rng);
    Rational lam = random_shear(rng);
    EDTrial t = critical_count(in, u1, u2, lam);
    t.attempt = attempt;
    if (t.count >= 0) return t;
  }
  throw std::runtime_error("ed_degree: no admissible shear found");
}

}  // namespace

EDResult ed_degree(const CurveInput& in, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("ed_degree: trials must be >= 1");
  std::mt19937_64 rng(seed);
  EDResult res;
  res.seed = seed;
  std::vector<EDTrial> current;
  for (int k = 0; k < trials; ++k) {
    current.push_back(run_trial(in, rng, 0));
    res.trials.push_back(current.back());
  }
  auto best = [&]() {
    int m = 0;
    for (const auto& t : current) m = std::max(m, t.count);
    return m;
  };
  int m = best();
  for (int attempt = 1; attempt <= 3; ++attempt) {
    bool redo = false;
    for (auto& t : current) {
      if (t.count == m) continue;
      redo = true;
      t = run_trial(in, rng, attempt);
      res.trials.push_back(t);
    }
    if (!redo) break;
    m = best();
  }
  int agree = 0;
  for (const auto& t : current) agree += t.count == m;
  if (trials > 1 && agree < 2) {
    std::ostringstream log;
    for (const auto& t : res.trials) log << t.count << " ";
    throw UnstableCount(log.str());
  }
  res.degree = m;
  return res;
}

// ------------------------------------------------------------------ h-series

HSeries h_series(const FiniteBranch& b, Coords mode) {
  Series xd = b.x.derivative(), yd = b.y.derivative();
  HSeries h;
  if (mode == Coords::Cartesian) {
    h.s0 = xd * b.x + yd * b.y;
    h.s1 = -xd;
    h.s2 = -yd;
  } else {
    h.s0 = xd * b.y + yd * b.x;
    h.s1 = -yd;
    h.s2 = -xd;
  }
  return h;
}

HSeries h_series(const InfinityBranch& b, Coords mode) {
  Number k(b.k);
  Series A = b.P.euler_derivative() - b.P.scaled(k);
  Series B = b.Q.euler_derivative() - b.Q.scaled(k);
  HSeries h;
  if (mode == Coords::Cartesian) {
    h.s0 = A * b.P + B * b.Q;
    h.s1 = -A.shifted(b.k);
    h.s2 = -B.shifted(b.k);
  } else {
    h.s0 = A * b.Q + B * b.P;
    h.s1 = -B.shifted(b.k);
    h.s2 = -A.shifted(b.k);
  }
  return h;
}

namespace {

int known_terms(const HSeries& h) {
  if (!h.exact_to_all_orders()) return h.prec();
  return static_cast<int>(std::max({h.s0.coeffs().size(), h.s1.coeffs().size(), h.s2.coeffs().size()}));
}

}  // namespace

MorseData line_morse(const HSeries& h, int idx) {
  MorseData md;
  md.exact = h.is_exact();
  int n = known_terms(h);
  bool complete = h.exact_to_all_orders();
  if (idx >= h.prec()) {
    md.needs_more_terms = true;
    return md;
  }
  AffineForm lead = h.coeff(idx);
  if (lead.is_constant()) return md;
  AffineLine L(lead);
  md.line = L;
  int j = idx + 1;
  QPoly r;
  for (; j < n; ++j) {
    r = restrict_to_line(h.coeff(j), L);
    if (!r.is_zero_poly()) break;
  }
  if (j >= n) {
    md.needs_more_terms = !complete;
    return md;
  }
  md.m_generic = j - idx;
  if (r.degree() == 1) {
    Number s = -r.coeff(0) / r.coeff(1);
    auto [b1, b2] = L.base();
    auto [d1, d2] = L.direction();
    Point q{b1 + s * d1, b2 + s * d2};
    md.focal_point = q;
    int j2 = j + 1;
    for (; j2 < n; ++j2)
      if (!h.coeff(j2).eval(q.x, q.y).is_zero()) break;
    if (j2 < n) {
      md.m_exceptional = j2 - idx;
    } else if (complete) {
      md.focal_non_isolated = true;
    } else {
      md.needs_more_terms = true;
    }
  }
  return md;
}

}  // namespace edd
