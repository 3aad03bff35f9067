// Acceptance run over the worked curves: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <deque>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "edd/cli.hpp"

using namespace edd;

namespace {

constexpr double kBudgetSeconds = 30;

Number q(long n, long d = 1) { return Number(Rational(mpz_class(n), mpz_class(d))); }
Number gi(long re, long im) { return Number(GaussianRational(Rational(re), Rational(im))); }
Poly2 X() { return Poly2::x(); }
Poly2 Y() { return Poly2::y(); }

Poly2 circle() { return X().pow(2) + Y().pow(2) - Poly2(1); }
Poly2 cusp() { return Y().pow(2) - X().pow(3); }
Poly2 quintic() {
  return X() * Y().pow(4) - (Y().pow(5).scaled(gi(0, 1)) + Y().pow(3) - Y().pow(2).scaled(3) + Y().scaled(3) - Poly2(1));
}
Poly2 x2y_cubic() { return X().pow(2) * Y() - X() - Poly2(1); }
Poly2 perturbed_tacnode() { return (Y() - X().pow(2)).pow(2) - X().pow(5); }

AffineLine line(Number a, Number b, Number c) { return AffineLine(AffineForm{a, b, c}); }
bool proportional(const Poly2& a, const Poly2& b) { return a.normalized() == b.normalized(); }
bool at(const std::optional<Point>& p, const Number& x, const Number& y) { return p && p->x == x && p->y == y; }

const LineComponent* find_line(const std::vector<LineComponent>& v, const AffineLine& l) {
  for (const auto& c : v)
    if (c.line == l) return &c;
  return nullptr;
}

// Collects failed expectations for one criterion.
struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::string opt_str(const std::optional<int>& v) { return v ? std::to_string(*v) : "none"; }

// Reports shared between the exact criteria and the oracle run.
struct Case {
  std::string name;
  CurveInput in;
  DiscriminantReport report;
};
std::deque<Case> oracle_cases;

const DiscriminantReport& remember(const std::string& name, const CurveInput& in) {
  oracle_cases.push_back({name, in, assemble_report(in)});
  return oracle_cases.back().report;
}

void criterion1(Check& c) {
  const auto& r = remember("circle", CurveInput::make(circle()));
  c.expect(r.ed.degree == 2, "ed_degree " + std::to_string(r.ed.degree));
  auto atyp = r.of_kind(ComponentKind::Atyp);
  c.expect(atyp.size() == 2 && r.components.size() == 2, "expected exactly two atypical lines");
  for (const AffineLine& l : {line(1, gi(0, 1), 0), line(1, gi(0, -1), 0)}) {
    const LineComponent* comp = find_line(r.components, l);
    c.expect(comp != nullptr, "missing line " + l.str());
    if (!comp) continue;
    const Anchor& a = comp->primary();
    c.expect(a.m_generic == 2, "m_generic " + opt_str(a.m_generic) + " on " + l.str());
    c.expect(at(a.focal_point, Number(0), Number(0)), "focal point on " + l.str());
    c.expect(a.focal_non_isolated, "focal point not flagged non-isolated on " + l.str());
  }
  c.expect(r.classification.is_circle_type, "not classified circle type");
  c.expect(r.total_equals_strict && r.strict_equals_atyp, "decomposition equalities not stated");
}

void criterion2(Check& c) {
  const auto& r = remember("cusp", CurveInput::make(cusp()));
  c.expect(r.ed.degree == 4, "ed_degree " + std::to_string(r.ed.degree));
  auto sing = r.of_kind(ComponentKind::Sing);
  c.expect(sing.size() == 1, "expected one singular line");
  if (sing.size() == 1) {
    c.expect(sing[0]->line == line(1, 0, 0), "singular line " + sing[0]->line.str());
    const Anchor& a = sing[0]->primary();
    c.expect(a.m_generic == 1, "m_generic " + opt_str(a.m_generic));
    c.expect(at(a.focal_point, Number(0), Number(0)), "focal point not at the origin");
    c.expect(a.m_exceptional == 2, "m_exceptional " + opt_str(a.m_exceptional));
  }
  c.expect(r.focal.implicit.has_value(), "no implicit focal curve");
  if (r.focal.implicit) {
    c.expect(r.focal.implicit->total_degree() == 4, "focal degree " + std::to_string(r.focal.implicit->total_degree()));
    c.expect(r.focal.implicit->coeff(0, 0).is_zero(), "focal curve misses the origin");
  }
}

void criterion3(Check& c) {
  auto in = CurveInput::make(quintic());
  const auto& r = remember("quintic", in);
  if (r.ed.degree != 10) {
    ApproxComplex u1(0.3141, -0.2718, 212), u2(-0.577, 0.1414, 212);
    int numeric = solve_critical(in, u1, u2, OracleOptions{.seed = 3}).count();
    c.expect(false, "ed_degree " + std::to_string(r.ed.degree) + " (numeric critical count " + std::to_string(numeric) +
                        "), expected 10");
  }
  const LineComponent* comp = find_line(r.components, line(gi(0, 1), 1, 0));
  c.expect(comp != nullptr, "missing line i*u1 + u2 = 0");
  if (!comp) return;
  const Anchor* atyp = nullptr;
  const Anchor* iflex = nullptr;
  for (const auto& a : comp->anchors) {
    if (a.kind == ComponentKind::Atyp) atyp = &a;
    if (a.kind == ComponentKind::Iflex) iflex = &a;
  }
  c.expect(atyp != nullptr, "no atypical anchor");
  if (atyp) {
    // [i; 1] and [1; -i] are the same point at infinity
    c.expect(atyp->infinity &&
                 (atyp->infinity->first * Number(1) - atyp->infinity->second * gi(0, 1)).is_zero(),
             "anchor is not [i; 1]");
    c.expect(atyp->m_generic == 2, "m_generic " + opt_str(atyp->m_generic));
    c.expect(at(atyp->focal_point, gi(0, -3), Number(-3)), "focal point not (-3i, -3)");
    c.expect(atyp->m_exceptional == 3, "m_exceptional " + opt_str(atyp->m_exceptional));
  }
  c.expect(iflex != nullptr, "the iflex analysis did not reach the same line");
  if (iflex) c.expect(at(iflex->point, gi(0, 1), Number(1)), "dual anchor not at (i, 1)");
}

void criterion4(Check& c) {
  const auto& r = remember("x^2 y - x - 1 (isotropic)", CurveInput::make(x2y_cubic(), Coords::Isotropic));
  c.expect(r.ed.degree == 3, "ed_degree " + std::to_string(r.ed.degree));
  c.expect(r.of_kind(ComponentKind::Sing).empty(), "singular lines present");
  const LineComponent* v1 = find_line(r.components, line(1, 0, 0));
  const LineComponent* v2 = find_line(r.components, line(0, 1, 0));
  c.expect(v1 && v1->has_kind(ComponentKind::Atyp), "missing atypical line v1 = 0");
  c.expect(v2 && v2->has_kind(ComponentKind::Atyp), "missing atypical line v2 = 0");
  if (v1) {
    c.expect(v1->primary().m_generic == 1, "m_generic on v1 = 0 is " + opt_str(v1->primary().m_generic));
    c.expect(!v1->primary().focal_point, "focal point on v1 = 0");
  }
  if (v2) {
    const Anchor& a = v2->primary();
    c.expect(a.m_generic == 2, "m_generic on v2 = 0 is " + opt_str(a.m_generic));
    c.expect(at(a.focal_point, Number(1), Number(0)), "focal point on v2 = 0 not (1, 0)");
    c.expect(a.m_exceptional == 3, "m_exceptional on v2 = 0 is " + opt_str(a.m_exceptional));
  }
  Poly2 v1p = X(), v2p = Y();
  Poly2 expect = -v1p.pow(3) + (v1p.pow(2) * v2p).scaled(27) + v1p.pow(2).scaled(3) - v1p.scaled(3) + Poly2(1);
  c.expect(r.focal.implicit && proportional(*r.focal.implicit, expect), "focal polynomial differs");
}

void criterion5(Check& c) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 30);
  auto rnd = [&] { return Number(GaussianRational(Rational(mpz_class(num(rng)), mpz_class(den(rng))),
                                                  Rational(mpz_class(num(rng)), mpz_class(den(rng))))); };
  for (int k = 0; k < 10; ++k) {
    Poly2 f = X() + Y().scaled(k % 2 ? gi(0, 1) : gi(0, -1)) - Poly2(rnd());
    auto r = assemble_report(CurveInput::make(f));
    c.expect(r.classification.is_isotropic_line, f.str() + " not isotropic");
    c.expect(r.ed.degree == 0 && r.total_is_curve, f.str() + ": ed " + std::to_string(r.ed.degree));
  }
  for (int k = 0; k < 10;) {
    Number a = rnd(), b = rnd();
    if ((a * a + b * b).is_zero() || (a.is_zero() && b.is_zero())) continue;
    ++k;
    Poly2 f = X().scaled(a) + Y().scaled(b) + Poly2(rnd());
    auto r = assemble_report(CurveInput::make(f));
    c.expect(!r.classification.is_isotropic_line && r.classification.is_line, f.str() + " misclassified");
    c.expect(r.ed.degree == 1, f.str() + ": ed " + std::to_string(r.ed.degree));
    c.expect(r.components.empty() && r.focal.empty, f.str() + ": discriminant not empty");
  }
}

void criterion6(Check& c) {
  struct Row {
    int alpha, beta;
    Poly2 f;
    std::string name;
  };
  std::vector<Row> rows = {{2, 3, Y().pow(2) - X().pow(3), "y^2 = x^3"},
                           {2, 5, Y().pow(2) - X().pow(5), "y^2 = x^5"},
                           {2, 7, Y().pow(2) - X().pow(7), "y^2 = x^7"},
                           {3, 4, Y().pow(3) - X().pow(4), "y^3 = x^4"},
                           {3, 5, Y().pow(3) - X().pow(5), "y^3 = x^5"},
                           {2, 4, perturbed_tacnode(), "(y - x^2)^2 = x^5"}};
  for (const auto& row : rows) {
    const auto& r = remember(row.name, CurveInput::make(row.f));
    auto sing = r.of_kind(ComponentKind::Sing);
    c.expect(sing.size() == 1, row.name + ": " + std::to_string(sing.size()) + " singular lines");
    if (sing.size() != 1) continue;
    const Anchor& a = sing[0]->primary();
    c.expect(sing[0]->line == line(1, 0, 0), row.name + ": line " + sing[0]->line.str());
    if (row.beta > 2 * row.alpha) {
      c.expect(a.m_generic == row.alpha, row.name + ": m_generic " + opt_str(a.m_generic));
      c.expect(!a.focal_point, row.name + ": unexpected focal point");
    } else if (row.beta < 2 * row.alpha) {
      c.expect(a.m_generic == row.beta - row.alpha, row.name + ": m_generic " + opt_str(a.m_generic));
      c.expect(at(a.focal_point, Number(0), Number(0)), row.name + ": focal point not at p");
      c.expect(a.m_exceptional == row.alpha, row.name + ": m_exceptional " + opt_str(a.m_exceptional));
    } else {
      c.expect(a.m_generic == row.alpha, row.name + ": m_generic " + opt_str(a.m_generic));
      c.expect(a.focal_point && !(a.focal_point->x.is_zero() && a.focal_point->y.is_zero()),
               row.name + ": focal point not off p");
      c.expect(at(a.focal_point, Number(0), q(1, 2)), row.name + ": focal point not (0, 1/2)");
      c.expect(a.m_exceptional == row.alpha + 1, row.name + ": m_exceptional " + opt_str(a.m_exceptional));
    }
  }
}

void criterion7(Check& c) {
  for (const auto& cs : oracle_cases) {
    OracleOptions opt;
    opt.seed = 11;
    auto checks = cross_validate(cs.in, cs.report, opt, 40, false);
    std::map<int, int> per_component[2];
    std::map<int, int> survivors[2];
    for (const auto& chk : checks) {
      for (int k = 0; k < 2; ++k) {
        per_component[k][chk.component] += chk.observed[k];
        survivors[k][chk.component] = chk.survivors[k];
      }
      std::ostringstream what;
      what << cs.name << " component " << chk.component << " anchor " << chk.anchor << ": expected " << chk.expected
           << ", observed " << chk.observed[0] << " and " << chk.observed[1] << ", lost " << chk.lost[0] + chk.lost[1];
      c.expect(chk.observed[0] == chk.expected && chk.observed[1] == chk.expected, what.str());
      c.expect(chk.lost[0] == 0 && chk.lost[1] == 0, what.str());
    }
    for (int k = 0; k < 2; ++k)
      for (const auto& [comp, abut] : per_component[k])
        c.expect(survivors[k][comp] + abut == cs.report.ed.degree,
                 cs.name + " component " + std::to_string(comp) + ": survivors + abutting = " +
                     std::to_string(survivors[k][comp] + abut) + ", ed_degree " +
                     std::to_string(cs.report.ed.degree));
    std::size_t generic = 0;
    for (const auto& comp : cs.report.components)
      for (const auto& a : comp.anchors) generic += a.m_generic.has_value();
    c.expect(checks.size() == generic, cs.name + ": not every line component was tracked");
  }
}

void criterion8(Check& c) {
  struct C {
    Poly2 f;
    Coords mode;
  };
  std::vector<C> curves = {{Y() - X().pow(2), Coords::Cartesian}, {cusp(), Coords::Cartesian},
                           {x2y_cubic(), Coords::Isotropic}, {X() * Y() - Poly2(1), Coords::Cartesian},
                           {Y() - X().pow(3), Coords::Cartesian}};
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<long> num(-300, 300), den(1, 113);
  int tested = 0;
  for (std::size_t ci = 0; ci < curves.size(); ++ci) {
    const auto& cv = curves[ci];
    auto in = CurveInput::make(cv.f, cv.mode);
    Warnings w;
    auto fc = focal_component(in, {}, {}, w);
    auto rp = rational_param(in);
    c.expect(fc.implicit.has_value() && rp.has_value(), cv.f.str() + ": no focal curve or parametrization");
    if (!fc.implicit || !rp) continue;
    for (const auto& s : fc.samples)
      if (s.exact) c.expect(fc.implicit->eval(s.u.x, s.u.y).is_zero(), cv.f.str() + ": sample off the focal curve");
    EvoluteMap em = evolute_map(*rp, cv.mode);
    RatFunc du1 = em.u1.derivative(), du2 = em.u2.derivative();
    RatFunc dx = rp->x.derivative(), dy = rp->y.derivative();
    for (int k = 0; k < 40;) {
      Number t(Rational(mpz_class(num(rng)), mpz_class(den(rng))));
      auto u = evolute_point(*rp, cv.mode, t);
      auto a = du1.try_eval(t), b = du2.try_eval(t), p = dx.try_eval(t), r = dy.try_eval(t);
      if (!u || !a || !b || !p || !r) continue;
      ++k;
      ++tested;
      Number ortho = cv.mode == Coords::Cartesian ? *p * *a + *r * *b : *p * *b + *r * *a;
      c.expect(ortho.is_zero(), cv.f.str() + ": orthogonality fails at t = " + t.str());
      c.expect(fc.implicit->eval(u->x, u->y).is_zero(), cv.f.str() + ": evolute point off the focal curve");
      if (ci == 0) {
        // centre of curvature of y = x^2 at (t, t^2)
        Number ex = Number(-4) * t * t * t, ey = q(1, 2) + Number(3) * t * t;
        c.expect(u->x == ex && u->y == ey, "parabola evolute differs at t = " + t.str());
      }
    }
    if (ci == 0)
      c.expect(proportional(*fc.implicit, X().pow(2).scaled(27) - (Y() - Poly2(q(1, 2))).pow(3).scaled(16)),
               "parabola focal polynomial is " + fc.implicit->str());
  }
  c.expect(tested == 200, std::to_string(tested) + " parameters tested");
}

void criterion9(Check& c) {
  auto rp = rational_param(CurveInput::make(quintic()));
  c.expect(rp.has_value(), "no parametrization");
  if (!rp) return;
  double prev = 1e300;
  for (int n = 4; n <= 20; ++n) {
    Number t = Number(1) + Number(Rational(mpz_class(1), mpz_class(1) << n));
    auto u = evolute_point(*rp, Coords::Cartesian, t);
    c.expect(u.has_value(), "no evolute point at n = " + std::to_string(n));
    if (!u) return;
    auto d1 = (u->x - gi(0, 1)).to_std(), d2 = (u->y - Number(1)).to_std();
    double dist = std::sqrt(std::norm(d1) + std::norm(d2));
    c.expect(dist < prev, "distance not decreasing at n = " + std::to_string(n));
    prev = dist;
  }
  c.expect(prev < 1e-3, "distance " + std::to_string(prev) + " at n = 20");
}

void criterion10(Check& c) {
  struct R {
    std::string poly;
    Coords mode;
  };
  for (const R& r : {R{"x^2 + y^2 - 1", Coords::Cartesian}, R{"y^2 - x^3", Coords::Cartesian},
                     R{"z1^2*z2 - z1 - 1", Coords::Isotropic}}) {
    RunConfig cfg;
    cfg.poly = r.poly;
    cfg.mode = r.mode;
    cfg.seed = 99;
    std::ostringstream a, b;
    int ca = run(cfg, a), cb = run(cfg, b);
    c.expect(ca == 0 && cb == 0, r.poly + ": exit codes " + std::to_string(ca) + ", " + std::to_string(cb));
    c.expect(a.str() == b.str(), r.poly + ": reports differ between runs");
    c.expect(round_trip(a.str()) == a.str(), r.poly + ": JSON round trip differs");
  }
}

}  // namespace

int main() {
  std::vector<std::function<void(Check&)>> criteria = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                       criterion6, criterion7, criterion8, criterion9, criterion10};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i](c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > kBudgetSeconds) c.failures.push_back("took " + std::to_string(secs) + " s");
    bool ok = c.failures.empty();
    failed += !ok;
    std::printf("criterion %zu: %s (%.1f s)\n", i + 1, ok ? "PASS" : "FAIL", secs);
    for (const auto& f : c.failures) std::printf("    %s\n", f.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
