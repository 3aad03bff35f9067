#include "edd/discriminants.hpp"

#include <algorithm>
#include <sstream>

namespace edd {

std::string to_string(ComponentKind k) {
  switch (k) {
    case ComponentKind::Atyp: return "atyp";
    case ComponentKind::Sing: return "sing";
    case ComponentKind::Iflex: return "iflex";
  }
  return "?";
}

void Warnings::add(std::string w) {
  if (std::find(items.begin(), items.end(), w) == items.end()) items.push_back(std::move(w));
}

bool LineComponent::has_kind(ComponentKind k) const {
  return std::any_of(anchors.begin(), anchors.end(), [&](const Anchor& a) { return a.kind == k; });
}

std::vector<ComponentKind> LineComponent::kinds() const {
  std::vector<ComponentKind> out;
  for (auto k : {ComponentKind::Atyp, ComponentKind::Sing, ComponentKind::Iflex})
    if (has_kind(k)) out.push_back(k);
  return out;
}

std::vector<const LineComponent*> DiscriminantReport::of_kind(ComponentKind k) const {
  std::vector<const LineComponent*> out;
  for (const auto& c : components)
    if (c.has_kind(k)) out.push_back(&c);
  return out;
}

// ------------------------------------------------------------ classification

Classification classify_curve(const CurveInput& in) {
  Classification c;
  const Poly2& f = in.f;
  int d = f.total_degree();
  if (d == 1) {
    c.is_line = true;
    Number a = f.coeff(1, 0), b = f.coeff(0, 1);
    c.is_isotropic_line = is_isotropic_direction(b, -a, in.mode);
    c.implied_ed_degree = c.is_isotropic_line ? 0 : 1;
    return c;
  }
  if (d != 2) return c;
  Number a20 = f.coeff(2, 0), a11 = f.coeff(1, 1), a02 = f.coeff(0, 2);
  Number a10 = f.coeff(1, 0), a01 = f.coeff(0, 1);
  if (in.mode == Coords::Cartesian) {
    if (!a20.is_zero() && a20 == a02 && a11.is_zero()) {
      c.is_circle_type = true;
      c.centre = Point{-a10 / (Number(2) * a20), -a01 / (Number(2) * a20)};
    }
  } else {
    // a11 (z1 - c1)(z2 - c2) + const
    if (a20.is_zero() && a02.is_zero() && !a11.is_zero()) {
      c.is_circle_type = true;
      c.centre = Point{-a01 / a11, -a10 / a11};
    }
  }
  return c;
}

namespace {

BranchOptions branch_opts(const AnalyzerOptions& opt, int n) {
  BranchOptions b;
  b.truncation = n;
  b.precision = opt.precision;
  return b;
}

int start_truncation(const CurveInput& in, const AnalyzerOptions& opt) {
  return opt.truncation > 0 ? opt.truncation : default_truncation(in.degree());
}

int truncation_limit(const CurveInput& in, const AnalyzerOptions& opt) {
  if (!opt.adapt) return start_truncation(in, opt);
  return std::max(start_truncation(in, opt), max_truncation(in.degree()));
}

bool same_point(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }

std::string point_str(const Point& p) { return "(" + p.x.str() + ", " + p.y.str() + ")"; }

Anchor anchor_from(ComponentKind kind, const MorseData& md, bool exact, int n) {
  Anchor a;
  a.kind = kind;
  a.m_generic = md.m_generic;
  a.focal_point = md.focal_point;
  a.m_exceptional = md.m_exceptional;
  a.focal_non_isolated = md.focal_non_isolated;
  a.exact = exact && md.exact;
  a.truncation = n;
  return a;
}

// Morse data for every branch, doubling the truncation while some order query
// runs past the known terms.
template <class Expand, class Analyze>
auto adaptive(int n0, int nmax, Expand expand, Analyze analyze) {
  int n = n0;
  for (;;) {
    auto branches = expand(n);
    std::vector<MorseData> md;
    bool more = false;
    for (const auto& b : branches) {
      md.push_back(analyze(b));
      more = more || md.back().needs_more_terms;
    }
    if (!more || n >= nmax) return std::make_tuple(branches, md, n);
    n = std::min(2 * n, nmax);
  }
}

}  // namespace

// ------------------------------------------------------------------ atypical

namespace {

struct AtypResult {
  std::optional<LineComponent> comp;
  bool needs_more_terms = false;
};

AtypResult atyp_analyze(const InfinityBranch& br, int branch_index, const CurveInput& in, int n, Warnings& warn) {
  AtypResult res;
  if (!br.isotropic) return res;
  HSeries h = h_series(br, in.mode);
  bool constant_low = false;
  for (int j = 0; j < br.k && j < h.prec(); ++j) {
    AffineForm c = h.coeff(j);
    if (!c.is_constant()) warn.add("h-series coefficient below the pole order depends on u");
    if (!c.c.is_zero()) constant_low = true;
  }
  if (constant_low != br.tangent_to_line_at_infinity)
    warn.add("tangency to the line at infinity disagrees with the h-series at [" + br.a.str() + "; " + br.b.str() +
             "]");
  if (constant_low) return res;
  MorseData md = line_morse(h, br.k);
  if (!md.line) {
    warn.add("h_k is constant at an isotropic point; no atypical line");
    return res;
  }
  LineComponent lc;
  lc.line = *md.line;
  Anchor a = anchor_from(ComponentKind::Atyp, md, br.exact, n);
  a.infinity = std::make_pair(br.a, br.b);
  a.branch = branch_index;
  lc.anchors.push_back(a);
  res.comp = lc;
  res.needs_more_terms = md.needs_more_terms;
  return res;
}

}  // namespace

std::optional<LineComponent> atyp_component(const InfinityBranch& branch, int branch_index, const CurveInput& in,
                                            const AnalyzerOptions&, Warnings& warn) {
  int n = branch.P.exact_to_all_orders() ? 0 : std::min(branch.P.prec(), branch.Q.prec());
  AtypResult r = atyp_analyze(branch, branch_index, in, n, warn);
  if (r.comp && r.needs_more_terms) {
    Classification cls = classify_curve(in);
    Anchor& a = r.comp->anchors.front();
    if (cls.is_circle_type && a.focal_point && cls.centre && same_point(*a.focal_point, *cls.centre))
      a.focal_non_isolated = true;
    else
      warn.add("atypical Morse data beyond the series truncation");
  }
  return r.comp;
}

std::vector<LineComponent> atyp_components(const CurveInput& in, const AnalyzerOptions& opt, Warnings& warn) {
  std::vector<LineComponent> out;
  Classification cls = classify_curve(in);
  for (const auto& pt : points_at_infinity(in.f, in.mode)) {
    if (!pt.isotropic) continue;
    int nmax = truncation_limit(in, opt);
    int n = start_truncation(in, opt);
    std::vector<AtypResult> results;
    for (;;) {
      auto branches = branches_at_infinity(in.f, pt.a, pt.b, in.mode, branch_opts(opt, n));
      results.clear();
      bool more = false;
      Warnings scratch;
      for (std::size_t i = 0; i < branches.size(); ++i) {
        results.push_back(atyp_analyze(branches[i], static_cast<int>(i), in, n, scratch));
        more = more || results.back().needs_more_terms;
      }
      if (!more || n >= nmax) {
        for (auto& w : scratch.items) warn.add(w);
        break;
      }
      n = std::min(2 * n, nmax);
    }
    for (auto& r : results) {
      if (!r.comp) continue;
      Anchor& a = r.comp->anchors.front();
      if (r.needs_more_terms) {
        bool confirmed = cls.is_circle_type && a.focal_point && cls.centre && same_point(*a.focal_point, *cls.centre);
        if (confirmed) {
          a.focal_non_isolated = true;
        } else {
          warn.add("truncation exhausted at [" + pt.a.str() + "; " + pt.b.str() +
                   "]: Morse data along " + r.comp->line.str(in.mode) + " may be incomplete");
        }
      }
      if (a.m_generic && *a.m_generic < 1) warn.add("atypical line with generic Morse number 0");
      out.push_back(*r.comp);
    }
  }
  return out;
}

// ------------------------------------------------------------------ singular

std::vector<SingularPoint> singular_points(const CurveInput& in, mpfr_prec_t prec) {
  std::vector<SingularPoint> out;
  const Poly2& f = in.f;
  if (f.total_degree() <= 1) return out;
  CommonPoints cp = common_points({f, f.dx(), f.dy()}, prec);
  if (cp.infinite) throw std::logic_error("singular_points: curve is not squarefree");
  for (const auto& p : cp.points) out.push_back({p, p.is_exact()});
  return out;
}

std::vector<LineComponent> sing_component(const Point& p, const CurveInput& in, const AnalyzerOptions& opt,
                                          Warnings& warn) {
  auto [branches, md, n] = adaptive(
      start_truncation(in, opt), truncation_limit(in, opt),
      [&](int N) { return local_branches(in.f, p, branch_opts(opt, N)); },
      [&](const FiniteBranch& b) { return line_morse(h_series(b, in.mode), b.alpha - 1); });
  std::vector<LineComponent> out;
  for (std::size_t i = 0; i < branches.size(); ++i) {
    const auto& b = branches[i];
    if (!md[i].line) {
      warn.add("branch " + std::to_string(i) + " at singular point " + point_str(p) + " has no normal line");
      continue;
    }
    if (md[i].needs_more_terms)
      warn.add("truncation exhausted at singular point " + point_str(p) + ", branch " + std::to_string(i));
    if (!md[i].line->contains(p.x, p.y) && p.is_exact())
      warn.add("normal line at " + point_str(p) + " does not pass through the point");
    LineComponent lc;
    lc.line = *md[i].line;
    Anchor a = anchor_from(ComponentKind::Sing, md[i], b.exact, n);
    a.point = p;
    a.branch = static_cast<int>(i);
    lc.anchors.push_back(a);
    out.push_back(lc);
  }
  if (branches.size() > 1) {
    for (const auto& m : md)
      if (m.focal_point && same_point(*m.focal_point, p)) {
        warn.add("Morse numbers at " + point_str(p) +
                 " are reported per branch; the point has several branches and their sum needs a branching "
                 "correction");
        break;
      }
  }
  return out;
}

// ------------------------------------------------------------------ iflex

std::vector<SingularPoint> isotropic_tangent_points(const CurveInput& in, Warnings& warn, mpfr_prec_t prec) {
  std::vector<SingularPoint> out;
  const Poly2& f = in.f;
  if (f.total_degree() <= 1) return out;
  Poly2 fx = f.dx(), fy = f.dy();
  Poly2 iso = in.mode == Coords::Cartesian ? fx * fx + fy * fy : fx * fy;
  Poly2 g = gcd(f, iso);
  Poly2 base = f;
  if (!g.is_constant()) {
    warn.add("isotropic line components are excluded from the iflex search");
    base = divexact(f, g);
    if (base.is_constant()) return out;
  }
  CommonPoints cp = common_points({base, iso}, prec);
  for (const auto& p : cp.points) {
    bool singular;
    if (p.is_exact()) {
      singular = fx.eval(p.x, p.y).is_zero() && fy.eval(p.x, p.y).is_zero();
    } else {
      singular = Number(fx.eval_approx(p.x.approx(prec), p.y.approx(prec))).is_zero() &&
                 Number(fy.eval_approx(p.x.approx(prec), p.y.approx(prec))).is_zero();
    }
    if (singular) continue;
    out.push_back({p, p.is_exact()});
  }
  return out;
}

std::vector<LineComponent> iflex_components(const CurveInput& in, const AnalyzerOptions& opt, Warnings& warn) {
  std::vector<LineComponent> out;
  for (const auto& sp : isotropic_tangent_points(in, warn, opt.precision)) {
    const Point& p = sp.p;
    if (!sp.exact) warn.add("isotropic tangent point " + point_str(p) + " is not Q(i)-rational; numeric analysis");
    auto [branches, md, n] = adaptive(
        start_truncation(in, opt), truncation_limit(in, opt),
        [&](int N) { return local_branches(in.f, p, branch_opts(opt, N)); },
        [&](const FiniteBranch& b) { return line_morse(h_series(b, in.mode), 0); });
    for (std::size_t i = 0; i < branches.size(); ++i) {
      const auto& b = branches[i];
      if (b.alpha != 1) continue;
      // D(0) = x'(0) y''(0) - y'(0) x''(0)
      Number D = Number(2) * (b.x.coeff(1) * b.y.coeff(2) - b.y.coeff(1) * b.x.coeff(2));
      if (!D.is_zero()) continue;
      if (!md[i].line) continue;
      LineComponent lc;
      lc.line = *md[i].line;
      Anchor a = anchor_from(ComponentKind::Iflex, md[i], b.exact, n);
      a.point = p;
      a.branch = static_cast<int>(i);
      lc.anchors.push_back(a);
      out.push_back(lc);
    }
  }
  return out;
}

// ------------------------------------------------------------------ Morse number at a regular point

std::optional<int> morse_regular(const Point& p, const Number& u1, const Number& u2, const CurveInput& in,
                                 const AnalyzerOptions& opt) {
  Number d0 = distance_value(in.mode, p.x, p.y, u1, u2);
  int n = start_truncation(in, opt), nmax = truncation_limit(in, opt);
  for (;;) {
    auto branches = local_branches(in.f, p, branch_opts(opt, n));
    int sum = 0;
    bool more = false;
    for (const auto& b : branches) {
      Series dx = b.x - Series::constant(u1), dy = b.y - Series::constant(u2);
      Series D = in.mode == Coords::Cartesian ? dx * dx + dy * dy : dx * dy;
      auto o = (D - Series::constant(d0)).order();
      if (!o) {
        more = true;
        break;
      }
      sum += *o;
    }
    if (!more) return sum - 1;
    if (n >= nmax) return std::nullopt;
    n = std::min(2 * n, nmax);
  }
}

// ------------------------------------------------------------------ report

std::vector<LineComponent> deduplicate(std::vector<LineComponent> lines) {
  std::vector<LineComponent> out;
  for (auto& l : lines) {
    auto it = std::find_if(out.begin(), out.end(), [&](const LineComponent& o) { return o.line == l.line; });
    if (it == out.end()) {
      out.push_back(std::move(l));
    } else {
      for (auto& a : l.anchors) it->anchors.push_back(std::move(a));
    }
  }
  return out;
}

DiscriminantReport assemble_report(const CurveInput& in, const ReportConfig& cfg) {
  DiscriminantReport r;
  Warnings warn;
  r.mode = in.mode;
  r.f = in.f;
  if (in.reduced) warn.add("input polynomial is not squarefree; its squarefree part is analysed");
  r.classification = classify_curve(in);
  r.ed = ed_degree(in, cfg.trials, cfg.seed);
  if (r.classification.implied_ed_degree && *r.classification.implied_ed_degree != r.ed.degree)
    warn.add("ED degree count disagrees with the line classification");

  AnalyzerOptions opt = cfg.analyzer;
  if (r.classification.is_isotropic_line) {
    r.total_is_curve = true;
    r.focal.computed = true;
    r.focal.empty = true;
  } else {
    std::vector<LineComponent> all;
    for (auto& c : atyp_components(in, opt, warn)) all.push_back(std::move(c));
    for (const auto& sp : singular_points(in, opt.precision)) {
      if (!sp.exact) warn.add("singular point " + point_str(sp.p) + " is not Q(i)-rational; numeric analysis");
      for (auto& c : sing_component(sp.p, in, opt, warn)) all.push_back(std::move(c));
    }
    for (auto& c : iflex_components(in, opt, warn)) all.push_back(std::move(c));
    r.components = deduplicate(std::move(all));
    if (r.classification.is_line) {
      r.focal.computed = true;
      r.focal.empty = true;
    } else {
      std::vector<AffineLine> lines;
      for (const auto& c : r.components) lines.push_back(c.line);
      r.focal = focal_component(in, lines, opt, warn);
    }
  }

  bool sing_only = false, iflex_outside_atyp = false;
  for (const auto& c : r.components) {
    if (c.has_kind(ComponentKind::Sing) && !c.has_kind(ComponentKind::Atyp) && !c.has_kind(ComponentKind::Iflex))
      sing_only = true;
    if (c.has_kind(ComponentKind::Iflex) && !c.has_kind(ComponentKind::Atyp)) iflex_outside_atyp = true;
  }
  bool focal_in_atyp = r.focal.computed && r.focal.empty;
  if (r.focal.degenerate && r.focal.point) {
    for (const auto& c : r.components)
      if (c.has_kind(ComponentKind::Atyp) && c.line.contains(r.focal.point->x, r.focal.point->y))
        focal_in_atyp = true;
  }
  r.total_equals_strict = !r.total_is_curve && !sing_only;
  r.strict_equals_atyp = !r.total_is_curve && !iflex_outside_atyp && focal_in_atyp;

  r.exact = r.focal.exact;
  for (const auto& c : r.components)
    for (const auto& a : c.anchors) r.exact = r.exact && a.exact;
  r.warnings = warn.items;
  return r;
}

}  // namespace edd
