#pragma once

// Line components of the ED discriminant (atypical, singular, iflex), the
// focal curve, Morse numbers at attractors, and the assembled report.

#include <optional>
#include <string>
#include <vector>

#include "edd/edcore.hpp"

namespace edd {

enum class ComponentKind { Atyp, Sing, Iflex };
std::string to_string(ComponentKind k);

struct Classification {
  bool is_line = false;
  bool is_isotropic_line = false;
  bool is_circle_type = false;
  std::optional<Point> centre;          // circle type only
  std::optional<int> implied_ed_degree;  // 0 for isotropic lines, 1 for other lines
};

Classification classify_curve(const CurveInput& in);

// Where a line component comes from, with the Morse data along it.
struct Anchor {
  ComponentKind kind = ComponentKind::Atyp;
  std::optional<Point> point;                         // p for sing and iflex
  std::optional<std::pair<Number, Number>> infinity;  // [a; b] for atyp
  int branch = 0;
  std::optional<int> m_generic;  // nullopt: undefined
  std::optional<Point> focal_point;
  std::optional<int> m_exceptional;
  bool focal_non_isolated = false;
  bool exact = true;
  int truncation = 0;  // series length used
};

struct LineComponent {
  AffineLine line{AffineForm{Number(1), Number(0), Number(0)}};
  std::vector<Anchor> anchors;

  bool has_kind(ComponentKind k) const;
  std::vector<ComponentKind> kinds() const;
  // Morse data of the first anchor.
  const Anchor& primary() const { return anchors.front(); }
};

struct AnalyzerOptions {
  int truncation = 0;  // 0: default for the degree
  bool adapt = true;   // double the truncation when an order query needs more terms
  mpfr_prec_t precision = 212;
  int focal_degree_cap = 12;
  int focal_samples = 8;
  bool focal_use_param = true;  // implicitize from an exact parametrization when one exists
  std::uint64_t seed = 0;
};

struct Warnings {
  std::vector<std::string> items;
  void add(std::string w);
};

std::optional<LineComponent> atyp_component(const InfinityBranch& branch, int branch_index, const CurveInput& in,
                                            const AnalyzerOptions& opt, Warnings& warn);
std::vector<LineComponent> atyp_components(const CurveInput& in, const AnalyzerOptions& opt, Warnings& warn);

struct SingularPoint {
  Point p;
  bool exact = true;
};
std::vector<SingularPoint> singular_points(const CurveInput& in, mpfr_prec_t prec = 212);

std::vector<LineComponent> sing_component(const Point& p, const CurveInput& in, const AnalyzerOptions& opt,
                                          Warnings& warn);

// Regular points with an isotropic tangent.
std::vector<SingularPoint> isotropic_tangent_points(const CurveInput& in, Warnings& warn, mpfr_prec_t prec = 212);
std::vector<LineComponent> iflex_components(const CurveInput& in, const AnalyzerOptions& opt, Warnings& warn);

// Morse number m_p(u) = sum over branches of ord_t(D_u(gamma(t)) - D_u(p)) - 1.
// nullopt when the order exceeds every truncation tried (non-isolated suspected).
std::optional<int> morse_regular(const Point& p, const Number& u1, const Number& u2, const CurveInput& in,
                                 const AnalyzerOptions& opt = {});

// ------------------------------------------------------------------ focal set

// A global rational parametrization (x(t), y(t)) of the curve.
struct RationalParam {
  RatFunc x, y;
  std::string source;  // "x = t", "y = t" or "branch"
};

std::optional<RationalParam> rational_param(const CurveInput& in);

// Evolute map on a parametrization.
struct EvoluteMap {
  RatFunc u1, u2;
};
EvoluteMap evolute_map(const RationalParam& r, Coords mode);
std::optional<Point> evolute_point(const RationalParam& r, Coords mode, const Number& t);

// Evolute map on the curve itself: u = (N1 / Den, N2 / Den).
struct ImplicitEvolute {
  Poly2 N1, N2, Den;
};
ImplicitEvolute implicit_evolute(const Poly2& f, Coords mode);

struct FocalSample {
  Number t;
  Point u;
  bool exact = true;
};

struct FocalComponent {
  std::optional<Poly2> implicit;  // nullopt: not computed, or the focal set is a point or empty
  bool computed = false;
  bool degenerate = false;         // focal set is a single point
  std::optional<Point> point;      // that point
  bool empty = false;              // no non-line components
  std::vector<FocalSample> samples;
  bool samples_satisfy_implicit = true;
  bool exact = true;
};

FocalComponent focal_component(const CurveInput& in, const std::vector<AffineLine>& known_lines,
                               const AnalyzerOptions& opt, Warnings& warn);

// ------------------------------------------------------------------ report

struct ReportConfig {
  AnalyzerOptions analyzer;
  int trials = 5;
  std::uint64_t seed = 0;
};

struct DiscriminantReport {
  Coords mode = Coords::Cartesian;
  Poly2 f;
  EDResult ed;
  Classification classification;
  std::vector<LineComponent> components;  // deduplicated
  FocalComponent focal;
  std::vector<std::string> warnings;
  bool exact = true;
  bool total_is_curve = false;        // isotropic line: Delta_tED = X
  bool total_equals_strict = false;   // Delta_tED = Delta_ED
  bool strict_equals_atyp = false;    // Delta_ED = Delta^atyp

  std::vector<const LineComponent*> of_kind(ComponentKind k) const;
};

// Merges components with equal lines into one with several anchors.
std::vector<LineComponent> deduplicate(std::vector<LineComponent> lines);

DiscriminantReport assemble_report(const CurveInput& in, const ReportConfig& cfg = {});

}  // namespace edd
