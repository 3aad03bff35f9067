#pragma once

// Floating-point cross-validation of the exact layer: numeric critical points
// of D_u on the curve, and continuation of those points along a path of data
// points ending on the discriminant.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "edd/discriminants.hpp"
#include "edd/edcore.hpp"

namespace edd {

struct OracleOptions {
  mpfr_prec_t precision = 212;
  double cluster_radius = 1e-8;
  double infinity_threshold = 1e6;  // |x| + |y| beyond this freezes a point at infinity
  double final_s = 1e-40;           // the path is followed from s = 1 down to this
  std::uint64_t seed = 0;
  int threads = 1;
};

struct ApproxPoint {
  ApproxComplex x, y;
};

double distance(const ApproxPoint& a, const ApproxPoint& b);

struct CriticalPointN {
  ApproxPoint z;
  double residual = 0;        // scaled max(|f|, |g_u|)
  double gradient = 0;        // |grad f|
  ApproxComplex second;       // second derivative of D_u along the curve (up to a nonzero factor)
  bool reliable = true;       // refinement converged to the residual target
};

struct CriticalCloud {
  std::vector<CriticalPointN> points;
  std::vector<CriticalPointN> unreliable;
  int count() const { return static_cast<int>(points.size()); }
};

CriticalCloud solve_critical(const CurveInput& in, const ApproxComplex& u1, const ApproxComplex& u2,
                             const OracleOptions& opt = {});

enum class Fate { Survives, Infinity, Singular, Regular, Lost };

struct TrackedPoint {
  ApproxPoint start, end;
  Fate fate = Fate::Survives;
  // Infinity: the limiting direction [a; b], largest coordinate scaled to 1.
  std::optional<ApproxPoint> direction;
  std::string label() const;
};

// u(s) = to + s * (from - to), followed from s = 1 to s -> 0.
struct PathRequest {
  ApproxComplex from_u1, from_u2, to_u1, to_u2;
};

// A path into (u1, u2) from a random direction at the given radius.
PathRequest radial_path(const ApproxComplex& u1, const ApproxComplex& u2, std::uint64_t seed, double radius = 0.25,
                        mpfr_prec_t prec = 212);

struct PathTrace {
  PathRequest request;
  std::vector<double> s;                                      // synchronization parameters
  std::vector<std::pair<ApproxComplex, ApproxComplex>> path;  // u(s) at each of them
  std::vector<CriticalCloud> clouds;                          // tracked points at each of them
  std::vector<TrackedPoint> points;

  struct Tally {
    Fate fate;
    ApproxPoint where;  // attractor, or direction at infinity
    int count = 0;
  };
  // Points grouped by attractor.
  std::vector<Tally> tallies(double radius = 1e-6) const;
  int count(Fate f) const;
  // Points ending at infinity in the direction [a; b], or at the attractor p.
  int abutting_infinity(const ApproxComplex& a, const ApproxComplex& b, double tol = 1e-3) const;
  int abutting_point(const ApproxPoint& p, double tol = 1e-6) const;
};

PathTrace track_path(const CurveInput& in, const PathRequest& req, int steps = 40, const OracleOptions& opt = {});

// Tracked abutting counts against the symbolic Morse numbers of a report: for
// each line component a generic point of the line, and each isolated focal
// point, approached along two independent random paths.
struct CrossCheck {
  int component = 0, anchor = 0;
  ComponentKind kind = ComponentKind::Atyp;
  bool exceptional = false;  // at the focal point rather than a generic point of the line
  ApproxComplex u1, u2;
  int expected = 0;
  int observed[2] = {0, 0};
  int survivors[2] = {0, 0};
  int tracked[2] = {0, 0};
  int lost[2] = {0, 0};
  int ed_degree = 0;
  bool ok = false;
};

std::vector<CrossCheck> cross_validate(const CurveInput& in, const DiscriminantReport& report,
                                       const OracleOptions& opt = {}, int steps = 40,
                                       bool focal_targets = true);

}  // namespace edd
