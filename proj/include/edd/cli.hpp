#pragma once

// Front end: the curve grammar, the JSON report, SVG pictures of the real
// slice, and the orchestration behind the command line tool.

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "edd/oracle.hpp"
#include "json.hpp"

namespace edd {

using json = nlohmann::ordered_json;

struct ParsedCurve {
  CurveInput input;
  std::vector<std::string> warnings;
};

// Polynomials in x, y (or z1, z2) with Gaussian rational coefficients:
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*      division by nonzero constants only
//   unary  := ('+' | '-') unary | power
//   power  := atom ('^' integer)?
//   atom   := integer | 'i' | variable | '(' expr ')'
// '#' starts a comment that runs to the end of the line. Throws ParseError.
ParsedCurve parse_curve(std::string_view text, Coords mode = Coords::Cartesian);

// A single Gaussian rational in the same grammar, e.g. "3/7-2*i".
GaussianRational parse_number(std::string_view text);

struct Window {
  double x0 = -3, y0 = -3, x1 = 3, y1 = 3;
};
Window parse_window(std::string_view text);

// "u1,u2 -> u1,u2"
PathRequest parse_path(std::string_view text, mpfr_prec_t prec = 212);

struct RunConfig {
  Coords mode = Coords::Cartesian;
  std::string poly;        // --poly
  std::string curve_file;  // --curve
  int truncation = 0;      // 0: default for the degree; otherwise 4..4096
  int trials = 5;          // 1..64
  std::uint64_t seed = 0;
  int precision = 212;     // 64..4096 bits
  int degree_cap = 12;     // 1..64, elimination cap for the focal curve
  std::string report_path;
  std::string svg_path;
  Window window;
  bool oracle = false;
  std::optional<std::string> path;

  // Empty when every field is within range.
  std::vector<std::string> validate() const;
};

json report_json(const DiscriminantReport& report, const RunConfig& cfg);
json oracle_json(const std::vector<CrossCheck>& checks);
json path_json(const PathTrace& trace);

std::string dump(const json& j);
// Parses and re-serializes; identical to the input for every emitted report.
std::string round_trip(const std::string& text);

std::string render_svg(const DiscriminantReport& report, const Window& w);

enum class LogLevel { Debug, Info, Warn, Error };
using Logger = std::function<void(LogLevel, const std::string&)>;

// 0 success, 2 success with warnings, 1 error. The report goes to
// cfg.report_path, or to out when that is empty.
int run(const RunConfig& cfg, std::ostream& out, const Logger& log = {});

}  // namespace edd
