#include <algorithm>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "edd/cli.hpp"

namespace py = pybind11;
using namespace edd;

namespace {

Coords coords_of(const std::string& name) {
  if (name == "cartesian") return Coords::Cartesian;
  if (name == "isotropic") return Coords::Isotropic;
  throw py::value_error("coords must be 'cartesian' or 'isotropic', got '" + name + "'");
}

RunConfig run_config(const std::string& poly, const std::string& coords, int trials, std::uint64_t seed,
                     int truncation, int precision, int degree_cap) {
  RunConfig cfg;
  cfg.poly = poly;
  cfg.mode = coords_of(coords);
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.truncation = truncation;
  cfg.precision = precision;
  cfg.degree_cap = degree_cap;
  auto problems = cfg.validate();
  if (!problems.empty()) throw py::value_error(problems.front());
  return cfg;
}

ReportConfig report_config(const RunConfig& cfg) {
  ReportConfig rc;
  rc.trials = cfg.trials;
  rc.seed = cfg.seed;
  rc.analyzer.truncation = cfg.truncation;
  rc.analyzer.precision = cfg.precision;
  rc.analyzer.focal_degree_cap = cfg.degree_cap;
  rc.analyzer.seed = cfg.seed;
  return rc;
}

struct Analysis {
  RunConfig cfg;
  CurveInput in;
  DiscriminantReport report;
};

Analysis analyse(const RunConfig& cfg) {
  ParsedCurve p = parse_curve(cfg.poly, cfg.mode);
  DiscriminantReport r = assemble_report(p.input, report_config(cfg));
  for (const auto& w : p.warnings)
    if (std::find(r.warnings.begin(), r.warnings.end(), w) == r.warnings.end()) r.warnings.push_back(w);
  return {cfg, p.input, std::move(r)};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "ED discriminants of plane curves";

  // args are (message, line, column)
  static PyObject* parse_error = PyErr_NewException("edd._core.ParseError", PyExc_ValueError, nullptr);
  m.attr("ParseError") = py::handle(parse_error);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      PyErr_SetObject(parse_error, py::make_tuple(e.what(), e.line(), e.column()).ptr());
    }
  });

  m.def(
      "report",
      [](const std::string& poly, const std::string& coords, int trials, std::uint64_t seed, int truncation,
         int precision, int degree_cap) {
        RunConfig cfg = run_config(poly, coords, trials, seed, truncation, precision, degree_cap);
        Analysis a;
        {
          py::gil_scoped_release release;
          a = analyse(cfg);
        }
        return dump(report_json(a.report, cfg));
      },
      py::arg("poly"), py::arg("coords") = "cartesian", py::arg("trials") = 5, py::arg("seed") = 0,
      py::arg("truncation") = 0, py::arg("precision") = 212, py::arg("degree_cap") = 12,
      "The discriminant report as a JSON document.");

  m.def(
      "ed_degree",
      [](const std::string& poly, const std::string& coords, int trials, std::uint64_t seed) {
        CurveInput in = parse_curve(poly, coords_of(coords)).input;
        py::gil_scoped_release release;
        return ed_degree(in, trials, seed).degree;
      },
      py::arg("poly"), py::arg("coords") = "cartesian", py::arg("trials") = 5, py::arg("seed") = 0);

  m.def(
      "cross_validate",
      [](const std::string& poly, const std::string& coords, std::uint64_t seed, bool focal_targets) {
        RunConfig cfg = run_config(poly, coords, 5, seed, 0, 212, 12);
        json out;
        {
          py::gil_scoped_release release;
          Analysis a = analyse(cfg);
          OracleOptions opt;
          opt.seed = seed;
          out = oracle_json(cross_validate(a.in, a.report, opt, 40, focal_targets));
        }
        return dump(out);
      },
      py::arg("poly"), py::arg("coords") = "cartesian", py::arg("seed") = 0, py::arg("focal_targets") = true,
      "Tracked Morse counts against the symbolic ones, as JSON.");

  m.def(
      "track_path",
      [](const std::string& poly, const std::string& path, const std::string& coords, int steps) {
        CurveInput in = parse_curve(poly, coords_of(coords)).input;
        PathRequest req = parse_path(path);
        py::gil_scoped_release release;
        return dump(path_json(track_path(in, req, steps)));
      },
      py::arg("poly"), py::arg("path"), py::arg("coords") = "cartesian", py::arg("steps") = 40,
      "Follows the critical points along \"u1,u2 -> u1,u2\", as JSON.");

  m.def(
      "render_svg",
      [](const std::string& poly, const std::string& coords, const std::string& window) {
        RunConfig cfg = run_config(poly, coords, 5, 0, 0, 212, 12);
        Window w = window.empty() ? Window{} : parse_window(window);
        py::gil_scoped_release release;
        return render_svg(analyse(cfg).report, w);
      },
      py::arg("poly"), py::arg("coords") = "cartesian", py::arg("window") = "");

  m.def("round_trip", &round_trip, py::arg("text"));
}
