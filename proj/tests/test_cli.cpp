#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "edd/cli.hpp"

using namespace edd;

namespace {

Number gi(long re, long im) { return Number(GaussianRational(Rational(re), Rational(im))); }
Poly2 X() { return Poly2::x(); }
Poly2 Y() { return Poly2::y(); }

struct Outcome {
  int code;
  std::string out;
  std::vector<std::string> errors;
};

Outcome run_with(const RunConfig& cfg) {
  std::ostringstream os;
  Outcome o{0, "", {}};
  o.code = run(cfg, os, [&](LogLevel l, const std::string& m) {
    if (l == LogLevel::Error) o.errors.push_back(m);
  });
  o.out = os.str();
  return o;
}

RunConfig config(const std::string& poly, Coords mode = Coords::Cartesian) {
  RunConfig c;
  c.poly = poly;
  c.mode = mode;
  return c;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("edd_test_" + name);
}

int parse_error_column(const std::string& text) {
  try {
    parse_curve(text);
  } catch (const ParseError& e) {
    return e.column();
  }
  return -1;
}

}  // namespace

TEST_CASE("parse the example curves") {
  CHECK(parse_curve("x^2 + y^2 - 1").input.f == X().pow(2) + Y().pow(2) - Poly2(1));
  auto q = parse_curve("x*y^4 - (i*y^5 + y^3 - 3*y^2 + 3*y - 1)");
  CHECK(q.input.f ==
        X() * Y().pow(4) - (Y().pow(5).scaled(gi(0, 1)) + Y().pow(3) - Y().pow(2).scaled(3) + Y().scaled(3) - Poly2(1)));
  CHECK(q.warnings.empty());
  auto iso = parse_curve("z1^2*z2 - z1 - 1", Coords::Isotropic);
  CHECK(iso.input.mode == Coords::Isotropic);
  CHECK(iso.input.f == X().pow(2) * Y() - X() - Poly2(1));
}

TEST_CASE("grammar details") {
  CHECK(parse_curve("x/2 + 3/4*y").input.f == X().scaled(Number(Rational(mpz_class(1), mpz_class(2)))) +
                                                 Y().scaled(Number(Rational(mpz_class(3), mpz_class(4)))));
  CHECK(parse_curve("(1+2*i)*x - -y").input.f == X().scaled(gi(1, 2)) + Y());
  CHECK(parse_curve("x^2 # a comment\n + y^2 - 1 # another\n").input.f == X().pow(2) + Y().pow(2) - Poly2(1));
  CHECK(parse_curve("x^0 + y").input.f == Y() + Poly2(1));
  CHECK(parse_number("3/7-2*i") == GaussianRational(Rational(mpz_class(3), mpz_class(7)), Rational(-2)));
  CHECK(parse_number(" -i ") == -GaussianRational::i());
}

TEST_CASE("syntax errors carry line and column") {
  try {
    parse_curve("x^2 +\n  y^2 - 1.5");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 10);
    CHECK(std::string(e.what()).find("floating") != std::string::npos);
  }
  CHECK(parse_error_column("x + z2") == 5);
  CHECK(parse_error_column("x + w") == 5);
  CHECK(parse_error_column("2x") == 2);
  CHECK(parse_error_column("(x + y") == 7);
  CHECK(parse_error_column("x ^ y") == 5);
  CHECK(parse_error_column("1/x + y") == 2);
  CHECK(parse_error_column("x/(1 - 1)") == 2);
  CHECK(parse_error_column("") == 1);
  CHECK_THROWS_AS(parse_curve("x - x"), ParseError);
  CHECK_THROWS_AS(parse_curve("3 + i"), ParseError);
  CHECK_THROWS_AS(parse_number("x"), ParseError);
}

TEST_CASE("non-squarefree input is reduced with a warning") {
  auto p = parse_curve("(x^2 + y^2 - 1)^2 * y");
  CHECK(p.input.reduced);
  CHECK(p.input.f.total_degree() == 3);
  REQUIRE(p.warnings.size() == 1);
}

TEST_CASE("windows, paths and configuration ranges") {
  Window w = parse_window("-1,-2,3,4.5");
  CHECK(w.x0 == -1);
  CHECK(w.y1 == 4.5);
  CHECK_THROWS(parse_window("1,2,3"));
  CHECK_THROWS(parse_window("1,0,0,1"));
  PathRequest r = parse_path("3, 1 -> 1, i");
  CHECK(r.to_u2.to_std() == std::complex<double>(0, 1));
  CHECK(r.from_u1.to_std() == std::complex<double>(3, 0));
  CHECK_THROWS(parse_path("3,1"));

  RunConfig c = config("x");
  CHECK(c.validate().empty());
  c.trials = 0;
  CHECK(c.validate().size() == 1);
  c = config("x");
  c.curve_file = "f.txt";
  CHECK(c.validate().size() == 1);
  c = config("x");
  c.precision = 16;
  c.truncation = 2;
  CHECK(c.validate().size() == 2);
}

TEST_CASE("circle report") {
  auto o = run_with(config("x^2 + y^2 - 1"));
  REQUIRE(o.code == 0);
  json j = json::parse(o.out);
  CHECK(j["ed_degree"] == 2);
  REQUIRE(j["components"].size() == 2);
  for (const auto& c : j["components"]) {
    CHECK(c["kind"] == json::array({"atyp"}));
    CHECK(c["m_generic"] == 2);
    CHECK(c["focal_point"] == json::array({"0", "0"}));
    CHECK(c["focal_non_isolated"] == true);
    CHECK(c["line"]["c"] == "0");
  }
  CHECK(j["classification"]["is_circle_type"] == true);
  CHECK(j["decomposition"]["total_equals_strict"] == true);
  CHECK(j["decomposition"]["strict_equals_atyp"] == true);
  CHECK(j["warnings"].empty());
  CHECK(j["focal"]["degenerate"] == true);
  CHECK(j["focal"]["point"] == json::array({"0", "0"}));
  for (const char* key : {"ed_degree", "certificate", "classification", "components", "focal", "warnings", "exact"})
    CHECK(j.contains(key));
}

TEST_CASE("cusp report") {
  auto o = run_with(config("y^2 - x^3"));
  REQUIRE(o.code == 0);
  json j = json::parse(o.out);
  CHECK(j["ed_degree"] == 4);
  REQUIRE(j["components"].size() == 1);
  const json& c = j["components"][0];
  CHECK(c["kind"] == json::array({"sing"}));
  CHECK(c["equation"] == "u1 = 0");
  CHECK(c["m_generic"] == 1);
  CHECK(c["m_exceptional"] == 2);
  CHECK(j["focal"]["degree"] == 4);
  CHECK_FALSE(j["focal"]["implicit"].contains("1"));
}

TEST_CASE("isotropic line report") {
  auto o = run_with(config("x + i*y - 1"));
  REQUIRE(o.code == 0);
  json j = json::parse(o.out);
  CHECK(j["ed_degree"] == 0);
  CHECK(j["classification"]["is_isotropic_line"] == true);
  CHECK(j["decomposition"]["total_is_curve"] == true);
}

TEST_CASE("reports are deterministic and round-trip") {
  for (const char* poly : {"y^2 - x^3", "x^2 + y^2 - 1"}) {
    auto a = run_with(config(poly));
    auto b = run_with(config(poly));
    CHECK(a.out == b.out);
    CHECK(round_trip(a.out) == a.out);
  }
  RunConfig c = config("z1^2*z2 - z1 - 1", Coords::Isotropic);
  c.seed = 17;
  c.oracle = true;
  auto a = run_with(c);
  auto b = run_with(c);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(round_trip(a.out) == a.out);
  json j = json::parse(a.out);
  CHECK(j["certificate"]["seed"] == 17);
  REQUIRE(j["oracle"].size() == 3);
  for (const auto& chk : j["oracle"]) CHECK(chk["agrees"] == true);
}

TEST_CASE("exit codes") {
  CHECK(run_with(config("x^2 + 1.0")).code == 1);
  CHECK(run_with(config("7")).code == 1);
  CHECK(run_with(config("(y - x^2)^2")).code == 2);
  RunConfig bad = config("x");
  bad.trials = 100;
  auto o = run_with(bad);
  CHECK(o.code == 1);
  CHECK_FALSE(o.errors.empty());

  RunConfig missing;
  missing.curve_file = temp_path("does_not_exist.txt").string();
  CHECK(run_with(missing).code == 1);

  RunConfig unwritable = config("y - x^2");
  unwritable.report_path = "/nonexistent_dir/report.json";
  CHECK(run_with(unwritable).code == 1);
}

TEST_CASE("curve files, report files and pictures") {
  auto curve = temp_path("curve.txt"), report = temp_path("report.json"), svg = temp_path("plot.svg");
  {
    std::ofstream(curve) << "# the cusp\ny^2 - x^3\n";
  }
  RunConfig c;
  c.curve_file = curve.string();
  c.report_path = report.string();
  c.svg_path = svg.string();
  auto o = run_with(c);
  CHECK(o.code == 0);
  CHECK(o.out.empty());
  std::ifstream r(report);
  std::stringstream ss;
  ss << r.rdbuf();
  CHECK(json::parse(ss.str())["ed_degree"] == 4);
  std::ifstream s(svg);
  std::stringstream sv;
  sv << s.rdbuf();
  std::string pic = sv.str();
  CHECK(pic.rfind("<svg", 0) == 0);
  CHECK(pic.find("<path d=\"M") != std::string::npos);
  CHECK(pic.find("sing: u1 = 0") != std::string::npos);
  std::filesystem::remove(curve);
  std::filesystem::remove(report);
  std::filesystem::remove(svg);
}

TEST_CASE("non-real components are labelled in the legend") {
  auto in = parse_curve("x*y^4 - (i*y^5 + y^3 - 3*y^2 + 3*y - 1)").input;
  ReportConfig rc;
  rc.analyzer.focal_degree_cap = 4;
  std::string pic = render_svg(assemble_report(in, rc), Window{});
  CHECK(pic.find("(no real points)") != std::string::npos);
  CHECK(pic.find("u1 - i*u2 = 0 (one real point)") != std::string::npos);

  auto g = parse_curve("x^2 + y^2 + 1").input;
  std::string empty = render_svg(assemble_report(g), Window{});
  CHECK(empty.find("X: x^2 + y^2 + 1 (no real points in the window)") != std::string::npos);
}

TEST_CASE("explicit path tracking") {
  RunConfig c = config("x^2 + y^2 - 1");
  c.path = "3,1 -> 1,i";
  auto o = run_with(c);
  CHECK(o.code == 0);
  json j = json::parse(o.out);
  REQUIRE(j["path"]["points"].size() == 2);
  REQUIRE(j["path"]["tallies"].size() == 1);
  CHECK(j["path"]["tallies"][0]["fate"] == "infinity");
  CHECK(j["path"]["tallies"][0]["count"] == 2);
}
