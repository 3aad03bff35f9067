#include <cstdlib>
#include <iostream>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "edd/cli.hpp"

int main(int argc, char** argv) {
  edd::RunConfig cfg;
  std::string coords = "cartesian", window;
  std::string path;

  CLI::App app{"Euclidean distance discriminants of plane curves"};
  auto* poly = app.add_option("--poly", cfg.poly, "curve polynomial, e.g. \"y^2 - x^3\"");
  auto* file = app.add_option("--curve", cfg.curve_file, "file holding the polynomial")->check(CLI::ExistingFile);
  poly->excludes(file);
  app.add_option("--coords", coords, "coordinate system")
      ->check(CLI::IsMember({"cartesian", "isotropic"}))
      ->capture_default_str();
  app.add_option("--truncation", cfg.truncation, "series truncation, 0 for the default")->capture_default_str();
  app.add_option("--trials", cfg.trials, "ED degree trials")->capture_default_str();
  app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  app.add_option("--precision", cfg.precision, "working precision in bits")->capture_default_str();
  app.add_option("--degree-cap", cfg.degree_cap, "largest focal curve degree to eliminate")->capture_default_str();
  app.add_option("--report", cfg.report_path, "write the JSON report here instead of stdout");
  app.add_option("--svg", cfg.svg_path, "write a picture of the real slice");
  app.add_option("--window", window, "picture window x0,y0,x1,y1");
  app.add_flag("--oracle", cfg.oracle, "cross-check the Morse data by path tracking");
  auto* path_opt = app.add_option("--path", path, "track critical points along \"u1,u2 -> u1,u2\"");

  try {
    app.parse(argc, argv);
    if (!window.empty()) cfg.window = edd::parse_window(window);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  cfg.mode = coords == "isotropic" ? edd::Coords::Isotropic : edd::Coords::Cartesian;
  if (*path_opt) cfg.path = path;

  auto logger = spdlog::stderr_color_st("edd");
  logger->set_pattern("%^%l%$: %v");
  logger->set_level(spdlog::level::warn);
  if (const char* lvl = std::getenv("EDD_LOG")) logger->set_level(spdlog::level::from_str(lvl));

  return edd::run(cfg, std::cout, [&](edd::LogLevel l, const std::string& msg) {
    switch (l) {
      case edd::LogLevel::Debug: logger->debug(msg); break;
      case edd::LogLevel::Info: logger->info(msg); break;
      case edd::LogLevel::Warn: logger->warn(msg); break;
      case edd::LogLevel::Error: logger->error(msg); break;
    }
  });
}
