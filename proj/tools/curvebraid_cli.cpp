// Command line front end: braid monodromy factorization of a real plane
// algebraic curve, by the chart walking engine and/or the numeric oracle.

#include <iostream>

#include "CLI11.hpp"
#include "curvebraid/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Braid monodromy factorization of real plane algebraic curves"};
  cb::RunConfig cfg;
  app.add_option("--input,-i", cfg.input, "polynomial in x and y, or a file containing one")
      ->required();
  app.add_option("--mode", cfg.mode, "engine | oracle | both")
      ->check(CLI::IsMember({"engine", "oracle", "both"}));
  app.add_option("--precision", cfg.precision, "root finding precision");
  app.add_option("--format", cfg.format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--svg-dir", cfg.svg_dir, "directory for SVG diagrams of chart and skeletons");
  app.add_option("--seed-radius-scale", cfg.radius_scale, "shrink factor for chart disk radii");
  app.add_flag("--verify", cfg.verify, "check permutations, exponents and the full twist product");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  return cb::run(cfg, std::cout, std::cerr);
}
