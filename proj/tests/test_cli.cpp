// Batch front end: exit codes, report formats, diagrams, radius override.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <filesystem>
#include <fstream>
#include <sstream>

#include "curvebraid/cli.hpp"
#include "doctest.h"

namespace {

using namespace cb;

constexpr const char* kCuspImage = "(3x+2y+1)^2 (2x+y+1) - (5x+3y+1)^3";
constexpr const char* kTwoConics = "(x^2-(y+3/4)^2-1)((x-1/2)^2-y^2-1)";

struct RunResult {
  int code;
  std::string out, err;
};

RunResult run_cli(RunConfig cfg) {
  std::ostringstream out, err;
  int code = run(cfg, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path fresh_dir(const char* tag) {
  std::filesystem::path dir = std::filesystem::temp_directory_path() / tag;
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("both routes agree on the golden cusp image curve") {
  RunConfig cfg;
  cfg.input = kCuspImage;
  cfg.mode = "both";
  RunResult r = run_cli(cfg);
  CHECK(r.code == 0);
  CHECK(r.out.find("comparison:") != std::string::npos);
  CHECK(r.out.find("DIFFERENT") == std::string::npos);
  CHECK(r.out.find("entries:") != std::string::npos);
}

TEST_CASE("a repeated component exits with the curve condition code") {
  RunConfig cfg;
  cfg.input = "(y^2-x)*(y^2-x)";
  RunResult r = run_cli(cfg);
  CHECK(r.code == 2);
  CHECK(r.err.find("repeated component") != std::string::npos);
}

TEST_CASE("nonreal critical values exit with the curve condition code") {
  RunConfig cfg;
  cfg.input = "y^2 - x^2 - 1";
  RunResult r = run_cli(cfg);
  CHECK(r.code == 2);
}

TEST_CASE("unbalanced parentheses are a usage error") {
  RunConfig cfg;
  cfg.input = "x^2-(y+3/4)^2-1)((x-1/2)^2-y^2-1)";
  RunResult r = run_cli(cfg);
  CHECK(r.code == 1);
  CHECK(r.err.find("parse error") != std::string::npos);
}

TEST_CASE("an unknown mode is a usage error") {
  RunConfig cfg;
  cfg.input = "y^2 - x";
  cfg.mode = "fancy";
  CHECK(run_cli(cfg).code == 1);
}

TEST_CASE("json reports renormalize idempotently") {
  RunConfig cfg;
  cfg.input = kTwoConics;
  cfg.format = "json";
  for (const char* mode : {"engine", "oracle"}) {
    cfg.mode = mode;
    RunResult r = run_cli(cfg);
    REQUIRE(r.code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(words_of_json(j).size() == 6);
    nlohmann::json once = renormalized(j);
    CHECK(renormalized(once) == once);
  }
}

TEST_CASE("the input can name a file holding the polynomial") {
  std::filesystem::path file = std::filesystem::temp_directory_path() / "cli_curve.txt";
  std::ofstream(file) << kCuspImage << "\n";
  RunConfig direct, via_file;
  direct.input = kCuspImage;
  via_file.input = file.string();
  direct.format = via_file.format = "json";
  RunResult a = run_cli(direct), b = run_cli(via_file);
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  nlohmann::json ja = nlohmann::json::parse(a.out), jb = nlohmann::json::parse(b.out);
  CHECK(ja["entries"] == jb["entries"]);
}

TEST_CASE("diagrams are written for the chart and every entry") {
  std::filesystem::path dir = fresh_dir("cli_svg_out");
  RunConfig cfg;
  cfg.input = kCuspImage;
  cfg.svg_dir = dir.string();
  REQUIRE(run_cli(cfg).code == 0);
  for (const char* name : {"chart.svg", "skeleton_1.svg", "skeleton_2.svg", "skeleton_3.svg",
                           "skeleton_4.svg"}) {
    std::ifstream in(dir / name);
    REQUIRE(in.good());
    std::string head(4, '\0');
    in.read(head.data(), 4);
    CHECK(head == "<svg");
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("shrunken chart radii leave the reported words unchanged") {
  RunConfig cfg;
  cfg.input = kCuspImage;
  cfg.format = "json";
  RunResult base = run_cli(cfg);
  cfg.radius_scale = 0.5;
  RunResult small = run_cli(cfg);
  REQUIRE(base.code == 0);
  REQUIRE(small.code == 0);
  nlohmann::json ja = nlohmann::json::parse(base.out), jb = nlohmann::json::parse(small.out);
  CHECK(renormalized(ja)["entries"] == renormalized(jb)["entries"]);
}

TEST_CASE("verification is reported when requested") {
  RunConfig cfg;
  cfg.input = kTwoConics;
  cfg.verify = true;
  RunResult r = run_cli(cfg);
  CHECK(r.code == 0);
  CHECK(r.out.find("verification: passed") != std::string::npos);
}
