#include "doctest.h"
#include "modlab/config.hpp"

#include <cmath>
#include <sstream>

using namespace modlab;

namespace {

Config parse(const std::string& text) {
  std::istringstream in(text);
  return parseConfig(in);
}

}  // namespace

TEST_CASE("config parses the flat key = value subset") {
  const Config cfg = parse(
      "# experiment setup\n"
      "depth_M = 3\n"
      "mesh_h = 0.03125   # 1/32\n"
      "vertical_hz = 0.125\n"
      "seed = 42\n"
      "delta_list = [0.2, 0.1, 0.05]\n"
      "epsilon = 0.5\n"
      "p = 3\n"
      "tol = 1e-5\n"
      "output_dir = \"runs/a # not a comment\"\n");
  CHECK(cfg.depthM == 3);
  CHECK(cfg.meshH == 0.03125);
  CHECK(cfg.verticalHz == 0.125);
  CHECK(cfg.seed == 42);
  REQUIRE(cfg.deltaList.size() == 3);
  CHECK(cfg.deltaList[0] == 0.2);
  CHECK(cfg.deltaList[2] == 0.05);
  CHECK(cfg.epsilon == 0.5);
  CHECK(cfg.p == 3.0);
  CHECK(cfg.tol == 1e-5);
  CHECK(cfg.outputDir == "runs/a # not a comment");
}

TEST_CASE("config defaults survive an empty stream") {
  const Config cfg = parse("\n# nothing but comments\n\n");
  const Config fresh;
  CHECK(cfg.depthM == fresh.depthM);
  CHECK(cfg.meshH == fresh.meshH);
  CHECK(cfg.verticalHz == fresh.verticalHz);
  CHECK(cfg.deltaList == fresh.deltaList);
  CHECK(cfg.outputDir == fresh.outputDir);
  validateConfig(cfg);
}

TEST_CASE("config rejects malformed input") {
  CHECK_THROWS_AS(parse("depth_M 3\n"), ConfigError);           // no equals
  CHECK_THROWS_AS(parse("depht_M = 3\n"), ConfigError);         // typo key
  CHECK_THROWS_AS(parse("mesh_h = fast\n"), ConfigError);       // bad number
  CHECK_THROWS_AS(parse("mesh_h = 0.1x\n"), ConfigError);       // trailing junk
  CHECK_THROWS_AS(parse("seed = -1\n"), ConfigError);           // negative
  CHECK_THROWS_AS(parse("output_dir = out\n"), ConfigError);    // unquoted
  CHECK_THROWS_AS(parse("delta_list = 0.2\n"), ConfigError);    // no brackets
  CHECK_THROWS_AS(parse("delta_list = [0.2,,0.1]\n"), ConfigError);
}

TEST_CASE("validateConfig guards the parameter ranges") {
  Config cfg;
  validateConfig(cfg);

  Config bad = cfg;
  bad.deltaList = {0.1, 0.2};  // not decreasing
  CHECK_THROWS_AS(validateConfig(bad), ConfigError);

  bad = cfg;
  bad.deltaList = {0.6};  // at or above epsilon
  CHECK_THROWS_AS(validateConfig(bad), ConfigError);

  bad = cfg;
  bad.meshH = 0;
  CHECK_THROWS_AS(validateConfig(bad), ConfigError);

  bad = cfg;
  bad.p = 1.0;
  CHECK_THROWS_AS(validateConfig(bad), ConfigError);

  bad = cfg;
  bad.tol = 0;
  CHECK_THROWS_AS(validateConfig(bad), ConfigError);

  bad = cfg;
  bad.outputDir.clear();
  CHECK_THROWS_AS(validateConfig(bad), ConfigError);
}

TEST_CASE("productScale clamps the default fine scan to a solvable size") {
  const Config cfg;  // M=6, h=1/128, hz=1/16
  const ProductScale ps = productScale(cfg);
  CHECK(ps.h == 1.0 / 32);   // horizontal floor
  CHECK(ps.hz == 1.0 / 16);  // vertical step untouched
  CHECK(ps.depthM == 4);     // grid at 1/32 resolves depth 4 only
  CHECK(ps.label() == "M=4,h=1/32,hz=1/16");
}

TEST_CASE("productScale keeps coarser requests as given") {
  Config cfg;
  cfg.depthM = 2;
  cfg.meshH = 1.0 / 16;
  cfg.verticalHz = 1.0 / 8;
  const ProductScale ps = productScale(cfg);
  CHECK(ps.h == 1.0 / 16);
  CHECK(ps.hz == 1.0 / 8);
  CHECK(ps.depthM == 2);
}

TEST_CASE("productScale wants dyadic steps") {
  Config cfg;
  cfg.meshH = 0.03;  // not a power of two
  CHECK_THROWS_AS(productScale(cfg), ConfigError);
  cfg.meshH = 1.0 / 32;
  cfg.verticalHz = 0.75;
  CHECK_THROWS_AS(productScale(cfg), ConfigError);
}

TEST_CASE("refinement ladder halves down to the product scale") {
  const Config cfg;
  const auto ladder = refinementLadder(cfg);
  REQUIRE(ladder.size() == 3);
  CHECK(ladder[0].label() == "M=2,h=1/8,hz=1/4");
  CHECK(ladder[1].label() == "M=3,h=1/16,hz=1/8");
  CHECK(ladder[2].label() == "M=4,h=1/32,hz=1/16");
  for (std::size_t i = 1; i < ladder.size(); ++i) {
    CHECK(ladder[i].h == ladder[i - 1].h / 2);
    CHECK(ladder[i].hz == ladder[i - 1].hz / 2);
  }
  CHECK(ladder.back().h == productScale(cfg).h);
}

TEST_CASE("refinement ladder drops rungs the surface cannot hold") {
  Config cfg;
  cfg.depthM = 1;
  cfg.meshH = 1.0 / 4;  // 4x coarser would put h past the base grid
  cfg.verticalHz = 1.0 / 4;
  const auto ladder = refinementLadder(cfg);
  REQUIRE(ladder.size() == 2);
  CHECK(ladder[0].h == 1.0 / 2);
  CHECK(ladder[0].depthM == 0);  // coarse rung cannot resolve any pillow
  CHECK(ladder[1].h == 1.0 / 4);
  CHECK(ladder[1].depthM == 1);

  cfg.meshH = 1.0 / 2;  // only the finest rung survives: error
  cfg.verticalHz = 1.0 / 2;
  CHECK_THROWS_AS(refinementLadder(cfg), ConfigError);
}
