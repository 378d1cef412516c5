// Command-line driver for the experiment suite.  Exit codes: 0 all assertions
// pass, 1 some assertion failed, 2 configuration problem, 3 report inputs
// missing.
#include <cstdio>
#include <exception>
#include <functional>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "modlab/config.hpp"
#include "modlab/experiments.hpp"

namespace {

void printOutcome(const modlab::ExperimentOutcome& oc) {
  for (const auto& a : oc.assertions) {
    std::printf("[%s] %s:%s%s\n", a.pass ? "PASS" : "FAIL", a.name.c_str(),
                a.detail.empty() ? "" : " ", a.detail.c_str());
  }
  std::printf("%s: %s (%.1f s)\n", oc.name.c_str(), oc.pass ? "PASS" : "FAIL", oc.wallSeconds);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for a singular product space"};
  app.require_subcommand(1);

  std::string configPath;
  std::optional<std::string> outDir;
  std::optional<std::uint64_t> seed;
  app.add_option("--config", configPath, "TOML config file")->check(CLI::ExistingFile);
  app.add_option("--out", outDir, "output directory (overrides config)");
  app.add_option("--seed", seed, "RNG seed (overrides config)");

  std::function<modlab::ExperimentOutcome(const modlab::Config&)> runner;
  bool report = false;
  auto sub = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->fallthrough();  // let --config etc. appear after the subcommand
    return s;
  };
  sub("build", "construct the meshes and dump them")->callback([&] { runner = modlab::runBuild; });
  sub("ahlfors", "ball regularity scan on the surface")->callback([&] {
    runner = [](const modlab::Config& c) { return modlab::runAhlfors(c); };
  });
  sub("llc", "local connectivity witnesses on the product")->callback([&] {
    runner = [](const modlab::Config& c) { return modlab::runLlc(c); };
  });
  sub("decay", "modulus decay toward the singular segment")->callback([&] {
    runner = modlab::runDecay;
  });
  sub("duality", "path vs cut modulus across refinements")->callback([&] {
    runner = modlab::runDuality;
  });
  sub("quotient", "modulus before and after collapsing the segment")->callback([&] {
    runner = modlab::runQuotient;
  });
  sub("report", "consolidate prior outputs")->callback([&] { report = true; });

  CLI11_PARSE(app, argc, argv);

  try {
    modlab::Config cfg;
    if (!configPath.empty()) cfg = modlab::loadConfig(configPath);
    if (outDir) cfg.outputDir = *outDir;
    if (seed) cfg.seed = *seed;
    modlab::validateConfig(cfg);

    if (report) {
      std::string text;
      const int code = modlab::runReport(cfg, &text);
      std::fputs(text.c_str(), code == 3 ? stderr : stdout);
      return code;
    }
    const modlab::ExperimentOutcome oc = runner(cfg);
    printOutcome(oc);
    return oc.pass ? 0 : 1;
  } catch (const modlab::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
