#pragma once

#include <string>
#include <vector>

#include "modlab/config.hpp"

namespace modlab {

struct Assertion {
  std::string name;
  bool pass = false;
  std::string detail;
};

// One command's result: artifacts land in cfg.outputDir, the checked claims
// land here (and in <name>_summary.json for the report command).
struct ExperimentOutcome {
  std::string name;
  bool pass = true;
  double wallSeconds = 0;
  std::vector<Assertion> assertions;

  void check(const std::string& label, bool ok, const std::string& detail = "");
};

ExperimentOutcome runBuild(const Config& cfg);
ExperimentOutcome runAhlfors(const Config& cfg, int samples = 200);
ExperimentOutcome runLlc(const Config& cfg, int triples = 100);
ExperimentOutcome runDecay(const Config& cfg);
ExperimentOutcome runDuality(const Config& cfg);
ExperimentOutcome runQuotient(const Config& cfg);

// Consolidates the other commands' outputs into report.txt plus plot-data
// files.  Returns 0 when every recorded assertion passed, 1 when some failed,
// 3 when required inputs are missing.
int runReport(const Config& cfg, std::string* reportText = nullptr);

}  // namespace modlab
