#include "modlab/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "modlab/surface.hpp"

namespace modlab {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// Cut a trailing comment, respecting quoted strings.
std::string stripComment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

double parseFloat(const std::string& tok, const std::string& key) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    throw ConfigError("config: bad number for " + key + ": " + tok);
  }
  if (used != tok.size()) throw ConfigError("config: trailing junk for " + key + ": " + tok);
  return v;
}

std::uint64_t parseUnsigned(const std::string& tok, const std::string& key) {
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw ConfigError("config: " + key + " wants a nonnegative integer, got " + tok);
  return std::stoull(tok);
}

std::string parseString(const std::string& tok, const std::string& key) {
  if (tok.size() < 2 || tok.front() != '"' || tok.back() != '"')
    throw ConfigError("config: " + key + " wants a quoted string, got " + tok);
  return tok.substr(1, tok.size() - 2);
}

std::vector<double> parseFloatArray(const std::string& tok, const std::string& key) {
  if (tok.size() < 2 || tok.front() != '[' || tok.back() != ']')
    throw ConfigError("config: " + key + " wants [a, b, ...], got " + tok);
  std::vector<double> out;
  std::stringstream body(tok.substr(1, tok.size() - 2));
  std::string item;
  while (std::getline(body, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError("config: empty element in " + key);
    out.push_back(parseFloat(item, key));
  }
  return out;
}

}  // namespace

Config parseConfig(std::istream& in) {
  Config cfg;
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    line = trim(stripComment(line));
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineNo) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
      throw ConfigError("config line " + std::to_string(lineNo) + ": expected key = value");

    if (key == "depth_M")
      cfg.depthM = static_cast<int>(parseUnsigned(val, key));
    else if (key == "mesh_h")
      cfg.meshH = parseFloat(val, key);
    else if (key == "vertical_hz")
      cfg.verticalHz = parseFloat(val, key);
    else if (key == "seed")
      cfg.seed = parseUnsigned(val, key);
    else if (key == "delta_list")
      cfg.deltaList = parseFloatArray(val, key);
    else if (key == "epsilon")
      cfg.epsilon = parseFloat(val, key);
    else if (key == "p")
      cfg.p = parseFloat(val, key);
    else if (key == "tol")
      cfg.tol = parseFloat(val, key);
    else if (key == "output_dir")
      cfg.outputDir = parseString(val, key);
    else
      throw ConfigError("config line " + std::to_string(lineNo) + ": unknown key " + key);
  }
  return cfg;
}

Config loadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  return parseConfig(in);
}

void validateConfig(const Config& cfg) {
  if (cfg.depthM < 0 || cfg.depthM > 20) throw ConfigError("config: depth_M out of range");
  if (!(cfg.meshH > 0) || !(cfg.verticalHz > 0))
    throw ConfigError("config: resolutions must be positive");
  if (cfg.deltaList.empty()) throw ConfigError("config: delta_list must be nonempty");
  for (std::size_t i = 0; i < cfg.deltaList.size(); ++i) {
    if (!(cfg.deltaList[i] > 0)) throw ConfigError("config: deltas must be positive");
    if (i && !(cfg.deltaList[i] < cfg.deltaList[i - 1]))
      throw ConfigError("config: delta_list must be strictly decreasing");
    if (!(cfg.deltaList[i] < cfg.epsilon))
      throw ConfigError("config: every delta must stay below epsilon");
  }
  if (!(cfg.epsilon > 0)) throw ConfigError("config: epsilon must be positive");
  if (!(cfg.p > 1)) throw ConfigError("config: p must exceed 1");
  if (!(cfg.tol > 0)) throw ConfigError("config: tol must be positive");
  if (cfg.outputDir.empty()) throw ConfigError("config: output_dir must be nonempty");
}

std::string ProductScale::label() const {
  std::ostringstream os;
  os << "M=" << depthM << ",h=1/" << std::llround(1.0 / h) << ",hz=1/" << std::llround(1.0 / hz);
  return os.str();
}

namespace {

ProductScale scaleFor(const Config& cfg, double h, double hz) {
  ProductScale s;
  s.h = h;
  s.hz = hz;
  s.depthM = std::min(cfg.depthM, gridExponent(h, 1) - 1);
  return s;
}

}  // namespace

ProductScale productScale(const Config& cfg) {
  validateConfig(cfg);
  const double h = std::max(cfg.meshH, 1.0 / 32);
  try {
    (void)gridExponent(h, 1);
    (void)gridExponent(cfg.verticalHz, 1);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (cfg.verticalHz > 0.5) throw ConfigError("config: vertical_hz must be at most 1/2");
  return scaleFor(cfg, h, cfg.verticalHz);
}

std::vector<ProductScale> refinementLadder(const Config& cfg) {
  const ProductScale fine = productScale(cfg);
  std::vector<ProductScale> ladder;
  for (int f = 4; f >= 1; f /= 2) {
    const double h = fine.h * f, hz = std::min(fine.hz * f, 0.5);
    if (h > 0.5) continue;  // surface grid needs at least two cells across
    ladder.push_back(scaleFor(cfg, h, hz));
  }
  if (ladder.size() < 2)
    throw ConfigError("config: refinement ladder needs at least two usable rungs");
  return ladder;
}

}  // namespace modlab
