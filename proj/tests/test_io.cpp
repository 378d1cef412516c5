#include "doctest.h"
#include "modlab/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

using namespace modlab;

TEST_CASE("formatDouble round-trips and stays minimal") {
  for (double v : {0.0, 1.0, -1.0, 0.1, 1.0 / 3, 0.03125, 1e-9, 6.02e23, -2.5e-8}) {
    const std::string s = formatDouble(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(formatDouble(0.25) == "0.25");
  CHECK(formatDouble(2.0) == "2");
  CHECK(formatDouble(100.0) == "100");
}

TEST_CASE("csv writer quotes exactly what needs quoting") {
  CsvWriter w({}, {"a", "b", "c"});
  w.row({"plain", "with,comma", "with\"quote"});
  w.row({"multi\nline", " spaced ", ""});
  const std::string got = w.str();
  const std::string want =
      "a,b,c\r\n"
      "plain,\"with,comma\",\"with\"\"quote\"\r\n"
      "\"multi\nline\", spaced ,\r\n";
  CHECK(got == want);
}

TEST_CASE("csv body is reproducible, comments carry the volatile parts") {
  auto build = [](const std::string& stamp) {
    CsvWriter w({"run at " + stamp, "fixed settings"}, {"x", "y"});
    w.row({"1", "2"});
    w.row({"3", "4"});
    return w.str();
  };
  const std::string a = build("2024-01-01T00:00:00Z");
  const std::string b = build("2025-06-30T12:34:56Z");
  CHECK(a != b);

  auto body = [](const std::string& s) {
    std::string out;
    std::size_t pos = 0;
    while (pos < s.size()) {
      std::size_t end = s.find('\n', pos);
      if (end == std::string::npos) end = s.size() - 1;
      if (s[pos] != '#') out += s.substr(pos, end - pos + 1);
      pos = end + 1;
    }
    return out;
  };
  CHECK(body(a) == body(b));
  CHECK(body(a) == "x,y\r\n1,2\r\n3,4\r\n");
}

TEST_CASE("csv writer rejects ragged rows") {
  CsvWriter w({}, {"a", "b"});
  CHECK_THROWS_AS(w.row({"only one"}), std::invalid_argument);
  CHECK_THROWS_AS(w.row({"1", "2", "3"}), std::invalid_argument);
  w.row({"1", "2"});  // still usable after the failed calls
  CHECK(w.str() == "a,b\r\n1,2\r\n");
}

TEST_CASE("timestamps look like UTC instants") {
  const std::string t = isoTimestamp();
  REQUIRE(t.size() == 20);
  CHECK(t[4] == '-');
  CHECK(t[7] == '-');
  CHECK(t[10] == 'T');
  CHECK(t[13] == ':');
  CHECK(t[16] == ':');
  CHECK(t.back() == 'Z');
}

TEST_CASE("writeFile stores bytes verbatim") {
  const std::string path = "test_io_scratch.bin";
  const std::string payload = "line\r\nwith\0byte", full(payload.data(), 14);
  writeFile(path, full);
  std::ifstream in(path, std::ios::binary);
  std::string got((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(got == full);
  std::remove(path.c_str());
  CHECK_THROWS_AS(writeFile("no/such/dir/file.txt", "x"), std::runtime_error);
}
