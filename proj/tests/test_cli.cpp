#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "nd/errors.hpp"
#include "nd/format.hpp"

using namespace nd;
namespace fs = std::filesystem;

namespace {

std::string data(const std::string& name) { return std::string(ND_DATA_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Run {
  int code;
  std::string out, err;
};

Run cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "nd_test_cli";
  fs::create_directories(dir);
  return (dir / name).string();
}

}  // namespace

TEST_CASE("minimal smooth file has an empty base ideal") {
  Problem pb = parse_problem("base x1 x2\nvars Y\nideal: Y - x1\nmap: Y -> x1\n");
  CHECK(pb.b.base_ideal.empty());
  CHECK(pb.bound == 0);
  CHECK(pb.b.ring->field().is_rational());
  CHECK(pb.map.size() == 1);
}

TEST_CASE("problem files round trip") {
  for (const char* f : {"node.nd", "node17.nd", "smooth.nd", "nodal_curve.nd"}) {
    std::string once = print_problem(parse_problem(slurp(data(f))));
    CHECK(print_problem(parse_problem(once)) == once);
  }
  std::string messy =
      "# comment\n  vars   Y1 Y2 \nbase x1 x2\n\nchar 32003\nbound 5\nbase_ideal: x1^2 - x2^3 ; x1*x2\n"
      "map: Y2 -> x2,Y1 -> 2*x1\nideal: Y1*Y2 - 2*x1*x2\n";
  Problem pb = parse_problem(messy);
  CHECK(pb.b.ring->field().characteristic() == 32003);
  CHECK(pb.b.base_ideal.size() == 2);
  CHECK(pb.map[0] == parse_poly(pb.b.base_ring(), "2*x1"));
  std::string once = print_problem(pb);
  CHECK(print_problem(parse_problem(once)) == once);
}

TEST_CASE("semantic errors name the culprit") {
  try {
    parse_problem("base x1 x2\nvars Y1\nideal: Y1\nmap: Y1 -> x3\n");
    FAIL("no error");
  } catch (const FormatError& e) {
    CHECK(e.line == 4);
    CHECK(e.column == 12);
    CHECK(std::string(e.what()).find("x3") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_problem("base x1\nvars Y1 Y2\nideal: Y1\nmap: Y1 -> x1\n"), FormatError);
  CHECK_THROWS_AS(parse_problem("base x1\nvars Y1\nideal: Y1\nmap: Y1 -> x1, Y1 -> 0\n"), FormatError);
  CHECK_THROWS_AS(parse_problem("base x1\nvars x1\nideal: x1\nmap: x1 -> x1\n"), FormatError);
  CHECK_THROWS_AS(parse_problem("base x1\nvars Y\nideal: Y\nmap: Y -> x1\nfoo 3\n"), FormatError);
}

TEST_CASE("syntax errors carry line, column and the expected token") {
  try {
    parse_problem("base x1\nvars Y\nideal: Y + x1^\nmap: Y -> x1\n");
    FAIL("no error");
  } catch (const FormatError& e) {
    CHECK(e.line == 3);
    CHECK(e.column == 15);
  }
  try {
    parse_problem("base x1\nvars Y\nideal: Y\nmap: Y x1\n");
    FAIL("no error");
  } catch (const FormatError& e) {
    CHECK(e.line == 4);
    CHECK(e.expected == "->");
  }
  try {
    parse_problem("base x1\nvars Y\nbound many\nideal: Y\nmap: Y -> x1\n");
    FAIL("no error");
  } catch (const FormatError& e) {
    CHECK(e.line == 3);
    CHECK(e.column == 7);
    CHECK(e.expected == "number");
  }
}

TEST_CASE("smooth-locus reports H0") {
  Run r = cli({"smooth-locus", data("smooth.nd")});
  CHECK(r.code == 0);
  CHECK(r.out.find("H0 is the unit ideal in B: yes") != std::string::npos);
  r = cli({"smooth-locus", data("node.nd")});
  CHECK(r.code == 0);
  CHECK(r.out.find("H0 is the unit ideal in B: no") != std::string::npos);
}

TEST_CASE("trivial certificate round trip and verify") {
  std::string out = scratch("smooth.cert");
  Run r = cli({"desingularize", data("smooth.nd"), "-o", out});
  REQUIRE(r.code == 0);
  std::string text = slurp(out);
  CHECK(text.find("certificate trivial") != std::string::npos);
  CHECK(print_certificate(parse_certificate(text)) == text);
  CHECK(cli({"verify", out}).code == 0);
}

TEST_CASE("bound gate exits 2 with the exact message") {
  Run r = cli({"desingularize", data("node.nd")});
  CHECK(r.code == 2);
  CHECK(r.out == "the bound is too small\n");
  r = cli({"desingularize", data("nodal_curve.nd")});
  CHECK(r.code == 2);
  CHECK(r.out == "the bound is too small\n");
}

TEST_CASE("errors exit 1") {
  CHECK(cli({"desingularize", data("missing.nd")}).code == 1);
  CHECK(cli({"frobnicate"}).code == 1);
  std::string bad = scratch("bad.nd");
  std::ofstream(bad) << "base x1\nvars Y\nideal: Y - 1\nmap: Y -> 1\nbound 3\n";
  Run r = cli({"desingularize", bad});
  CHECK(r.code == 1);
  CHECK(r.err.find("maximal ideal") != std::string::npos);
}

TEST_CASE("full certificate: write, round trip, verify, tamper") {
  std::string out = scratch("node17.cert");
  Run r = cli({"desingularize", data("node.nd"), "--bound", "17", "-o", out, "--seed", "3"});
  REQUIRE(r.code == 0);
  std::string text = slurp(out);
  CHECK(print_certificate(parse_certificate(text)) == text);
  r = cli({"verify", out});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);

  // Change one jet coefficient.
  auto pos = text.find("\njet Y1 ");
  REQUIRE(pos != std::string::npos);
  auto colon = text.find(": ", pos);
  std::string tampered = text.substr(0, colon + 2) + "x2^2 + " + text.substr(colon + 2);
  std::string bad = scratch("node17_tampered.cert");
  std::ofstream(bad, std::ios::binary) << tampered;
  r = cli({"verify", bad});
  CHECK(r.code == 1);
  CHECK(r.out.find("failed: [jets factor v]") != std::string::npos);
}
