#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gcover/cli.hpp"

using namespace gcover;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "gcover");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch() {
  const fs::path dir = fs::current_path() / "cli_scratch";
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("gap on the star") {
  const fs::path dir = scratch();
  const std::string star = (dir / "star4.eds").string();
  REQUIRE(cli({"gen", "star-gap-eds", "--nodes", "4", "-o", star}).code == 0);
  const Run nat = cli({"gap", star, "--relaxation", "natural"});
  CHECK(nat.code == 0);
  CHECK(nat.out == "LP=1/4\nOPT=1\ngap=4\n");
  const Run str = cli({"gap", star, "--relaxation", "strengthened"});
  CHECK(str.out == "LP=1\nOPT=1\ngap=1\n");
  const Run oracle = cli({"oracle", star});
  CHECK(oracle.out.find("optimum\t1\n") != std::string::npos);
}

TEST_CASE("solve then verify") {
  const fs::path dir = scratch();
  struct Case {
    const char* kind;
    std::vector<std::string> params;
  };
  const std::vector<Case> cases = {
      {"random-tree-eds", {"--nodes", "9"}},
      {"random-tree-multicut", {"--nodes", "8", "--demands", "4"}},
      {"random-graph-eds", {"--nodes", "6", "--edges", "8"}},
  };
  for (const Case& c : cases) {
    for (int seed = 0; seed < 5; ++seed) {
      CAPTURE(c.kind);
      CAPTURE(seed);
      const std::string file = (dir / "inst.txt").string();
      const std::string cert = (dir / "inst.cert").string();
      std::vector<std::string> gen = {"gen", c.kind, "--seed", std::to_string(seed),
                                      "-o", file};
      gen.insert(gen.end(), c.params.begin(), c.params.end());
      REQUIRE(cli(gen).code == 0);
      const Run solved = cli({"solve", file, "--certificate", cert});
      CHECK(solved.code == 0);
      CHECK(solved.out.find("objective\t") != std::string::npos);
      const Run verified = cli({"verify", file, cert});
      CHECK(verified.code == 0);
      CHECK(verified.out.find("FAIL") == std::string::npos);
    }
  }
}

TEST_CASE("tampered certificate fails verification") {
  const fs::path dir = scratch();
  const std::string file = (dir / "t.eds").string();
  const std::string cert = (dir / "t.cert").string();
  REQUIRE(cli({"gen", "random-tree-eds", "--nodes", "6", "--seed", "2", "-o", file}).code == 0);
  REQUIRE(cli({"solve", file, "--certificate", cert}).code == 0);
  std::string text = slurp(cert);
  const auto pos = text.find("\"objective\": \"");
  REQUIRE(pos != std::string::npos);
  text.insert(pos + 14, "1");
  std::ofstream(cert, std::ios::binary) << text;
  CHECK(cli({"verify", file, cert}).code == kExitVerifyFailed);
}

TEST_CASE("usage and parse errors") {
  const fs::path dir = scratch();
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"frobnicate"}).code == kExitUsage);
  CHECK(cli({"solve", (dir / "missing").string()}).code == kExitUsage);
  CHECK(cli({"gap", "x", "--relaxation", "edge-cover"}).code == kExitUsage);
  CHECK(cli({"gen", "star-gap-eds", "--nodes", "1", "-o", (dir / "s").string()}).code ==
        kExitUsage);
  const fs::path bad = dir / "bad.eds";
  std::ofstream(bad) << "problem eds-tree\nnodes 2\nedge 0 1 -1 1\n";
  const Run r = cli({"solve", bad.string()});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("line 3") != std::string::npos);
}

TEST_CASE("batch is reproducible") {
  const fs::path dir = scratch();
  const fs::path in = dir / "in";
  fs::create_directories(in);
  REQUIRE(cli({"gen", "star-gap-eds", "--nodes", "3", "-o", (in / "a.eds").string()}).code == 0);
  REQUIRE(cli({"gen", "random-tree-multicut", "--nodes", "7", "--seed", "4", "-o",
               (in / "b.mc").string()}).code == 0);
  REQUIRE(cli({"gen", "random-set-cover", "--nodes", "3", "--sets", "3", "-o",
               (in / "c.sc").string()}).code == 0);
  const Run first = cli({"batch", in.string(), "--report", (dir / "r1.tsv").string(),
                         "--certificates", (dir / "c1").string()});
  const Run second = cli({"batch", in.string(), "--report", (dir / "r2.tsv").string(),
                          "--certificates", (dir / "c2").string()});
  CHECK(first.code == 0);
  CHECK(second.code == 0);
  const std::string report = slurp(dir / "r1.tsv");
  CHECK(report == slurp(dir / "r2.tsv"));
  CHECK(report.rfind("instance\tproblem\t", 0) == 0);
  CHECK(report.find("a.eds\teds-tree\t1/3\t1\t1\t1\t1\tpass") != std::string::npos);
  for (const char* name : {"a.eds", "b.mc", "c.sc"}) {
    const std::string cert = std::string(name) + ".cert.json";
    CHECK(slurp(dir / "c1" / cert) == slurp(dir / "c2" / cert));
  }
}
