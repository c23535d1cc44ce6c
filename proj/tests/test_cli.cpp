#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "reglab/cli/app.hpp"

namespace {

struct Run {
  int code = 0;
  std::string out, err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "reglab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = reglab::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::filesystem::path scratch() {
  auto dir = std::filesystem::temp_directory_path() / "reglab_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  auto p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

const char* kTrivialD3 =
    R"({"group": {"kind": "dihedral", "q": 3}, "rank": 1, "relations": [],
        "action_on_generators": {"1": [[1]], "3": [[1]]}})";

}  // namespace

TEST_CASE("cli regulator of the trivial module") {
  const std::string m = write("trivial.json", kTrivialD3);
  Run r = invoke({"regulator", "--module", m, "--method", "both"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["value"] == "1/3");
  CHECK(j["factorization"]["3"] == -1);
}

TEST_CASE("cli cohomology of the trivial module") {
  const std::string m = write("trivial.json", kTrivialD3);
  Run r = invoke({"cohomology", "--module", m, "--degrees", "-1..2"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  std::vector<std::string> orders;
  for (const auto& g : j["groups"]) orders.push_back(g["order"].dump());
  // Ĥ⁻¹ = 0, Ĥ⁰ = Z/6, Ĥ¹ = Hom(D3, Z) = 0, Ĥ² = D3^ab
  CHECK(orders == std::vector<std::string>{"1", "6", "1", "2"});
}

TEST_CASE("cli exit codes") {
  const std::string bad = write("bad.json", R"({"group":{"kind":"cyclic","n":2},"rank":1,"relations":[],
      "action":{"0":[[1]],"1":[[2]]}})");
  CHECK(invoke({"validate", "--module", bad}).code == 2);
  CHECK(invoke({"validate", "--module", (scratch() / "missing.json").string()}).code == 2);
  CHECK(invoke({"verify", "--suite", "nonsense"}).code == 2);
  CHECK(invoke({"no-such-command"}).code == 2);
  const std::string ok = write("trivial.json", kTrivialD3);
  CHECK(invoke({"validate", "--module", ok}).code == 0);
  CHECK(invoke({"check", "--identity", "DIHEDRAL_MAIN", "--module", ok}).code == 0);
}

TEST_CASE("cli verify output is reproducible") {
  const std::vector<std::string> args = {"verify", "--suite", "dihedral", "--q", "3", "--trials", "4", "--seed", "7"};
  Run a = invoke(args), b = invoke(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  auto j = nlohmann::json::parse(a.out);
  CHECK(j["summary"]["fail"] == 0);
  CHECK(j["summary"]["error"] == 0);
  Run c = invoke({"verify", "--suite", "dihedral", "--q", "3", "--trials", "4", "--seed", "8"});
  CHECK(c.out != a.out);
}

TEST_CASE("cli random modules round trip") {
  const std::string out = (scratch() / "rnd.json").string();
  const std::string group = R"({"kind": "dihedral", "q": 5})";
  REQUIRE(invoke({"random-module", "--group", group, "--profile", "mixed", "--seed", "3", "--out", out}).code == 0);
  std::ifstream in(out);
  std::stringstream first;
  first << in.rdbuf();
  Run v = invoke({"validate", "--module", out});
  CHECK(v.code == 0);
  const std::string again = (scratch() / "rnd2.json").string();
  REQUIRE(invoke({"random-module", "--group", group, "--profile", "mixed", "--seed", "3", "--out", again}).code == 0);
  std::ifstream in2(again);
  std::stringstream second;
  second << in2.rdbuf();
  CHECK(first.str() == second.str());
}
