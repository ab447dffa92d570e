#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace brg_test {

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

std::string binary_path() {
  const char* env = std::getenv("BRGAMES_BIN");
  REQUIRE_MESSAGE(env != nullptr, "BRGAMES_BIN must point at the brgames binary");
  return env;
}

std::string fixture(const std::string& name) {
  const char* env = std::getenv("BRGAMES_FIXTURES");
  REQUIRE_MESSAGE(env != nullptr, "BRGAMES_FIXTURES must point at tests/fixtures");
  return std::string(env) + "/" + name;
}

RunResult run(const std::string& args, const std::string& env_prefix = "") {
  const std::string cmd = env_prefix + "\"" + binary_path() + "\" " + args + " 2>&1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) {
    result.output.append(buf, got);
  }
  const int status = ::pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

// Scratch directory removed on scope exit.
class TempDir {
 public:
  explicit TempDir(const std::string& stem) {
    path_ = (fs::temp_directory_path() /
             ("brgames_cli_" + stem + "_" + std::to_string(::getpid())))
                .string();
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace

TEST_CASE("no subcommand is a usage error") {
  RunResult r = run("");
  CHECK(r.exit_code == 2);
}

TEST_CASE("--help exits cleanly and lists the subcommands") {
  RunResult r = run("--help");
  CHECK(r.exit_code == 0);
  for (const char* sub :
       {"analyze", "exact", "sample", "enumerate", "kirchhoff", "figures", "crossover"}) {
    CHECK_MESSAGE(contains(r.output, sub), "help should mention " << sub);
  }
}

TEST_CASE("--version prints the tool name") {
  RunResult r = run("--version");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "brgames"));
}

TEST_CASE("analyze classifies the shipped non-convergent fixture") {
  RunResult r = run("analyze \"" + fixture("nonconvergent_unique_psne.json") + "\"");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "players: 3, strategies each: 2"));
  CHECK(contains(r.output, "equilibria: 1"));
  CHECK(contains(r.output, "(0=I, 1=IV, 0=V)"));
  CHECK(contains(r.output, "type C"));
  CHECK(contains(r.output, "non-convergent"));
  CHECK(contains(r.output, "length 3"));
  CHECK(contains(r.output, "length 6"));
}

TEST_CASE("analyze --json reports the equilibrium profile") {
  RunResult r = run("analyze --json \"" + fixture("nonconvergent_unique_psne.json") + "\"");
  CHECK(r.exit_code == 0);
  auto doc = nlohmann::json::parse(r.output);
  CHECK(doc["n"] == 3);
  CHECK(doc["m"] == 2);
  CHECK(doc["psne"] == nlohmann::json::array({{0, 1, 0}}));
  CHECK(doc["classification"]["type"] == "C");
  CHECK(doc["classification"]["psne_count"] == 1);
  CHECK(doc["classification"]["convergent"] == false);
}

TEST_CASE("analyze writes DOT output when asked") {
  TempDir dir("dot");
  fs::create_directories(dir.path());
  const std::string dot_path = dir.path() + "/graph.dot";
  RunResult r = run("analyze --dot \"" + dot_path + "\" \"" +
                    fixture("nonconvergent_unique_psne.json") + "\"");
  CHECK(r.exit_code == 0);
  std::ifstream in(dot_path);
  REQUIRE(bool(in));
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(contains(buf.str(), "digraph best_response"));
  CHECK(contains(buf.str(), "\"p0:e0\" -> \"p1:e2\";"));
}

TEST_CASE("analyze honors a custom turn order") {
  RunResult r = run("analyze --order 1,2,0 \"" +
                    fixture("nonconvergent_unique_psne.json") + "\"");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "turn order: 1 2 0"));
  CHECK(contains(r.output, "type C"));
}

TEST_CASE("analyze reports degenerate games as data errors") {
  RunResult r = run("analyze \"" + fixture("degenerate_constant.json") + "\"");
  CHECK(r.exit_code == 3);
  CHECK(contains(r.output, "player"));
}

TEST_CASE("analyze rejects missing and malformed files as data errors") {
  CHECK(run("analyze /no/such/file.json").exit_code == 3);
  RunResult r = run("analyze \"" + fixture("bad_length.json") + "\"");
  CHECK(r.exit_code == 3);
}

TEST_CASE("analyze classifies the classic 2x2 fixtures") {
  RunResult pd = run("analyze \"" + fixture("prisoners_dilemma.json") + "\"");
  CHECK(pd.exit_code == 0);
  CHECK(contains(pd.output, "type A"));

  RunResult mp = run("analyze \"" + fixture("matching_pennies.json") + "\"");
  CHECK(mp.exit_code == 0);
  CHECK(contains(mp.output, "type C"));
  CHECK(contains(mp.output, "equilibria: 0"));

  RunResult coord = run("analyze \"" + fixture("pure_coordination.json") + "\"");
  CHECK(coord.exit_code == 0);
  CHECK(contains(coord.output, "type B"));
}

TEST_CASE("exact prints the pinned closed-form values") {
  RunResult r = run("exact 3 2");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "p1(3, 2) = 31/64 = 0.484375"));

  RunResult k2 = run("exact 2 10 --k 2");
  CHECK(k2.exit_code == 0);
  CHECK(contains(k2.output, "729/5000"));
  CHECK(contains(k2.output, "0.1458"));

  RunResult k7 = run("exact 2 5 --k 7");
  CHECK(k7.exit_code == 0);
  CHECK(contains(k7.output, "p2_k(m=5, k=7) = 0 = 0"));
}

TEST_CASE("exact --json emits exact and decimal fields") {
  RunResult r = run("exact --json 2 3");
  CHECK(r.exit_code == 0);
  auto doc = nlohmann::json::parse(r.output);
  CHECK(doc["p1"]["exact"] == "5/9");
  CHECK(doc["p1"]["value"] == "0.555555555555556");
}

TEST_CASE("exact usage errors") {
  CHECK(run("exact 1 2").exit_code == 2);
  CHECK(run("exact 2 1").exit_code == 2);
  CHECK(run("exact 3 2 --k 1").exit_code == 2);
  CHECK(run("exact 2").exit_code == 2);
}

TEST_CASE("sample is reproducible for a fixed seed") {
  const std::string args = "sample 2 2 --trials 5000 --seed 11 --threads 2";
  RunResult a = run(args);
  RunResult b = run(args);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(contains(a.output, "trials: 5000"));
  CHECK(contains(a.output, "exact checks:"));
  CHECK(contains(a.output, "type A = p1 = 3/4"));
}

TEST_CASE("sample --json reports interval membership") {
  RunResult r = run("sample --json 2 2 --trials 20000 --seed 7");
  CHECK(r.exit_code == 0);
  auto doc = nlohmann::json::parse(r.output);
  CHECK(doc["trials"] == 20000);
  CHECK(doc["seed"] == 7);
  REQUIRE(doc["exact_checks"].size() >= 3);
  for (const auto& row : doc["exact_checks"]) {
    CHECK(row["within_interval"] == true);  // z = 3 at 20k trials: comfortably inside
  }
}

TEST_CASE("sample rejects zero trials as a usage error") {
  CHECK(run("sample 2 2 --trials 0").exit_code == 2);
}

TEST_CASE("sample defaults bracket the exact 3-player frequency") {
  RunResult r = run("sample 3 2");  // defaults: 100000 trials, seed 7, z 3
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "trials: 100000"));
  CHECK(contains(r.output, "seed: 7"));
  CHECK(contains(r.output, "type A = p1 = 31/64 = 0.484375"));
  CHECK(contains(r.output, "within interval: yes"));
  CHECK_FALSE(contains(r.output, "within interval: NO"));
}

TEST_CASE("enumerate reproduces the pinned 3-player census") {
  RunResult r = run("enumerate 3 2");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "configurations: 4096"));
  CHECK(contains(r.output, "convergent, 1 equilibria: 1984"));
  CHECK(contains(r.output, "convergent, 2 equilibria: 828"));
  CHECK(contains(r.output, "convergent, 3 equilibria: 56"));
  CHECK(contains(r.output, "convergent, 4 equilibria: 2"));
  CHECK(contains(r.output, "non-convergent total: 1226"));
  CHECK(contains(r.output, "31/64"));
}

TEST_CASE("enumerate --json matches the census document schema") {
  RunResult r = run("enumerate --json 2 2");
  CHECK(r.exit_code == 0);
  auto doc = nlohmann::json::parse(r.output);
  CHECK(doc["total"] == "16");
  CHECK(doc["convergent_total"] == "14");
}

TEST_CASE("enumerate 2 3 matches the 2-player k-equilibrium counts") {
  RunResult r = run("enumerate 2 3");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "configurations: 729"));
  CHECK(contains(r.output, "convergent, 1 equilibria: 405"));
  CHECK(contains(r.output, "convergent, 2 equilibria: 144"));
  CHECK(contains(r.output, "convergent, 3 equilibria: 6"));
  CHECK(contains(r.output, "non-convergent total: 174"));
}

TEST_CASE("enumerate guards oversized spaces via flag and environment") {
  CHECK(run("enumerate 3 3").exit_code == 4);
  RunResult r = run("enumerate 3 3");
  CHECK(contains(r.output, "7625597484987"));
  CHECK(run("enumerate 2 2 --cap 10").exit_code == 4);
  CHECK(run("enumerate 2 2", "BRGAMES_ENUM_CAP=10 ").exit_code == 4);
  CHECK(run("enumerate 2 2", "BRGAMES_ENUM_CAP=100 ").exit_code == 0);
}

TEST_CASE("kirchhoff counts trees and matches the closed form") {
  RunResult r22 = run("kirchhoff 2 2");
  CHECK(r22.exit_code == 0);
  CHECK(contains(r22.output, "spanning trees toward the equilibrium sink: 3"));
  CHECK(contains(r22.output, "3/4"));
  CHECK(contains(r22.output, "equal: true"));

  RunResult r32 = run("kirchhoff 3 2");
  CHECK(r32.exit_code == 0);
  CHECK(contains(r32.output, "spanning trees toward the equilibrium sink: 248"));
  CHECK(contains(r32.output, "equal: true"));
}

TEST_CASE("kirchhoff refuses oversized graphs unless the guard is raised") {
  CHECK(run("kirchhoff 6 4").exit_code == 4);
  RunResult r = run("kirchhoff 6 4");
  CHECK(contains(r.output, "6144"));
}

TEST_CASE("figures writes CSV and JSON series into the output directory") {
  TempDir dir("figures");
  RunResult r = run("figures --fig 2 --out \"" + dir.path() + "\"");
  CHECK(r.exit_code == 0);
  std::ifstream csv(dir.path() + "/fig2.csv");
  REQUIRE(bool(csv));
  std::string header, first;
  std::getline(csv, header);
  std::getline(csv, first);
  CHECK(header == "n,m,exact,value");
  CHECK(first == "2,2,3/4,0.75");
  CHECK(fs::exists(dir.path() + "/fig2.json"));
  CHECK_FALSE(fs::exists(dir.path() + "/fig3.csv"));
}

TEST_CASE("figures --fig all writes all three series") {
  TempDir dir("figures_all");
  RunResult r = run("figures --fig all --m-hi 10 --out \"" + dir.path() + "\"");
  CHECK(r.exit_code == 0);
  for (const char* name : {"fig2.csv", "fig2.json", "fig3.csv", "fig3.json",
                           "fig4.csv", "fig4.json"}) {
    CHECK_MESSAGE(fs::exists(dir.path() + "/" + name), name << " should exist");
  }
}

TEST_CASE("figures rejects unknown series ids") {
  CHECK(run("figures --fig 5").exit_code == 2);
}

TEST_CASE("crossover reports m = 10 with both comparisons") {
  RunResult r = run("crossover");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "m = 10"));
  CHECK(contains(r.output, "m=9:"));
  CHECK(contains(r.output, "m=10:"));

  RunResult j = run("crossover --json");
  CHECK(j.exit_code == 0);
  auto doc = nlohmann::json::parse(j.output);
  CHECK(doc["crossover_m"] == 10);
  CHECK(doc["comparisons"][0]["more_common"] == "A");
  CHECK(doc["comparisons"][1]["more_common"] == "B");
}

}  // namespace brg_test
