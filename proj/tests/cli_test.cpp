#define DOCTEST_CONFIG_IMPLEMENT
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace {

std::string g_cli;

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
  std::string cmd = env + g_cli + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {};
  std::string out;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.output = out;
  return r;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("gen blowup emits the level subgraph") {
  RunResult dot = run_cli("gen blowup --profile gl --depth 2 --format dot");
  REQUIRE(dot.exit_code == 0);
  int node_statements = 0;
  for (const auto& line : lines_of(dot.output))
    if (line.find(';') != std::string::npos &&
        line.find("--") == std::string::npos &&
        line.find('{') == std::string::npos)
      ++node_statements;
  CHECK(node_statements == 27);

  RunResult js = run_cli("gen blowup --profile lf --depth 1 --format json");
  REQUIRE(js.exit_code == 0);
  auto j = nlohmann::json::parse(js.output);
  CHECK(j["vertices"].size() == 5);
  CHECK(j["edges"].size() == 6);
}

TEST_CASE("embed emits placements, levels, and a passing report") {
  RunResult r = run_cli("embed --graph ray --depth 1 --emit json");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.output);
  CHECK(j["h"] == nlohmann::json::array({1, 2}));
  CHECK(j["vertex_map"].size() == 2);
  CHECK(j["vertex_map"]["0"] == "b0.0");
  CHECK(j["vertex_map"]["1"] == "b00.0");
  CHECK(j["report"]["status"] == "pass");

  RunResult stacked =
      run_cli("embed --graph ray --depth 2 --target stacked --emit json");
  REQUIRE(stacked.exit_code == 0);
  auto js = nlohmann::json::parse(stacked.output);
  CHECK(js["h"] == nlohmann::json::array({1, 2, 3}));
  CHECK(js["report"]["status"] == "pass");
}

TEST_CASE("truncate annotates dummies") {
  RunResult r = run_cli("truncate --graph ray --stage 2");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.output);
  CHECK(j["dummies"] == nlohmann::json::array({"*2"}));
  CHECK(j["vertices"].size() == 3);
}

TEST_CASE("verify suites succeed and write reports") {
  RunResult r = run_cli("verify --suite inverse --graph ray --stages 4");
  REQUIRE(r.exit_code == 0);
  CHECK(nlohmann::json::parse(r.output)["status"] == "pass");

  CHECK(run_cli("verify --suite thm42 --system cycle:5").exit_code == 0);

  std::string path = "cli_test_report.json";
  RunResult w = run_cli("verify --suite thm32 --graph binary_tree --depth 3 "
                        "--out " + path);
  REQUIRE(w.exit_code == 0);
  std::ifstream f(path);
  REQUIRE(f.good());
  std::stringstream body;
  body << f.rdbuf();
  auto j = nlohmann::json::parse(body.str());
  CHECK(j["status"] == "pass");
  CHECK(j["stages"]["to"] == 3);
  std::remove(path.c_str());
}

TEST_CASE("embed-gl colors each double-ray prefix") {
  RunResult r = run_cli("embed-gl --system cycle:3 --emit dot");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("color=") != std::string::npos);
  int colored = 0;
  for (const auto& line : lines_of(r.output))
    if (line.find("label=\"e") != std::string::npos) ++colored;
  CHECK(colored == 3);  // one labeled, colored chain per edge

  RunResult js = run_cli("embed-gl --system cycle:3 --emit json");
  REQUIRE(js.exit_code == 0);
  auto j = nlohmann::json::parse(js.output);
  CHECK(j["report"]["status"] == "pass");
  CHECK(j["stages"].size() == 4);
}

TEST_CASE("export dumps a system as steps") {
  RunResult r = run_cli("export --system theta");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.output);
  REQUIRE(j["steps"].size() == 3);
  CHECK(j["steps"][2]["kind"] == "split");
}

TEST_CASE("usage errors exit with 2 and name the catalog") {
  RunResult r = run_cli("gen graph --graph nope --depth 2");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("available: ray, double_ray") != std::string::npos);

  RunResult s = run_cli("embed-gl --system nope");
  CHECK(s.exit_code == 2);
  CHECK(s.output.find("available: cycle:n") != std::string::npos);

  CHECK(run_cli("badcmd").exit_code == 2);
  CHECK(run_cli("embed --graph ray").exit_code == 2);  // missing --depth
  CHECK(run_cli("embed --graph ray --depth -1").exit_code == 2);
}

TEST_CASE("the vertex cap aborts runaway expansions") {
  RunResult r = run_cli("gen blowup --profile gl --depth 6",
                        "ENDS_UNIVERSAL_MAX_VERTICES=10 ");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("vertex cap") != std::string::npos);
}

TEST_CASE("repeated runs are byte-identical") {
  RunResult a = run_cli("embed-gl --system hawaiian:2 --emit json");
  RunResult b = run_cli("embed-gl --system hawaiian:2 --emit json");
  REQUIRE(a.exit_code == 0);
  CHECK(a.output == b.output);
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: cli_test <path-to-cli>\n");
    return 1;
  }
  g_cli = argv[1];
  doctest::Context ctx;
  ctx.applyCommandLine(1, argv);
  return ctx.run();
}
