#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <nlohmann/json.hpp>

#include "cpm/coloring.hpp"
#include "cpm/graph_io.hpp"
#include "cpm/reduce2cpm.hpp"

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun cpm_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + CPM_CLI_PATH + "\" " + args + " 2>&1";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (p == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string corpus(const std::string& name) { return std::string(CPM_TEST_DATA_DIR) + "/corpus/" + name; }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("cpm_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, RoundtripSingleClause) {
  const CliRun r = cpm_cli("roundtrip " + corpus("single.txt"));
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("solve: sat"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("satisfying"), std::string::npos) << r.out;
}

TEST_F(Cli, RoundtripUnsatisfiable) {
  const CliRun r = cpm_cli("roundtrip " + corpus("all_same.txt"));
  EXPECT_EQ(r.code, 1) << r.out;
}

TEST_F(Cli, CheckGadgets) {
  const CliRun r = cpm_cli("--json check-gadgets");
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j.at("ok").get<bool>());
  EXPECT_EQ(j.at("gadgets").at(0).at("solutions"), 6);
  EXPECT_EQ(j.at("gadgets").at(1).at("solutions"), 2);
}

TEST_F(Cli, VerifyNamesDegreeTwoNodes) {
  ASSERT_EQ(cpm_cli("reduce " + corpus("single.txt") + " -o " + path("g.json")).code, 0);
  cpm::GraphFile f = cpm::parse_graph(cpm::read_file(path("g.json")));
  EXPECT_EQ(cpm_cli("verify " + path("g.json")).code, 0);

  std::vector<cpm::Node> nodes(f.graph.nodes().begin(), f.graph.nodes().end());
  std::vector<cpm::Edge> edges(f.graph.edges().begin() + 1, f.graph.edges().end());
  const cpm::Edge gone = f.graph.edge(0);
  cpm::write_file(path("bad.json"), cpm::emit_graph(cpm::Graph(nodes, edges)));
  const CliRun r = cpm_cli("verify " + path("bad.json"));
  EXPECT_EQ(r.code, 1);
  const std::string want =
      "nodes " + std::to_string(std::min(gone.u, gone.v)) + ", " + std::to_string(std::max(gone.u, gone.v));
  EXPECT_NE(r.out.find(want), std::string::npos) << r.out;
}

TEST_F(Cli, SolveWritesAValidColoring) {
  ASSERT_EQ(cpm_cli("reduce " + corpus("single.txt") + " -o " + path("g.json")).code, 0);
  ASSERT_EQ(cpm_cli("solve " + path("g.json") + " -o " + path("s.json")).code, 0);
  const cpm::GraphFile f = cpm::parse_graph(cpm::read_file(path("s.json")));
  ASSERT_TRUE(f.coloring.has_value());
  EXPECT_TRUE(cpm::verify_pm_coloring(f.graph, *f.coloring).valid);
  EXPECT_EQ(cpm_cli("verify " + path("s.json")).code, 0);
}

TEST_F(Cli, SolveUnsatAndBudget) {
  cpm::write_file(path("k3.json"),
                  R"({"format":"cpm-graph","version":1,"nodes":[{"id":0,"role":"other"},{"id":1,"role":"other"},)"
                  R"({"id":2,"role":"other"}],"edges":[[0,1],[1,2],[2,0]]})");
  EXPECT_EQ(cpm_cli("solve " + path("k3.json") + " -o " + path("o.json")).code, 1);
  EXPECT_EQ(cpm_cli("roundtrip " + std::string(CPM_TEST_DATA_DIR) + "/fano.txt --budget 50").code, 3);
}

TEST_F(Cli, ReduceKAndCnfExport) {
  ASSERT_EQ(cpm_cli("reduce " + corpus("single.txt") + " -o " + path("g.json")).code, 0);
  ASSERT_EQ(cpm_cli("reduce-k " + path("g.json") + " -k 3 -o " + path("k.json")).code, 0);
  const cpm::GraphFile f = cpm::parse_graph(cpm::read_file(path("k.json")));
  EXPECT_EQ(f.graph.node_count(), 368u + 2u);
  ASSERT_EQ(cpm_cli("solve " + path("k.json") + " -k 3 --cnf-out " + path("k.cnf") + " -o " + path("ks.json")).code, 0);
  EXPECT_EQ(cpm::read_file(path("k.cnf")).rfind("c ", 0), 0u);
}

TEST_F(Cli, DumpAfterStep) {
  ASSERT_EQ(cpm_cli("reduce " + corpus("single.txt") + " -o " + path("s3.json") + " --dump-after step3").code, 0);
  EXPECT_EQ(cpm::parse_graph(cpm::read_file(path("s3.json"))).graph.node_count(), 32u);
  EXPECT_EQ(cpm_cli("reduce " + corpus("single.txt") + " -o " + path("x.json") + " --dump-after step9").code, 2);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(cpm_cli("").code, 2);
  EXPECT_EQ(cpm_cli("reduce /nonexistent/file -o " + path("x.json")).code, 2);
  cpm::write_file(path("bad.txt"), "nae a b\n");
  const CliRun r = cpm_cli("reduce " + path("bad.txt") + " -o " + path("x.json"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("line 1"), std::string::npos) << r.out;
}

TEST_F(Cli, StatsTable) {
  const CliRun r = cpm_cli("--json stats " + corpus("single.txt"));
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j.size(), 6u);
  EXPECT_EQ(j.at(5).at("nodes"), 368);
}
