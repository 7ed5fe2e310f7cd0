#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "packcol/cli.hpp"

using namespace packcol;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;

  std::vector<json> lines() const {
    std::vector<json> v;
    std::istringstream in(out);
    for (std::string line; std::getline(in, line);)
      if (!line.empty()) v.push_back(json::parse(line));
    return v;
  }
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "packcol");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("packcol-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, GenerateLadder) {
  auto r = run({"generate", "--family", "CL", "--n", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("p 14 21"), std::string::npos);
  EXPECT_NE(r.out.find("c family CL n=7"), std::string::npos);
}

TEST_F(Cli, GenerateRoundTrip) {
  ASSERT_EQ(run({"generate", "--family", "GENH", "--l", "3", "--r", "4", "--out", path("g.txt")}).code, 0);
  std::ifstream in(path("g.txt"));
  Graph g = read_graph_text(in);
  EXPECT_TRUE(g.same_adjacency(gen_h_graph(3, 4)));
  auto r = run({"chi", "--graph", path("g.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.lines().back()["value"], 5);
}

TEST_F(Cli, ChiLadderNine) {
  auto r = run({"chi", "--family", "CL", "--n", "9"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = r.lines().back();
  EXPECT_EQ(j["status"], "EXACT");
  EXPECT_EQ(j["value"], 7);
  EXPECT_EQ(j["below"]["status"], "UNSAT");
  EXPECT_EQ(j["certificate"]["status"], "SAT");
}

TEST_F(Cli, DecideExpectAndCertificates) {
  auto sat = run({"decide", "--family", "CL", "--n", "12", "--k", "5", "--expect", "sat", "--out", path("c.json")});
  ASSERT_EQ(sat.code, 0) << sat.err;
  EXPECT_EQ(run({"decide", "--family", "CL", "--n", "7", "--k", "5", "--expect", "unsat"}).code, 0);
  EXPECT_EQ(run({"decide", "--family", "CL", "--n", "7", "--k", "5", "--expect", "sat"}).code, 1);

  auto v = run({"verify", "--certificate", path("c.json")});
  ASSERT_EQ(v.code, 0) << v.err << v.out;
  EXPECT_EQ(v.lines().back()["result"], "VALID");

  json cert;
  std::ifstream(path("c.json")) >> cert;
  auto& col = cert["colouring"];
  int a = col[0], b = col[1];
  col[0] = b;
  col[1] = a;
  std::ofstream(path("bad.json")) << cert.dump();
  auto bad = run({"verify", "--certificate", path("bad.json")});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.lines().back()["result"], "INVALID");
}

TEST_F(Cli, DecideConstraints) {
  auto r = run({"decide", "--family", "CL", "--n", "6", "--k", "5", "--fix", "u_0=4", "--forbid", "v_0=2"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = r.lines().back();
  EXPECT_EQ(j["status"], "SAT");
  EXPECT_EQ(j["colouring"][0], 4);
  EXPECT_NE(j["colouring"][6], 2);

  auto one = run({"decide", "--family", "GENH", "--l", "3", "--r", "3", "--k", "5", "--edge-require-one", "all"});
  ASSERT_EQ(one.code, 0) << one.err;
  EXPECT_EQ(one.lines().back()["status"], "UNSAT");

  EXPECT_EQ(run({"decide", "--family", "CL", "--n", "6", "--k", "5", "--fix", "u_0=9"}).code, 2);
  EXPECT_EQ(run({"decide", "--family", "CL", "--n", "6", "--k", "5", "--fix", "z_0=1"}).code, 2);
}

TEST_F(Cli, RhoValues) {
  auto r = run({"rho", "--family", "CL", "--n", "6", "--k", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto lines = r.lines();
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0]["rho"], 6);
  EXPECT_EQ(run({"rho", "--family", "CL", "--n", "6"}).code, 2);
}

TEST_F(Cli, LadderTable) {
  auto r = run({"table", "--theorem", "4", "--n", "3..16"});
  ASSERT_EQ(r.code, 0) << r.err << r.out;
  auto rows = r.lines();
  EXPECT_EQ(rows.size(), 14u);
  for (const auto& j : rows) EXPECT_TRUE(j["agreement"].get<bool>()) << j.dump();
}

TEST_F(Cli, CoronaTable) {
  auto r = run({"table", "--theorem", "3", "--n", "3..8"});
  ASSERT_EQ(r.code, 0) << r.err << r.out;
  for (const auto& j : r.lines()) EXPECT_TRUE(j["agreement"].get<bool>()) << j.dump();
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"chi"}).code, 2);
  EXPECT_EQ(run({"chi", "--family", "Q", "--n", "3"}).code, 2);
  EXPECT_EQ(run({"chi", "--family", "CL", "--n", "2"}).code, 2);
  EXPECT_EQ(run({"decide", "--family", "CL", "--n", "6"}).code, 2);
  EXPECT_EQ(run({"table", "--theorem", "9"}).code, 2);
  EXPECT_EQ(run({"chi", "--graph", path("missing.txt")}).code, 2);
  std::ofstream(path("broken.txt")) << "p 3 1\ne 0 7\n";
  auto r = run({"chi", "--graph", path("broken.txt")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line"), std::string::npos) << r.err;
}

TEST_F(Cli, TimeoutExitCode) {
  auto r = run({"decide", "--family", "GENH", "--l", "6", "--r", "5", "--k", "5", "--max-nodes", "3"});
  EXPECT_EQ(r.code, 3) << r.out;
  EXPECT_EQ(r.lines().back()["status"], "TIMEOUT");
}

TEST_F(Cli, PatternCommands) {
  auto v = run({"pattern", "verify", "--family", "GENH", "--l", "2", "--r", "7"});
  ASSERT_EQ(v.code, 0) << v.err;
  EXPECT_EQ(v.lines().back()["k_used"], 7);
  auto s = run({"pattern", "sweep", "--family", "CL", "--n", "3..40"});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(s.lines().back()["rows"], 38);
  std::ofstream(path("reg.json")) << R"({"schema":1,"patterns":[{"family":"CL"}]})";
  auto bad = run({"pattern", "verify", "--registry", path("reg.json"), "--family", "CL", "--n", "6"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("patterns[0]"), std::string::npos) << bad.err;
  EXPECT_EQ(run({"pattern", "verify", "--family", "CL", "--n", "2"}).code, 1);
}

TEST_F(Cli, ClaimsRun) {
  auto r = run({"claims", "run", "--name", "lemma3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.lines().back()["status"], "VERIFIED");
  auto v = run({"claims", "run", "--name", "lemma7", "--l", "3", "--r", "3"});
  ASSERT_EQ(v.code, 0) << v.err;
  EXPECT_EQ(v.lines().back()["status"], "VACUOUS-STRONG");
  EXPECT_EQ(run({"claims", "run", "--name", "lemma99"}).code, 2);
}
