#include <gtest/gtest.h>

#include "packcol/patterns.hpp"
#include "packcol/solver.hpp"

using namespace packcol;

namespace {

const PatternRegistry& shipped() {
  static PatternRegistry reg = load_registry(PACKCOL_DEFAULT_REGISTRY);
  return reg;
}

std::string one_entry(const std::string& family, const std::string& grids, const std::string& extra = "") {
  return R"({"schema":1,"patterns":[{"family":")" + family + R"(","case_name":"t","min_params":)" +
         (family == "GENH" ? R"({"l":1,"r":2})" : family == "H" ? R"({"r":2})" : R"({"n":3})") + "," + grids + extra +
         "}]}";
}

}  // namespace

TEST(Registry, ShippedLoads) {
  EXPECT_GE(shipped().entries.size(), 50u);
  EXPECT_NE(shipped().find("cl-3"), nullptr);
  EXPECT_NE(shipped().find("h-odd"), nullptr);
}

TEST(Registry, LadderTwentyMatchesResidueTwo) {
  EXPECT_EQ(shipped().match("CL", {{"n", 20}}).case_name, "cl-n2mod6");
  EXPECT_EQ(shipped().match("CL", {{"n", 14}}).case_name, "cl-14");
}

TEST(Registry, RejectsWrongRowCount) {
  auto bad = one_entry("CL", R"("prefix":[[1,2,3],[4,1,5],[1,1,1]],"repeat":[],"suffix":[])", R"(,"max_params":{"n":3})");
  try {
    parse_registry(bad);
    FAIL();
  } catch (const RegistryError& e) {
    EXPECT_NE(std::string(e.what()).find("patterns[0].prefix"), std::string::npos) << e.what();
  }
}

TEST(Registry, SchemaErrorsCarryLocation) {
  auto expect_error = [](const std::string& text, const std::string& where) {
    try {
      parse_registry(text);
      ADD_FAILURE() << "accepted: " << text;
    } catch (const RegistryError& e) {
      EXPECT_NE(std::string(e.what()).find(where), std::string::npos) << e.what();
    }
  };
  expect_error(R"({"schema":2,"patterns":[]})", "schema");
  expect_error("not json", "<registry>");
  expect_error(one_entry("CL", R"("prefix":[[1,0,3],[4,1,5]],"repeat":[],"suffix":[])"), "prefix[0][1]");
  expect_error(one_entry("CL", R"("prefix":[[1,2],[4,1,5]],"repeat":[],"suffix":[])"), "prefix[1]");
  expect_error(one_entry("CL", R"("prefix":[],"repeat":[[1,2],[3,1]],"suffix":[])"), "repeat_count_formula");
  expect_error(one_entry("CL", R"("prefix":[],"repeat":[[1,2],[3,1]],"suffix":[],"repeat_count_formula":{"kind":"cubic","param":"n","offset":0,"divisor":2})"),
               "kind");
  expect_error(one_entry("CL", R"("prefix":[[1],[2]],"repeat":[],"suffix":[])", R"(,"max_params":{"q":3})"), "max_params.q");
  expect_error(R"({"schema":1,"patterns":[{"family":"Z","case_name":"t","min_params":{},"prefix":[],"repeat":[],"suffix":[]}]})",
               "family");
}

TEST(Registry, FormulaMustFitApplicability) {
  // 2-column repeat with (n-0)/2 only fits even n; without a residue condition odd n fails at load.
  auto text = one_entry("CL",
                        R"("prefix":[],"repeat":[[1,2],[3,1]],"suffix":[],"repeat_count_formula":{"kind":"linear","param":"n","offset":0,"divisor":2})");
  EXPECT_THROW(parse_registry(text), RegistryError);
}

TEST(Registry, OverlapIsAnError) {
  std::string text = R"({"schema":1,"patterns":[
    {"family":"CL","case_name":"a","min_params":{"n":6},"residues":[{"param":"n","mod":6,"residue":0}],
     "prefix":[],"repeat":[[1,3,1,2,1,5],[2,1,4,1,3,1]],"suffix":[],
     "repeat_count_formula":{"kind":"linear","param":"n","offset":0,"divisor":6}},
    {"family":"CL","case_name":"b","min_params":{"n":12},"residues":[{"param":"n","mod":12,"residue":0}],
     "prefix":[],"repeat":[[1,3,1,2,1,5],[2,1,4,1,3,1]],"suffix":[],
     "repeat_count_formula":{"kind":"linear","param":"n","offset":0,"divisor":6}}]})";
  try {
    parse_registry(text);
    FAIL();
  } catch (const RegistryError& e) {
    EXPECT_NE(std::string(e.what()).find("n=12"), std::string::npos) << e.what();
  }
}

TEST(Formula, Evaluation) {
  CountFormula lin{CountFormula::Kind::kLinear, "n", 20, 6};
  EXPECT_EQ(lin.evaluate({{"n", 26}}), 1);
  EXPECT_EQ(lin.evaluate({{"n", 20}}), 0);
  EXPECT_EQ(lin.evaluate({{"n", 21}}), std::nullopt);
  EXPECT_EQ(lin.evaluate({{"n", 14}}), std::nullopt);
  CountFormula fb{CountFormula::Kind::kFloorBlock, "l", 6, 6};
  EXPECT_EQ(fb.evaluate({{"l", 8}}), 0);
  EXPECT_EQ(fb.evaluate({{"l", 17}}), 1);
  EXPECT_EQ(fb.evaluate({{"l", 20}}), 2);
}

TEST(Instantiate, LadderSixFromBlock) {
  const auto& s = shipped().match("CL", {{"n", 6}});
  Colouring c = instantiate(s, {{"n", 6}});
  EXPECT_EQ(c.colours, (std::vector<int>{1, 3, 1, 2, 1, 5, 2, 1, 4, 1, 3, 1}));
  EXPECT_TRUE(is_packing_colouring(circular_ladder(6), c).valid());
  EXPECT_EQ(c.max_colour(), 5);
}

TEST(Instantiate, LadderTenIsSuffixOnly) {
  const auto& s = shipped().match("CL", {{"n", 10}});
  EXPECT_EQ(s.repeat_count->evaluate({{"n", 10}}), 0);
  Colouring c = instantiate(s, {{"n", 10}});
  EXPECT_EQ(c.size(), 20);
  EXPECT_TRUE(is_packing_colouring(circular_ladder(10), c).valid());
}

TEST(Instantiate, OddHGraphSevenColouring) {
  const auto& s = shipped().match("H", {{"r", 3}});
  Colouring c = instantiate(s, {{"r", 3}});
  EXPECT_EQ(c.size(), 18);
  EXPECT_EQ(c.max_colour(), 7);
  EXPECT_TRUE(is_packing_colouring(h_graph(3), c).valid());
}

TEST(Instantiate, RejectsInapplicable) {
  const auto& s = *shipped().find("cl-3");
  EXPECT_THROW(instantiate(s, {{"n", 4}}), PatternError);
}

TEST(VerifyCase, Examples) {
  auto a = verify_case(shipped(), "CL", {{"n", 14}});
  EXPECT_TRUE(a.valid);
  EXPECT_EQ(a.k_used, 6);
  auto b = verify_case(shipped(), "GENH", {{"l", 5}, {"r", 2}});
  EXPECT_TRUE(b.valid);
  EXPECT_EQ(b.k_used, 6);
  auto c = verify_case(shipped(), "GENH", {{"l", 2}, {"r", 7}});
  EXPECT_TRUE(c.valid);
  EXPECT_EQ(c.k_used, 7);
  EXPECT_THROW(verify_case(shipped(), "CL", {{"n", 2}}), PatternError);
}

TEST(VerifyCase, CatchesTranscriptionErrors) {
  PatternRegistry reg = shipped();
  for (auto& e : reg.entries)
    if (e.case_name == "cl-n0mod6") e.repeat[0][1] = 1;
  auto r = verify_case(reg, "CL", {{"n", 12}});
  EXPECT_FALSE(r.valid);
  ASSERT_TRUE(r.violation);
  EXPECT_EQ(r.violation->colour, 1);
  EXPECT_THROW(sweep(reg, "CL", {{"n", {3, 20}}}), SweepFailure);
}

TEST(Sweep, LaddersToTwoHundred) {
  auto rows = sweep(shipped(), "CL", {{"n", {3, 200}}});
  EXPECT_EQ(rows.size(), 198u);
  for (const auto& r : rows) {
    EXPECT_TRUE(r.valid);
    EXPECT_EQ(r.k_used, r.claimed->upper);
  }
}

TEST(Sweep, HGraphs) {
  auto rows = sweep(shipped(), "H", {{"r", {2, 20}}});
  for (const auto& r : rows) EXPECT_EQ(r.k_used, r.params.at("r") % 2 == 0 ? 5 : 7);
}

TEST(Sweep, GeneralisedEvenR) {
  auto rows = sweep(shipped(), "GENH", {{"l", {3, 20}}, {"r", {2, 14}}},
                    [](const ParamMap& p) { return p.at("l") != 5 && p.at("r") % 2 == 0; });
  EXPECT_EQ(rows.size(), 17u * 7u);
  for (const auto& r : rows) EXPECT_EQ(r.k_used, 5);
}

TEST(Sweep, ExactlyOneEntryEverywhere) {
  for (int n = 3; n <= 200; ++n) EXPECT_EQ(shipped().matches("CL", {{"n", n}}).size(), 1u) << n;
  for (int r = 2; r <= 40; ++r) EXPECT_EQ(shipped().matches("H", {{"r", r}}).size(), 1u) << r;
  for (int l = 2; l <= 40; ++l)
    for (int r = 2; r <= 30; ++r) EXPECT_EQ(shipped().matches("GENH", {{"l", l}, {"r", r}}).size(), 1u) << l << "," << r;
}

TEST(Sweep, EvenLaddersUseOneOnEveryEdge) {
  for (int n = 6; n <= 60; n += 2) {
    if (n == 8 || n == 14) continue;
    Graph g = circular_ladder(n);
    Colouring c = instantiate(shipped().match("CL", {{"n", n}}), {{"n", n}});
    for (auto [u, v] : g.edges()) EXPECT_TRUE(c[u] == 1 || c[v] == 1) << n;
  }
}

TEST(Sweep, LevelEightOddRepair) {
  const auto* s = shipped().find("genh-l8-rodd");
  ASSERT_NE(s, nullptr);
  for (int r = 3; r <= 15; r += 2) EXPECT_TRUE(verify_case(shipped(), "GENH", {{"l", 8}, {"r", r}}).valid) << r;
}
