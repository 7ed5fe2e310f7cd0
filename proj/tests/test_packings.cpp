#include <gtest/gtest.h>

#include <numeric>

#include "corpus.hpp"
#include "packcol/packings.hpp"
#include "packcol/solver.hpp"

using namespace packcol;
using namespace packcol::testing;

namespace {

bool witness_ok(const Graph& g, const PackingResult& r, int i) {
  auto dm = all_pairs_distances(g);
  if (static_cast<int>(r.witness.size()) != r.size) return false;
  for (std::size_t a = 0; a < r.witness.size(); ++a)
    for (std::size_t b = a + 1; b < r.witness.size(); ++b)
      if (dm(r.witness[a], r.witness[b]) <= i) return false;
  return true;
}

}  // namespace

TEST(MaxPacking, LadderSeven) {
  Graph g = circular_ladder(7);
  for (auto [i, want] : {std::pair{1, 6}, {2, 3}, {3, 2}}) {
    auto r = max_i_packing(g, i);
    EXPECT_EQ(r.size, want) << i;
    EXPECT_TRUE(r.proven);
    EXPECT_TRUE(witness_ok(g, r, i));
  }
}

TEST(MaxPacking, LadderFourteenAndCycle) {
  EXPECT_EQ(max_i_packing(circular_ladder(14), 5).size, 2);
  EXPECT_EQ(max_i_packing(cycle(6), 1).size, 3);
  EXPECT_THROW(max_i_packing(cycle(6), 0), GraphError);
}

TEST(MaxPacking, MatchesNaiveEnumerator) {
  for (const auto& [name, g] : small_corpus())
    for (int i = 1; i <= 3; ++i) {
      auto r = max_i_packing(g, i);
      EXPECT_EQ(r.size, naive_max_packing(g, i)) << name << " i=" << i;
      EXPECT_TRUE(witness_ok(g, r, i)) << name;
    }
}

TEST(MaxPacking, BudgetExhaustionIsFlagged) {
  Graph g = random_graph(60, 0.15, 7);
  auto r = max_i_packing(g, 1, Budget::nodes(3));
  EXPECT_FALSE(r.proven);
  EXPECT_TRUE(witness_ok(g, r, 1));
  EXPECT_GT(r.size, 0);
}

TEST(RhoTable, ValuesForLadders) {
  EXPECT_EQ(rho_table(circular_ladder(3), 4).rho, (std::vector<int>{2, 1, 1, 1}));
  EXPECT_EQ(rho_table(circular_ladder(4), 3).rho, (std::vector<int>{4, 2, 1}));
  EXPECT_EQ(rho_table(circular_ladder(5), 3).rho, (std::vector<int>{4, 2, 1}));
  EXPECT_EQ(rho_table(circular_ladder(7), 4).rho, (std::vector<int>{6, 3, 2, 1}));
  EXPECT_EQ(rho_table(circular_ladder(8), 5).rho, (std::vector<int>{8, 4, 2, 2, 1}));
  EXPECT_EQ(rho_table(circular_ladder(9), 5).rho, (std::vector<int>{8, 4, 2, 2, 1}));
  auto t = rho_table(circular_ladder(14), 5);
  EXPECT_EQ(t.rho, (std::vector<int>{14, 6, 4, 3, 2}));
  EXPECT_TRUE(t.proven);
  EXPECT_EQ(t.witnesses.size(), 5u);
  EXPECT_EQ(t.graph, "CL n=14");
}

TEST(RhoTable, MonotoneAndOneBeyondDiameter) {
  for (const auto& [name, g] : small_corpus()) {
    auto t = rho_table(g, 6);
    for (int i = 1; i < 6; ++i) EXPECT_GE(t.rho[i - 1], t.rho[i]) << name;
    int d = diameter(g);
    if (d == kInfinity) continue;
    for (int i = std::max(1, d); i <= 6; ++i) EXPECT_EQ(t.rho[i - 1], 1) << name << " i=" << i;
  }
}

TEST(Prop1, Examples) {
  EXPECT_EQ(prop1_lower_bound(circular_ladder(5)).k, 6);
  EXPECT_EQ(prop1_lower_bound(path(2)).k, 2);
  EXPECT_EQ(prop1_lower_bound(circular_ladder(3)).k, 5);
  EXPECT_EQ(prop1_lower_bound(path(1)).k, 1);
  EXPECT_THROW(prop1_lower_bound(disjoint_union(path(1), path(1))), GraphError);
}

TEST(Prop1, BoundsSolverValues) {
  for (const auto& [name, g] : small_corpus()) {
    if (!is_connected(g)) continue;
    auto p1 = prop1_lower_bound(g);
    auto chi = chi_rho(g);
    ASSERT_EQ(chi.status, Status::kSat) << name;
    EXPECT_LE(p1.k, chi.value) << name;
    auto t = rho_table(g, chi.value);
    EXPECT_GE(std::accumulate(t.rho.begin(), t.rho.end(), 0), g.order()) << name;
  }
}
