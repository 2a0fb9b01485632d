#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "streampart/metrics.hpp"

namespace streampart {
namespace {

using oracle::Objective;
using oracle::TinyInstance;

Graph cycle4() { return gen::ring(4); }

Graph k4() {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId u = 0; u < 4; ++u)
    for (NodeId v = u + 1; v < 4; ++v) edges.emplace_back(u, v);
  return Graph::from_edges(4, edges);
}

TEST(BruteForce, Examples) {
  EXPECT_DOUBLE_EQ(oracle::brute_force_best({cycle4(), 2, 0.0, {}, {}}, Objective::cut), 2.0);
  EXPECT_DOUBLE_EQ(oracle::brute_force_best({gen::grid2d(3, 3), 1, 0.0, {}, {}}, Objective::cut), 0.0);
  EXPECT_DOUBLE_EQ(oracle::brute_force_best({k4(), 2, 0.0, {}, {}}, Objective::cut), 4.0);
}

TEST(BruteForce, MappingObjective) {
  // One node per PE. The path has to cross between processors once (10) and
  // its other two edges cost at least 1 each.
  TinyInstance inst{gen::grid2d(1, 4), 4, 0.0, parse_hierarchy("2:2"), std::nullopt};
  inst.dist = parse_distances("1:10", *inst.spec);
  EXPECT_DOUBLE_EQ(oracle::brute_force_best(inst, Objective::mapping_cost), 12.0);
}

TEST(BruteForce, BudgetIsEnforced) {
  EXPECT_THROW(oracle::brute_force_best({gen::grid2d(3, 4), 4, 0.5, {}, {}}, Objective::cut, 10),
               oracle::BudgetExceeded);
}

TEST(Equivalence, RandomCorpusPasses) {
  std::mt19937_64 rng(2024);
  const std::vector<std::string> hierarchies{"2", "3:2", "2:2:2", "4:3", "2:5:2"};
  for (int trial = 0; trial < 15; ++trial) {
    const auto g = gen::random_geometric(100 + rng() % 900, 0.0, rng());
    const auto spec = parse_hierarchy(hierarchies[trial % hierarchies.size()]);
    RunConfig cfg;
    cfg.scorer.algorithm = static_cast<Algorithm>(trial % 3);
    cfg.scorer.seed = rng();
    const auto r = oracle::check_equivalence(g, spec, cfg);
    EXPECT_TRUE(r.pass) << r.detail;
    EXPECT_FALSE(r.first_divergence.has_value());
  }
}

TEST(Equivalence, PerturbedTieBreakFailsAtFirstTie) {
  // Node 0 sees all-zero scores: the two rules pick different children.
  const auto g = gen::grid2d(6, 6);
  const auto spec = parse_hierarchy("2:2");
  RunConfig a;
  a.scorer.algorithm = Algorithm::fennel;
  RunConfig b = a;
  b.scorer.tie_break = TieBreak::heavier_then_higher_key;
  const auto r = oracle::check_equivalence(g, spec, a, b);
  EXPECT_FALSE(r.pass);
  ASSERT_TRUE(r.first_divergence.has_value());
  EXPECT_EQ(*r.first_divergence, 0u);
}

TEST(Equivalence, SingleLevelPasses) {
  RunConfig cfg;
  cfg.scorer.algorithm = Algorithm::ldg;
  EXPECT_TRUE(oracle::check_equivalence(gen::ring(50), parse_hierarchy("7"), cfg).pass);
}

TEST(LowerBound, StreamingNeverBeatsOptimum) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = gen::random_geometric(10, 0.5, rng());
    const std::uint64_t k = 2 + trial % 2;
    const double best = oracle::brute_force_best({g, k, 0.1, {}, {}}, Objective::cut);
    for (auto algo : {Algorithm::fennel, Algorithm::ldg, Algorithm::hashing}) {
      RunConfig cfg;
      cfg.scorer.algorithm = algo;
      cfg.eps = 0.1;
      auto s = GraphStream::from_graph(g);
      const auto r = partition_flat(s, k, cfg);
      auto s2 = GraphStream::from_graph(g);
      EXPECT_GE(static_cast<double>(evaluate(s2, r.assignment, k).edge_cut), best);
    }
  }
}

}  // namespace
}  // namespace streampart
