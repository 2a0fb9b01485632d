#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "streampart/scoring.hpp"

namespace streampart {
namespace {

Candidate make(std::uint32_t key, NodeWeight weight, NodeWeight capacity, double alpha, double neighbors) {
  return Candidate{key, weight, capacity, alpha, neighbors};
}

TEST(FennelScore, Examples) {
  std::vector<Candidate> c{make(1, 0, 10, 5.0, 3.0), make(2, 4, 10, 1.0, 0.0), make(3, 10, 10, 1.0, 9.0)};
  const SubproblemView view{c, 1};
  EXPECT_EQ(fennel_score(view, 0), 3.0);
  EXPECT_DOUBLE_EQ(fennel_score(view, 1), -3.0);
  EXPECT_EQ(fennel_score(view, 2), kFullBlock);
}

TEST(LdgScore, Examples) {
  std::vector<Candidate> c{make(1, 10, 20, 0, 3.0), make(2, 20, 20, 0, 5.0), make(3, 4, 20, 0, 0.0)};
  const SubproblemView view{c, 1};
  EXPECT_DOUBLE_EQ(ldg_score(view, 0), 1.5);
  EXPECT_EQ(ldg_score(view, 1), 0.0);
  EXPECT_EQ(ldg_score(view, 2), 0.0);
}

TEST(HashingAssign, DeterministicAndTrivial) {
  for (NodeId v = 0; v < 100; ++v) EXPECT_EQ(hashing_assign(v, 1, 9, 3), 0u);
  EXPECT_EQ(hashing_assign(42, 7, 1, 5), hashing_assign(42, 7, 1, 5));
}

TEST(HashingAssign, UniformWithinFourSigma) {
  // Binomial(1e5, 1/4): mean 25000, sd = sqrt(1e5 * 0.25 * 0.75) = 136.93.
  std::vector<int> freq(4, 0);
  for (NodeId v = 0; v < 100000; ++v) ++freq[hashing_assign(v, 4, 2024, hash_parent_key(1, 4))];
  for (int f : freq) EXPECT_NEAR(f, 25000, 547.7);
}

TEST(HashingAssign, ParentKeyDecorrelatesSiblings) {
  int same = 0;
  for (NodeId v = 0; v < 10000; ++v) {
    same += hashing_assign(v, 4, 1, hash_parent_key(1, 8)) == hashing_assign(v, 4, 1, hash_parent_key(9, 16));
  }
  EXPECT_NEAR(same, 2500, 200);
}

TEST(SelectBlock, ExamplesFennel) {
  ScorerConfig cfg;
  // Equal scores 2.0 with weights {5, 3}: alpha 0 keeps scores equal to the neighbor weight.
  std::vector<Candidate> tie{make(1, 5, 100, 0.0, 2.0), make(2, 3, 100, 0.0, 2.0)};
  EXPECT_EQ(select_block({tie, 1}, cfg).index, 1u);

  std::vector<Candidate> one_full{make(1, 10, 10, 0.1, 50.0), make(2, 0, 10, 0.1, 1.2)};
  EXPECT_EQ(select_block({one_full, 1}, cfg).index, 1u);

  std::vector<Candidate> all_full{make(1, 30, 30, 0.1, 1.0), make(2, 29, 29, 0.1, 1.0)};
  const auto sel = select_block({all_full, 1}, cfg);
  EXPECT_EQ(sel.index, 1u);
  EXPECT_TRUE(sel.overflow);

  EXPECT_THROW(select_block({std::span<const Candidate>{}, 1}, cfg), ConfigError);
}

TEST(SelectBlock, ZeroNeighborsPicksLowestKey) {
  for (auto algo : {Algorithm::fennel, Algorithm::ldg}) {
    ScorerConfig cfg{.algorithm = algo};
    std::vector<Candidate> c;
    for (std::uint32_t key : {7u, 3u, 5u, 9u}) c.push_back(make(key, 2, 10, 0.5, 0.0));
    EXPECT_EQ(c[select_block({c, 1}, cfg).index].key, 3u);
  }
}

TEST(SelectBlock, HashingProbesPastFullBlock) {
  ScorerConfig cfg{.algorithm = Algorithm::hashing, .seed = 3};
  std::vector<Candidate> c{make(1, 0, 5, 0, 0), make(2, 0, 5, 0, 0), make(3, 0, 5, 0, 0)};
  const NodeId v = 11;
  const std::size_t h = hashing_assign(v, 3, cfg.seed, 77);
  EXPECT_EQ(select_block({c, 1}, cfg, v, 77).index, h);
  c[h].weight = 5;
  const auto sel = select_block({c, 1}, cfg, v, 77);
  EXPECT_EQ(sel.index, (h + 1) % 3);
  EXPECT_TRUE(sel.rehashed);
}

TEST(SelectBlock, NeverPicksFullWhileSiblingOpen) {
  std::mt19937_64 rng(5);
  for (auto algo : {Algorithm::fennel, Algorithm::ldg, Algorithm::hashing}) {
    ScorerConfig cfg{.algorithm = algo, .seed = 1};
    for (int trial = 0; trial < 2000; ++trial) {
      std::vector<Candidate> c;
      const std::size_t s = 2 + rng() % 6;
      bool any_open = false;
      for (std::size_t j = 0; j < s; ++j) {
        const NodeWeight cap = 1 + static_cast<NodeWeight>(rng() % 8);
        const NodeWeight w = static_cast<NodeWeight>(rng() % (cap + 1));
        c.push_back(make(static_cast<std::uint32_t>(j + 1), w, cap, 0.3, static_cast<double>(rng() % 5)));
        any_open |= w + 1 <= cap;
      }
      const auto sel = select_block({c, 1}, cfg, trial, 0);
      if (any_open) {
        EXPECT_TRUE(c[sel.index].accepts(1));
        EXPECT_FALSE(sel.overflow);
      } else {
        EXPECT_TRUE(sel.overflow);
      }
    }
  }
}

// Permuting the candidate list must not change which block wins.
TEST(SelectBlock, OrderIndependent) {
  std::mt19937_64 rng(99);
  for (auto algo : {Algorithm::fennel, Algorithm::ldg}) {
    ScorerConfig cfg{.algorithm = algo};
    for (int trial = 0; trial < 2000; ++trial) {
      std::vector<Candidate> c;
      const std::size_t s = 2 + rng() % 6;
      for (std::size_t j = 0; j < s; ++j) {
        // Small integer ranges force plenty of exact ties.
        c.push_back(make(static_cast<std::uint32_t>(j + 1), static_cast<NodeWeight>(rng() % 3), 4, 0.0,
                         static_cast<double>(rng() % 2)));
      }
      const auto winner = c[select_block({c, 1}, cfg).index].key;
      std::shuffle(c.begin(), c.end(), rng);
      EXPECT_EQ(c[select_block({c, 1}, cfg).index].key, winner);
    }
  }
}

TEST(FennelScore, MonotoneInWeightAndNeighbors) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> alpha(0.01, 3.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double a = alpha(rng);
    const auto w = static_cast<NodeWeight>(rng() % 1000);
    const auto nb = static_cast<double>(rng() % 50);
    std::vector<Candidate> c{make(1, w, 5000, a, nb), make(2, w + 1, 5000, a, nb), make(3, w, 5000, a, nb + 1)};
    const SubproblemView view{c, 1};
    EXPECT_GT(fennel_score(view, 0), fennel_score(view, 1));
    EXPECT_LT(fennel_score(view, 0), fennel_score(view, 2));
  }
}

TEST(Algorithm, ParseRoundTrip) {
  for (auto a : {Algorithm::fennel, Algorithm::ldg, Algorithm::hashing}) EXPECT_EQ(parse_algorithm(to_string(a)), a);
  EXPECT_THROW(parse_algorithm("metis"), ConfigError);
}

}  // namespace
}  // namespace streampart
