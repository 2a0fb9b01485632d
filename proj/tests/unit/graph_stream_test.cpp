#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "streampart/graph_stream.hpp"

namespace streampart {
namespace {

std::vector<NodeRecord> drain(GraphStream& s) {
  std::vector<NodeRecord> out;
  while (auto r = s.next()) out.push_back(std::move(*r));
  return out;
}

std::vector<NodeId> ids_of(const NodeRecord& r) {
  std::vector<NodeId> ids;
  for (const auto& nb : r.neighbors) ids.push_back(nb.id);
  return ids;
}

TEST(GraphStream, ParsesOneIndexedMetisBody) {
  auto s = GraphStream::from_buffer("3 2\n2 3\n1\n1\n");
  EXPECT_EQ(s.header().n, 3u);
  EXPECT_EQ(s.header().m, 2u);
  const auto records = drain(s);
  ASSERT_EQ(records.size(), 3u);
  EXPECT_EQ(ids_of(records[0]), (std::vector<NodeId>{1, 2}));
  EXPECT_EQ(ids_of(records[1]), (std::vector<NodeId>{0}));
  EXPECT_EQ(ids_of(records[2]), (std::vector<NodeId>{0}));
  for (NodeId i = 0; i < 3; ++i) EXPECT_EQ(records[i].id, i);
}

TEST(GraphStream, SingleIsolatedNode) {
  auto s = GraphStream::from_buffer("1 0\n\n");
  const auto records = drain(s);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_TRUE(records[0].neighbors.empty());
  EXPECT_EQ(records[0].weight, 1);
}

TEST(GraphStream, EndOfStreamIsIdempotent) {
  auto s = GraphStream::from_buffer("3 2\n2 3\n1\n1\n");
  drain(s);
  EXPECT_FALSE(s.next().has_value());
  EXPECT_FALSE(s.next().has_value());
}

TEST(GraphStream, SkipsCommentsAndReadsWeights) {
  auto s = GraphStream::from_buffer("% comment\n2 1 11\n% mid\n5 2 7\n3 1 7\n");
  EXPECT_TRUE(s.header().node_weights);
  EXPECT_TRUE(s.header().edge_weights);
  const auto records = drain(s);
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].weight, 5);
  EXPECT_EQ(records[0].neighbors.at(0).weight, 7);
  EXPECT_EQ(records[1].weight, 3);
  EXPECT_EQ(s.total_node_weight(), 8);
}

TEST(GraphStream, ErrorCases) {
  auto expect_error = [](const std::string& text, const std::string& needle) {
    try {
      auto s = GraphStream::from_buffer(text);
      drain(s);
      ADD_FAILURE() << "no error for: " << text;
    } catch (const ParseError& e) {
      EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
    }
  };
  expect_error("2 1\n0\n1\n", "neighbor index out of range");
  expect_error("2 1\n3\n1\n", "neighbor index out of range");
  expect_error("3 2\n2 2\n1\n\n", "duplicate neighbor");
  expect_error("2 1\n2 x\n1\n", "non-numeric token");
  expect_error("3 2\n2 3\n1\n", "fewer node records");
  expect_error("2 1\n2\n1\n1\n", "more node records");
  expect_error("2 1\n1\n\n", "self loop");
  expect_error("2 1\n2\n\n", "edge count");
  expect_error("3 1\n2\n\n2\n", "not symmetric");
  expect_error("", "missing header");
  expect_error("x 1\n", "malformed header");
  expect_error("0 0\n", "malformed header");
  expect_error("2 1 7\n2\n1\n", "unsupported fmt");
}

TEST(GraphStream, SanitizeDropsSelfLoopsAndDuplicates) {
  auto s = GraphStream::from_buffer("2 1\n1 2 2\n1\n", StreamOptions{.sanitize = true});
  const auto records = drain(s);
  EXPECT_EQ(ids_of(records[0]), (std::vector<NodeId>{1}));
}

TEST(GraphStream, ReopenYieldsIdenticalSequence) {
  const auto g = gen::random_geometric(300, 0.0, 5);
  auto a = GraphStream::from_graph(g);
  auto b = a.reopen();
  const auto ra = drain(a);
  const auto rb = drain(b);
  ASSERT_EQ(ra.size(), rb.size());
  std::uint64_t degree_sum = 0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    EXPECT_EQ(ra[i].id, rb[i].id);
    EXPECT_EQ(ids_of(ra[i]), ids_of(rb[i]));
    degree_sum += ra[i].neighbors.size();
    for (const auto& nb : ra[i].neighbors) EXPECT_GT(nb.weight, 0);
    EXPECT_GT(ra[i].weight, 0);
  }
  EXPECT_EQ(degree_sum, 2 * a.header().m);
}

TEST(GraphStream, ShardsCoverTheRangeInOrder) {
  const auto g = gen::grid2d(7, 9);
  const auto whole = GraphStream::from_graph(g);
  for (std::size_t p : {1u, 2u, 3u, 8u, 100u}) {
    auto shards = whole.shards(p);
    ASSERT_EQ(shards.size(), p);
    NodeId expected = 0;
    for (auto& shard : shards) {
      EXPECT_EQ(shard.first_node(), expected);
      while (auto r = shard.next()) {
        EXPECT_EQ(r->id, expected);
        EXPECT_EQ(r->neighbors.size(), g.neighbors(expected).size());
        ++expected;
      }
      EXPECT_EQ(expected, shard.end_node());
    }
    EXPECT_EQ(expected, g.num_nodes());
  }
}

TEST(GraphStream, ReadsFromDiskWithTheSameParser) {
  const auto g = gen::grid2d(5, 4);
  const std::string path = ::testing::TempDir() + "stream_test.graph";
  write_metis(g, path);
  auto disk = GraphStream::open_file(path);
  auto mem = GraphStream::from_graph(g);
  const auto rd = drain(disk);
  const auto rm = drain(mem);
  ASSERT_EQ(rd.size(), rm.size());
  for (std::size_t i = 0; i < rd.size(); ++i) EXPECT_EQ(ids_of(rd[i]), ids_of(rm[i]));

  auto shards = GraphStream::open_file(path).shards(3);
  NodeId count = 0;
  for (auto& s : shards) count += drain(s).size();
  EXPECT_EQ(count, 20u);
  std::remove(path.c_str());
}

TEST(GraphStream, MissingFileIsAnIoError) {
  EXPECT_THROW(GraphStream::open_file("/nonexistent/x.graph"), std::runtime_error);
}

}  // namespace
}  // namespace streampart
