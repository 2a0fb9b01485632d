#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "streampart/graph.hpp"
#include "streampart/types.hpp"

namespace streampart {

struct GraphHeader {
  NodeId n = 0;
  std::uint64_t m = 0;
  bool node_weights = false;
  bool edge_weights = false;
};

struct Neighbor {
  NodeId id;
  EdgeWeight weight;
};

struct NodeRecord {
  NodeId id = 0;
  NodeWeight weight = 1;
  std::vector<Neighbor> neighbors;
};

struct StreamOptions {
  // Drop self loops and repeated neighbors instead of failing. Edge-count
  // and symmetry checks are skipped since the header m no longer applies.
  bool sanitize = false;
};

namespace detail {
class LineSource;
}

// One-pass, vertex-centric reader for METIS adjacency text. Records arrive
// in ascending id order; ids are 0-based. Validation errors raise ParseError.
class GraphStream {
 public:
  static GraphStream open_file(const std::string& path, StreamOptions options = {});
  static GraphStream from_buffer(std::string text, StreamOptions options = {});
  static GraphStream from_graph(const Graph& graph);

  GraphStream(GraphStream&&) noexcept;
  GraphStream& operator=(GraphStream&&) noexcept;
  ~GraphStream();

  [[nodiscard]] const GraphHeader& header() const { return header_; }

  // Fills `record` with the next node; returns false once the range is
  // exhausted (and on every call after that).
  bool next(NodeRecord& record);
  std::optional<NodeRecord> next();

  // Fresh stream over the same source from the first node.
  [[nodiscard]] GraphStream reopen() const;

  // Splits the node range into `count` contiguous, near-equal shards, each
  // independently readable. Shards skip whole-graph checks (edge count,
  // symmetry) that need the complete record sequence.
  [[nodiscard]] std::vector<GraphStream> shards(std::size_t count) const;

  [[nodiscard]] NodeId first_node() const { return first_id_; }
  [[nodiscard]] NodeId end_node() const { return end_id_; }

  // c(V). Unweighted graphs answer n directly; weighted ones take one
  // extra pass over a reopened stream.
  [[nodiscard]] NodeWeight total_node_weight() const;

 private:
  struct Source;
  GraphStream(std::shared_ptr<const Source> source, StreamOptions options);

  void parse_header();
  void finish();
  [[noreturn]] void fail(const std::string& what) const;

  std::shared_ptr<const Source> source_;
  StreamOptions options_;
  std::unique_ptr<detail::LineSource> lines_;
  GraphHeader header_;
  std::uint64_t body_offset_ = 0;
  NodeId first_id_ = 0;
  NodeId end_id_ = 0;
  NodeId next_id_ = 0;
  bool whole_graph_ = true;
  bool done_ = false;

  std::uint64_t degree_sum_ = 0;
  std::uint64_t symmetry_checksum_ = 0;
  std::vector<std::pair<NodeId, std::size_t>> dup_scratch_;
};

}  // namespace streampart
