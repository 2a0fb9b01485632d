#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "streampart/types.hpp"

namespace streampart {

// Compressed adjacency (CSR) graph with full, symmetric adjacency lists.
// Used for generated instances and tests; partitioners consume GraphStream.
class Graph {
 public:
  Graph() = default;

  // Builds from an undirected edge list. Rejects self loops and duplicates.
  static Graph from_edges(NodeId n, std::span<const std::pair<NodeId, NodeId>> edges);
  static Graph from_edges(NodeId n,
                          std::span<const std::pair<NodeId, NodeId>> edges,
                          std::span<const EdgeWeight> edge_weights,
                          std::span<const NodeWeight> node_weights);

  [[nodiscard]] NodeId num_nodes() const { return node_weights_.size(); }
  [[nodiscard]] std::uint64_t num_edges() const { return adjacency_.size() / 2; }

  [[nodiscard]] std::span<const NodeId> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  [[nodiscard]] std::span<const EdgeWeight> edge_weights(NodeId v) const {
    return {edge_weights_.data() + offsets_[v], edge_weights_.data() + offsets_[v + 1]};
  }
  [[nodiscard]] NodeWeight node_weight(NodeId v) const { return node_weights_[v]; }
  [[nodiscard]] NodeWeight total_node_weight() const;

  [[nodiscard]] bool has_node_weights() const;
  [[nodiscard]] bool has_edge_weights() const;

 private:
  std::vector<std::uint64_t> offsets_{0};
  std::vector<NodeId> adjacency_;
  std::vector<EdgeWeight> edge_weights_;
  std::vector<NodeWeight> node_weights_;
};

// Serializes to METIS adjacency text (1-indexed). The fmt field is emitted
// only when weights differ from 1.
std::string to_metis(const Graph& graph);
void write_metis(const Graph& graph, const std::string& path);

namespace gen {

Graph grid2d(std::uint64_t rows, std::uint64_t cols);
Graph ring(std::uint64_t n);

// Random points in the unit square joined when closer than `radius`.
// Nodes are numbered cell by cell (row-major over a radius-sized grid), so
// the natural stream order is spatially local. radius <= 0 selects
// 0.55 * sqrt(ln n / n).
Graph random_geometric(std::uint64_t n, double radius, std::uint64_t seed);

double default_rgg_radius(std::uint64_t n);

}  // namespace gen

}  // namespace streampart
