#include "streampart/graph.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace streampart {

Graph Graph::from_edges(NodeId n, std::span<const std::pair<NodeId, NodeId>> edges) {
  const std::vector<EdgeWeight> ew(edges.size(), 1);
  const std::vector<NodeWeight> nw(n, 1);
  return from_edges(n, edges, ew, nw);
}

Graph Graph::from_edges(NodeId n,
                        std::span<const std::pair<NodeId, NodeId>> edges,
                        std::span<const EdgeWeight> edge_weights,
                        std::span<const NodeWeight> node_weights) {
  if (n == 0) throw ConfigError("graph must have at least one node");
  if (edge_weights.size() != edges.size()) throw ConfigError("edge weight count mismatch");
  if (node_weights.size() != n) throw ConfigError("node weight count mismatch");

  Graph g;
  g.node_weights_.assign(node_weights.begin(), node_weights.end());
  for (NodeWeight w : g.node_weights_) {
    if (w <= 0) throw ConfigError("node weights must be positive");
  }

  std::vector<std::uint64_t> degree(n, 0);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) throw ConfigError("edge endpoint out of range");
    if (u == v) throw ConfigError("self loop");
    ++degree[u];
    ++degree[v];
  }
  g.offsets_.assign(n + 1, 0);
  for (NodeId v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];
  g.adjacency_.resize(g.offsets_[n]);
  g.edge_weights_.resize(g.offsets_[n]);

  std::vector<std::uint64_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [u, v] = edges[e];
    const EdgeWeight w = edge_weights[e];
    if (w <= 0) throw ConfigError("edge weights must be positive");
    g.adjacency_[fill[u]] = v;
    g.edge_weights_[fill[u]++] = w;
    g.adjacency_[fill[v]] = u;
    g.edge_weights_[fill[v]++] = w;
  }

  // Sort each adjacency list and reject parallel edges.
  std::vector<std::size_t> order;
  std::vector<NodeId> adj;
  std::vector<EdgeWeight> wts;
  for (NodeId v = 0; v < n; ++v) {
    const auto begin = g.offsets_[v];
    const auto end = g.offsets_[v + 1];
    order.resize(end - begin);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return g.adjacency_[begin + a] < g.adjacency_[begin + b];
    });
    adj.clear();
    wts.clear();
    for (std::size_t i : order) {
      adj.push_back(g.adjacency_[begin + i]);
      wts.push_back(g.edge_weights_[begin + i]);
    }
    for (std::size_t i = 1; i < adj.size(); ++i) {
      if (adj[i] == adj[i - 1]) throw ConfigError("parallel edge");
    }
    std::copy(adj.begin(), adj.end(), g.adjacency_.begin() + static_cast<std::ptrdiff_t>(begin));
    std::copy(wts.begin(), wts.end(), g.edge_weights_.begin() + static_cast<std::ptrdiff_t>(begin));
  }
  return g;
}

NodeWeight Graph::total_node_weight() const {
  return std::accumulate(node_weights_.begin(), node_weights_.end(), NodeWeight{0});
}

bool Graph::has_node_weights() const {
  return std::any_of(node_weights_.begin(), node_weights_.end(), [](NodeWeight w) { return w != 1; });
}

bool Graph::has_edge_weights() const {
  return std::any_of(edge_weights_.begin(), edge_weights_.end(), [](EdgeWeight w) { return w != 1; });
}

std::string to_metis(const Graph& graph) {
  const bool nw = graph.has_node_weights();
  const bool ew = graph.has_edge_weights();
  std::ostringstream out;
  out << graph.num_nodes() << ' ' << graph.num_edges();
  if (nw || ew) out << ' ' << (nw ? '1' : '0') << (ew ? '1' : '0');
  out << '\n';
  for (NodeId v = 0; v < graph.num_nodes(); ++v) {
    bool first = true;
    auto sep = [&] {
      if (!first) out << ' ';
      first = false;
    };
    if (nw) {
      sep();
      out << graph.node_weight(v);
    }
    const auto adj = graph.neighbors(v);
    const auto wts = graph.edge_weights(v);
    for (std::size_t i = 0; i < adj.size(); ++i) {
      sep();
      out << adj[i] + 1;
      if (ew) out << ' ' << wts[i];
    }
    out << '\n';
  }
  return out.str();
}

void write_metis(const Graph& graph, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << to_metis(graph);
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace streampart
