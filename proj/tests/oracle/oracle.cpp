#include "oracle.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "streampart/graph_stream.hpp"

namespace streampart::oracle {

namespace {

struct Search {
  const TinyInstance& inst;
  Objective objective;
  std::uint64_t budget;
  std::uint64_t visited = 0;
  NodeWeight lmax = 0;
  std::vector<PeId> label;
  std::vector<NodeWeight> load;
  double best = std::numeric_limits<double>::infinity();

  double edge_cost(PeId a, PeId b) const {
    if (a == b) return 0.0;
    if (objective == Objective::cut) return 1.0;
    return pe_distance(*inst.spec, *inst.dist, a, b);
  }

  void recurse(NodeId v, double cost) {
    if (++visited > budget) throw BudgetExceeded("brute force budget exceeded");
    if (cost >= best) return;
    const Graph& g = inst.graph;
    if (v == g.num_nodes()) {
      best = cost;
      return;
    }
    const PeId first = 1;
    const PeId last = v == 0 ? 1 : static_cast<PeId>(inst.k);
    for (PeId pe = first; pe <= last; ++pe) {
      if (load[pe - 1] + g.node_weight(v) > lmax) continue;
      double added = 0.0;
      const auto adj = g.neighbors(v);
      const auto wts = g.edge_weights(v);
      for (std::size_t i = 0; i < adj.size(); ++i) {
        if (adj[i] < v) added += static_cast<double>(wts[i]) * edge_cost(pe, label[adj[i]]);
      }
      label[v] = pe;
      load[pe - 1] += g.node_weight(v);
      recurse(v + 1, cost + added);
      load[pe - 1] -= g.node_weight(v);
    }
  }
};

}  // namespace

double brute_force_best(const TinyInstance& instance, Objective objective, std::uint64_t budget) {
  if (instance.graph.num_nodes() > 12 || instance.k > 4) {
    throw BudgetExceeded("brute force is limited to n <= 12 and k <= 4");
  }
  if (objective == Objective::mapping_cost && (!instance.spec || !instance.dist)) {
    throw ConfigError("mapping cost objective needs a hierarchy and distances");
  }
  if (instance.spec && instance.spec->k != instance.k) throw ConfigError("hierarchy k mismatch");
  Search s{instance, objective, budget};
  s.lmax = compute_lmax(instance.graph.total_node_weight(), instance.k, instance.eps);
  s.label.assign(instance.graph.num_nodes(), kUnassigned);
  s.load.assign(instance.k, 0);
  s.recurse(0, 0.0);
  return s.best;
}

EquivalenceResult check_equivalence(const Graph& graph, const HierarchySpec& spec, const RunConfig& config) {
  return check_equivalence(graph, spec, config, config);
}

EquivalenceResult check_equivalence(const Graph& graph, const HierarchySpec& spec, const RunConfig& oms_config,
                                    const RunConfig& reference_config) {
  const auto text = to_metis(graph);
  auto stream = GraphStream::from_buffer(text);
  const auto tree = make_tree(stream, spec, oms_config.eps);
  const auto online = partition_oms(stream, tree, oms_config);

  const auto reference = multipass_reference(GraphStream::from_buffer(text), spec, reference_config);

  EquivalenceResult result;
  for (NodeId v = 0; v < graph.num_nodes(); ++v) {
    if (online.assignment[v] != reference.assignment[v]) {
      result.pass = false;
      result.first_divergence = v;
      result.detail = "node " + std::to_string(v) + ": oms=" + std::to_string(online.assignment[v]) +
                      " reference=" + std::to_string(reference.assignment[v]);
      break;
    }
  }
  return result;
}

}  // namespace streampart::oracle
