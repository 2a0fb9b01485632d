#include <limits>

#include "streampart/partitioner.hpp"

namespace streampart {

// Each pass is an ordinary one-pass partitioner over a_{l-d} blocks per
// subproblem. Blocks of depth d are numbered in mixed radix, so the pass
// needs no tree: block b at depth d covers final blocks
// [b * t_d + 1, (b + 1) * t_d] with t_d = k / (number of depth-d blocks).
PartitionResult multipass_reference(const GraphStream& stream, const HierarchySpec& spec, const RunConfig& config) {
  if (spec.levels.empty()) throw ConfigError("hierarchy must have at least one level");
  if (config.hybrid_h && *config.hybrid_h > spec.ell()) throw ConfigError("hybrid_h exceeds the number of layers");
  const GraphHeader header = stream.header();
  const std::uint64_t k = spec.k;
  const std::size_t ell = spec.ell();
  const std::size_t scored_passes = config.hybrid_h.value_or(ell);

  PartitionResult result;
  result.k = k;
  result.total_weight = stream.total_node_weight();
  result.lmax = compute_lmax(result.total_weight, k, config.eps);
  const double alpha = fennel_alpha(header.n, header.m, k);

  ScorerConfig hasher = config.scorer;
  hasher.algorithm = Algorithm::hashing;

  constexpr std::uint64_t kNotYet = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> previous(header.n, 0);  // depth-d block of every node
  std::vector<std::uint64_t> current(header.n, kNotYet);
  std::uint64_t parent_blocks = 1;
  std::size_t cells = 0;

  for (std::size_t pass = 0; pass < ell; ++pass) {
    const std::uint64_t fanout = spec.levels[ell - 1 - pass];
    const std::uint64_t blocks = parent_blocks * fanout;
    const std::uint64_t parent_span = k / parent_blocks;
    const std::uint64_t span = k / blocks;
    const NodeWeight capacity = static_cast<NodeWeight>(span) * result.lmax;
    const double pass_alpha = block_alpha(alpha, span);
    const bool scored = pass < scored_passes && config.scorer.algorithm != Algorithm::hashing;

    std::vector<NodeWeight> weights(blocks, 0);
    cells += blocks;
    std::fill(current.begin(), current.end(), kNotYet);
    std::vector<EdgeWeight> counts(fanout);
    std::vector<Candidate> candidates(fanout);

    GraphStream pass_stream = stream.reopen();
    NodeRecord record;
    while (pass_stream.next(record)) {
      const NodeId v = record.id;
      const std::uint64_t parent = previous[v];
      std::fill(counts.begin(), counts.end(), 0);
      if (scored) {
        for (const auto& nb : record.neighbors) {
          const std::uint64_t b = current[nb.id];
          if (b != kNotYet && b / fanout == parent) counts[b % fanout] += nb.weight;
        }
      }
      for (std::uint64_t j = 0; j < fanout; ++j) {
        const std::uint64_t b = parent * fanout + j;
        auto& c = candidates[j];
        c.key = static_cast<std::uint32_t>(b * span + 1);
        c.weight = weights[b];
        c.capacity = capacity;
        c.alpha = pass_alpha;
        c.neighbor_weight = static_cast<double>(counts[j]);
      }
      const SubproblemView view{candidates, record.weight};
      const auto key = hash_parent_key(static_cast<PeId>(parent * parent_span + 1),
                                       static_cast<PeId>((parent + 1) * parent_span));
      const auto sel = select_block(view, scored ? config.scorer : hasher, v, key);
      if (scored) {
        result.counters.score_evaluations += fanout;
      } else {
        ++result.counters.hash_evaluations;
      }
      result.counters.overflow_events += sel.overflow ? 1 : 0;
      result.counters.rehash_events += sel.rehashed ? 1 : 0;
      result.counters.edges_scanned += record.neighbors.size();
      if (pass + 1 == ell) ++result.counters.nodes_processed;

      const std::uint64_t chosen = parent * fanout + sel.index;
      weights[chosen] += record.weight;
      current[v] = chosen;
    }
    previous.swap(current);
    parent_blocks = blocks;
    if (pass + 1 == ell) {
      result.block_weights = std::move(weights);
    }
  }

  result.weight_cells = cells;
  result.assignment.resize(header.n);
  for (NodeId v = 0; v < header.n; ++v) result.assignment[v] = static_cast<PeId>(previous[v] + 1);
  return result;
}

}  // namespace streampart
