#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "streampart/graph_stream.hpp"
#include "streampart/hierarchy.hpp"
#include "streampart/scoring.hpp"

namespace streampart {

enum class Mode { flat, oms, nh_oms };

std::string_view to_string(Mode mode);

struct RunConfig {
  Mode mode = Mode::oms;
  ScorerConfig scorer;
  double eps = 0.03;
  // Number of top tree layers decided by `scorer`; deeper layers are hashed.
  // Unset means every layer uses the scorer.
  std::optional<std::size_t> hybrid_h;
  unsigned threads = 1;
};

struct RunCounters {
  std::uint64_t score_evaluations = 0;
  std::uint64_t hash_evaluations = 0;
  std::uint64_t nodes_processed = 0;
  std::uint64_t edges_scanned = 0;
  std::uint64_t overflow_events = 0;
  std::uint64_t rehash_events = 0;  // hashed block was full; next open sibling taken

  RunCounters& operator+=(const RunCounters& other);
};

// One slot per node holding its final PE (1-based). Slots are written once,
// by one worker, and may be read concurrently by others.
class AssignmentStore {
 public:
  explicit AssignmentStore(std::size_t n);

  [[nodiscard]] std::size_t size() const { return size_; }
  [[nodiscard]] PeId get(NodeId v) const { return slots_[v].load(std::memory_order_relaxed); }
  // Throws std::logic_error if the slot was already written.
  void set(NodeId v, PeId pe);
  [[nodiscard]] bool complete() const;
  [[nodiscard]] std::vector<PeId> to_vector() const;

 private:
  std::size_t size_;
  std::unique_ptr<std::atomic<PeId>[]> slots_;
};

// Block-weight cells shared by all workers. Increments are atomic RMW so no
// update is lost; reads may be stale.
class BlockWeights {
 public:
  explicit BlockWeights(std::size_t cells);

  [[nodiscard]] std::size_t size() const { return size_; }
  [[nodiscard]] NodeWeight load(std::size_t cell) const { return cells_[cell].load(std::memory_order_relaxed); }
  void add(std::size_t cell, NodeWeight w) { cells_[cell].fetch_add(w, std::memory_order_relaxed); }

 private:
  std::size_t size_;
  std::unique_ptr<std::atomic<NodeWeight>[]> cells_;
};

struct PartitionResult {
  std::vector<PeId> assignment;           // node order, values in [1, k]
  std::vector<NodeWeight> block_weights;  // final block loads, index pe - 1
  std::uint64_t k = 0;
  NodeWeight lmax = 0;
  NodeWeight total_weight = 0;
  std::size_t weight_cells = 0;  // block-weight cells allocated for the run
  RunCounters counters;
  double parse_ms = 0.0;
  double assign_ms = 0.0;

  [[nodiscard]] NodeWeight max_block_weight() const;
};

// Per-child omega-weighted count of `node`'s already-assigned neighbors,
// found by locating each neighbor's leaf among parent's children. Neighbors
// outside parent's subtree or not yet assigned contribute nothing.
std::vector<EdgeWeight> neighbor_counts_for_children(const NodeRecord& node, const Block& parent,
                                                     const AssignmentStore& store, const MultiSectionTree& tree);

// Flat one-pass k-way baseline: Fennel/LDG score all k blocks, Hashing hashes.
PartitionResult partition_flat(GraphStream& stream, std::uint64_t k, const RunConfig& config);

// Online recursive multi-section: each node descends from the root choosing
// one child per layer. L_max and alpha come from the tree.
PartitionResult partition_oms(GraphStream& stream, const MultiSectionTree& tree, const RunConfig& config);

// Shared-memory variants over config.threads contiguous shards of `stream`.
// One thread reproduces the sequential result exactly.
PartitionResult partition_parallel(const GraphStream& stream, const MultiSectionTree& tree, const RunConfig& config);
PartitionResult partition_parallel(const GraphStream& stream, std::uint64_t k, const RunConfig& config);

// l successive one-pass passes over a re-opened stream: pass 1 splits all
// nodes into a_l blocks, pass i restricts every node to the sub-blocks of its
// pass-(i-1) block. Sequential only; test oracle for partition_oms.
PartitionResult multipass_reference(const GraphStream& stream, const HierarchySpec& spec, const RunConfig& config);

// Trees sized for a stream: L_max from c(V), k and eps; alpha from n, m, k.
MultiSectionTree make_tree(const GraphStream& stream, const HierarchySpec& spec, double eps);
MultiSectionTree make_synth_tree(const GraphStream& stream, std::uint64_t k, std::uint32_t base, double eps);

}  // namespace streampart
