#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "streampart/types.hpp"

namespace streampart {

// S = a_1:...:a_l. a_1 is the innermost level (cores per processor), a_l the
// outermost; k = prod(a_i).
struct HierarchySpec {
  std::vector<std::uint32_t> levels;
  std::uint64_t k = 1;

  [[nodiscard]] std::size_t ell() const { return levels.size(); }
  // prod_{r=1}^{j} a_r, i.e. the number of PEs inside one level-j module.
  [[nodiscard]] std::uint64_t module_size(std::size_t j) const;
};

// D = d_1:...:d_l, d_j being the cost between PEs whose lowest shared module
// is at level j.
struct DistanceSpec {
  std::vector<double> distances;

  [[nodiscard]] bool monotone() const;
};

HierarchySpec parse_hierarchy(std::string_view text);
DistanceSpec parse_distances(std::string_view text, const HierarchySpec& spec);
// 1:10:100:... with one entry per hierarchy level.
DistanceSpec default_distances(const HierarchySpec& spec);
std::string to_string(const HierarchySpec& spec);

// L_max = ceil((1 + eps) * c(V) / k).
NodeWeight compute_lmax(NodeWeight total_node_weight, std::uint64_t k, double eps);

// Fennel alpha = sqrt(k) * m / n^{3/2} (gamma = 3/2).
double fennel_alpha(std::uint64_t n, std::uint64_t m, std::uint64_t k);
// Alpha of a block covering t final blocks: alpha / sqrt(t). Coincides with
// alpha_i = alpha / sqrt(prod_{r<i} a_r) on explicit hierarchies.
double block_alpha(double global_alpha, std::uint64_t covered);
// alpha_i for subproblems at layer i (1 = leaves' subproblem, l = topmost).
double layer_alpha(double global_alpha, const HierarchySpec& spec, std::size_t layer);

// Level (1..l) at which PEs x and y (1-based) first share a module; 0 if x == y.
std::size_t divergence_level(const HierarchySpec& spec, PeId x, PeId y);
double pe_distance(const HierarchySpec& spec, const DistanceSpec& dist, PeId x, PeId y);

struct Block {
  BlockId id = 0;
  BlockId parent = kNoBlock;
  BlockId first_child = kNoBlock;
  std::uint32_t child_count = 0;
  std::uint32_t depth = 0;  // root = 0
  PeId first_pe = 1;        // covered range [first_pe, last_pe], 1-based
  PeId last_pe = 1;
  NodeWeight capacity = 0;
  double alpha = 0.0;

  [[nodiscard]] bool is_leaf() const { return child_count == 0; }
  [[nodiscard]] std::uint64_t covered() const { return std::uint64_t{last_pe} - first_pe + 1; }
  [[nodiscard]] bool contains(PeId pe) const { return pe >= first_pe && pe <= last_pe; }
};

// Rooted tree of blocks. The root is virtual (covers [1,k], holds no weight
// cell); blocks are laid out breadth-first so siblings are contiguous.
// Topology, capacities and alphas are immutable after construction.
class MultiSectionTree {
 public:
  [[nodiscard]] const Block& root() const { return blocks_.front(); }
  [[nodiscard]] const Block& block(BlockId id) const { return blocks_[id]; }
  [[nodiscard]] std::span<const Block> blocks() const { return blocks_; }
  [[nodiscard]] std::span<const Block> children(const Block& parent) const;

  // Index (within parent's children) of the child covering `pe`, which must
  // lie in parent's range. O(1) from the near-equal split arithmetic.
  [[nodiscard]] std::uint32_t child_index_of(const Block& parent, PeId pe) const;

  [[nodiscard]] std::uint64_t k() const { return k_; }
  [[nodiscard]] std::uint32_t base() const { return base_; }  // 0 for explicit trees
  [[nodiscard]] std::size_t layers() const { return layers_; }
  [[nodiscard]] NodeWeight lmax() const { return lmax_; }
  [[nodiscard]] double global_alpha() const { return global_alpha_; }
  [[nodiscard]] std::size_t block_count() const { return blocks_.size(); }
  // Blocks that carry a weight during partitioning (everything but the root).
  [[nodiscard]] std::size_t weight_cell_count() const { return blocks_.size() - 1; }
  [[nodiscard]] BlockId leaf_of(PeId pe) const { return leaf_ids_[pe - 1]; }

  friend MultiSectionTree build_tree_explicit(const HierarchySpec&, NodeWeight, double);
  friend MultiSectionTree build_tree_synth(std::uint64_t, std::uint32_t, NodeWeight, double);

 private:
  template <typename Fanout>
  static MultiSectionTree build(std::uint64_t k, NodeWeight lmax, double alpha, Fanout fanout);

  std::vector<Block> blocks_;
  std::vector<BlockId> leaf_ids_;
  std::uint64_t k_ = 0;
  std::uint32_t base_ = 0;
  std::size_t layers_ = 0;
  NodeWeight lmax_ = 0;
  double global_alpha_ = 0.0;
};

// Every block at depth d (root = 0) gets a_{l-d} children.
MultiSectionTree build_tree_explicit(const HierarchySpec& spec, NodeWeight lmax, double global_alpha = 0.0);
// Recursive b-section of [1,k]: a block covering t > 1 final blocks gets
// min(b, t) children with near-equal contiguous ranges, larger parts first.
MultiSectionTree build_tree_synth(std::uint64_t k, std::uint32_t base, NodeWeight lmax, double global_alpha = 0.0);

}  // namespace streampart
