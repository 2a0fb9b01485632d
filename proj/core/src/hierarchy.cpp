#include "streampart/hierarchy.hpp"

#include <charconv>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

namespace streampart {

namespace {

template <typename T>
std::vector<T> split_colon(std::string_view text, const char* what) {
  if (text.empty()) throw ConfigError(std::string(what) + ": empty string");
  std::vector<T> out;
  std::size_t pos = 0;
  while (true) {
    const auto end = text.find(':', pos);
    const auto token = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    T value{};
    const auto* first = token.data();
    const auto* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (token.empty() || ec != std::errc{} || ptr != last) {
      throw ConfigError(std::string(what) + ": invalid token '" + std::string(token) + "'");
    }
    out.push_back(value);
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return out;
}

// Size of part `i` when t is split into s near-equal parts, larger first.
std::uint64_t part_size(std::uint64_t t, std::uint64_t s, std::uint64_t i) {
  return t / s + (i < t % s ? 1 : 0);
}

}  // namespace

std::uint64_t HierarchySpec::module_size(std::size_t j) const {
  std::uint64_t size = 1;
  for (std::size_t r = 0; r < j && r < levels.size(); ++r) size *= levels[r];
  return size;
}

bool DistanceSpec::monotone() const {
  for (std::size_t i = 1; i < distances.size(); ++i) {
    if (distances[i] < distances[i - 1]) return false;
  }
  return true;
}

HierarchySpec parse_hierarchy(std::string_view text) {
  HierarchySpec spec;
  for (std::uint64_t a : split_colon<std::uint64_t>(text, "hierarchy")) {
    if (a < 2) throw ConfigError("hierarchy: every level must be >= 2");
    if (a > std::numeric_limits<PeId>::max() || spec.k > std::numeric_limits<PeId>::max() / a) {
      throw ConfigError("hierarchy: k overflows");
    }
    spec.levels.push_back(static_cast<std::uint32_t>(a));
    spec.k *= a;
  }
  return spec;
}

DistanceSpec parse_distances(std::string_view text, const HierarchySpec& spec) {
  DistanceSpec dist{split_colon<double>(text, "distances")};
  if (dist.distances.size() != spec.ell()) {
    throw ConfigError("distances: expected " + std::to_string(spec.ell()) + " entries, got " +
                      std::to_string(dist.distances.size()));
  }
  for (double d : dist.distances) {
    if (!(d >= 0.0) || !std::isfinite(d)) throw ConfigError("distances: entries must be finite and >= 0");
  }
  return dist;
}

DistanceSpec default_distances(const HierarchySpec& spec) {
  DistanceSpec dist;
  double d = 1.0;
  for (std::size_t i = 0; i < spec.ell(); ++i, d *= 10.0) dist.distances.push_back(d);
  return dist;
}

std::string to_string(const HierarchySpec& spec) {
  std::ostringstream out;
  for (std::size_t i = 0; i < spec.levels.size(); ++i) out << (i ? ":" : "") << spec.levels[i];
  return out.str();
}

NodeWeight compute_lmax(NodeWeight total_node_weight, std::uint64_t k, double eps) {
  if (k == 0) throw ConfigError("k must be >= 1");
  if (eps < 0.0) throw ConfigError("eps must be >= 0");
  const auto kk = static_cast<NodeWeight>(k);
  if (eps == 0.0) return (total_node_weight + kk - 1) / kk;
  return static_cast<NodeWeight>(
      std::ceil((1.0 + eps) * static_cast<double>(total_node_weight) / static_cast<double>(k)));
}

double fennel_alpha(std::uint64_t n, std::uint64_t m, std::uint64_t k) {
  if (n == 0) throw ConfigError("fennel_alpha: n must be >= 1");
  const auto nd = static_cast<double>(n);
  return std::sqrt(static_cast<double>(k)) * static_cast<double>(m) / (nd * std::sqrt(nd));
}

double block_alpha(double global_alpha, std::uint64_t covered) {
  return global_alpha / std::sqrt(static_cast<double>(covered));
}

double layer_alpha(double global_alpha, const HierarchySpec& spec, std::size_t layer) {
  return block_alpha(global_alpha, spec.module_size(layer - 1));
}

std::size_t divergence_level(const HierarchySpec& spec, PeId x, PeId y) {
  if (x < 1 || y < 1 || x > spec.k || y > spec.k) throw ConfigError("PE id out of range");
  if (x == y) return 0;
  std::uint64_t xs = x - 1;
  std::uint64_t ys = y - 1;
  for (std::size_t j = 0; j < spec.ell(); ++j) {
    xs /= spec.levels[j];
    ys /= spec.levels[j];
    if (xs == ys) return j + 1;
  }
  return spec.ell();
}

double pe_distance(const HierarchySpec& spec, const DistanceSpec& dist, PeId x, PeId y) {
  const std::size_t level = divergence_level(spec, x, y);
  return level == 0 ? 0.0 : dist.distances[level - 1];
}

std::span<const Block> MultiSectionTree::children(const Block& parent) const {
  if (parent.is_leaf()) return {};
  return {blocks_.data() + parent.first_child, parent.child_count};
}

std::uint32_t MultiSectionTree::child_index_of(const Block& parent, PeId pe) const {
  const std::uint64_t t = parent.covered();
  const std::uint64_t s = parent.child_count;
  const std::uint64_t offset = pe - parent.first_pe;
  const std::uint64_t q = t / s;
  const std::uint64_t r = t % s;
  const std::uint64_t big = r * (q + 1);
  return static_cast<std::uint32_t>(offset < big ? offset / (q + 1) : r + (offset - big) / q);
}

template <typename Fanout>
MultiSectionTree MultiSectionTree::build(std::uint64_t k, NodeWeight lmax, double alpha, Fanout fanout) {
  if (k == 0) throw ConfigError("k must be >= 1");
  if (k > std::numeric_limits<PeId>::max()) throw ConfigError("k too large");
  MultiSectionTree tree;
  tree.k_ = k;
  tree.lmax_ = lmax;
  tree.global_alpha_ = alpha;
  tree.leaf_ids_.assign(k, kNoBlock);

  Block root;
  root.id = 0;
  root.first_pe = 1;
  root.last_pe = static_cast<PeId>(k);
  root.capacity = static_cast<NodeWeight>(k) * lmax;
  root.alpha = block_alpha(alpha, k);
  tree.blocks_.push_back(root);

  // Breadth-first expansion keeps each sibling group contiguous.
  for (std::size_t next = 0; next < tree.blocks_.size(); ++next) {
    const Block parent = tree.blocks_[next];
    const std::uint64_t t = parent.covered();
    if (t == 1) {
      tree.leaf_ids_[parent.first_pe - 1] = parent.id;
      tree.layers_ = std::max<std::size_t>(tree.layers_, parent.depth);
      continue;
    }
    const std::uint64_t s = fanout(parent);
    auto& stored = tree.blocks_[next];
    stored.first_child = static_cast<BlockId>(tree.blocks_.size());
    stored.child_count = static_cast<std::uint32_t>(s);
    PeId begin = parent.first_pe;
    for (std::uint64_t i = 0; i < s; ++i) {
      const std::uint64_t size = part_size(t, s, i);
      Block child;
      child.id = static_cast<BlockId>(tree.blocks_.size());
      child.parent = parent.id;
      child.depth = parent.depth + 1;
      child.first_pe = begin;
      child.last_pe = static_cast<PeId>(begin + size - 1);
      child.capacity = static_cast<NodeWeight>(size) * lmax;
      child.alpha = block_alpha(alpha, size);
      tree.blocks_.push_back(child);
      begin = static_cast<PeId>(begin + size);
    }
  }
  return tree;
}

MultiSectionTree build_tree_explicit(const HierarchySpec& spec, NodeWeight lmax, double global_alpha) {
  if (spec.levels.empty()) throw ConfigError("hierarchy must have at least one level");
  const std::size_t ell = spec.ell();
  auto tree = MultiSectionTree::build(spec.k, lmax, global_alpha, [&](const Block& parent) {
    return std::uint64_t{spec.levels[ell - 1 - parent.depth]};
  });
  tree.base_ = 0;
  return tree;
}

MultiSectionTree build_tree_synth(std::uint64_t k, std::uint32_t base, NodeWeight lmax, double global_alpha) {
  if (base < 2) throw ConfigError("base must be >= 2");
  auto tree = MultiSectionTree::build(k, lmax, global_alpha, [&](const Block& parent) {
    return std::min<std::uint64_t>(base, parent.covered());
  });
  tree.base_ = base;
  return tree;
}

}  // namespace streampart
