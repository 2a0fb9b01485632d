#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>

#include "streampart/types.hpp"

namespace streampart {

enum class Algorithm { fennel, ldg, hashing };

std::string_view to_string(Algorithm algorithm);
Algorithm parse_algorithm(std::string_view name);

enum class TieBreak {
  lighter_then_lower_key,  // default: fewer load first, then lower block key
  heavier_then_higher_key, // reversed rule; only useful for mutation tests
};

struct ScorerConfig {
  static constexpr double gamma = 1.5;

  Algorithm algorithm = Algorithm::fennel;
  std::uint64_t seed = 0;
  TieBreak tie_break = TieBreak::lighter_then_lower_key;
};

inline constexpr double kFullBlock = -std::numeric_limits<double>::infinity();

// One block competing for the streamed node. `key` identifies the block
// independently of its position in the candidate list (the first final
// block it covers); it is the last tie-break criterion.
struct Candidate {
  std::uint32_t key = 0;
  NodeWeight weight = 0;
  NodeWeight capacity = 0;
  double alpha = 0.0;
  double neighbor_weight = 0.0;  // omega-weighted |block ∩ N(v)|

  [[nodiscard]] bool accepts(NodeWeight node_weight) const { return weight + node_weight <= capacity; }
};

// Children of one parent block, seen by one streamed node.
struct SubproblemView {
  std::span<const Candidate> candidates;
  NodeWeight node_weight = 1;
};

// neighbors - alpha * gamma * weight^{gamma-1}; kFullBlock when the block
// cannot take the node.
double fennel_score(const SubproblemView& view, std::size_t j);
// neighbors * (1 - weight / capacity).
double ldg_score(const SubproblemView& view, std::size_t j);

// Uniform index in [0, s) from (node, seed, parent range). Independent of
// adjacency and block weights.
std::size_t hashing_assign(NodeId node, std::size_t s, std::uint64_t seed, std::uint64_t parent_key);
// Parent key for hashing: packs the parent's covered range.
inline std::uint64_t hash_parent_key(PeId first_pe, PeId last_pe) {
  return (std::uint64_t{first_pe} << 32) | last_pe;
}

struct Selection {
  std::size_t index = 0;
  bool overflow = false;  // every candidate was full
  bool rehashed = false;  // hashing only: hashed block full, probed onward
};

// Argmax over open candidates with the configured tie-break; when all are
// full, the lightest candidate (lower key on ties) with overflow set.
// Hashing picks the hashed candidate, probing cyclically to the next open
// one if it is full. Throws ConfigError on an empty view.
Selection select_block(const SubproblemView& view, const ScorerConfig& config,
                       NodeId node = 0, std::uint64_t parent_key = 0);

}  // namespace streampart
