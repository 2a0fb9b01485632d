#include "streampart/scoring.hpp"

#include <cmath>

namespace streampart {

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::fennel: return "fennel";
    case Algorithm::ldg: return "ldg";
    case Algorithm::hashing: return "hashing";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "fennel") return Algorithm::fennel;
  if (name == "ldg") return Algorithm::ldg;
  if (name == "hashing") return Algorithm::hashing;
  throw ConfigError("unknown algorithm '" + std::string(name) + "'");
}

double fennel_score(const SubproblemView& view, std::size_t j) {
  const Candidate& c = view.candidates[j];
  if (!c.accepts(view.node_weight)) return kFullBlock;
  return c.neighbor_weight - c.alpha * ScorerConfig::gamma * std::sqrt(static_cast<double>(c.weight));
}

double ldg_score(const SubproblemView& view, std::size_t j) {
  const Candidate& c = view.candidates[j];
  return c.neighbor_weight * (1.0 - static_cast<double>(c.weight) / static_cast<double>(c.capacity));
}

std::size_t hashing_assign(NodeId node, std::size_t s, std::uint64_t seed, std::uint64_t parent_key) {
  auto mix = [](std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  };
  const std::uint64_t h = mix(mix(mix(seed) ^ node) ^ parent_key);
  return static_cast<std::size_t>(h % s);
}

namespace {

// True if candidate a is preferred over b at equal score.
bool wins_tie(const Candidate& a, const Candidate& b, TieBreak rule) {
  if (rule == TieBreak::heavier_then_higher_key) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.key > b.key;
  }
  if (a.weight != b.weight) return a.weight < b.weight;
  return a.key < b.key;
}

Selection overflow_choice(const SubproblemView& view) {
  Selection sel{0, true, false};
  for (std::size_t j = 1; j < view.candidates.size(); ++j) {
    const auto& c = view.candidates[j];
    const auto& best = view.candidates[sel.index];
    if (c.weight < best.weight || (c.weight == best.weight && c.key < best.key)) sel.index = j;
  }
  return sel;
}

}  // namespace

Selection select_block(const SubproblemView& view, const ScorerConfig& config, NodeId node,
                       std::uint64_t parent_key) {
  const auto& cands = view.candidates;
  if (cands.empty()) throw ConfigError("select_block: empty candidate set");

  if (config.algorithm == Algorithm::hashing) {
    const std::size_t s = cands.size();
    const std::size_t h = hashing_assign(node, s, config.seed, parent_key);
    for (std::size_t probe = 0; probe < s; ++probe) {
      const std::size_t j = (h + probe) % s;
      if (cands[j].accepts(view.node_weight)) return {j, false, probe != 0};
    }
    return overflow_choice(view);
  }

  const bool fennel = config.algorithm == Algorithm::fennel;
  std::size_t best = cands.size();
  double best_score = kFullBlock;
  for (std::size_t j = 0; j < cands.size(); ++j) {
    if (!cands[j].accepts(view.node_weight)) continue;
    const double score = fennel ? fennel_score(view, j) : ldg_score(view, j);
    if (best == cands.size() || score > best_score ||
        (score == best_score && wins_tie(cands[j], cands[best], config.tie_break))) {
      best = j;
      best_score = score;
    }
  }
  if (best == cands.size()) return overflow_choice(view);
  return {best, false, false};
}

}  // namespace streampart
