#include "streampart/partitioner.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <stdexcept>
#include <thread>

namespace streampart {

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::flat: return "flat";
    case Mode::oms: return "oms";
    case Mode::nh_oms: return "nh-oms";
  }
  return "unknown";
}

RunCounters& RunCounters::operator+=(const RunCounters& other) {
  score_evaluations += other.score_evaluations;
  hash_evaluations += other.hash_evaluations;
  nodes_processed += other.nodes_processed;
  edges_scanned += other.edges_scanned;
  overflow_events += other.overflow_events;
  rehash_events += other.rehash_events;
  return *this;
}

AssignmentStore::AssignmentStore(std::size_t n)
    : size_(n), slots_(std::make_unique<std::atomic<PeId>[]>(n)) {
  for (std::size_t v = 0; v < n; ++v) slots_[v].store(kUnassigned, std::memory_order_relaxed);
}

void AssignmentStore::set(NodeId v, PeId pe) {
  if (slots_[v].exchange(pe, std::memory_order_relaxed) != kUnassigned) {
    throw std::logic_error("node " + std::to_string(v) + " assigned twice");
  }
}

bool AssignmentStore::complete() const {
  for (std::size_t v = 0; v < size_; ++v) {
    if (get(v) == kUnassigned) return false;
  }
  return true;
}

std::vector<PeId> AssignmentStore::to_vector() const {
  std::vector<PeId> out(size_);
  for (std::size_t v = 0; v < size_; ++v) out[v] = get(v);
  return out;
}

BlockWeights::BlockWeights(std::size_t cells)
    : size_(cells), cells_(std::make_unique<std::atomic<NodeWeight>[]>(cells)) {
  for (std::size_t i = 0; i < cells; ++i) cells_[i].store(0, std::memory_order_relaxed);
}

NodeWeight PartitionResult::max_block_weight() const {
  return block_weights.empty() ? 0 : *std::max_element(block_weights.begin(), block_weights.end());
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_between(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

ScorerConfig hashing_of(const ScorerConfig& scorer) {
  ScorerConfig h = scorer;
  h.algorithm = Algorithm::hashing;
  return h;
}

void validate(const RunConfig& config, std::size_t layers) {
  if (config.eps < 0.0) throw ConfigError("eps must be >= 0");
  if (config.threads == 0) throw ConfigError("threads must be >= 1");
  if (config.hybrid_h && *config.hybrid_h > layers) {
    throw ConfigError("hybrid_h (" + std::to_string(*config.hybrid_h) + ") exceeds the number of layers (" +
                      std::to_string(layers) + ")");
  }
}

// Scores all k blocks for every node.
class FlatEngine {
 public:
  FlatEngine(std::uint64_t k, NodeWeight lmax, double alpha, const ScorerConfig& scorer,
             BlockWeights& weights, AssignmentStore& store)
      : k_(k), lmax_(lmax), alpha_(alpha), scorer_(scorer), weights_(weights), store_(store),
        counts_(k, 0), candidates_(k) {}

  void assign(const NodeRecord& node, RunCounters& counters) {
    counters.edges_scanned += node.neighbors.size();
    ++counters.nodes_processed;
    const bool hashing = scorer_.algorithm == Algorithm::hashing;
    if (!hashing) {
      touched_.clear();
      for (const auto& nb : node.neighbors) {
        const PeId pe = store_.get(nb.id);
        if (pe == kUnassigned) continue;
        if (counts_[pe - 1] == 0) touched_.push_back(pe - 1);
        counts_[pe - 1] += nb.weight;
      }
    }
    for (std::uint64_t j = 0; j < k_; ++j) {
      auto& c = candidates_[j];
      c.key = static_cast<std::uint32_t>(j + 1);
      c.weight = weights_.load(j);
      c.capacity = lmax_;
      c.alpha = alpha_;
      c.neighbor_weight = static_cast<double>(counts_[j]);
    }
    const SubproblemView view{candidates_, node.weight};
    const auto sel = select_block(view, scorer_, node.id, hash_parent_key(1, static_cast<PeId>(k_)));
    if (hashing) {
      ++counters.hash_evaluations;
    } else {
      counters.score_evaluations += k_;
      for (auto j : touched_) counts_[j] = 0;
    }
    counters.overflow_events += sel.overflow ? 1 : 0;
    counters.rehash_events += sel.rehashed ? 1 : 0;
    weights_.add(sel.index, node.weight);
    store_.set(node.id, static_cast<PeId>(sel.index + 1));
  }

 private:
  std::uint64_t k_;
  NodeWeight lmax_;
  double alpha_;
  ScorerConfig scorer_;
  BlockWeights& weights_;
  AssignmentStore& store_;
  std::vector<EdgeWeight> counts_;
  std::vector<std::uint64_t> touched_;
  std::vector<Candidate> candidates_;
};

// Root-to-leaf descent over a multi-section tree. Already-assigned
// neighbors are resolved to their leaf once; at each layer the ones outside
// the chosen child are dropped, so a node costs O(|N(v)| * depth + sum of
// fan-outs).
class OmsEngine {
 public:
  OmsEngine(const MultiSectionTree& tree, const RunConfig& config, BlockWeights& weights, AssignmentStore& store)
      : tree_(tree), scorer_(config.scorer), hasher_(hashing_of(config.scorer)),
        scored_depth_(config.hybrid_h.value_or(tree.layers())), weights_(weights), store_(store) {}

  void assign(const NodeRecord& node, RunCounters& counters) {
    counters.edges_scanned += node.neighbors.size();
    ++counters.nodes_processed;

    resolved_.clear();
    for (const auto& nb : node.neighbors) {
      const PeId pe = store_.get(nb.id);
      if (pe != kUnassigned) resolved_.push_back({pe, nb.weight});
    }

    const Block* parent = &tree_.root();
    while (!parent->is_leaf()) {
      const auto children = tree_.children(*parent);
      const bool scored = parent->depth < scored_depth_ && scorer_.algorithm != Algorithm::hashing;
      counts_.assign(children.size(), 0);
      if (scored) {
        for (const auto& r : resolved_) counts_[tree_.child_index_of(*parent, r.pe)] += r.weight;
      }
      candidates_.resize(children.size());
      for (std::size_t i = 0; i < children.size(); ++i) {
        const Block& child = children[i];
        auto& c = candidates_[i];
        c.key = child.first_pe;
        c.weight = weights_.load(child.id - 1);
        c.capacity = child.capacity;
        c.alpha = child.alpha;
        c.neighbor_weight = static_cast<double>(counts_[i]);
      }
      const SubproblemView view{candidates_, node.weight};
      const auto sel = select_block(view, scored ? scorer_ : hasher_, node.id,
                                    hash_parent_key(parent->first_pe, parent->last_pe));
      if (scored) {
        counters.score_evaluations += children.size();
      } else {
        ++counters.hash_evaluations;
      }
      counters.overflow_events += sel.overflow ? 1 : 0;
      counters.rehash_events += sel.rehashed ? 1 : 0;

      const Block& chosen = children[sel.index];
      weights_.add(chosen.id - 1, node.weight);
      if (scored) {
        std::erase_if(resolved_, [&](const Resolved& r) { return !chosen.contains(r.pe); });
      }
      parent = &chosen;
    }
    store_.set(node.id, parent->first_pe);
  }

 private:
  struct Resolved {
    PeId pe;
    EdgeWeight weight;
  };

  const MultiSectionTree& tree_;
  ScorerConfig scorer_;
  ScorerConfig hasher_;
  std::size_t scored_depth_;
  BlockWeights& weights_;
  AssignmentStore& store_;
  std::vector<Resolved> resolved_;
  std::vector<EdgeWeight> counts_;
  std::vector<Candidate> candidates_;
};

template <typename Engine>
void drive(GraphStream& stream, Engine& engine, RunCounters& counters, double& parse_ms, double& assign_ms) {
  NodeRecord record;
  auto t0 = Clock::now();
  while (true) {
    const bool more = stream.next(record);
    const auto t1 = Clock::now();
    parse_ms += ms_between(t0, t1);
    if (!more) break;
    engine.assign(record, counters);
    t0 = Clock::now();
    assign_ms += ms_between(t1, t0);
  }
}

// Runs one engine per shard. With a single shard everything happens on the
// calling thread.
template <typename MakeEngine>
void run_sharded(std::vector<GraphStream>& shards, MakeEngine make_engine, PartitionResult& result) {
  const std::size_t p = shards.size();
  std::vector<RunCounters> counters(p);
  std::vector<double> parse_ms(p, 0.0);
  std::vector<double> assign_ms(p, 0.0);
  std::vector<std::exception_ptr> errors(p);

  auto worker = [&](std::size_t s) {
    try {
      auto engine = make_engine();
      drive(shards[s], engine, counters[s], parse_ms[s], assign_ms[s]);
    } catch (...) {
      errors[s] = std::current_exception();
    }
  };

  const auto start = Clock::now();
  if (p == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(p);
    for (std::size_t s = 0; s < p; ++s) threads.emplace_back(worker, s);
  }
  const auto stop = Clock::now();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (std::size_t s = 0; s < p; ++s) result.counters += counters[s];
  if (p == 1) {
    result.parse_ms = parse_ms[0];
    result.assign_ms = assign_ms[0];
  } else {
    // Workers interleave parsing and assignment; report wall time as assignment.
    result.parse_ms = *std::max_element(parse_ms.begin(), parse_ms.end());
    result.assign_ms = ms_between(start, stop);
  }
}

PartitionResult flat_impl(std::vector<GraphStream>& shards, const GraphHeader& header, NodeWeight total,
                          std::uint64_t k, const RunConfig& config) {
  if (k == 0) throw ConfigError("k must be >= 1");
  if (k > std::numeric_limits<PeId>::max()) throw ConfigError("k too large");
  validate(config, 1);
  PartitionResult result;
  result.k = k;
  result.total_weight = total;
  result.lmax = compute_lmax(total, k, config.eps);
  if (result.lmax * static_cast<NodeWeight>(k) < total) throw std::logic_error("infeasible L_max");
  const double alpha = fennel_alpha(header.n, header.m, k);

  BlockWeights weights(k);
  AssignmentStore store(header.n);
  result.weight_cells = weights.size();
  run_sharded(
      shards, [&] { return FlatEngine(k, result.lmax, alpha, config.scorer, weights, store); }, result);

  result.assignment = store.to_vector();
  result.block_weights.resize(k);
  for (std::uint64_t j = 0; j < k; ++j) result.block_weights[j] = weights.load(j);
  return result;
}

PartitionResult oms_impl(std::vector<GraphStream>& shards, const GraphHeader& header, NodeWeight total,
                         const MultiSectionTree& tree, const RunConfig& config) {
  validate(config, tree.layers());
  PartitionResult result;
  result.k = tree.k();
  result.total_weight = total;
  result.lmax = tree.lmax();
  if (tree.root().capacity < total) throw ConfigError("tree capacity k * L_max is below c(V)");

  BlockWeights weights(tree.weight_cell_count());
  AssignmentStore store(header.n);
  result.weight_cells = weights.size();
  run_sharded(shards, [&] { return OmsEngine(tree, config, weights, store); }, result);

  result.assignment = store.to_vector();
  result.block_weights.resize(tree.k());
  for (PeId pe = 1; pe <= tree.k(); ++pe) {
    const BlockId leaf = tree.leaf_of(pe);
    result.block_weights[pe - 1] = leaf == 0 ? total : weights.load(leaf - 1);
  }
  return result;
}

}  // namespace

std::vector<EdgeWeight> neighbor_counts_for_children(const NodeRecord& node, const Block& parent,
                                                     const AssignmentStore& store, const MultiSectionTree& tree) {
  std::vector<EdgeWeight> counts(parent.child_count, 0);
  if (parent.is_leaf()) return counts;
  for (const auto& nb : node.neighbors) {
    const PeId pe = store.get(nb.id);
    if (pe == kUnassigned || !parent.contains(pe)) continue;
    counts[tree.child_index_of(parent, pe)] += nb.weight;
  }
  return counts;
}

PartitionResult partition_flat(GraphStream& stream, std::uint64_t k, const RunConfig& config) {
  const NodeWeight total = stream.total_node_weight();
  const GraphHeader header = stream.header();
  std::vector<GraphStream> shards;
  shards.push_back(std::move(stream));
  auto result = flat_impl(shards, header, total, k, config);
  stream = std::move(shards.front());
  return result;
}

PartitionResult partition_oms(GraphStream& stream, const MultiSectionTree& tree, const RunConfig& config) {
  const NodeWeight total = stream.total_node_weight();
  const GraphHeader header = stream.header();
  std::vector<GraphStream> shards;
  shards.push_back(std::move(stream));
  auto result = oms_impl(shards, header, total, tree, config);
  stream = std::move(shards.front());
  return result;
}

PartitionResult partition_parallel(const GraphStream& stream, const MultiSectionTree& tree, const RunConfig& config) {
  if (config.threads == 0) throw ConfigError("threads must be >= 1");
  auto shards = config.threads == 1 ? std::vector<GraphStream>{} : stream.shards(config.threads);
  if (shards.empty()) shards.push_back(stream.reopen());
  return oms_impl(shards, stream.header(), stream.total_node_weight(), tree, config);
}

PartitionResult partition_parallel(const GraphStream& stream, std::uint64_t k, const RunConfig& config) {
  if (config.threads == 0) throw ConfigError("threads must be >= 1");
  auto shards = config.threads == 1 ? std::vector<GraphStream>{} : stream.shards(config.threads);
  if (shards.empty()) shards.push_back(stream.reopen());
  return flat_impl(shards, stream.header(), stream.total_node_weight(), k, config);
}

MultiSectionTree make_tree(const GraphStream& stream, const HierarchySpec& spec, double eps) {
  const auto& h = stream.header();
  return build_tree_explicit(spec, compute_lmax(stream.total_node_weight(), spec.k, eps),
                             fennel_alpha(h.n, h.m, spec.k));
}

MultiSectionTree make_synth_tree(const GraphStream& stream, std::uint64_t k, std::uint32_t base, double eps) {
  const auto& h = stream.header();
  return build_tree_synth(k, base, compute_lmax(stream.total_node_weight(), k, eps), fennel_alpha(h.n, h.m, k));
}

}  // namespace streampart
