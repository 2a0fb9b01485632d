#include <benchmark/benchmark.h>

#include "streampart/metrics.hpp"
#include "streampart/partitioner.hpp"

namespace {

using namespace streampart;

const Graph& grid() {
  static const Graph g = gen::grid2d(256, 256);
  return g;
}

RunConfig fennel() {
  RunConfig c;
  c.scorer.algorithm = Algorithm::fennel;
  return c;
}

void BM_Flat(benchmark::State& state) {
  const auto k = static_cast<std::uint64_t>(state.range(0));
  const auto cfg = fennel();
  for (auto _ : state) {
    auto s = GraphStream::from_graph(grid());
    benchmark::DoNotOptimize(partition_flat(s, k, cfg).assignment.data());
  }
  state.counters["score_evals_per_node"] = static_cast<double>(k);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid().num_nodes()));
}
BENCHMARK(BM_Flat)->Arg(16)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_NhOms(benchmark::State& state) {
  const auto k = static_cast<std::uint64_t>(state.range(0));
  const auto base = static_cast<std::uint32_t>(state.range(1));
  const auto cfg = fennel();
  const auto tree = make_synth_tree(GraphStream::from_graph(grid()), k, base, cfg.eps);
  std::uint64_t evals = 0;
  for (auto _ : state) {
    auto s = GraphStream::from_graph(grid());
    const auto r = partition_oms(s, tree, cfg);
    evals = r.counters.score_evaluations;
    benchmark::DoNotOptimize(r.assignment.data());
  }
  state.counters["score_evals_per_node"] = static_cast<double>(evals) / static_cast<double>(grid().num_nodes());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid().num_nodes()));
}
BENCHMARK(BM_NhOms)->Args({16, 4})->Args({256, 4})->Args({1024, 4})->Args({1024, 2})->Unit(benchmark::kMillisecond);

void BM_OmsHierarchy(benchmark::State& state) {
  const auto spec = parse_hierarchy("4:16:2");
  auto cfg = fennel();
  if (state.range(0) >= 0) cfg.hybrid_h = static_cast<std::size_t>(state.range(0));
  const auto tree = make_tree(GraphStream::from_graph(grid()), spec, cfg.eps);
  for (auto _ : state) {
    auto s = GraphStream::from_graph(grid());
    benchmark::DoNotOptimize(partition_oms(s, tree, cfg).assignment.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid().num_nodes()));
}
BENCHMARK(BM_OmsHierarchy)->Arg(-1)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

void BM_StreamParse(benchmark::State& state) {
  const auto text = to_metis(grid());
  for (auto _ : state) {
    auto s = GraphStream::from_buffer(text);
    NodeRecord r;
    std::uint64_t edges = 0;
    while (s.next(r)) edges += r.neighbors.size();
    benchmark::DoNotOptimize(edges);
  }
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_StreamParse)->Unit(benchmark::kMillisecond);

void BM_Parallel(benchmark::State& state) {
  auto cfg = fennel();
  cfg.threads = static_cast<unsigned>(state.range(0));
  const auto stream = GraphStream::from_graph(grid());
  const auto tree = make_synth_tree(stream, 256, 4, cfg.eps);
  for (auto _ : state) benchmark::DoNotOptimize(partition_parallel(stream, tree, cfg).assignment.data());
}
BENCHMARK(BM_Parallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
