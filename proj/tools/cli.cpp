#include "cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include "streampart/graph.hpp"
#include "streampart/graph_stream.hpp"
#include "streampart/hierarchy.hpp"
#include "streampart/metrics.hpp"
#include "streampart/partitioner.hpp"

namespace streampart::cli {
namespace {

using Clock = std::chrono::steady_clock;
using json = nlohmann::ordered_json;

struct FlagError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct Options {
  std::string input;
  std::vector<std::string> inputs;
  std::uint64_t k = 0;
  std::string hierarchy;
  std::string distances;
  std::string algorithm = "fennel";
  std::vector<std::string> algorithms{"fennel", "ldg", "hashing"};
  double eps = 0.03;
  std::uint32_t base = 4;
  std::optional<std::size_t> hybrid;
  unsigned threads = 1;
  std::uint64_t seed = 0;
  unsigned reps = 10;
  bool preload = false;
  bool sanitize = false;
  std::string output;
  std::string report;
  std::string partition;
  std::string summary;
  std::string profile;
  std::string profile_metric = "cut";

  // gen
  std::string kind = "grid2d";
  std::uint64_t rows = 0;
  std::uint64_t cols = 0;
  std::uint64_t n = 0;
  double radius = 0.0;
};

// Target machine: either plain k or a hierarchy (with distances for J).
struct Target {
  std::uint64_t k = 0;
  std::optional<HierarchySpec> spec;
  std::optional<DistanceSpec> dist;
};

Target resolve_target(const Options& o, bool hierarchy_required) {
  Target t;
  if (!o.hierarchy.empty()) {
    try {
      t.spec = parse_hierarchy(o.hierarchy);
      t.dist = o.distances.empty() ? default_distances(*t.spec) : parse_distances(o.distances, *t.spec);
    } catch (const ConfigError& e) {
      throw FlagError(e.what());
    }
    t.k = t.spec->k;
  } else {
    if (hierarchy_required) throw FlagError("--hierarchy is required");
    if (o.k == 0) throw FlagError("one of --k or --hierarchy is required");
    t.k = o.k;
  }
  return t;
}

GraphStream open_input(const std::string& path, const Options& o, double& read_ms) {
  const StreamOptions so{o.sanitize};
  read_ms = 0.0;
  if (!o.preload) return GraphStream::open_file(path, so);
  const auto start = Clock::now();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("read error on '" + path + "'");
  read_ms = ms_since(start);
  return GraphStream::from_buffer(std::move(buffer).str(), so);
}

struct Job {
  Mode mode = Mode::flat;
  RunConfig config;
  Target target;
  std::uint32_t base = 4;
};

PartitionResult execute(const GraphStream& source, const Job& job) {
  const auto& cfg = job.config;
  if (job.mode == Mode::flat) {
    if (cfg.threads > 1) return partition_parallel(source, job.target.k, cfg);
    auto s = source.reopen();
    return partition_flat(s, job.target.k, cfg);
  }
  const auto tree = job.mode == Mode::oms ? make_tree(source, *job.target.spec, cfg.eps)
                                          : make_synth_tree(source, job.target.k, job.base, cfg.eps);
  if (cfg.threads > 1) return partition_parallel(source, tree, cfg);
  auto s = source.reopen();
  return partition_oms(s, tree, cfg);
}

QualityReport score(const GraphStream& source, std::span<const PeId> assignment, const Target& t) {
  auto s = source.reopen();
  return evaluate(s, assignment, t.k, t.spec ? &*t.spec : nullptr, t.dist ? &*t.dist : nullptr);
}

Algorithm algorithm_flag(const std::string& name) {
  try {
    return parse_algorithm(name);
  } catch (const ConfigError& e) {
    throw FlagError(e.what());
  }
}

// bench tokens: "fennel" (flat), "oms-ldg", "nh-fennel", ...
std::pair<Mode, Algorithm> parse_token(const std::string& token) {
  const auto dash = token.find('-');
  if (dash == std::string::npos) return {Mode::flat, algorithm_flag(token)};
  const auto prefix = token.substr(0, dash);
  const auto algo = algorithm_flag(token.substr(dash + 1));
  if (prefix == "flat") return {Mode::flat, algo};
  if (prefix == "oms") return {Mode::oms, algo};
  if (prefix == "nh") return {Mode::nh_oms, algo};
  throw FlagError("unknown mode in algorithm '" + token + "' (use flat-, oms- or nh-)");
}

Job make_job(Mode mode, Algorithm algo, const Options& o, const Target& target) {
  Job job;
  job.mode = mode;
  job.target = target;
  job.base = o.base;
  job.config.mode = mode;
  job.config.scorer.algorithm = algo;
  job.config.scorer.seed = o.seed;
  job.config.eps = o.eps;
  job.config.threads = o.threads;
  if (mode != Mode::flat) job.config.hybrid_h = o.hybrid;
  if (mode == Mode::oms && !target.spec) throw FlagError("oms mode needs --hierarchy");
  return job;
}

void write_partition(const std::string& path, std::span<const PeId> assignment) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  std::string buffer;
  for (PeId pe : assignment) {
    buffer += std::to_string(pe);
    buffer += '\n';
  }
  out << buffer;
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::vector<PeId> read_partition(const std::string& path, std::uint64_t n) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::vector<PeId> labels;
  labels.reserve(n);
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;
    std::uint64_t v = 0;
    const auto* first = line.data();
    const auto* last = line.data() + line.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || v == 0 || v > std::numeric_limits<PeId>::max()) {
      throw IoError(path + ":" + std::to_string(line_no) + ": expected a positive block id");
    }
    labels.push_back(static_cast<PeId>(v));
  }
  if (labels.size() != n) {
    throw IoError(path + ": " + std::to_string(labels.size()) + " labels for " + std::to_string(n) + " nodes");
  }
  return labels;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw IoError("write to '" + path + "' failed");
}

json run_section(const Job& job, const PartitionResult& r, const Options& o) {
  json run;
  run["mode"] = std::string(to_string(job.mode));
  run["algorithm"] = std::string(to_string(job.config.scorer.algorithm));
  run["k"] = job.target.k;
  run["hierarchy"] = job.target.spec ? json(to_string(*job.target.spec)) : json(nullptr);
  if (job.mode == Mode::nh_oms) run["base"] = job.base;
  run["hybrid_h"] = job.config.hybrid_h ? json(*job.config.hybrid_h) : json(nullptr);
  run["eps"] = job.config.eps;
  run["seed"] = job.config.scorer.seed;
  run["threads"] = job.config.threads;
  run["lmax"] = r.lmax;
  run["weight_cells"] = r.weight_cells;
  run["preload"] = o.preload;
  return run;
}

int partition_command(Mode mode, const Options& o, std::ostream& out) {
  const auto target = resolve_target(o, mode == Mode::oms);
  const auto job = make_job(mode, algorithm_flag(o.algorithm), o, target);
  double read_ms = 0.0;
  const auto source = open_input(o.input, o, read_ms);
  const auto result = execute(source, job);

  const auto eval_start = Clock::now();
  auto report = score(source, result.assignment, target);
  const double eval_ms = ms_since(eval_start);
  report.counters = result.counters;

  if (!o.output.empty()) write_partition(o.output, result.assignment);
  auto doc = json::parse(to_json(report));
  doc["run"] = run_section(job, result, o);
  doc["timing"] = {{"read_ms", read_ms},
                   {"parse_ms", result.parse_ms},
                   {"assign_ms", result.assign_ms},
                   {"evaluate_ms", eval_ms}};
  emit(o.report, doc.dump(2) + "\n", out);
  return 0;
}

int eval_command(const Options& o, std::ostream& out) {
  const auto target = resolve_target(o, false);
  double read_ms = 0.0;
  const auto source = open_input(o.input, o, read_ms);
  const auto labels = read_partition(o.partition, source.header().n);
  const auto report = score(source, labels, target);
  emit(o.report, to_json(report) + "\n", out);
  return 0;
}

int gen_command(const Options& o) {
  Graph g;
  if (o.kind == "grid2d") {
    if (o.rows == 0 || o.cols == 0) throw FlagError("grid2d needs --rows and --cols");
    g = gen::grid2d(o.rows, o.cols);
  } else if (o.kind == "ring") {
    if (o.n < 3) throw FlagError("ring needs --n >= 3");
    g = gen::ring(o.n);
  } else if (o.kind == "rgg") {
    if (o.n == 0) throw FlagError("rgg needs --n");
    g = gen::random_geometric(o.n, o.radius, o.seed);
  } else {
    throw FlagError("unknown graph kind '" + o.kind + "'");
  }
  write_metis(g, o.output);
  return 0;
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(10);
  s << v;
  return s.str();
}

std::optional<double> safe_aggregate(const std::vector<std::vector<double>>& per_instance) {
  for (const auto& reps : per_instance) {
    if (arithmetic_mean(reps) <= 0.0) return std::nullopt;
  }
  return aggregate(per_instance);
}

int bench_command(const Options& o, std::ostream& out, std::ostream& err) {
  const auto target = resolve_target(o, false);
  std::vector<std::pair<std::string, std::pair<Mode, Algorithm>>> algos;
  for (const auto& token : o.algorithms) algos.emplace_back(token, parse_token(token));
  if (o.profile_metric == "J" && !target.spec) throw FlagError("--profile-metric J needs --hierarchy");

  const std::size_t A = algos.size();
  const std::size_t I = o.inputs.size();
  // metric[a][i][rep]
  std::vector<std::vector<std::vector<double>>> cut(A, std::vector<std::vector<double>>(I));
  auto J = cut;
  auto load = cut;
  auto wall = cut;

  std::ostringstream rows;
  rows.precision(10);
  rows << "instance,algorithm,k,seed,cut,J,max_load,score_evals,wall_ms\n";
  for (std::size_t i = 0; i < I; ++i) {
    double read_ms = 0.0;
    const auto source = open_input(o.inputs[i], o, read_ms);
    const auto name = std::filesystem::path(o.inputs[i]).stem().string();
    for (std::size_t a = 0; a < A; ++a) {
      const auto [mode, algo] = algos[a].second;
      for (unsigned rep = 0; rep < o.reps; ++rep) {
        Options ro = o;
        ro.seed = o.seed + rep;
        const auto job = make_job(mode, algo, ro, target);
        const auto start = Clock::now();
        const auto result = execute(source, job);
        const double ms = ms_since(start);
        const auto report = score(source, result.assignment, target);
        cut[a][i].push_back(static_cast<double>(report.edge_cut));
        if (report.mapping_cost) J[a][i].push_back(*report.mapping_cost);
        load[a][i].push_back(static_cast<double>(report.max_block_weight));
        wall[a][i].push_back(ms);
        rows << name << ',' << algos[a].first << ',' << target.k << ',' << ro.seed << ',' << report.edge_cut << ','
             << (report.mapping_cost ? fmt(*report.mapping_cost) : std::string()) << ',' << report.max_block_weight
             << ',' << result.counters.score_evaluations << ',' << ms << '\n';
      }
    }
  }
  emit(o.output, rows.str(), out);

  std::ostringstream summary;
  summary << "algorithm,instances,geomean_cut,geomean_J,geomean_max_load,geomean_wall_ms\n";
  for (std::size_t a = 0; a < A; ++a) {
    auto field = [](const std::vector<std::vector<double>>& v) {
      if (v.empty() || v.front().empty()) return std::string();
      const auto g = safe_aggregate(v);
      return g ? fmt(*g) : std::string();
    };
    summary << algos[a].first << ',' << I << ',' << field(cut[a]) << ',' << field(J[a]) << ',' << field(load[a]) << ','
            << field(wall[a]) << '\n';
  }
  if (!o.summary.empty()) {
    emit(o.summary, summary.str(), out);
  } else if (!o.output.empty() && o.output != "-") {
    out << summary.str();
  }

  if (!o.profile.empty()) {
    const auto& metric = o.profile_metric == "J" ? J : cut;
    std::vector<std::vector<double>> values(I, std::vector<double>(A));
    bool positive = true;
    for (std::size_t i = 0; i < I; ++i) {
      for (std::size_t a = 0; a < A; ++a) {
        values[i][a] = arithmetic_mean(metric[a][i]);
        positive = positive && values[i][a] > 0.0;
      }
    }
    if (!positive) {
      err << "warning: profile skipped, some instance has a zero " << o.profile_metric << "\n";
    } else {
      std::vector<std::string> names;
      for (const auto& [token, _] : algos) names.push_back(token);
      emit(o.profile, profile_csv(names, performance_profile(values)), out);
    }
  }
  return 0;
}

void add_target_flags(CLI::App* sub, Options& o, bool with_k) {
  CLI::Option* k = nullptr;
  if (with_k) {
    k = sub->add_option("--k", o.k, "Number of blocks")->check(CLI::Range(std::uint64_t{1}, std::uint64_t{0xffffffffu}));
  }
  auto* h = sub->add_option("--hierarchy", o.hierarchy, "Hierarchy a1:...:al (innermost first)");
  if (k) h->excludes(k);
  sub->add_option("--distances", o.distances, "Distances d1:...:dl (default 1:10:100...)")->needs(h);
}

void add_run_flags(CLI::App* sub, Options& o) {
  sub->add_option("--eps", o.eps, "Imbalance")->check(CLI::NonNegativeNumber);
  sub->add_option("--seed", o.seed, "Seed");
  sub->add_option("--threads", o.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
  sub->add_flag("--preload", o.preload, "Read the input into memory before streaming");
  sub->add_flag("--sanitize", o.sanitize, "Drop self loops and duplicate neighbors");
}

void add_partition_flags(CLI::App* sub, Options& o) {
  sub->add_option("--input", o.input, "Graph in METIS format")->required();
  sub->add_option("--algorithm", o.algorithm, "fennel, ldg or hashing");
  sub->add_option("--output", o.output, "Partition file (one block id per line)");
  sub->add_option("--report", o.report, "JSON report path (default stdout)");
  add_run_flags(sub, o);
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Streaming graph partitioning and process mapping"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value config file; [subcommand] sections or subcommand.key");
  Options o;

  auto* part = app.add_subcommand("partition", "Flat one-pass k-way partition");
  add_partition_flags(part, o);
  add_target_flags(part, o, true);

  auto* map = app.add_subcommand("map", "Online recursive multi-section over a hierarchy");
  add_partition_flags(map, o);
  add_target_flags(map, o, false);
  map->add_option("--hybrid", o.hybrid, "Score only the top h layers; hash the rest");

  auto* nh = app.add_subcommand("nh", "Multi-section over a synthesized b-ary tree");
  add_partition_flags(nh, o);
  add_target_flags(nh, o, true);
  nh->add_option("--base", o.base, "Tree base b")->check(CLI::Range(2u, 1u << 16));
  nh->add_option("--hybrid", o.hybrid, "Score only the top h layers; hash the rest");

  auto* eval = app.add_subcommand("eval", "Score an existing partition file");
  eval->add_option("--input", o.input, "Graph in METIS format")->required();
  eval->add_option("--partition", o.partition, "Partition file")->required();
  eval->add_option("--report", o.report, "JSON report path (default stdout)");
  eval->add_flag("--preload", o.preload, "Read the input into memory first");
  eval->add_flag("--sanitize", o.sanitize, "Drop self loops and duplicate neighbors");
  add_target_flags(eval, o, true);

  auto* bench = app.add_subcommand("bench", "Repetitions over instances and algorithms");
  bench->add_option("--input", o.inputs, "Graph files")->required()->delimiter(',');
  bench->add_option("--algorithm", o.algorithms, "Tokens like fennel, oms-ldg, nh-fennel")->delimiter(',');
  bench->add_option("--reps", o.reps, "Repetitions per instance (seeds seed..seed+reps-1)")
      ->check(CLI::Range(1u, 100000u));
  bench->add_option("--base", o.base, "Tree base b for nh- tokens")->check(CLI::Range(2u, 1u << 16));
  bench->add_option("--hybrid", o.hybrid, "Hybrid h for oms-/nh- tokens");
  bench->add_option("--output", o.output, "Per-run CSV (default stdout)");
  bench->add_option("--summary", o.summary, "Geometric-mean summary CSV");
  bench->add_option("--profile", o.profile, "Performance profile CSV");
  bench->add_option("--profile-metric", o.profile_metric, "cut or J")->check(CLI::IsMember({"cut", "J"}));
  add_run_flags(bench, o);
  add_target_flags(bench, o, true);

  auto* gen = app.add_subcommand("gen", "Generate a graph");
  gen->add_option("--kind", o.kind, "grid2d, ring or rgg")->check(CLI::IsMember({"grid2d", "ring", "rgg"}));
  gen->add_option("--rows", o.rows, "grid2d rows");
  gen->add_option("--cols", o.cols, "grid2d columns");
  gen->add_option("--n", o.n, "Node count (ring, rgg)");
  gen->add_option("--radius", o.radius, "rgg radius (<= 0 picks a connected-regime default)");
  gen->add_option("--seed", o.seed, "rgg seed");
  gen->add_option("--output", o.output, "Output path")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  if (part->parsed()) return partition_command(Mode::flat, o, out);
  if (map->parsed()) return partition_command(Mode::oms, o, out);
  if (nh->parsed()) return partition_command(Mode::nh_oms, o, out);
  if (eval->parsed()) return eval_command(o, out);
  if (bench->parsed()) return bench_command(o, out, err);
  return gen_command(o);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const FlagError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    err << "infeasible: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    // ParseError, IoError and stream open/read failures
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace streampart::cli
