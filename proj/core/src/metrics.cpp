#include "streampart/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace streampart {

QualityReport evaluate(GraphStream& stream, std::span<const PeId> assignment, std::uint64_t k,
                       const HierarchySpec* spec, const DistanceSpec* dist) {
  const auto& header = stream.header();
  if (assignment.size() != header.n) {
    throw ConfigError("assignment has " + std::to_string(assignment.size()) + " entries, graph has " +
                      std::to_string(header.n) + " nodes");
  }
  if (spec && spec->k != k) throw ConfigError("hierarchy k does not match partition k");
  auto label = [&](NodeId v) {
    const PeId pe = assignment[v];
    if (pe == kUnassigned) throw ConfigError("node " + std::to_string(v) + " is unassigned");
    if (pe > k) throw ConfigError("node " + std::to_string(v) + " has label out of range");
    return pe;
  };

  QualityReport report;
  report.n = header.n;
  report.m = header.m;
  report.k = k;
  if (spec) report.per_layer_cut.assign(spec->ell(), 0);
  std::vector<NodeWeight> loads(k, 0);
  double mapping = 0.0;

  NodeRecord record;
  while (stream.next(record)) {
    const PeId pu = label(record.id);
    loads[pu - 1] += record.weight;
    report.total_node_weight += record.weight;
    for (const auto& nb : record.neighbors) {
      if (nb.id < record.id) continue;
      report.total_edge_weight += nb.weight;
      const PeId pv = label(nb.id);
      if (pu == pv) continue;
      report.edge_cut += nb.weight;
      if (spec) {
        const std::size_t level = divergence_level(*spec, pu, pv);
        report.per_layer_cut[level - 1] += nb.weight;
        if (dist) mapping += static_cast<double>(nb.weight) * dist->distances[level - 1];
      }
    }
  }
  if (spec && dist) report.mapping_cost = mapping;
  report.max_block_weight = *std::max_element(loads.begin(), loads.end());
  const double average = static_cast<double>(report.total_node_weight) / static_cast<double>(k);
  report.imbalance = static_cast<double>(report.max_block_weight) / average - 1.0;
  return report;
}

std::optional<double> improvement(double sigma_a, double sigma_b) {
  if (sigma_a == 0.0) return std::nullopt;
  return (sigma_b / sigma_a - 1.0) * 100.0;
}

double arithmetic_mean(std::span<const double> values) {
  if (values.empty()) throw ConfigError("mean of an empty set");
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double geometric_mean(std::span<const double> values) {
  if (values.empty()) throw ConfigError("geometric mean of an empty set");
  double log_sum = 0.0;
  for (double v : values) {
    if (!(v > 0.0)) throw ConfigError("geometric mean needs positive values");
    log_sum += std::log(v);
  }
  return std::exp(log_sum / static_cast<double>(values.size()));
}

double aggregate(const std::vector<std::vector<double>>& repetitions_per_instance) {
  std::vector<double> per_instance;
  per_instance.reserve(repetitions_per_instance.size());
  for (const auto& reps : repetitions_per_instance) per_instance.push_back(arithmetic_mean(reps));
  return geometric_mean(per_instance);
}

std::vector<double> profile_taus(double max_ratio, double step) {
  std::vector<double> taus{1.0};
  for (double tau = step; tau < max_ratio; tau *= step) taus.push_back(tau);
  if (max_ratio > 1.0) taus.push_back(max_ratio);
  return taus;
}

std::vector<std::vector<ProfilePoint>> performance_profile(const std::vector<std::vector<double>>& values,
                                                           std::vector<double> taus) {
  if (values.empty() || values.front().empty()) throw ConfigError("performance profile of an empty matrix");
  const std::size_t algorithms = values.front().size();
  std::vector<std::vector<double>> ratios(values.size(), std::vector<double>(algorithms));
  double max_ratio = 1.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].size() != algorithms) throw ConfigError("ragged performance matrix");
    for (double v : values[i]) {
      if (!(v > 0.0)) throw ConfigError("performance profile needs positive values");
    }
    const double best = *std::min_element(values[i].begin(), values[i].end());
    for (std::size_t a = 0; a < algorithms; ++a) {
      ratios[i][a] = values[i][a] / best;
      max_ratio = std::max(max_ratio, ratios[i][a]);
    }
  }
  if (taus.empty()) taus = profile_taus(max_ratio);

  std::vector<std::vector<ProfilePoint>> profile(algorithms);
  const auto instances = static_cast<double>(values.size());
  for (std::size_t a = 0; a < algorithms; ++a) {
    for (double tau : taus) {
      std::size_t within = 0;
      for (const auto& row : ratios) within += row[a] <= tau ? 1 : 0;
      profile[a].push_back({tau, static_cast<double>(within) / instances});
    }
  }
  return profile;
}

std::string profile_csv(const std::vector<std::string>& algorithms,
                        const std::vector<std::vector<ProfilePoint>>& profile) {
  std::ostringstream out;
  out.precision(10);
  out << "algorithm,tau,fraction\n";
  for (std::size_t a = 0; a < profile.size(); ++a) {
    for (const auto& p : profile[a]) out << algorithms.at(a) << ',' << p.tau << ',' << p.fraction << '\n';
  }
  return out.str();
}

}  // namespace streampart
