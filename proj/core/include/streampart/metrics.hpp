#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "streampart/graph_stream.hpp"
#include "streampart/hierarchy.hpp"
#include "streampart/partitioner.hpp"

namespace streampart {

struct QualityReport {
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::uint64_t k = 0;
  EdgeWeight total_edge_weight = 0;
  EdgeWeight edge_cut = 0;
  // Sum over undirected edges (counted once) of omega(u,v) * D(pi(u), pi(v)).
  // The symmetric double sum over ordered pairs is exactly twice this.
  std::optional<double> mapping_cost;
  NodeWeight total_node_weight = 0;
  NodeWeight max_block_weight = 0;
  double imbalance = 0.0;  // max_block_weight / (c(V) / k) - 1
  // per_layer_cut[j-1]: weight of cut edges whose endpoints first share a
  // level-j module. Sums to edge_cut. Empty without a hierarchy.
  std::vector<EdgeWeight> per_layer_cut;

  // Echo of the run that produced the assignment, when known.
  std::optional<RunCounters> counters;

  bool operator==(const QualityReport&) const = default;
};

// One streaming pass; undirected edges counted once (from the lower id).
// Throws ConfigError for unassigned or out-of-range labels.
QualityReport evaluate(GraphStream& stream, std::span<const PeId> assignment, std::uint64_t k,
                       const HierarchySpec* spec = nullptr, const DistanceSpec* dist = nullptr);

// (sigma_b / sigma_a - 1) * 100; nullopt when sigma_a == 0.
std::optional<double> improvement(double sigma_a, double sigma_b);

double arithmetic_mean(std::span<const double> values);
// Throws ConfigError on an empty input or a value <= 0.
double geometric_mean(std::span<const double> values);
// Repetitions averaged arithmetically per instance, then the geometric mean
// across instances.
double aggregate(const std::vector<std::vector<double>>& repetitions_per_instance);

struct ProfilePoint {
  double tau = 1.0;
  double fraction = 0.0;
};

// Geometric grid 1, 1.05, 1.05^2, ... below max_ratio, closed by max_ratio.
std::vector<double> profile_taus(double max_ratio, double step = 1.05);

// values[instance][algorithm] > 0. Returns, per algorithm, the fraction of
// instances with value <= tau * (instance minimum) for every tau; taus
// defaults to profile_taus over the observed maximum ratio.
std::vector<std::vector<ProfilePoint>> performance_profile(const std::vector<std::vector<double>>& values,
                                                           std::vector<double> taus = {});

std::string profile_csv(const std::vector<std::string>& algorithms,
                        const std::vector<std::vector<ProfilePoint>>& profile);

std::string to_json(const QualityReport& report, int indent = 2);

}  // namespace streampart
