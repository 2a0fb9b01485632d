#include <nlohmann/json.hpp>

#include "streampart/metrics.hpp"

namespace streampart {

std::string to_json(const QualityReport& report, int indent) {
  nlohmann::ordered_json quality;
  quality["n"] = report.n;
  quality["m"] = report.m;
  quality["k"] = report.k;
  quality["total_edge_weight"] = report.total_edge_weight;
  quality["edge_cut"] = report.edge_cut;
  quality["mapping_cost_J"] = report.mapping_cost ? nlohmann::ordered_json(*report.mapping_cost) : nlohmann::ordered_json(nullptr);
  quality["total_node_weight"] = report.total_node_weight;
  quality["max_block_weight"] = report.max_block_weight;
  quality["imbalance"] = report.imbalance;
  quality["per_layer_cut"] = report.per_layer_cut;

  nlohmann::ordered_json doc;
  doc["quality"] = std::move(quality);
  if (report.counters) {
    const auto& c = *report.counters;
    doc["counters"] = {
        {"score_evaluations", c.score_evaluations}, {"hash_evaluations", c.hash_evaluations},
        {"nodes_processed", c.nodes_processed},     {"edges_scanned", c.edges_scanned},
        {"overflow_events", c.overflow_events},     {"rehash_events", c.rehash_events},
    };
  }
  return doc.dump(indent);
}

}  // namespace streampart
