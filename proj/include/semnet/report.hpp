#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "semnet/cooccur.hpp"
#include "semnet/network.hpp"

namespace semnet {

// One neighbor of an anchor term, with the full count columns so every
// printed value can be recomputed from the counts dump.
struct NeighborhoodRow {
  std::string anchor;
  std::string neighbor;
  double npmi = 0.0;
  std::uint64_t total_windows = 0;
  std::uint64_t anchor_windows = 0;
  std::uint64_t neighbor_windows = 0;
  std::uint64_t pair_windows = 0;
};

// Top co-occurring terms of `anchor`, ranked by exact (unrounded) NPMI
// descending, ties by neighbor term ascending. Unknown anchor raises an
// error listing the closest vocabulary terms by prefix.
std::vector<NeighborhoodRow> neighborhood_table(const CooccurrenceCounts& counts,
                                                std::string_view anchor, std::size_t top_n = 20);

struct MetricsRow {
  std::string term;
  std::string gloss;  // optional, CJK terms
  std::uint64_t frequency = 0;
  double degree = 0.0;
  double betweenness = 0.0;
  double eigenvector = 0.0;
};

// One row per node, sorted by degree centrality descending then term
// ascending.
std::vector<MetricsRow> metrics_table(
    const SemanticNetwork& g, const CentralityReport& centrality,
    const std::unordered_map<std::string, std::string>& gloss = {});

struct PanelEntry {
  std::string term;
  std::string gloss;
  double value = 0.0;
};

struct JurisdictionPanel {
  std::string jurisdiction;
  std::string anchor;
  bool anchor_available = true;
  std::vector<PanelEntry> top_degree;
  std::vector<PanelEntry> top_eigenvector;
  std::vector<PanelEntry> top_anchor_npmi;
};

struct ComparisonRun {
  std::string jurisdiction;
  const SemanticNetwork* network = nullptr;
  const CooccurrenceCounts* counts = nullptr;
  std::string anchor;
  CentralityOptions metrics;
  std::unordered_map<std::string, std::string> gloss;
};

struct ComparativeReport {
  std::vector<JurisdictionPanel> panels;
};

// Three top-5 panels per jurisdiction: degree centrality, eigenvector
// centrality, and the NPMI neighborhood of the configured anchor. A missing
// anchor marks that panel unavailable; the others are still produced.
ComparativeReport comparative_report(const std::vector<ComparisonRun>& runs, std::size_t top_n = 5);

// Rendering. CSV is UTF-8, comma-separated, header row, LF line endings;
// centrality and NPMI cells carry 4 decimals. JSON mirrors keep full
// precision and a schema_version field.
std::string render_metrics_csv(const std::vector<MetricsRow>& rows);
nlohmann::json metrics_to_json(const std::vector<MetricsRow>& rows, const std::string& jurisdiction);
std::string render_neighborhood_csv(const std::string& region,
                                    const std::vector<NeighborhoodRow>& rows);
nlohmann::json neighborhood_to_json(const std::string& region, const std::string& anchor,
                                    const std::vector<NeighborhoodRow>& rows);
std::string render_comparative_text(const ComparativeReport& report);
nlohmann::json comparative_to_json(const ComparativeReport& report);

// Graph exports: "graphml", "json" or "csv-edges". The JSON form round-trips
// through network_from_json.
std::string export_graphml(const SemanticNetwork& g, const CentralityReport* centrality = nullptr);
nlohmann::json network_to_json(const SemanticNetwork& g,
                               const CentralityReport* centrality = nullptr);
SemanticNetwork network_from_json(const nlohmann::json& doc);
std::string export_csv_edges(const SemanticNetwork& g);

std::string export_graph(const SemanticNetwork& g, const std::string& format,
                         const CentralityReport* centrality = nullptr);

}  // namespace semnet
