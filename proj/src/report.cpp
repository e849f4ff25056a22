#include "semnet/report.hpp"

#include <algorithm>
#include <stdexcept>

#include "semnet/kernels/kernels.hpp"
#include "semnet/log.hpp"
#include "semnet/util.hpp"

namespace semnet {

namespace {

std::vector<std::string> prefix_suggestions(const CooccurrenceCounts& counts,
                                            std::string_view anchor, std::size_t limit = 5) {
  std::string prefix(anchor);
  while (!prefix.empty()) {
    std::vector<std::string> hits;
    for (const auto& term : counts.vocabulary) {
      if (term.compare(0, prefix.size(), prefix) == 0) hits.push_back(term);
    }
    if (!hits.empty()) {
      std::sort(hits.begin(), hits.end());
      if (hits.size() > limit) hits.resize(limit);
      return hits;
    }
    // shrink by whole codepoints so CJK prefixes stay valid UTF-8
    std::size_t cut = prefix.size() - 1;
    while (cut > 0 && (static_cast<unsigned char>(prefix[cut]) & 0xC0) == 0x80) --cut;
    prefix.resize(cut);
  }
  return {};
}

}  // namespace

std::vector<NeighborhoodRow> neighborhood_table(const CooccurrenceCounts& counts,
                                                std::string_view anchor, std::size_t top_n) {
  const auto anchor_id = counts.id_of(anchor);
  if (!anchor_id) {
    std::string msg = "anchor \"" + std::string(anchor) + "\" is not in the vocabulary";
    const auto close = prefix_suggestions(counts, anchor);
    if (!close.empty()) {
      msg += "; closest matches:";
      for (const auto& term : close) msg += " " + term;
    }
    throw std::invalid_argument(msg);
  }

  std::vector<std::uint32_t> neighbors;
  std::vector<double> pw, xw, yw;
  for (std::uint32_t y = 0; y < counts.vocabulary.size(); ++y) {
    if (y == *anchor_id) continue;
    const std::uint64_t pair = counts.pair_count(*anchor_id, y);
    if (pair == 0) continue;
    neighbors.push_back(y);
    pw.push_back(static_cast<double>(pair));
    xw.push_back(static_cast<double>(counts.term_windows[*anchor_id]));
    yw.push_back(static_cast<double>(counts.term_windows[y]));
  }
  if (neighbors.empty()) {
    log::warn("neighborhood_table: anchor \"" + std::string(anchor) +
              "\" has no co-occurring terms");
    return {};
  }

  std::vector<double> pmi(neighbors.size()), h(neighbors.size()), npmi_v(neighbors.size());
  kernels::active().npmi_batch(pw.data(), xw.data(), yw.data(),
                               static_cast<double>(counts.total_windows), pmi.data(), h.data(),
                               npmi_v.data(), neighbors.size());

  std::vector<std::size_t> order(neighbors.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (npmi_v[a] != npmi_v[b]) return npmi_v[a] > npmi_v[b];
    return counts.vocabulary[neighbors[a]] < counts.vocabulary[neighbors[b]];
  });

  std::vector<NeighborhoodRow> rows;
  rows.reserve(std::min(top_n, order.size()));
  for (std::size_t r = 0; r < order.size() && r < top_n; ++r) {
    const std::size_t i = order[r];
    NeighborhoodRow row;
    row.anchor = std::string(anchor);
    row.neighbor = counts.vocabulary[neighbors[i]];
    row.npmi = npmi_v[i];
    row.total_windows = counts.total_windows;
    row.anchor_windows = counts.term_windows[*anchor_id];
    row.neighbor_windows = counts.term_windows[neighbors[i]];
    row.pair_windows = static_cast<std::uint64_t>(pw[i]);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<MetricsRow> metrics_table(const SemanticNetwork& g, const CentralityReport& centrality,
                                      const std::unordered_map<std::string, std::string>& gloss) {
  const std::size_t n = g.node_count();
  if (centrality.degree.size() != n || centrality.betweenness.size() != n ||
      centrality.eigenvector.size() != n) {
    throw std::invalid_argument("metrics_table: centrality report does not match the network");
  }
  std::vector<MetricsRow> rows;
  rows.reserve(n);
  for (std::size_t v = 0; v < n; ++v) {
    MetricsRow row;
    row.term = g.nodes()[v].term;
    if (const auto it = gloss.find(row.term); it != gloss.end()) row.gloss = it->second;
    row.frequency = g.nodes()[v].frequency;
    row.degree = centrality.degree[v];
    row.betweenness = centrality.betweenness[v];
    row.eigenvector = centrality.eigenvector[v];
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), [](const MetricsRow& a, const MetricsRow& b) {
    if (a.degree != b.degree) return a.degree > b.degree;
    return a.term < b.term;
  });
  return rows;
}

ComparativeReport comparative_report(const std::vector<ComparisonRun>& runs, std::size_t top_n) {
  if (runs.empty()) throw std::invalid_argument("comparative_report: need at least one run");
  ComparativeReport report;
  for (const auto& run : runs) {
    if (run.network == nullptr || run.counts == nullptr) {
      throw std::invalid_argument("comparative_report: run \"" + run.jurisdiction +
                                  "\" lacks network or counts");
    }
    JurisdictionPanel panel;
    panel.jurisdiction = run.jurisdiction;
    panel.anchor = run.anchor;

    const auto degree = degree_centrality(*run.network);
    const auto eigen = eigenvector_centrality(*run.network, run.metrics.eigenvector_weighted,
                                              run.metrics.tol, run.metrics.max_iter);
    const auto top_by = [&](const std::vector<double>& values) {
      std::vector<std::size_t> order(values.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (values[a] != values[b]) return values[a] > values[b];
        return run.network->nodes()[a].term < run.network->nodes()[b].term;
      });
      std::vector<PanelEntry> entries;
      for (std::size_t r = 0; r < order.size() && r < top_n; ++r) {
        PanelEntry entry;
        entry.term = run.network->nodes()[order[r]].term;
        if (const auto it = run.gloss.find(entry.term); it != run.gloss.end()) {
          entry.gloss = it->second;
        }
        entry.value = values[order[r]];
        entries.push_back(std::move(entry));
      }
      return entries;
    };
    panel.top_degree = top_by(degree);
    panel.top_eigenvector = top_by(eigen);
    if (panel.top_degree.size() < top_n) {
      log::warn("comparative_report: " + run.jurisdiction + " network has fewer than " +
                std::to_string(top_n) + " nodes");
    }

    if (!run.counts->id_of(run.anchor)) {
      panel.anchor_available = false;
      log::warn("comparative_report: anchor \"" + run.anchor + "\" missing in " +
                run.jurisdiction + "; panel marked unavailable");
    } else {
      for (const auto& row : neighborhood_table(*run.counts, run.anchor, top_n)) {
        PanelEntry entry;
        entry.term = row.neighbor;
        if (const auto it = run.gloss.find(entry.term); it != run.gloss.end()) {
          entry.gloss = it->second;
        }
        entry.value = row.npmi;
        panel.top_anchor_npmi.push_back(std::move(entry));
      }
    }
    report.panels.push_back(std::move(panel));
  }
  return report;
}

std::string render_metrics_csv(const std::vector<MetricsRow>& rows) {
  const bool with_gloss =
      std::any_of(rows.begin(), rows.end(), [](const MetricsRow& r) { return !r.gloss.empty(); });
  std::string out = with_gloss
                        ? "Term,Gloss,Frequency,Degree Centrality,Betweenness Centrality,"
                          "Eigenvector Centrality\n"
                        : "Term,Frequency,Degree Centrality,Betweenness Centrality,"
                          "Eigenvector Centrality\n";
  for (const auto& row : rows) {
    out += csv_field(row.term);
    if (with_gloss) out += "," + csv_field(row.gloss);
    out += "," + std::to_string(row.frequency);
    out += "," + format_fixed(row.degree, 4);
    out += "," + format_fixed(row.betweenness, 4);
    out += "," + format_fixed(row.eigenvector, 4);
    out += "\n";
  }
  return out;
}

nlohmann::json metrics_to_json(const std::vector<MetricsRow>& rows,
                               const std::string& jurisdiction) {
  nlohmann::json doc;
  doc["schema_version"] = 1;
  doc["jurisdiction"] = jurisdiction;
  nlohmann::json out = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json r{{"term", row.term},
                     {"frequency", row.frequency},
                     {"degree_centrality", row.degree},
                     {"betweenness", row.betweenness},
                     {"eigenvector", row.eigenvector}};
    if (!row.gloss.empty()) r["gloss"] = row.gloss;
    out.push_back(std::move(r));
  }
  doc["rows"] = std::move(out);
  return doc;
}

std::string render_neighborhood_csv(const std::string& region,
                                    const std::vector<NeighborhoodRow>& rows) {
  std::string out =
      "Region,Anchor,Neighbor,NPMI,Total_Windows,Anchor_Windows,Neighbor_Windows,Pair_Windows\n";
  for (const auto& row : rows) {
    out += csv_field(region);
    out += "," + csv_field(row.anchor);
    out += "," + csv_field(row.neighbor);
    out += "," + format_fixed(row.npmi, 4);
    out += "," + std::to_string(row.total_windows);
    out += "," + std::to_string(row.anchor_windows);
    out += "," + std::to_string(row.neighbor_windows);
    out += "," + std::to_string(row.pair_windows);
    out += "\n";
  }
  return out;
}

nlohmann::json neighborhood_to_json(const std::string& region, const std::string& anchor,
                                    const std::vector<NeighborhoodRow>& rows) {
  nlohmann::json doc;
  doc["schema_version"] = 1;
  doc["region"] = region;
  doc["anchor"] = anchor;
  nlohmann::json out = nlohmann::json::array();
  for (const auto& row : rows) {
    out.push_back({{"neighbor", row.neighbor},
                   {"npmi", row.npmi},
                   {"total_windows", row.total_windows},
                   {"anchor_windows", row.anchor_windows},
                   {"neighbor_windows", row.neighbor_windows},
                   {"pair_windows", row.pair_windows}});
  }
  doc["rows"] = std::move(out);
  return doc;
}

namespace {

std::string panel_entry_line(std::size_t rank, const PanelEntry& entry) {
  std::string line = "  " + std::to_string(rank) + ". " + entry.term;
  if (!entry.gloss.empty()) line += " (" + entry.gloss + ")";
  line += " (" + format_fixed(entry.value, 3) + ")";
  return line + "\n";
}

}  // namespace

std::string render_comparative_text(const ComparativeReport& report) {
  std::string out = "Comparative topological metrics\n";
  for (const auto& panel : report.panels) {
    out += "\n[" + panel.jurisdiction + "]\n";
    out += "Top degree centrality:\n";
    for (std::size_t i = 0; i < panel.top_degree.size(); ++i) {
      out += panel_entry_line(i + 1, panel.top_degree[i]);
    }
    out += "Top eigenvector centrality:\n";
    for (std::size_t i = 0; i < panel.top_eigenvector.size(); ++i) {
      out += panel_entry_line(i + 1, panel.top_eigenvector[i]);
    }
    if (panel.anchor_available) {
      out += "Top NPMI neighbors of \"" + panel.anchor + "\":\n";
      for (std::size_t i = 0; i < panel.top_anchor_npmi.size(); ++i) {
        out += panel_entry_line(i + 1, panel.top_anchor_npmi[i]);
      }
    } else {
      out += "Top NPMI neighbors of \"" + panel.anchor + "\": unavailable (anchor not in vocabulary)\n";
    }
  }
  return out;
}

nlohmann::json comparative_to_json(const ComparativeReport& report) {
  nlohmann::json doc;
  doc["schema_version"] = 1;
  nlohmann::json panels = nlohmann::json::array();
  for (const auto& panel : report.panels) {
    const auto entries = [](const std::vector<PanelEntry>& list) {
      nlohmann::json out = nlohmann::json::array();
      for (const auto& e : list) {
        nlohmann::json entry{{"term", e.term}, {"value", e.value}};
        if (!e.gloss.empty()) entry["gloss"] = e.gloss;
        out.push_back(std::move(entry));
      }
      return out;
    };
    panels.push_back({{"jurisdiction", panel.jurisdiction},
                      {"anchor", panel.anchor},
                      {"anchor_available", panel.anchor_available},
                      {"top_degree", entries(panel.top_degree)},
                      {"top_eigenvector", entries(panel.top_eigenvector)},
                      {"top_anchor_npmi", entries(panel.top_anchor_npmi)}});
  }
  doc["panels"] = std::move(panels);
  return doc;
}

namespace {

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

std::string export_graphml(const SemanticNetwork& g, const CentralityReport* centrality) {
  std::string out =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\"\n"
      "         xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\"\n"
      "         xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns "
      "http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n"
      "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
      "  <key id=\"frequency\" for=\"node\" attr.name=\"frequency\" attr.type=\"long\"/>\n"
      "  <key id=\"windows\" for=\"node\" attr.name=\"windows\" attr.type=\"long\"/>\n";
  if (centrality != nullptr) {
    out +=
        "  <key id=\"degree\" for=\"node\" attr.name=\"degree_centrality\" attr.type=\"double\"/>\n"
        "  <key id=\"betweenness\" for=\"node\" attr.name=\"betweenness\" attr.type=\"double\"/>\n"
        "  <key id=\"eigenvector\" for=\"node\" attr.name=\"eigenvector\" attr.type=\"double\"/>\n";
  }
  out +=
      "  <key id=\"npmi\" for=\"edge\" attr.name=\"npmi\" attr.type=\"double\"/>\n"
      "  <key id=\"raw\" for=\"edge\" attr.name=\"pair_windows\" attr.type=\"long\"/>\n";
  out += "  <graph id=\"" + xml_escape(g.jurisdiction()) + "\" edgedefault=\"undirected\">\n";
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    const auto& node = g.nodes()[v];
    out += "    <node id=\"n" + std::to_string(v) + "\">";
    out += "<data key=\"label\">" + xml_escape(node.term) + "</data>";
    out += "<data key=\"frequency\">" + std::to_string(node.frequency) + "</data>";
    out += "<data key=\"windows\">" + std::to_string(node.windows) + "</data>";
    if (centrality != nullptr) {
      out += "<data key=\"degree\">" + format_double(centrality->degree[v]) + "</data>";
      out += "<data key=\"betweenness\">" + format_double(centrality->betweenness[v]) + "</data>";
      out += "<data key=\"eigenvector\">" + format_double(centrality->eigenvector[v]) + "</data>";
    }
    out += "</node>\n";
  }
  for (const auto& e : g.edges()) {
    out += "    <edge source=\"n" + std::to_string(e.u) + "\" target=\"n" + std::to_string(e.v) +
           "\">";
    out += "<data key=\"npmi\">" + format_double(e.npmi) + "</data>";
    out += "<data key=\"raw\">" + std::to_string(e.pair_windows) + "</data>";
    out += "</edge>\n";
  }
  out += "  </graph>\n</graphml>\n";
  return out;
}

nlohmann::json network_to_json(const SemanticNetwork& g, const CentralityReport* centrality) {
  nlohmann::json doc;
  doc["schema_version"] = 1;
  doc["jurisdiction"] = g.jurisdiction();
  nlohmann::json nodes = nlohmann::json::array();
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    const auto& node = g.nodes()[v];
    nlohmann::json n{{"term", node.term}, {"frequency", node.frequency}, {"windows", node.windows}};
    if (centrality != nullptr) {
      n["degree_centrality"] = centrality->degree[v];
      n["betweenness"] = centrality->betweenness[v];
      n["eigenvector"] = centrality->eigenvector[v];
    }
    nodes.push_back(std::move(n));
  }
  doc["nodes"] = std::move(nodes);
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges()) {
    edges.push_back({{"source", g.nodes()[e.u].term},
                     {"target", g.nodes()[e.v].term},
                     {"npmi", e.npmi},
                     {"pair_windows", e.pair_windows}});
  }
  doc["edges"] = std::move(edges);
  return doc;
}

SemanticNetwork network_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("nodes") || !doc.contains("edges")) {
    throw ConfigError("network file: expected object with nodes and edges");
  }
  std::vector<NetworkNode> nodes;
  std::unordered_map<std::string, std::uint32_t> ids;
  for (const auto& n : doc["nodes"]) {
    NetworkNode node;
    node.term = n.at("term").get<std::string>();
    node.frequency = n.value("frequency", std::uint64_t{0});
    node.windows = n.value("windows", std::uint64_t{0});
    ids.emplace(node.term, static_cast<std::uint32_t>(nodes.size()));
    nodes.push_back(std::move(node));
  }
  std::vector<Edge> edges;
  for (const auto& e : doc["edges"]) {
    const auto su = ids.find(e.at("source").get<std::string>());
    const auto sv = ids.find(e.at("target").get<std::string>());
    if (su == ids.end() || sv == ids.end()) {
      throw ConfigError("network file: edge references unknown term");
    }
    edges.push_back({su->second, sv->second, e.at("npmi").get<double>(),
                     e.at("pair_windows").get<std::uint64_t>()});
  }
  return SemanticNetwork(doc.value("jurisdiction", std::string{}), std::move(nodes),
                         std::move(edges));
}

std::string export_csv_edges(const SemanticNetwork& g) {
  std::string out = "source,target,npmi,pair_windows\n";
  for (const auto& e : g.edges()) {
    out += csv_field(g.nodes()[e.u].term) + "," + csv_field(g.nodes()[e.v].term) + "," +
           format_double(e.npmi) + "," + std::to_string(e.pair_windows) + "\n";
  }
  return out;
}

std::string export_graph(const SemanticNetwork& g, const std::string& format,
                         const CentralityReport* centrality) {
  if (format == "graphml") return export_graphml(g, centrality);
  if (format == "json") return network_to_json(g, centrality).dump(2) + "\n";
  if (format == "csv-edges") return export_csv_edges(g);
  throw std::invalid_argument("unknown graph format \"" + format +
                              "\" (valid: graphml, json, csv-edges)");
}

}  // namespace semnet
