#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "semnet/association.hpp"

namespace semnet {

struct NetworkNode {
  std::string term;
  std::uint64_t frequency = 0;  // raw occurrences
  std::uint64_t windows = 0;    // windows containing the term
};

// Undirected weighted graph over vocabulary terms. Edge weights are NPMI
// values; raw pair-window counts ride along for reporting.
class SemanticNetwork {
 public:
  SemanticNetwork(std::string jurisdiction, std::vector<NetworkNode> nodes,
                  std::vector<Edge> edges);

  const std::string& jurisdiction() const { return jurisdiction_; }
  std::size_t node_count() const { return nodes_.size(); }
  const std::vector<NetworkNode>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }

  // adjacency()[v] = (neighbor, npmi weight), in edge insertion order.
  const std::vector<std::vector<std::pair<std::uint32_t, double>>>& adjacency() const {
    return adjacency_;
  }

 private:
  std::string jurisdiction_;
  std::vector<NetworkNode> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adjacency_;
};

// deg(v) / (n - 1), weights ignored. Requires n >= 2.
std::vector<double> degree_centrality(const SemanticNetwork& g);

// Brandes shortest-path betweenness over an undirected graph. Equal-length
// paths split credit fractionally. normalized divides by (n-1)(n-2)/2 and
// requires n >= 3. use_weights treats edge distance as 1/weight and refuses
// graphs with non-positive weights (back-off edges can carry npmi <= 0).
std::vector<double> betweenness_centrality(const SemanticNetwork& g, bool normalized = true,
                                           bool use_weights = false);

// Principal eigenvector of the (weighted) adjacency matrix, L2-normalised,
// all components >= 0. Power iteration with a +I shift so bipartite
// components converge to the same principal eigenvector; starts from the
// uniform vector, stops when the max component change drops below tol.
// Negative weights are clamped to 0 inside this computation only. On a
// disconnected graph the iteration runs on the largest connected component
// and the remaining nodes score 0, with a warning.
std::vector<double> eigenvector_centrality(const SemanticNetwork& g, bool use_weights = true,
                                           double tol = 1e-6, int max_iter = 1000);

struct CentralityOptions {
  bool betweenness_weighted = false;
  bool eigenvector_weighted = true;
  double tol = 1e-6;
  int max_iter = 1000;
};

struct CentralityReport {
  std::vector<double> degree;
  std::vector<double> betweenness;
  std::vector<double> eigenvector;
};

CentralityReport compute_centralities(const SemanticNetwork& g, const CentralityOptions& opts);

}  // namespace semnet
