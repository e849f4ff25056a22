#include "semnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>
#include <stdexcept>
#include <unordered_set>

#include "semnet/kernels/kernels.hpp"
#include "semnet/log.hpp"

namespace semnet {

SemanticNetwork::SemanticNetwork(std::string jurisdiction, std::vector<NetworkNode> nodes,
                                 std::vector<Edge> edges)
    : jurisdiction_(std::move(jurisdiction)), nodes_(std::move(nodes)), edges_(std::move(edges)) {
  adjacency_.resize(nodes_.size());
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges_.size());
  for (const auto& e : edges_) {
    if (e.u == e.v) throw std::invalid_argument("self-loop on node " + std::to_string(e.u));
    if (e.u >= nodes_.size() || e.v >= nodes_.size()) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (!seen.insert(CooccurrenceCounts::pair_key(e.u, e.v)).second) {
      throw std::invalid_argument("duplicate edge between nodes " + std::to_string(e.u) + " and " +
                                  std::to_string(e.v));
    }
    adjacency_[e.u].emplace_back(e.v, e.npmi);
    adjacency_[e.v].emplace_back(e.u, e.npmi);
  }
}

std::vector<double> degree_centrality(const SemanticNetwork& g) {
  const std::size_t n = g.node_count();
  if (n < 2) throw std::invalid_argument("degree_centrality: need at least 2 nodes");
  std::vector<double> out(n);
  for (std::size_t v = 0; v < n; ++v) {
    out[v] = static_cast<double>(g.adjacency()[v].size()) / static_cast<double>(n - 1);
  }
  return out;
}

namespace {

struct ShortestPathDag {
  std::vector<double> sigma;                       // shortest path counts
  std::vector<std::vector<std::uint32_t>> preds;   // predecessors on shortest paths
  std::vector<std::uint32_t> order;                // non-decreasing distance from source
};

ShortestPathDag bfs_dag(const SemanticNetwork& g, std::uint32_t s) {
  const std::size_t n = g.node_count();
  ShortestPathDag dag;
  dag.sigma.assign(n, 0.0);
  dag.preds.assign(n, {});
  std::vector<std::int64_t> dist(n, -1);
  dag.sigma[s] = 1.0;
  dist[s] = 0;
  std::deque<std::uint32_t> queue{s};
  while (!queue.empty()) {
    const std::uint32_t v = queue.front();
    queue.pop_front();
    dag.order.push_back(v);
    for (const auto& [w, _] : g.adjacency()[v]) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
      if (dist[w] == dist[v] + 1) {
        dag.sigma[w] += dag.sigma[v];
        dag.preds[w].push_back(v);
      }
    }
  }
  return dag;
}

ShortestPathDag dijkstra_dag(const SemanticNetwork& g, std::uint32_t s) {
  const std::size_t n = g.node_count();
  ShortestPathDag dag;
  dag.sigma.assign(n, 0.0);
  dag.preds.assign(n, {});
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, kInf);
  std::vector<bool> done(n, false);
  dag.sigma[s] = 1.0;
  dist[s] = 0.0;
  using Item = std::pair<double, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  heap.push({0.0, s});
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (done[v]) continue;
    done[v] = true;
    dag.order.push_back(v);
    for (const auto& [w, weight] : g.adjacency()[v]) {
      const double nd = d + 1.0 / weight;
      if (nd < dist[w]) {
        dist[w] = nd;
        dag.sigma[w] = dag.sigma[v];
        dag.preds[w].assign(1, v);
        heap.push({nd, w});
      } else if (!done[w] && nd == dist[w]) {
        dag.sigma[w] += dag.sigma[v];
        dag.preds[w].push_back(v);
      }
    }
  }
  return dag;
}

}  // namespace

std::vector<double> betweenness_centrality(const SemanticNetwork& g, bool normalized,
                                           bool use_weights) {
  const std::size_t n = g.node_count();
  if (normalized && n < 3) {
    throw std::invalid_argument("betweenness_centrality: normalized output needs n >= 3");
  }
  if (use_weights) {
    for (const auto& e : g.edges()) {
      if (e.npmi <= 0.0) {
        throw std::invalid_argument(
            "betweenness_centrality: non-positive edge weight on (" + g.nodes()[e.u].term + ", " +
            g.nodes()[e.v].term + "); run in unweighted mode");
      }
    }
  }

  std::vector<double> centrality(n, 0.0);
  std::vector<double> delta(n);
  for (std::uint32_t s = 0; s < n; ++s) {
    const ShortestPathDag dag = use_weights ? dijkstra_dag(g, s) : bfs_dag(g, s);
    std::fill(delta.begin(), delta.end(), 0.0);
    // dependency accumulation in reverse order of distance
    for (auto it = dag.order.rbegin(); it != dag.order.rend(); ++it) {
      const std::uint32_t w = *it;
      for (const std::uint32_t v : dag.preds[w]) {
        delta[v] += dag.sigma[v] / dag.sigma[w] * (1.0 + delta[w]);
      }
      if (w != s) centrality[w] += delta[w];
    }
  }

  // Each unordered pair was visited from both endpoints.
  double scale = 0.5;
  if (normalized) scale = 1.0 / (static_cast<double>(n - 1) * static_cast<double>(n - 2));
  for (double& c : centrality) c *= scale;
  return centrality;
}

namespace {

std::vector<std::uint32_t> largest_component(const SemanticNetwork& g) {
  const std::size_t n = g.node_count();
  std::vector<std::int32_t> comp(n, -1);
  std::int32_t ncomp = 0;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = ncomp;
    std::deque<std::uint32_t> queue{s};
    while (!queue.empty()) {
      const std::uint32_t v = queue.front();
      queue.pop_front();
      for (const auto& [w, _] : g.adjacency()[v]) {
        if (comp[w] < 0) {
          comp[w] = ncomp;
          queue.push_back(w);
        }
      }
    }
    ++ncomp;
  }
  std::vector<std::size_t> sizes(ncomp, 0);
  for (std::uint32_t v = 0; v < n; ++v) ++sizes[comp[v]];
  // ties go to the component holding the lowest node index
  std::int32_t best = 0;
  for (std::int32_t c = 1; c < ncomp; ++c) {
    if (sizes[c] > sizes[best]) best = c;
  }
  std::vector<std::uint32_t> members;
  members.reserve(sizes[best]);
  for (std::uint32_t v = 0; v < n; ++v) {
    if (comp[v] == best) members.push_back(v);
  }
  return members;
}

}  // namespace

std::vector<double> eigenvector_centrality(const SemanticNetwork& g, bool use_weights, double tol,
                                           int max_iter) {
  const std::size_t n = g.node_count();
  if (g.edges().empty()) {
    throw std::invalid_argument("eigenvector_centrality: graph has no edges");
  }
  if (tol <= 0.0) throw std::invalid_argument("eigenvector_centrality: tol must be > 0");
  if (max_iter < 1) throw std::invalid_argument("eigenvector_centrality: max_iter must be >= 1");

  const std::vector<std::uint32_t> members = largest_component(g);
  const std::size_t m = members.size();
  if (m < n) {
    log::warn("eigenvector_centrality: graph is disconnected; computing on the largest "
              "component (" +
              std::to_string(m) + " of " + std::to_string(n) + " nodes), others score 0");
  }
  constexpr std::uint32_t kOutside = 0xFFFFFFFFu;
  std::vector<std::uint32_t> local(n, kOutside);
  for (std::uint32_t i = 0; i < m; ++i) local[members[i]] = i;

  // Dense adjacency of the component; negative weights clamp to 0 here (the
  // edges still exist topologically).
  std::vector<double> a(m * m, 0.0);
  for (const auto& e : g.edges()) {
    if (local[e.u] == kOutside) continue;  // edge of another component
    double weight = use_weights ? e.npmi : 1.0;
    if (weight < 0.0) weight = 0.0;
    a[static_cast<std::size_t>(local[e.u]) * m + local[e.v]] = weight;
    a[static_cast<std::size_t>(local[e.v]) * m + local[e.u]] = weight;
  }

  const auto& k = kernels::active();
  std::vector<double> x(m, 1.0 / std::sqrt(static_cast<double>(m)));
  std::vector<double> y(m);
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    k.matvec(a.data(), x.data(), y.data(), m);
    k.add_in_place(y.data(), x.data(), m);  // +I shift
    const double norm = k.l2_norm(y.data(), m);
    k.scale_in_place(y.data(), 1.0 / norm, m);
    const double change = k.max_abs_diff(y.data(), x.data(), m);
    x.swap(y);
    if (change < tol) break;
  }
  if (iter == max_iter) {
    throw std::runtime_error("eigenvector_centrality: no convergence after " +
                             std::to_string(max_iter) + " iterations (tol " +
                             std::to_string(tol) + "); raise metrics.max_iter");
  }

  std::vector<double> out(n, 0.0);
  for (std::uint32_t i = 0; i < m; ++i) out[members[i]] = x[i];
  return out;
}

CentralityReport compute_centralities(const SemanticNetwork& g, const CentralityOptions& opts) {
  CentralityReport report;
  report.degree = degree_centrality(g);
  report.betweenness = betweenness_centrality(g, true, opts.betweenness_weighted);
  report.eigenvector = eigenvector_centrality(g, opts.eigenvector_weighted, opts.tol, opts.max_iter);
  return report;
}

}  // namespace semnet
