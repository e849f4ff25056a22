#include "semnet/association.hpp"

#include <algorithm>
#include <stdexcept>

#include "semnet/kernels/kernels.hpp"
#include "semnet/log.hpp"
#include "semnet/util.hpp"

namespace semnet {

void EdgeParams::validate() const {
  if (raw_min < 1) throw ConfigError("edges.raw_min must be >= 1");
}

std::optional<AssociationScore> npmi(const CooccurrenceCounts& counts, std::string_view x,
                                     std::string_view y) {
  if (x == y) throw std::invalid_argument("npmi: x and y must differ (got \"" + std::string(x) + "\")");
  const auto xi = counts.id_of(x);
  const auto yi = counts.id_of(y);
  if (!xi) throw std::invalid_argument("npmi: unknown term \"" + std::string(x) + "\"");
  if (!yi) throw std::invalid_argument("npmi: unknown term \"" + std::string(y) + "\"");
  if (counts.total_windows == 0) throw std::invalid_argument("npmi: no windows counted (N = 0)");

  const std::uint64_t pair = counts.pair_count(*xi, *yi);
  if (pair == 0) return std::nullopt;

  const double pw = static_cast<double>(pair);
  const double xw = static_cast<double>(counts.term_windows[*xi]);
  const double yw = static_cast<double>(counts.term_windows[*yi]);
  AssociationScore score;
  score.x = std::string(x);
  score.y = std::string(y);
  score.pair_windows = pair;
  kernels::active().npmi_batch(&pw, &xw, &yw, static_cast<double>(counts.total_windows),
                               &score.pmi, &score.h, &score.npmi, 1);
  if (score.h == 0.0) {
    log::warn("npmi(" + score.x + ", " + score.y +
              "): pair occurs in every window (h = 0), npmi defined as 0");
  }
  return score;
}

std::vector<Edge> build_edges(const CooccurrenceCounts& counts, const EdgeParams& params) {
  params.validate();
  const auto pairs = counts.sorted_pairs();
  if (pairs.empty()) return {};

  std::vector<bool> is_protected(counts.vocabulary.size(), false);
  for (const auto& term : params.protected_terms) {
    if (const auto id = counts.id_of(term)) is_protected[*id] = true;
  }

  // Batch-score all co-occurring pairs through the active kernel.
  const std::size_t n = pairs.size();
  std::vector<double> pw(n), xw(n), yw(n), pmi(n), h(n), npmi_v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& [lo, hi, count] = pairs[i];
    pw[i] = static_cast<double>(count);
    xw[i] = static_cast<double>(counts.term_windows[lo]);
    yw[i] = static_cast<double>(counts.term_windows[hi]);
  }
  kernels::active().npmi_batch(pw.data(), xw.data(), yw.data(),
                               static_cast<double>(counts.total_windows), pmi.data(), h.data(),
                               npmi_v.data(), n);

  std::vector<Edge> edges;
  edges.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& [lo, hi, count] = pairs[i];
    const bool keep_by_npmi = npmi_v[i] >= params.npmi_min;
    const bool keep_by_backoff =
        (is_protected[lo] || is_protected[hi]) && count >= params.raw_min;
    if (!keep_by_npmi && !keep_by_backoff) continue;
    edges.push_back({lo, hi, npmi_v[i], count});
  }

  std::sort(edges.begin(), edges.end(), [&](const Edge& a, const Edge& b) {
    if (a.npmi != b.npmi) return a.npmi > b.npmi;
    const auto& [a1, a2] = std::minmax(counts.vocabulary[a.u], counts.vocabulary[a.v]);
    const auto& [b1, b2] = std::minmax(counts.vocabulary[b.u], counts.vocabulary[b.v]);
    if (a1 != b1) return a1 < b1;
    return a2 < b2;
  });
  return edges;
}

}  // namespace semnet
