#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "semnet/cooccur.hpp"

namespace semnet {

// Association strength of one term pair, log base 2 throughout.
struct AssociationScore {
  std::string x;
  std::string y;
  double pmi = 0.0;
  double h = 0.0;     // self-information of the co-occurrence
  double npmi = 0.0;  // pmi / h, in [-1, 1]; 0 when h == 0
  std::uint64_t pair_windows = 0;
};

struct EdgeParams {
  double npmi_min = 0.0;  // prune edges below this NPMI
  std::uint64_t raw_min = 10;  // back-off: raw co-window floor for protected terms
  std::unordered_set<std::string> protected_terms;

  void validate() const;  // raw_min >= 1
};

// Scores one pair. Throws std::invalid_argument for x == y, terms outside
// the vocabulary, or N == 0. Returns nullopt when the pair never co-occurs
// (no evidence, no score). h == 0 (pair in every window) yields npmi = 0
// with a warning.
std::optional<AssociationScore> npmi(const CooccurrenceCounts& counts, std::string_view x,
                                     std::string_view y);

struct Edge {
  std::uint32_t u = 0;  // term ids into the counts vocabulary, u != v
  std::uint32_t v = 0;
  double npmi = 0.0;
  std::uint64_t pair_windows = 0;
};

// Hybrid filter: every co-occurring pair is kept when npmi >= npmi_min, or
// when one endpoint is protected and pair_windows >= raw_min (back-off edges
// keep their actual, possibly negative, NPMI as weight). Pairs that never
// co-occur are never edges. Sorted by npmi descending, then by the
// lexicographically ordered term pair.
std::vector<Edge> build_edges(const CooccurrenceCounts& counts, const EdgeParams& params);

}  // namespace semnet
