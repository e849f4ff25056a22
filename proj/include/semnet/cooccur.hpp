#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "semnet/lexicon.hpp"

namespace semnet {

struct WindowParams {
  std::uint32_t size = 15;
  std::uint32_t stride = 1;

  void validate() const;  // size >= 2, stride >= 1
};

// Number of sliding windows over a stream of the given length. Documents
// shorter than the window form exactly one window; windows never span
// documents.
std::uint64_t enumerate_windows(std::size_t stream_length, const WindowParams& params);

// Window-level counts with binary per-window semantics: within one window a
// term counts at most once and a pair at most once, however often they occur.
struct CooccurrenceCounts {
  std::string jurisdiction;
  std::uint64_t total_windows = 0;
  std::vector<std::string> vocabulary;  // term id = position
  std::unordered_map<std::string, std::uint32_t> term_ids;
  std::vector<std::uint64_t> term_windows;    // windows containing the term
  std::vector<std::uint64_t> term_frequency;  // raw occurrences
  std::unordered_map<std::uint64_t, std::uint64_t> pair_windows;  // pair_key -> count

  static std::uint64_t pair_key(std::uint32_t a, std::uint32_t b);

  std::optional<std::uint32_t> id_of(std::string_view term) const;
  std::uint64_t pair_count(std::uint32_t a, std::uint32_t b) const;

  // (lo_id, hi_id, count), ascending by ids — the deterministic view used by
  // everything that serialises or iterates pairs.
  std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint64_t>> sorted_pairs() const;

  void merge(const CooccurrenceCounts& other);

  nlohmann::json to_json() const;
  static CooccurrenceCounts from_json(const nlohmann::json& doc);
};

CooccurrenceCounts count_cooccurrences(const std::vector<TokenStream>& streams,
                                       const std::vector<std::string>& vocabulary,
                                       const WindowParams& params, int jobs = 1,
                                       std::string jurisdiction = {});

}  // namespace semnet
