#include "semnet/cooccur.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

#include "semnet/log.hpp"
#include "semnet/parallel.hpp"
#include "semnet/util.hpp"

namespace semnet {

void WindowParams::validate() const {
  if (size < 2) throw ConfigError("window.size must be >= 2 (got " + std::to_string(size) + ")");
  if (stride < 1) throw ConfigError("window.stride must be >= 1");
}

std::uint64_t enumerate_windows(std::size_t stream_length, const WindowParams& params) {
  params.validate();
  if (stream_length == 0) return 0;
  if (stream_length < params.size) return 1;
  return (stream_length - params.size) / params.stride + 1;
}

std::uint64_t CooccurrenceCounts::pair_key(std::uint32_t a, std::uint32_t b) {
  const std::uint32_t lo = a < b ? a : b;
  const std::uint32_t hi = a < b ? b : a;
  return (static_cast<std::uint64_t>(lo) << 32) | hi;
}

std::optional<std::uint32_t> CooccurrenceCounts::id_of(std::string_view term) const {
  const auto it = term_ids.find(std::string(term));
  if (it == term_ids.end()) return std::nullopt;
  return it->second;
}

std::uint64_t CooccurrenceCounts::pair_count(std::uint32_t a, std::uint32_t b) const {
  const auto it = pair_windows.find(pair_key(a, b));
  return it == pair_windows.end() ? 0 : it->second;
}

std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint64_t>>
CooccurrenceCounts::sorted_pairs() const {
  std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint64_t>> out;
  out.reserve(pair_windows.size());
  for (const auto& [key, count] : pair_windows) {
    out.emplace_back(static_cast<std::uint32_t>(key >> 32),
                     static_cast<std::uint32_t>(key & 0xFFFFFFFFu), count);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void CooccurrenceCounts::merge(const CooccurrenceCounts& other) {
  if (other.vocabulary != vocabulary) {
    throw std::invalid_argument("cannot merge counts over different vocabularies");
  }
  total_windows += other.total_windows;
  for (std::size_t i = 0; i < term_windows.size(); ++i) {
    term_windows[i] += other.term_windows[i];
    term_frequency[i] += other.term_frequency[i];
  }
  for (const auto& [key, count] : other.pair_windows) pair_windows[key] += count;
}

namespace {

CooccurrenceCounts make_empty(const std::vector<std::string>& vocabulary,
                              std::string jurisdiction) {
  CooccurrenceCounts counts;
  counts.jurisdiction = std::move(jurisdiction);
  counts.vocabulary = vocabulary;
  counts.term_windows.assign(vocabulary.size(), 0);
  counts.term_frequency.assign(vocabulary.size(), 0);
  counts.term_ids.reserve(vocabulary.size());
  for (std::uint32_t i = 0; i < vocabulary.size(); ++i) {
    if (!counts.term_ids.emplace(vocabulary[i], i).second) {
      throw std::invalid_argument("duplicate vocabulary term: " + vocabulary[i]);
    }
  }
  return counts;
}

void count_stream(const TokenStream& stream, const WindowParams& params,
                  CooccurrenceCounts& into) {
  constexpr std::uint32_t kOov = 0xFFFFFFFFu;
  std::vector<std::uint32_t> mapped;
  mapped.reserve(stream.tokens.size());
  for (const auto& token : stream.tokens) {
    const auto it = into.term_ids.find(token);
    const std::uint32_t id = it == into.term_ids.end() ? kOov : it->second;
    mapped.push_back(id);
    if (id != kOov) ++into.term_frequency[id];
  }

  const std::size_t length = mapped.size();
  if (length == 0) return;
  const std::size_t width = std::min<std::size_t>(length, params.size);

  std::vector<std::uint32_t> present;
  present.reserve(width);
  std::size_t start = 0;
  while (true) {
    present.clear();
    for (std::size_t k = start; k < start + width; ++k) {
      if (mapped[k] != kOov) present.push_back(mapped[k]);
    }
    std::sort(present.begin(), present.end());
    present.erase(std::unique(present.begin(), present.end()), present.end());

    ++into.total_windows;
    for (std::size_t a = 0; a < present.size(); ++a) {
      ++into.term_windows[present[a]];
      for (std::size_t b = a + 1; b < present.size(); ++b) {
        ++into.pair_windows[CooccurrenceCounts::pair_key(present[a], present[b])];
      }
    }

    if (length < params.size) break;  // short document: exactly one window
    if (start + params.stride + params.size > length) break;
    start += params.stride;
  }
}

}  // namespace

CooccurrenceCounts count_cooccurrences(const std::vector<TokenStream>& streams,
                                       const std::vector<std::string>& vocabulary,
                                       const WindowParams& params, int jobs,
                                       std::string jurisdiction) {
  params.validate();
  if (vocabulary.empty()) throw std::invalid_argument("count_cooccurrences: empty vocabulary");

  CooccurrenceCounts total = make_empty(vocabulary, std::move(jurisdiction));
  if (streams.empty()) {
    log::warn("count_cooccurrences: empty corpus, all counts are zero");
    return total;
  }

  const std::size_t workers =
      std::min<std::size_t>(streams.size(), jobs <= 1 ? 1 : static_cast<std::size_t>(jobs));
  if (workers <= 1) {
    for (const auto& stream : streams) count_stream(stream, params, total);
    return total;
  }

  // Per-worker partials, merged field-wise; addition commutes, so the result
  // is identical for any worker count.
  std::vector<CooccurrenceCounts> partials;
  partials.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) partials.push_back(make_empty(vocabulary, {}));
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      for (std::size_t i = w; i < streams.size(); i += workers) {
        count_stream(streams[i], params, partials[w]);
      }
    });
  }
  for (auto& t : threads) t.join();
  for (const auto& p : partials) total.merge(p);
  return total;
}

nlohmann::json CooccurrenceCounts::to_json() const {
  nlohmann::json doc;
  doc["schema_version"] = 1;
  doc["jurisdiction"] = jurisdiction;
  doc["total_windows"] = total_windows;
  nlohmann::json terms = nlohmann::json::array();
  for (std::size_t i = 0; i < vocabulary.size(); ++i) {
    terms.push_back({{"term", vocabulary[i]},
                     {"windows", term_windows[i]},
                     {"frequency", term_frequency[i]}});
  }
  doc["terms"] = std::move(terms);
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& [lo, hi, count] : sorted_pairs()) {
    pairs.push_back({vocabulary[lo], vocabulary[hi], count});
  }
  doc["pairs"] = std::move(pairs);
  return doc;
}

CooccurrenceCounts CooccurrenceCounts::from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("terms") || !doc.contains("pairs") ||
      !doc.contains("total_windows")) {
    throw ConfigError("counts file: expected object with total_windows, terms, pairs");
  }
  std::vector<std::string> vocabulary;
  for (const auto& t : doc["terms"]) vocabulary.push_back(t.at("term").get<std::string>());
  CooccurrenceCounts counts = make_empty(vocabulary, doc.value("jurisdiction", std::string{}));
  counts.total_windows = doc["total_windows"].get<std::uint64_t>();
  for (std::size_t i = 0; i < vocabulary.size(); ++i) {
    counts.term_windows[i] = doc["terms"][i].at("windows").get<std::uint64_t>();
    counts.term_frequency[i] = doc["terms"][i].at("frequency").get<std::uint64_t>();
  }
  for (const auto& p : doc["pairs"]) {
    if (!p.is_array() || p.size() != 3) throw ConfigError("counts file: malformed pair entry");
    const auto a = counts.id_of(p[0].get<std::string>());
    const auto b = counts.id_of(p[1].get<std::string>());
    if (!a || !b) throw ConfigError("counts file: pair references unknown term");
    counts.pair_windows[pair_key(*a, *b)] = p[2].get<std::uint64_t>();
  }
  return counts;
}

}  // namespace semnet
