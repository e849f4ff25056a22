#include "semnet/corpus.hpp"

#include <filesystem>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "semnet/log.hpp"
#include "semnet/parallel.hpp"
#include "semnet/util.hpp"

namespace semnet {

namespace {

// PDF-to-text leftovers only; token-level filtering (numerals, stopwords)
// belongs to the lexicon module.
std::vector<CleaningRule> default_rules() {
  return {
      // control characters other than \t \n (\r is gone by the time rules run)
      {R"([\x00-\x08\x0B\x0C\x0E-\x1F\x7F])", " "},
      // lone page-number lines
      {R"(^[ \t]*[0-9]+[ \t]*$)", ""},
      // end-of-line hyphenation: "high-\nrisk" -> "high-risk"
      {R"(-[ \t]*\n[ \t]*)", "-"},
  };
}

std::string normalize_line_endings(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\r') {
      if (i + 1 < text.size() && text[i + 1] == '\n') continue;
      out.push_back('\n');
    } else {
      out.push_back(text[i]);
    }
  }
  return out;
}

std::string strip_repeated_lines(const std::string& text, int min_repeats) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  const std::string_view sv(text);
  while (start <= sv.size()) {
    const std::size_t nl = sv.find('\n', start);
    const std::size_t end = nl == std::string_view::npos ? sv.size() : nl;
    lines.push_back(sv.substr(start, end - start));
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  std::unordered_map<std::string_view, int> counts;
  for (const auto& line : lines) {
    const auto key = trim(line);
    if (!key.empty()) ++counts[key];
  }
  std::string out;
  out.reserve(text.size());
  bool first = true;
  for (const auto& line : lines) {
    const auto key = trim(line);
    if (!key.empty() && counts[key] >= min_repeats) continue;
    if (!first) out.push_back('\n');
    out.append(line);
    first = false;
  }
  return out;
}

std::string collapse_whitespace(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    const bool ws = c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
    if (ws) {
      pending_space = !out.empty();
    } else {
      if (pending_space) out.push_back(' ');
      pending_space = false;
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace

CleaningRules CleaningRules::compile(std::vector<CleaningRule> rules,
                                     bool strip_repeated, int min_repeats) {
  if (min_repeats < 2) throw ConfigError("cleaning rules: min_repeats must be >= 2");
  CleaningRules out;
  out.rules_ = std::move(rules);
  out.strip_repeated_lines_ = strip_repeated;
  out.min_repeats_ = min_repeats;
  out.compiled_.reserve(out.rules_.size());
  for (const auto& rule : out.rules_) {
    try {
      out.compiled_.emplace_back(rule.pattern,
                                 std::regex::ECMAScript | std::regex::multiline |
                                     std::regex::optimize);
    } catch (const std::regex_error& e) {
      throw ConfigError("invalid cleaning rule pattern \"" + rule.pattern + "\": " + e.what());
    }
  }
  return out;
}

CleaningRules CleaningRules::defaults() {
  return compile(default_rules(), /*strip_repeated_lines=*/true, /*min_repeats=*/3);
}

CleaningRules CleaningRules::from_json_text(const std::string& text, const std::string& origin) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("cleaning rules " + origin + ": " + e.what());
  }
  bool strip_repeated = false;
  int min_repeats = 3;
  const nlohmann::json* array = nullptr;
  if (doc.is_array()) {
    array = &doc;
  } else if (doc.is_object()) {
    strip_repeated = doc.value("strip_repeated_lines", false);
    min_repeats = doc.value("min_repeats", 3);
    if (!doc.contains("rules") || !doc["rules"].is_array()) {
      throw ConfigError("cleaning rules " + origin + ": object form needs a \"rules\" array");
    }
    array = &doc["rules"];
    for (const auto& [key, _] : doc.items()) {
      if (key != "strip_repeated_lines" && key != "min_repeats" && key != "rules") {
        throw ConfigError("cleaning rules " + origin + ": unknown key \"" + key + "\"");
      }
    }
  } else {
    throw ConfigError("cleaning rules " + origin + ": expected array or object");
  }
  std::vector<CleaningRule> rules;
  rules.reserve(array->size());
  for (const auto& item : *array) {
    if (!item.is_object() || !item.contains("pattern") || !item.contains("replace")) {
      throw ConfigError("cleaning rules " + origin + ": each rule needs \"pattern\" and \"replace\"");
    }
    rules.push_back({item["pattern"].get<std::string>(), item["replace"].get<std::string>()});
  }
  return compile(std::move(rules), strip_repeated, min_repeats);
}

CleaningRules CleaningRules::from_json_file(const std::string& path) {
  return from_json_text(read_file(path), path);
}

std::string CleaningRules::apply(const std::string& raw) const {
  std::string text = normalize_line_endings(raw);
  if (strip_repeated_lines_) text = strip_repeated_lines(text, min_repeats_);
  for (std::size_t i = 0; i < compiled_.size(); ++i) {
    text = std::regex_replace(text, compiled_[i], rules_[i].replacement);
  }
  return collapse_whitespace(text);
}

std::vector<ManifestEntry> load_manifest(const std::string& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("manifest " + path + ": " + e.what());
  }
  if (!doc.is_array()) throw ConfigError("manifest " + path + ": expected a JSON array");
  const auto base = std::filesystem::path(path).parent_path();
  std::vector<ManifestEntry> entries;
  entries.reserve(doc.size());
  for (const auto& item : doc) {
    if (!item.is_object() || !item.contains("path") || !item.contains("jurisdiction") ||
        !item.contains("id")) {
      throw ConfigError("manifest " + path +
                        ": each entry needs \"path\", \"jurisdiction\" and \"id\"");
    }
    ManifestEntry entry{item["path"].get<std::string>(), item["jurisdiction"].get<std::string>(),
                        item["id"].get<std::string>()};
    const std::filesystem::path p(entry.path);
    if (p.is_relative()) entry.path = (base / p).string();
    entries.push_back(std::move(entry));
  }
  if (entries.empty()) log::warn("manifest " + path + " is empty");
  return entries;
}

Corpus load_corpus(const std::vector<ManifestEntry>& manifest) {
  Corpus corpus;
  corpus.reserve(manifest.size());
  std::unordered_set<std::string> seen;
  for (const auto& entry : manifest) {
    if (!seen.insert(entry.id).second) {
      throw ConfigError("duplicate document id \"" + entry.id + "\" in manifest");
    }
    Document doc;
    doc.id = entry.id;
    doc.jurisdiction = entry.jurisdiction;
    doc.raw_text = read_file(entry.path);
    if (const auto bad = utf8::first_invalid(doc.raw_text)) {
      throw IoError("invalid UTF-8 in " + entry.path + " at byte offset " + std::to_string(*bad));
    }
    corpus.push_back(std::move(doc));
  }
  return corpus;
}

Document clean(const Document& doc, const CleaningRules& rules) {
  Document out = doc;
  out.cleaned_text = rules.apply(doc.raw_text);
  return out;
}

void clean_corpus(Corpus& corpus, const CleaningRules& rules, int jobs) {
  parallel_for(corpus.size(), jobs,
               [&](std::size_t i) { corpus[i].cleaned_text = rules.apply(corpus[i].raw_text); });
}

}  // namespace semnet
