#include "semnet/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <unordered_set>

#include "semnet/util.hpp"

namespace semnet {

namespace toml {

namespace {

bool is_bare_key_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
         c == '-';
}

[[noreturn]] void fail(const std::string& origin, std::size_t lineno, const std::string& what) {
  throw ConfigError(origin + ":" + std::to_string(lineno) + ": " + what);
}

// Removes a trailing comment, honouring quoted strings.
std::string_view strip_comment(std::string_view line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_string) {
      if (c == '\\') ++i;
      else if (c == '"') in_string = false;
    } else if (c == '"') {
      in_string = true;
    } else if (c == '#') {
      return line.substr(0, i);
    }
  }
  return line;
}

std::vector<std::string> split_path(std::string_view s, const std::string& origin,
                                    std::size_t lineno) {
  std::vector<std::string> parts;
  std::string part;
  for (char c : s) {
    if (c == '.') {
      if (part.empty()) fail(origin, lineno, "empty path segment");
      parts.push_back(std::move(part));
      part.clear();
    } else if (is_bare_key_char(c)) {
      part.push_back(c);
    } else {
      fail(origin, lineno, std::string("invalid character '") + c + "' in key");
    }
  }
  if (part.empty()) fail(origin, lineno, "empty path segment");
  parts.push_back(std::move(part));
  return parts;
}

std::string parse_basic_string(std::string_view s, std::size_t& i, const std::string& origin,
                               std::size_t lineno) {
  std::string out;
  ++i;  // opening quote
  while (i < s.size()) {
    const char c = s[i];
    if (c == '"') {
      ++i;
      return out;
    }
    if (c == '\\') {
      ++i;
      if (i >= s.size()) fail(origin, lineno, "dangling escape in string");
      switch (s[i]) {
        case '"': out.push_back('"'); break;
        case '\\': out.push_back('\\'); break;
        case 'n': out.push_back('\n'); break;
        case 't': out.push_back('\t'); break;
        case 'r': out.push_back('\r'); break;
        case 'u': {
          if (i + 4 >= s.size()) fail(origin, lineno, "truncated \\u escape");
          unsigned cp = 0;
          const auto res = std::from_chars(s.data() + i + 1, s.data() + i + 5, cp, 16);
          if (res.ec != std::errc{} || res.ptr != s.data() + i + 5) {
            fail(origin, lineno, "bad \\u escape");
          }
          utf8::append(out, static_cast<char32_t>(cp));
          i += 4;
          break;
        }
        default: fail(origin, lineno, std::string("unsupported escape \\") + s[i]);
      }
      ++i;
    } else {
      out.push_back(c);
      ++i;
    }
  }
  fail(origin, lineno, "unterminated string");
}

Value parse_value(std::string_view s, std::size_t& i, const std::string& origin,
                  std::size_t lineno);

Value parse_array(std::string_view s, std::size_t& i, const std::string& origin,
                  std::size_t lineno) {
  Array items;
  ++i;  // '['
  for (;;) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    if (i >= s.size()) fail(origin, lineno, "unterminated array (arrays must be single-line)");
    if (s[i] == ']') {
      ++i;
      break;
    }
    items.push_back(parse_value(s, i, origin, lineno));
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    if (i < s.size() && s[i] == ',') {
      ++i;
      continue;
    }
    if (i < s.size() && s[i] == ']') {
      ++i;
      break;
    }
    fail(origin, lineno, "expected ',' or ']' in array");
  }
  return Value{std::move(items)};
}

Value parse_value(std::string_view s, std::size_t& i, const std::string& origin,
                  std::size_t lineno) {
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  if (i >= s.size()) fail(origin, lineno, "missing value");
  const char c = s[i];
  if (c == '"') return Value{parse_basic_string(s, i, origin, lineno)};
  if (c == '[') return parse_array(s, i, origin, lineno);

  std::size_t end = i;
  while (end < s.size() && s[end] != ',' && s[end] != ']' && s[end] != ' ' && s[end] != '\t') ++end;
  const std::string_view word = s.substr(i, end - i);
  i = end;
  if (word == "true") return Value{true};
  if (word == "false") return Value{false};

  std::string digits(word);
  digits.erase(std::remove(digits.begin(), digits.end(), '_'), digits.end());
  const bool looks_float = digits.find_first_of(".eE") != std::string::npos;
  if (!looks_float) {
    std::int64_t value = 0;
    const auto res = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (res.ec == std::errc{} && res.ptr == digits.data() + digits.size()) return Value{value};
  }
  double value = 0.0;
  const auto res = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (res.ec == std::errc{} && res.ptr == digits.data() + digits.size()) return Value{value};
  fail(origin, lineno, "cannot parse value \"" + std::string(word) + "\"");
}

Table* navigate(Table& root, const std::vector<std::string>& path, bool array_of_tables,
                const std::string& origin, std::size_t lineno) {
  Table* current = &root;
  for (std::size_t d = 0; d + 1 < path.size(); ++d) {
    auto& slot = (*current)[path[d]];
    if (std::holds_alternative<Table>(slot.data)) {
      current = &std::get<Table>(slot.data);
    } else if (std::holds_alternative<Array>(slot.data)) {
      auto& arr = std::get<Array>(slot.data);
      if (arr.empty() || !arr.back().is_table()) fail(origin, lineno, "path crosses a non-table");
      current = &std::get<Table>(arr.back().data);
    } else if (slot.data.index() == 0 && std::get<std::string>(slot.data).empty()) {
      slot.data = Table{};
      current = &std::get<Table>(slot.data);
    } else {
      fail(origin, lineno, "key \"" + path[d] + "\" already holds a value");
    }
  }
  const std::string& leaf = path.back();
  if (array_of_tables) {
    auto& slot = (*current)[leaf];
    if (std::holds_alternative<std::string>(slot.data) &&
        std::get<std::string>(slot.data).empty()) {
      slot.data = Array{};
    }
    if (!std::holds_alternative<Array>(slot.data)) {
      fail(origin, lineno, "key \"" + leaf + "\" is not an array of tables");
    }
    auto& arr = std::get<Array>(slot.data);
    arr.push_back(Value{Table{}});
    return &std::get<Table>(arr.back().data);
  }
  auto& slot = (*current)[leaf];
  if (std::holds_alternative<std::string>(slot.data) && std::get<std::string>(slot.data).empty()) {
    slot.data = Table{};
  }
  if (!std::holds_alternative<Table>(slot.data)) {
    fail(origin, lineno, "table header \"" + leaf + "\" clashes with an existing value");
  }
  return &std::get<Table>(slot.data);
}

}  // namespace

Table parse(std::string_view text, const std::string& origin) {
  Table root;
  Table* current = &root;
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    std::string_view line =
        text.substr(start, nl == std::string_view::npos ? text.size() - start : nl - start);
    ++lineno;
    line = trim(strip_comment(line));
    if (line.empty()) {
      if (nl == std::string_view::npos) break;
      start = nl + 1;
      continue;
    }

    if (line.front() == '[') {
      const bool array_of_tables = line.size() > 1 && line[1] == '[';
      const std::string_view closer = array_of_tables ? "]]" : "]";
      if (line.substr(line.size() - closer.size()) != closer) {
        fail(origin, lineno, "malformed table header");
      }
      const std::size_t open = array_of_tables ? 2 : 1;
      const auto name = trim(line.substr(open, line.size() - open - closer.size()));
      const auto path = split_path(name, origin, lineno);
      current = navigate(root, path, array_of_tables, origin, lineno);
    } else {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) fail(origin, lineno, "expected key = value");
      const auto key = trim(line.substr(0, eq));
      if (key.empty()) fail(origin, lineno, "empty key");
      for (char c : key) {
        if (!is_bare_key_char(c)) {
          fail(origin, lineno, "dotted or quoted keys are not supported (key \"" +
                                   std::string(key) + "\")");
        }
      }
      std::string_view rest = line.substr(eq + 1);
      std::size_t i = 0;
      Value value = parse_value(rest, i, origin, lineno);
      while (i < rest.size() && (rest[i] == ' ' || rest[i] == '\t')) ++i;
      if (i != rest.size()) fail(origin, lineno, "trailing characters after value");
      if (current->count(std::string(key)) > 0) {
        fail(origin, lineno, "duplicate key \"" + std::string(key) + "\"");
      }
      (*current)[std::string(key)] = std::move(value);
    }
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return root;
}

std::string escape_string(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out.push_back(c);
    }
  }
  out.push_back('"');
  return out;
}

}  // namespace toml

namespace {

using toml::Table;
using toml::Value;

[[noreturn]] void bad_key(const std::string& origin, const std::string& key,
                          const std::string& why) {
  throw ConfigError(origin + ": key \"" + key + "\" " + why);
}

void check_known_keys(const Table& table, const std::vector<std::string>& known,
                      const std::string& origin, const std::string& scope) {
  for (const auto& [key, _] : table) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError(origin + ": unknown key \"" + (scope.empty() ? key : scope + "." + key) +
                        "\"");
    }
  }
}

std::string get_string(const Table& t, const std::string& key, const std::string& origin,
                       const std::string& fallback, bool required = false) {
  const auto it = t.find(key);
  if (it == t.end()) {
    if (required) bad_key(origin, key, "is required");
    return fallback;
  }
  if (!std::holds_alternative<std::string>(it->second.data)) {
    bad_key(origin, key, "must be a string");
  }
  return std::get<std::string>(it->second.data);
}

std::int64_t get_int(const Table& t, const std::string& key, const std::string& origin,
                     std::int64_t fallback) {
  const auto it = t.find(key);
  if (it == t.end()) return fallback;
  if (!std::holds_alternative<std::int64_t>(it->second.data)) {
    bad_key(origin, key, "must be an integer");
  }
  return std::get<std::int64_t>(it->second.data);
}

double get_float(const Table& t, const std::string& key, const std::string& origin,
                 double fallback) {
  const auto it = t.find(key);
  if (it == t.end()) return fallback;
  if (std::holds_alternative<double>(it->second.data)) return std::get<double>(it->second.data);
  if (std::holds_alternative<std::int64_t>(it->second.data)) {
    return static_cast<double>(std::get<std::int64_t>(it->second.data));
  }
  bad_key(origin, key, "must be a number");
}

bool get_bool(const Table& t, const std::string& key, const std::string& origin, bool fallback) {
  const auto it = t.find(key);
  if (it == t.end()) return fallback;
  if (!std::holds_alternative<bool>(it->second.data)) bad_key(origin, key, "must be a boolean");
  return std::get<bool>(it->second.data);
}

std::vector<std::string> get_string_array(const Table& t, const std::string& key,
                                          const std::string& origin) {
  const auto it = t.find(key);
  if (it == t.end()) return {};
  if (!it->second.is_array()) bad_key(origin, key, "must be an array of strings");
  std::vector<std::string> out;
  for (const auto& v : std::get<toml::Array>(it->second.data)) {
    if (!std::holds_alternative<std::string>(v.data)) {
      bad_key(origin, key, "must be an array of strings");
    }
    out.push_back(std::get<std::string>(v.data));
  }
  return out;
}

const Table* get_table(const Table& t, const std::string& key, const std::string& origin) {
  const auto it = t.find(key);
  if (it == t.end()) return nullptr;
  if (!it->second.is_table()) bad_key(origin, key, "must be a table");
  return &std::get<Table>(it->second.data);
}

std::string resolve_path(const std::string& path, const std::string& base_dir) {
  if (path.empty()) return path;
  const std::filesystem::path p(path);
  if (p.is_absolute() || base_dir.empty()) return path;
  return (std::filesystem::path(base_dir) / p).lexically_normal().string();
}

}  // namespace

RunConfig RunConfig::from_toml_text(std::string_view text, const std::string& origin,
                                    const std::string& base_dir) {
  const Table root = toml::parse(text, origin);
  check_known_keys(root,
                   {"output", "dump_counts", "seed", "window", "edges", "vocabulary", "tokenizer",
                    "metrics", "corpora"},
                   origin, "");

  RunConfig config;
  config.output_dir = get_string(root, "output", origin, config.output_dir);
  config.dump_counts = get_bool(root, "dump_counts", origin, config.dump_counts);
  config.seed = static_cast<std::uint64_t>(get_int(root, "seed", origin, 0));

  if (const Table* window = get_table(root, "window", origin)) {
    check_known_keys(*window, {"size", "stride"}, origin, "window");
    config.window.size = static_cast<std::uint32_t>(get_int(*window, "size", origin, 15));
    config.window.stride = static_cast<std::uint32_t>(get_int(*window, "stride", origin, 1));
  }
  if (const Table* edges = get_table(root, "edges", origin)) {
    check_known_keys(*edges, {"npmi_min", "raw_min", "protected"}, origin, "edges");
    config.edges.npmi_min = get_float(*edges, "npmi_min", origin, 0.0);
    config.edges.raw_min = static_cast<std::uint64_t>(get_int(*edges, "raw_min", origin, 10));
    config.edges.protected_terms = get_string_array(*edges, "protected", origin);
  }
  if (const Table* vocab = get_table(root, "vocabulary", origin)) {
    check_known_keys(*vocab, {"k", "stopwords_in_windows"}, origin, "vocabulary");
    config.vocabulary.k = static_cast<std::uint64_t>(get_int(*vocab, "k", origin, 50));
    config.vocabulary.stopwords_in_windows =
        get_bool(*vocab, "stopwords_in_windows", origin, true);
  }
  if (const Table* tok = get_table(root, "tokenizer", origin)) {
    check_known_keys(*tok, {"drop_numeric"}, origin, "tokenizer");
    config.tokenizer.drop_numeric = get_bool(*tok, "drop_numeric", origin, true);
  }
  if (const Table* metrics = get_table(root, "metrics", origin)) {
    check_known_keys(*metrics,
                     {"eigenvector_weighted", "betweenness_weighted", "tol", "max_iter"}, origin,
                     "metrics");
    config.metrics.eigenvector_weighted =
        get_bool(*metrics, "eigenvector_weighted", origin, true);
    config.metrics.betweenness_weighted =
        get_bool(*metrics, "betweenness_weighted", origin, false);
    config.metrics.tol = get_float(*metrics, "tol", origin, 1e-6);
    config.metrics.max_iter = get_int(*metrics, "max_iter", origin, 1000);
  }

  if (const auto it = root.find("corpora"); it != root.end()) {
    if (!it->second.is_array()) throw ConfigError(origin + ": corpora must use [[corpora]] blocks");
    for (const auto& item : std::get<toml::Array>(it->second.data)) {
      if (!item.is_table()) throw ConfigError(origin + ": corpora must use [[corpora]] blocks");
      const Table& t = std::get<Table>(item.data);
      check_known_keys(t, {"jurisdiction", "manifest", "lexicon", "anchors", "cleaning_rules",
                           "tokenizer"},
                       origin, "corpora");
      CorpusSpec spec;
      spec.jurisdiction = get_string(t, "jurisdiction", origin, "", /*required=*/true);
      spec.manifest = resolve_path(get_string(t, "manifest", origin, "", true), base_dir);
      spec.lexicon = resolve_path(get_string(t, "lexicon", origin, "", true), base_dir);
      spec.anchors = get_string_array(t, "anchors", origin);
      spec.cleaning_rules = resolve_path(get_string(t, "cleaning_rules", origin, ""), base_dir);
      spec.tokenizer = get_string(t, "tokenizer", origin, "auto");
      config.corpora.push_back(std::move(spec));
    }
  }
  return config;
}

RunConfig RunConfig::from_toml_file(const std::string& path) {
  const auto base = std::filesystem::path(path).parent_path().string();
  return from_toml_text(read_file(path), path, base);
}

void RunConfig::validate() const {
  window.validate();
  if (vocabulary.k < 1) throw ConfigError("vocabulary.k must be >= 1");
  if (edges.raw_min < 1) throw ConfigError("edges.raw_min must be >= 1");
  if (metrics.tol <= 0.0) throw ConfigError("metrics.tol must be > 0");
  if (metrics.max_iter < 1) throw ConfigError("metrics.max_iter must be >= 1");
  std::unordered_set<std::string> jurisdictions;
  for (const auto& spec : corpora) {
    if (spec.jurisdiction.empty()) throw ConfigError("corpora entry without jurisdiction");
    if (!jurisdictions.insert(spec.jurisdiction).second) {
      throw ConfigError("duplicate jurisdiction \"" + spec.jurisdiction + "\"");
    }
    if (spec.tokenizer != "auto" && spec.tokenizer != "latin" && spec.tokenizer != "cjk") {
      throw ConfigError("corpora." + spec.jurisdiction + ": tokenizer must be auto|latin|cjk");
    }
    for (const char* what : {"manifest", "lexicon"}) {
      const std::string& path = std::string(what) == "manifest" ? spec.manifest : spec.lexicon;
      if (!std::filesystem::exists(path)) {
        throw ConfigError("corpora." + spec.jurisdiction + ": " + what + " path does not exist: " +
                          path);
      }
    }
    if (!spec.cleaning_rules.empty() && !std::filesystem::exists(spec.cleaning_rules)) {
      throw ConfigError("corpora." + spec.jurisdiction +
                        ": cleaning_rules path does not exist: " + spec.cleaning_rules);
    }
  }
}

std::string RunConfig::to_toml() const {
  std::string out;
  out += "output = " + toml::escape_string(output_dir) + "\n";
  out += "dump_counts = " + std::string(dump_counts ? "true" : "false") + "\n";
  out += "seed = " + std::to_string(seed) + "\n";
  out += "\n[window]\n";
  out += "size = " + std::to_string(window.size) + "\n";
  out += "stride = " + std::to_string(window.stride) + "\n";
  out += "\n[vocabulary]\n";
  out += "k = " + std::to_string(vocabulary.k) + "\n";
  out += "stopwords_in_windows = " + std::string(vocabulary.stopwords_in_windows ? "true" : "false") +
         "\n";
  out += "\n[tokenizer]\n";
  out += "drop_numeric = " + std::string(tokenizer.drop_numeric ? "true" : "false") + "\n";
  out += "\n[edges]\n";
  out += "npmi_min = " + format_double(edges.npmi_min) + "\n";
  out += "raw_min = " + std::to_string(edges.raw_min) + "\n";
  out += "protected = [";
  for (std::size_t i = 0; i < edges.protected_terms.size(); ++i) {
    if (i > 0) out += ", ";
    out += toml::escape_string(edges.protected_terms[i]);
  }
  out += "]\n";
  out += "\n[metrics]\n";
  out += "eigenvector_weighted = " +
         std::string(metrics.eigenvector_weighted ? "true" : "false") + "\n";
  out += "betweenness_weighted = " +
         std::string(metrics.betweenness_weighted ? "true" : "false") + "\n";
  out += "tol = " + format_double(metrics.tol) + "\n";
  out += "max_iter = " + std::to_string(metrics.max_iter) + "\n";
  for (const auto& spec : corpora) {
    out += "\n[[corpora]]\n";
    out += "jurisdiction = " + toml::escape_string(spec.jurisdiction) + "\n";
    out += "manifest = " + toml::escape_string(spec.manifest) + "\n";
    out += "lexicon = " + toml::escape_string(spec.lexicon) + "\n";
    out += "anchors = [";
    for (std::size_t i = 0; i < spec.anchors.size(); ++i) {
      if (i > 0) out += ", ";
      out += toml::escape_string(spec.anchors[i]);
    }
    out += "]\n";
    if (!spec.cleaning_rules.empty()) {
      out += "cleaning_rules = " + toml::escape_string(spec.cleaning_rules) + "\n";
    }
    out += "tokenizer = " + toml::escape_string(spec.tokenizer) + "\n";
  }
  return out;
}

}  // namespace semnet
