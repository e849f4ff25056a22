#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "semnet/cooccur.hpp"

namespace semnet {

// Minimal TOML reader covering what run configs need: bare keys, basic
// strings, integers, floats, booleans, single-line arrays of scalars,
// [table] headers and [[array-of-tables]] headers, '#' comments. Dotted
// keys, multi-line values and datetimes are not supported and raise
// ConfigError.
namespace toml {

struct Value;
using Table = std::map<std::string, Value>;
using Array = std::vector<Value>;

struct Value {
  std::variant<std::string, std::int64_t, double, bool, Array, Table> data;

  bool is_table() const { return std::holds_alternative<Table>(data); }
  bool is_array() const { return std::holds_alternative<Array>(data); }
};

Table parse(std::string_view text, const std::string& origin);

std::string escape_string(std::string_view s);  // quoted TOML string

}  // namespace toml

struct CorpusSpec {
  std::string jurisdiction;
  std::string manifest;               // path, resolved against the config file
  std::string lexicon;                // path, resolved against the config file
  std::vector<std::string> anchors;   // neighborhood anchors, first drives `compare`
  std::string cleaning_rules;         // optional path; empty = bundled defaults
  std::string tokenizer = "auto";     // auto | latin | cjk
};

struct RunConfig {
  std::vector<CorpusSpec> corpora;
  WindowParams window;
  struct EdgesConfig {
    double npmi_min = 0.0;
    std::uint64_t raw_min = 10;
    std::vector<std::string> protected_terms;
  } edges;
  struct VocabularyConfig {
    std::uint64_t k = 50;
    bool stopwords_in_windows = true;
  } vocabulary;
  struct TokenizerConfig {
    bool drop_numeric = true;
  } tokenizer;
  struct MetricsConfig {
    bool eigenvector_weighted = true;
    bool betweenness_weighted = false;
    double tol = 1e-6;
    std::int64_t max_iter = 1000;
  } metrics;
  std::string output_dir = "out";
  bool dump_counts = true;
  std::uint64_t seed = 0;  // reserved; nothing in the pipeline samples

  void validate() const;

  // Canonical TOML rendering of every effective parameter; written as the
  // run header and accepted back via --config for bit-identical re-runs.
  std::string to_toml() const;

  static RunConfig from_toml_text(std::string_view text, const std::string& origin,
                                  const std::string& base_dir);
  static RunConfig from_toml_file(const std::string& path);
};

}  // namespace semnet
