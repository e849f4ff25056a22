#pragma once

#include <regex>
#include <string>
#include <vector>

namespace semnet {

struct Document {
  std::string id;
  std::string jurisdiction;
  std::string raw_text;
  std::string cleaned_text;
};

using Corpus = std::vector<Document>;

struct CleaningRule {
  std::string pattern;      // ECMAScript regex, compiled with the multiline flag
  std::string replacement;  // $1-style backreferences allowed
};

// Ordered regex substitutions plus two built-in passes:
//  - line endings are normalised to \n before anything else
//  - whitespace runs collapse to single spaces (and ends are trimmed) last
// The bundled defaults additionally strip lines repeated verbatim >= 3 times
// (page headers/footers); that pass cannot be expressed as a regex pair, so
// user rule files may opt into it with the object form
// {"strip_repeated_lines": true, "min_repeats": 3, "rules": [...]}.
class CleaningRules {
 public:
  // Bundled defaults: control characters, lone page-number lines,
  // end-of-line hyphenation repair, repeated header/footer removal.
  static CleaningRules defaults();

  // JSON file: either a bare array of {"pattern","replace"} objects or the
  // object form documented above. Invalid regexes raise ConfigError here,
  // before any document is processed.
  static CleaningRules from_json_file(const std::string& path);
  static CleaningRules from_json_text(const std::string& text, const std::string& origin);

  static CleaningRules compile(std::vector<CleaningRule> rules,
                               bool strip_repeated_lines = false,
                               int min_repeats = 3);

  const std::vector<CleaningRule>& rules() const { return rules_; }
  bool strip_repeated_lines() const { return strip_repeated_lines_; }
  int min_repeats() const { return min_repeats_; }

  std::string apply(const std::string& raw) const;

 private:
  CleaningRules() = default;

  std::vector<CleaningRule> rules_;
  std::vector<std::regex> compiled_;
  bool strip_repeated_lines_ = false;
  int min_repeats_ = 3;
};

struct ManifestEntry {
  std::string path;
  std::string jurisdiction;
  std::string id;
};

// JSON array of {"path","jurisdiction","id"}; relative paths resolve against
// the manifest's own directory.
std::vector<ManifestEntry> load_manifest(const std::string& path);

// One Document per entry, raw_text populated and validated as UTF-8.
// Missing file, invalid UTF-8 (with byte offset) and duplicate ids are fatal.
Corpus load_corpus(const std::vector<ManifestEntry>& manifest);

Document clean(const Document& doc, const CleaningRules& rules);

// In-place cleaning of a whole corpus. Documents are independent, so this
// fans out over `jobs` threads; output ordering is the corpus order.
void clean_corpus(Corpus& corpus, const CleaningRules& rules, int jobs = 1);

}  // namespace semnet
