#include "semnet/lexicon.hpp"

#include <algorithm>
#include <map>

#include "semnet/log.hpp"
#include "semnet/util.hpp"

namespace semnet {

namespace {

bool is_han(char32_t cp) {
  return (cp >= 0x4E00 && cp <= 0x9FFF) ||  // CJK Unified Ideographs
         (cp >= 0x3400 && cp <= 0x4DBF) ||  // Extension A
         (cp >= 0xF900 && cp <= 0xFAFF) ||  // Compatibility Ideographs
         cp == 0x3007;
}

// Punctuation and space blocks treated as token separators in CJK text.
bool is_wide_separator(char32_t cp) {
  return (cp >= 0x2000 && cp <= 0x206F) ||  // general punctuation
         (cp >= 0x3000 && cp <= 0x303F) ||  // CJK symbols and punctuation
         (cp >= 0xFF00 && cp <= 0xFFEF);    // fullwidth and halfwidth forms
}

bool is_ascii_token_char(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

void finish_latin_token(std::string& token, const Lexicon& lexicon,
                        const TokenizerOptions& opts, std::vector<std::string>& out) {
  if (token.empty()) return;
  if (opts.drop_numeric && is_all_ascii_digits(token)) {
    token.clear();
    return;
  }
  if (const auto it = lexicon.lemma_map.find(token); it != lexicon.lemma_map.end()) {
    out.push_back(it->second);
  } else {
    out.push_back(token);
  }
  token.clear();
}

struct CodepointRun {
  std::vector<std::size_t> offsets;  // byte offset of each codepoint
  std::size_t end = 0;               // byte offset one past the run
};

}  // namespace

bool contains_cjk(std::string_view text) {
  for (std::size_t i = 0; i < text.size();) {
    if (is_han(utf8::next(text, i))) return true;
  }
  return false;
}

TokenStream tokenize_latin(std::string_view text, const Lexicon& lexicon,
                           const TokenizerOptions& opts, std::string doc_id) {
  TokenStream stream;
  stream.doc_id = std::move(doc_id);
  std::string token;
  for (std::size_t i = 0; i < text.size();) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    if (c < 0x80) {
      if (is_ascii_token_char(c)) {
        token.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a')
                                             : static_cast<char>(c));
      } else {
        finish_latin_token(token, lexicon, opts, stream.tokens);
      }
      ++i;
    } else {
      // Multibyte codepoints are token characters here; CJK-bearing text is
      // routed through segment_cjk by the pipeline.
      const std::size_t start = i;
      utf8::next(text, i);
      token.append(text.substr(start, i - start));
    }
  }
  finish_latin_token(token, lexicon, opts, stream.tokens);
  return stream;
}

TokenStream segment_cjk(std::string_view text, const Lexicon& lexicon,
                        const TokenizerOptions& opts, std::string doc_id) {
  TokenStream stream;
  stream.doc_id = std::move(doc_id);

  std::unordered_set<std::string_view> dict(lexicon.cjk_entries.begin(),
                                            lexicon.cjk_entries.end());
  std::size_t max_entry_cps = 1;
  for (const auto& entry : lexicon.cjk_entries) {
    max_entry_cps = std::max(max_entry_cps, utf8::codepoint_count(entry));
  }

  const auto flush_latin = [&](std::string_view run) {
    if (run.empty()) return;
    auto sub = tokenize_latin(run, lexicon, opts);
    for (auto& t : sub.tokens) stream.tokens.push_back(std::move(t));
  };

  const auto flush_han = [&](const CodepointRun& run) {
    const std::size_t count = run.offsets.size();
    std::size_t i = 0;
    while (i < count) {
      std::size_t matched = 0;
      const std::size_t longest = std::min(max_entry_cps, count - i);
      for (std::size_t len = longest; len >= 2; --len) {
        const std::size_t begin = run.offsets[i];
        const std::size_t end = i + len < count ? run.offsets[i + len] : run.end;
        if (dict.count(text.substr(begin, end - begin)) > 0) {
          matched = len;
          break;
        }
      }
      if (matched == 0) matched = 1;  // single-character fallback
      const std::size_t begin = run.offsets[i];
      const std::size_t end = i + matched < count ? run.offsets[i + matched] : run.end;
      stream.tokens.emplace_back(text.substr(begin, end - begin));
      i += matched;
    }
  };

  std::size_t latin_start = std::string_view::npos;
  CodepointRun han_run;
  std::size_t i = 0;
  while (i < text.size()) {
    const std::size_t at = i;
    const char32_t cp = utf8::next(text, i);
    const bool han = is_han(cp);
    const bool separator =
        (cp < 0x80 && !is_ascii_token_char(static_cast<unsigned char>(cp))) || is_wide_separator(cp);

    if (han) {
      if (latin_start != std::string_view::npos) {
        flush_latin(text.substr(latin_start, at - latin_start));
        latin_start = std::string_view::npos;
      }
      han_run.offsets.push_back(at);
      han_run.end = i;
      continue;
    }
    if (!han_run.offsets.empty()) {
      flush_han(han_run);
      han_run.offsets.clear();
    }
    if (separator) {
      if (latin_start != std::string_view::npos) {
        flush_latin(text.substr(latin_start, at - latin_start));
        latin_start = std::string_view::npos;
      }
    } else if (latin_start == std::string_view::npos) {
      latin_start = at;
    }
  }
  if (!han_run.offsets.empty()) flush_han(han_run);
  if (latin_start != std::string_view::npos) flush_latin(text.substr(latin_start));
  return stream;
}

TokenStream fuse_mwes(const TokenStream& stream, const Lexicon& lexicon) {
  if (lexicon.mwe_entries.empty()) return stream;

  std::unordered_map<std::string_view, std::vector<const MweEntry*>> by_first;
  for (const auto& entry : lexicon.mwe_entries) {
    by_first[entry.components.front()].push_back(&entry);
  }
  for (auto& [_, entries] : by_first) {
    std::sort(entries.begin(), entries.end(), [](const MweEntry* a, const MweEntry* b) {
      return a->components.size() > b->components.size();
    });
  }

  TokenStream out;
  out.doc_id = stream.doc_id;
  out.tokens.reserve(stream.tokens.size());
  const auto& tokens = stream.tokens;
  std::size_t i = 0;
  while (i < tokens.size()) {
    const MweEntry* hit = nullptr;
    if (const auto it = by_first.find(tokens[i]); it != by_first.end()) {
      for (const MweEntry* entry : it->second) {
        const auto& comps = entry->components;
        if (i + comps.size() > tokens.size()) continue;
        bool all = true;
        for (std::size_t k = 1; k < comps.size(); ++k) {
          if (tokens[i + k] != comps[k]) {
            all = false;
            break;
          }
        }
        if (all) {
          hit = entry;
          break;  // entries are longest-first
        }
      }
    }
    if (hit != nullptr) {
      out.tokens.push_back(hit->fused);
      i += hit->components.size();
    } else {
      out.tokens.push_back(tokens[i]);
      ++i;
    }
  }
  return out;
}

std::vector<std::string> select_vocabulary(const std::vector<TokenStream>& streams, std::size_t k,
                                           const std::unordered_set<std::string>& stoplist) {
  if (k == 0) throw std::invalid_argument("select_vocabulary: k must be >= 1");
  std::unordered_map<std::string, std::uint64_t> counts;
  for (const auto& stream : streams) {
    for (const auto& token : stream.tokens) {
      if (stoplist.count(token) == 0) ++counts[token];
    }
  }
  std::vector<std::pair<std::string, std::uint64_t>> ranked(counts.begin(), counts.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (ranked.size() < k) {
    log::warn("select_vocabulary: only " + std::to_string(ranked.size()) +
              " eligible terms for k=" + std::to_string(k));
  }
  std::vector<std::string> vocabulary;
  vocabulary.reserve(std::min(k, ranked.size()));
  for (std::size_t i = 0; i < ranked.size() && i < k; ++i) {
    vocabulary.push_back(std::move(ranked[i].first));
  }
  return vocabulary;
}

namespace {

std::pair<std::string, std::string> parse_arrow(std::string_view line, const std::string& origin,
                                                std::size_t lineno) {
  const auto pos = line.find("->");
  if (pos == std::string_view::npos) {
    throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected \"token -> value\"");
  }
  const auto lhs = trim(line.substr(0, pos));
  const auto rhs = trim(line.substr(pos + 2));
  if (lhs.empty() || rhs.empty()) {
    throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty side in \"->\" entry");
  }
  return {std::string(lhs), std::string(rhs)};
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> parts;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) parts.emplace_back(s.substr(start, i - start));
  }
  return parts;
}

bool producible(const std::string& anchor, const Lexicon& lex) {
  for (const auto& e : lex.mwe_entries) {
    if (e.fused == anchor) return true;
  }
  for (const auto& e : lex.cjk_entries) {
    if (e == anchor) return true;
  }
  if (contains_cjk(anchor) && utf8::codepoint_count(anchor) == 1) return true;
  const auto self = tokenize_latin(anchor, lex);
  return self.tokens.size() == 1 && self.tokens[0] == anchor;
}

}  // namespace

Lexicon Lexicon::parse(std::string_view text, const std::string& origin) {
  Lexicon lex;
  enum class Section { none, mwe, cjk, stopwords, lemma, protected_, gloss };
  Section section = Section::none;
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? text.size() - start
                                                                            : nl - start);
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (!line.empty()) {
      if (line.front() == '[') {
        if (line == "[mwe]") section = Section::mwe;
        else if (line == "[cjk]") section = Section::cjk;
        else if (line == "[stopwords]") section = Section::stopwords;
        else if (line == "[lemma]") section = Section::lemma;
        else if (line == "[protected]") section = Section::protected_;
        else if (line == "[gloss]") section = Section::gloss;
        else {
          throw ConfigError(origin + ":" + std::to_string(lineno) + ": unknown section " +
                            std::string(line));
        }
      } else {
        switch (section) {
          case Section::none:
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": entry before any [section] header");
          case Section::mwe: {
            std::string fused;
            std::string_view spec = line;
            if (const auto arrow = line.find("=>"); arrow != std::string_view::npos) {
              fused = std::string(trim(line.substr(arrow + 2)));
              spec = trim(line.substr(0, arrow));
            }
            MweEntry entry;
            entry.components = split_ws(spec);
            if (entry.components.empty()) {
              throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty MWE entry");
            }
            if (fused.empty()) {
              for (std::size_t i = 0; i < entry.components.size(); ++i) {
                if (i > 0) fused.push_back('_');
                fused += entry.components[i];
              }
            }
            if (fused.find_first_of(" \t") != std::string::npos) {
              throw ConfigError(origin + ":" + std::to_string(lineno) +
                                ": fused form contains whitespace: \"" + fused + "\"");
            }
            entry.fused = std::move(fused);
            lex.mwe_entries.push_back(std::move(entry));
            break;
          }
          case Section::cjk:
            lex.cjk_entries.emplace_back(line);
            break;
          case Section::stopwords:
            lex.stoplist.emplace(line);
            break;
          case Section::lemma: {
            auto [token, lemma] = parse_arrow(line, origin, lineno);
            lex.lemma_map.emplace(std::move(token), std::move(lemma));
            break;
          }
          case Section::protected_:
            lex.protected_anchors.emplace(line);
            break;
          case Section::gloss: {
            auto [term, gloss] = parse_arrow(line, origin, lineno);
            lex.gloss.emplace(std::move(term), std::move(gloss));
            break;
          }
        }
      }
    }
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }

  for (const auto& anchor : lex.protected_anchors) {
    if (!producible(anchor, lex)) {
      log::warn(origin + ": protected term \"" + anchor +
                "\" is not producible by the tokeniser with this lexicon");
    }
  }
  return lex;
}

Lexicon Lexicon::from_file(const std::string& path) { return parse(read_file(path), path); }

}  // namespace semnet
