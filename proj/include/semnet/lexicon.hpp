#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace semnet {

struct MweEntry {
  std::vector<std::string> components;  // match against consecutive tokens
  std::string fused;                    // emitted token, no whitespace
};

// Tokenisation side data, read from a sectioned text file:
//   [mwe]        components separated by spaces; "=> fused_form" optional,
//                default joins the components with underscores
//   [cjk]        dictionary terms for maximum-match segmentation
//   [stopwords]  one token per line
//   [lemma]      "token -> lemma" exact replacements
//   [protected]  anchor terms exempt from NPMI pruning (association module)
//   [gloss]      "term -> english gloss", used by report rendering
// '#' starts a comment, blank lines are ignored.
struct Lexicon {
  std::vector<MweEntry> mwe_entries;
  std::vector<std::string> cjk_entries;
  std::unordered_set<std::string> stoplist;
  std::unordered_map<std::string, std::string> lemma_map;
  std::unordered_set<std::string> protected_anchors;
  std::unordered_map<std::string, std::string> gloss;

  static Lexicon from_file(const std::string& path);
  static Lexicon parse(std::string_view text, const std::string& origin);
};

struct TokenStream {
  std::string doc_id;
  std::vector<std::string> tokens;
};

struct TokenizerOptions {
  bool drop_numeric = true;  // drop purely numeric tokens like "42"
};

// Lowercases ASCII, splits on whitespace and punctuation (underscore is a
// token character), drops purely numeric tokens, applies the lemma map.
// Stopwords stay in the stream; they are filtered at vocabulary selection.
TokenStream tokenize_latin(std::string_view text, const Lexicon& lexicon,
                           const TokenizerOptions& opts = {}, std::string doc_id = {});

// Forward maximum matching of Han runs against the [cjk] dictionary with a
// single-character fallback; embedded non-CJK runs go through tokenize_latin.
TokenStream segment_cjk(std::string_view text, const Lexicon& lexicon,
                        const TokenizerOptions& opts = {}, std::string doc_id = {});

// Longest-match, left-to-right, non-overlapping replacement of component
// sequences by their fused forms.
TokenStream fuse_mwes(const TokenStream& stream, const Lexicon& lexicon);

bool contains_cjk(std::string_view text);

// The k most frequent non-stopword tokens, ties broken by code-point order,
// returned most frequent first. Fewer than k eligible terms -> all, warning.
std::vector<std::string> select_vocabulary(const std::vector<TokenStream>& streams, std::size_t k,
                                           const std::unordered_set<std::string>& stoplist);

}  // namespace semnet
