#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace semnet {

// Fatal configuration problem (bad regex, malformed config/lexicon file, ...).
// The CLI reports these before any document is processed.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// File system / encoding failure. Message names the offending path.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace utf8 {

// Byte offset of the first invalid UTF-8 sequence, or nullopt when valid.
// Strict: rejects overlong forms, surrogates and codepoints above U+10FFFF.
std::optional<std::size_t> first_invalid(std::string_view s);

// Decodes the codepoint starting at byte i and advances i past it.
// Input must be valid UTF-8 (check with first_invalid once per document).
char32_t next(std::string_view s, std::size_t& i);

void append(std::string& out, char32_t cp);

std::size_t codepoint_count(std::string_view s);

}  // namespace utf8

std::string read_file(const std::string& path);

// Writes via temp file + rename so readers never observe a partial file.
// Creates parent directories as needed.
void write_file_atomic(const std::string& path, std::string_view content);

std::string_view trim(std::string_view s);
std::string to_lower_ascii(std::string_view s);
bool is_all_ascii_digits(std::string_view s);

// Fixed-point rendering for the human-readable tables. Negative zero is
// normalised to "0.0000" so rendered output never depends on the sign of
// a zero intermediate.
std::string format_fixed(double v, int places);

// Shortest round-trip representation (machine formats: GraphML, edge CSV).
std::string format_double(double v);

// RFC-4180-style quoting, applied only when the field needs it.
std::string csv_field(std::string_view s);

}  // namespace semnet
