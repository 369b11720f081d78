#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace reprint::text {

/// Decodes one UTF-8 code point starting at `pos` and advances `pos`.
/// Malformed sequences consume one byte and yield U+FFFD.
char32_t decode_utf8(std::string_view s, std::size_t& pos);

void append_utf8(std::string& out, char32_t cp);

/// Simple case folding for ASCII, Latin-1, Latin Extended-A, Greek and Cyrillic.
char32_t to_lower(char32_t cp);

/// Letters, digits and combining marks. Punctuation, symbols, whitespace and
/// controls are not word characters.
bool is_word_char(char32_t cp);

/// True for quotation marks: " ' ` and their typographic forms.
bool is_quote_char(char32_t cp);

/// Punctuation in the ASCII, Latin-1 and General Punctuation blocks.
bool is_punctuation(char32_t cp);

std::string lowercase(std::string_view s);

/// Strips leading/trailing ASCII whitespace.
std::string_view trim(std::string_view s);

}  // namespace reprint::text
