#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace reprint {

struct TokenizedDoc {
    std::size_t article = 0;  // index into the owning collection, when there is one
    std::vector<std::string> tokens;
    std::unordered_map<std::string, int> term_counts;

    std::size_t size() const { return tokens.size(); }
};

/// Splits on every non-word code point (punctuation, symbols, whitespace),
/// lowercases, keeps numerals, no stemming. "U.S.-backed" → u, s, backed.
std::vector<std::string> tokenize_words(std::string_view text);

TokenizedDoc tokenize(std::string_view text);

}  // namespace reprint
