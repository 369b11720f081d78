#include "reprint/tokenize.hpp"

#include "reprint/text.hpp"

namespace reprint {

std::vector<std::string> tokenize_words(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    std::size_t pos = 0;
    while (pos < text.size()) {
        char32_t cp = text::decode_utf8(text, pos);
        if (text::is_word_char(cp)) {
            text::append_utf8(current, text::to_lower(cp));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

TokenizedDoc tokenize(std::string_view text) {
    TokenizedDoc doc;
    doc.tokens = tokenize_words(text);
    for (const auto& t : doc.tokens) ++doc.term_counts[t];
    return doc;
}

}  // namespace reprint
