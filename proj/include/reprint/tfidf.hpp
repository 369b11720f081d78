#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "reprint/tokenize.hpp"

namespace reprint {

using TermId = std::uint32_t;

/// Sparse L2-normalized TF-IDF vector; entries strictly increasing by term id.
struct DocVector {
    std::size_t article = 0;
    std::vector<std::pair<TermId, double>> entries;

    bool empty() const { return entries.empty(); }
};

/// Cosine of two sparse vectors, clamped to [0, 1]. The dot product is summed in
/// increasing term order so that cosine(a, b) and cosine(b, a) are bit-identical.
double cosine(const DocVector& a, const DocVector& b);

/// Document frequencies over a fixed training set. Term ids follow the
/// lexicographic order of the terms.
///
///   idf(t) = ln((1 + N) / (1 + df(t))) + 1
///   w(t)   = tf(t) * idf(t), then L2-normalized
class TfidfModel {
public:
    TfidfModel() = default;

    static TfidfModel fit(std::span<const TokenizedDoc> docs, std::optional<std::size_t> window_index = {});

    std::optional<std::size_t> window_index() const { return window_index_; }
    std::size_t num_docs() const { return num_docs_; }
    std::size_t vocabulary_size() const { return terms_.size(); }

    std::optional<TermId> term_id(std::string_view term) const;
    const std::string& term(TermId id) const { return terms_[id]; }
    std::size_t doc_freq(TermId id) const { return doc_freq_[id]; }
    double idf(TermId id) const { return idf_[id]; }

    /// Out-of-vocabulary terms are dropped; an all-OOV doc yields an empty vector.
    DocVector vectorize(const TokenizedDoc& doc) const;

private:
    std::optional<std::size_t> window_index_;
    std::size_t num_docs_ = 0;
    std::vector<std::string> terms_;
    std::unordered_map<std::string, TermId> lookup_;
    std::vector<std::size_t> doc_freq_;
    std::vector<double> idf_;
};

}  // namespace reprint
