#include "reprint/tfidf.hpp"

#include <algorithm>
#include <cmath>

namespace reprint {

double cosine(const DocVector& a, const DocVector& b) {
    double dot = 0.0;
    auto i = a.entries.begin();
    auto j = b.entries.begin();
    while (i != a.entries.end() && j != b.entries.end()) {
        if (i->first < j->first) {
            ++i;
        } else if (j->first < i->first) {
            ++j;
        } else {
            dot += i->second * j->second;
            ++i;
            ++j;
        }
    }
    // Dividing by the recomputed norms makes identical vectors score exactly 1:
    // sqrt(fl(x * x)) == x, so dot / sqrt(na * nb) is 1 when a == b.
    double na = 0.0, nb = 0.0;
    for (const auto& e : a.entries) na += e.second * e.second;
    for (const auto& e : b.entries) nb += e.second * e.second;
    if (!(na > 0.0) || !(nb > 0.0)) return 0.0;
    return std::min(1.0, dot / std::sqrt(na * nb));
}

TfidfModel TfidfModel::fit(std::span<const TokenizedDoc> docs, std::optional<std::size_t> window_index) {
    std::unordered_map<std::string, std::size_t> df;
    for (const auto& doc : docs) {
        for (const auto& [term, count] : doc.term_counts) {
            if (count > 0) ++df[term];
        }
    }

    TfidfModel model;
    model.window_index_ = window_index;
    model.num_docs_ = docs.size();
    model.terms_.reserve(df.size());
    for (const auto& entry : df) model.terms_.push_back(entry.first);
    std::sort(model.terms_.begin(), model.terms_.end());

    const double n = static_cast<double>(model.num_docs_);
    model.doc_freq_.resize(model.terms_.size());
    model.idf_.resize(model.terms_.size());
    model.lookup_.reserve(model.terms_.size());
    for (TermId id = 0; id < model.terms_.size(); ++id) {
        const auto& term = model.terms_[id];
        std::size_t d = df[term];
        model.lookup_.emplace(term, id);
        model.doc_freq_[id] = d;
        model.idf_[id] = std::log((1.0 + n) / (1.0 + static_cast<double>(d))) + 1.0;
    }
    return model;
}

std::optional<TermId> TfidfModel::term_id(std::string_view term) const {
    auto it = lookup_.find(std::string(term));
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

DocVector TfidfModel::vectorize(const TokenizedDoc& doc) const {
    DocVector v;
    v.article = doc.article;
    v.entries.reserve(doc.term_counts.size());
    for (const auto& [term, count] : doc.term_counts) {
        if (count <= 0) continue;
        auto it = lookup_.find(term);
        if (it == lookup_.end()) continue;
        v.entries.emplace_back(it->second, static_cast<double>(count) * idf_[it->second]);
    }
    std::sort(v.entries.begin(), v.entries.end());

    double sq = 0.0;
    for (const auto& e : v.entries) sq += e.second * e.second;
    if (sq > 0.0) {
        const double norm = std::sqrt(sq);
        for (auto& e : v.entries) e.second /= norm;
    }
    return v;
}

}  // namespace reprint
