#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "reprint/corpus.hpp"
#include "reprint/tfidf.hpp"

namespace reprint {

enum class Direction { forward, ambiguous };

std::string_view to_string(Direction d);

/// A near-verbatim cross-source pair. For `ambiguous` pairs (identical timestamps)
/// `earlier` holds the lexicographically smaller source.
struct MatchedPair {
    ArticleIndex earlier = 0;
    ArticleIndex later = 0;
    double similarity = 0.0;
    std::size_t window_index = 0;
    Direction direction = Direction::forward;

    bool operator==(const MatchedPair&) const = default;
};

/// Indices into the vector span handed to the join, first < second.
struct ScoredPair {
    std::size_t first = 0;
    std::size_t second = 0;
    double score = 0.0;

    bool operator==(const ScoredPair&) const = default;
};

struct JoinOptions {
    double threshold = 0.90;
    /// Minimum number of highest-weight terms indexed per vector. The indexed
    /// prefix grows past this until the unindexed remainder has L2 norm at most
    /// threshold/2, which keeps the join exact.
    std::size_t top_k = 32;
    unsigned jobs = 1;
};

/// Every pair (i, j), i < j, with groups[i] != groups[j] and cosine > threshold.
/// Candidates come from an inverted index over each vector's high-weight prefix
/// and are pruned with an upper bound before full scoring. Output sorted by (first, second).
std::vector<ScoredPair> similarity_join(std::span<const DocVector> vectors, std::span<const std::uint32_t> groups,
                                        const JoinOptions& options);

struct MatchOptions {
    double threshold = 0.90;
    std::size_t min_body_tokens = 20;
    std::size_t top_k = 32;
    unsigned jobs = 1;
};

struct WindowMatches {
    std::size_t window_index = 0;
    std::size_t docs = 0;
    std::size_t eligible_docs = 0;
    bool skipped = false;  // fewer than two eligible docs
    std::vector<MatchedPair> pairs;
};

/// Fits a TF-IDF model on the window's eligible bodies and returns every
/// cross-source pair above threshold, sorted by (similarity desc, earlier id, later id).
WindowMatches find_matches(const ArticleCollection& collection, const TimeWindow& window,
                           const MatchOptions& options = {});

/// Orders a pair by publication time; equal timestamps give an ambiguous pair.
MatchedPair orient_pair(const ArticleCollection& collection, ArticleIndex a, ArticleIndex b, double similarity,
                        std::size_t window_index);

/// The canonical output ordering.
void sort_pairs(const ArticleCollection& collection, std::vector<MatchedPair>& pairs);

/// `window_index,earlier_source,earlier_id,later_source,later_id,similarity,direction`
void write_pairs_csv(std::ostream& out, const ArticleCollection& collection, std::span<const MatchedPair> pairs);
void write_pairs_csv(const std::filesystem::path& path, const ArticleCollection& collection,
                     std::span<const MatchedPair> pairs);

/// Resolves every row against the collection. Throws DataError on unknown articles or bad rows.
std::vector<MatchedPair> read_pairs_csv(const std::filesystem::path& path, const ArticleCollection& collection);

}  // namespace reprint
