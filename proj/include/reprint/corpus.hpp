#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "reprint/timestamp.hpp"

namespace reprint {

/// One news item. `source` is always canonical (see canonical_source).
struct Article {
    std::string id;
    std::string source;
    std::string title;
    std::string body;
    std::optional<std::string> author;
    EpochSeconds published_utc = 0;
    std::optional<std::string> url;
    std::optional<std::int64_t> fb_shares;
    std::optional<std::int64_t> fb_reactions;

    bool operator==(const Article&) const = default;
};

/// A record dropped during ingestion.
struct Reject {
    std::size_t row = 0;  // 1-based line (JSONL) or record number (CSV data rows start at 2)
    std::string reason;

    bool operator==(const Reject&) const = default;
};

/// Articles are addressed by their position in `articles()` throughout the pipeline.
using ArticleIndex = std::size_t;

/// Immutable, validated set of articles in input order.
class ArticleCollection {
public:
    ArticleCollection() = default;
    explicit ArticleCollection(std::vector<Article> articles, std::vector<Reject> rejects = {});

    const std::vector<Article>& articles() const { return articles_; }
    const std::vector<Reject>& rejects() const { return rejects_; }
    const Article& operator[](ArticleIndex i) const { return articles_[i]; }
    std::size_t size() const { return articles_.size(); }
    bool empty() const { return articles_.empty(); }

    /// Looks up by (canonical source, id).
    std::optional<ArticleIndex> find(std::string_view source, std::string_view id) const;

    /// Distinct sources in sorted order.
    std::vector<std::string> sources() const;

private:
    std::vector<Article> articles_;
    std::vector<Reject> rejects_;
    std::map<std::pair<std::string, std::string>, ArticleIndex, std::less<>> by_key_;
};

enum class InputFormat { jsonl, csv };

/// Picks the format from the file extension (.csv → csv, anything else → jsonl).
InputFormat format_from_extension(const std::filesystem::path& path);

/// Reads and validates an article file. Invalid records land in rejects().
/// Throws DataError when the file is unreadable, the CSV header is unusable,
/// or more than half of the records are rejected.
ArticleCollection ingest_articles(const std::filesystem::path& path, InputFormat format);

/// Trim, lowercase, collapse internal whitespace runs to one space.
std::string canonical_source(std::string_view raw);

/// Deterministic id for records that carry none.
std::string derive_article_id(std::string_view source, const std::optional<std::string>& url,
                              EpochSeconds published, std::string_view body);

/// Half-open interval [start_utc, end_utc) holding indices into the collection.
struct TimeWindow {
    std::size_t index = 0;
    EpochSeconds start_utc = 0;
    EpochSeconds end_utc = 0;
    std::vector<ArticleIndex> articles;
};

/// Tiles the corpus span into consecutive windows of `window_days` days, anchored
/// at midnight UTC of the earliest article. Throws DataError on an empty collection.
std::vector<TimeWindow> partition_windows(const ArticleCollection& collection, int window_days = 14);

enum class Audience { mainstream, alternative, satire_or_unknown };
enum class Reliability { has_published_fake, not_or_unknown, satire };
enum class Leaning { right, left, neutral_or_unknown };

std::string_view to_string(Audience v);
std::string_view to_string(Reliability v);
std::string_view to_string(Leaning v);

struct SourceLabels {
    std::string source;
    Audience audience = Audience::satire_or_unknown;
    Reliability reliability = Reliability::not_or_unknown;
    Leaning leaning = Leaning::neutral_or_unknown;

    bool operator==(const SourceLabels&) const = default;
};

/// Per-source labels with *_unknown defaults for sources not in the file.
class LabelTable {
public:
    LabelTable() = default;
    explicit LabelTable(std::map<std::string, SourceLabels> rows) : rows_(rows.begin(), rows.end()) {}

    /// Case- and whitespace-insensitive lookup.
    SourceLabels lookup(std::string_view source) const;
    bool contains(std::string_view source) const;
    std::size_t size() const { return rows_.size(); }

private:
    std::map<std::string, SourceLabels, std::less<>> rows_;
};

/// Reads `source,audience,reliability,leaning`. Exact duplicate rows are tolerated;
/// conflicting rows for one source throw DataError naming both rows.
LabelTable load_labels(const std::filesystem::path& path);

struct Lexicon {
    std::string name;
    std::set<std::string, std::less<>> words;

    bool contains(std::string_view token) const { return words.find(token) != words.end(); }
};

/// One term per line; `#` lines and blank lines ignored; terms lowercased and deduplicated.
/// Throws DataError if no terms remain.
Lexicon load_lexicon(const std::filesystem::path& path, std::string name);

/// Builds a lexicon from in-memory terms with the same normalization as load_lexicon.
Lexicon make_lexicon(std::string name, const std::vector<std::string>& terms);

}  // namespace reprint
