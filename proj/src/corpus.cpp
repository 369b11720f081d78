#include "reprint/corpus.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "reprint/csv.hpp"
#include "reprint/error.hpp"
#include "reprint/text.hpp"

namespace reprint {

using nlohmann::json;

ArticleCollection::ArticleCollection(std::vector<Article> articles, std::vector<Reject> rejects)
    : articles_(std::move(articles)), rejects_(std::move(rejects)) {
    for (ArticleIndex i = 0; i < articles_.size(); ++i) {
        by_key_.emplace(std::make_pair(articles_[i].source, articles_[i].id), i);
    }
}

std::optional<ArticleIndex> ArticleCollection::find(std::string_view source, std::string_view id) const {
    auto it = by_key_.find(std::make_pair(std::string(source), std::string(id)));
    if (it == by_key_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::string> ArticleCollection::sources() const {
    std::set<std::string> s;
    for (const auto& a : articles_) s.insert(a.source);
    return {s.begin(), s.end()};
}

InputFormat format_from_extension(const std::filesystem::path& path) {
    auto ext = text::lowercase(path.extension().string());
    return ext == ".csv" ? InputFormat::csv : InputFormat::jsonl;
}

std::string canonical_source(std::string_view raw) {
    std::string lowered = text::lowercase(text::trim(raw));
    std::string out;
    out.reserve(lowered.size());
    bool in_space = false;
    for (char c : lowered) {
        bool ws = c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
        if (ws) {
            in_space = true;
            continue;
        }
        if (in_space && !out.empty()) out.push_back(' ');
        in_space = false;
        out.push_back(c);
    }
    return out;
}

std::string derive_article_id(std::string_view source, const std::optional<std::string>& url,
                              EpochSeconds published, std::string_view body) {
    std::uint64_t h = 14695981039346656037ULL;
    auto mix = [&h](std::string_view s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ULL;
        }
        h ^= 0x1F;
        h *= 1099511628211ULL;
    };
    mix(source);
    mix(url ? std::string_view(*url) : std::string_view{});
    mix(std::to_string(published));
    // Without a URL, source+timestamp alone collides for same-second articles.
    if (!url) mix(body);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

// Field values as extracted from either input format, before validation.
struct RawRecord {
    std::optional<std::string> id;
    std::optional<std::string> source;
    std::optional<std::string> title;
    std::optional<std::string> body;
    std::optional<std::string> author;
    std::optional<std::string> published_utc;
    std::optional<std::string> url;
    std::optional<std::string> fb_shares;
    std::optional<std::string> fb_reactions;
};

std::optional<std::int64_t> parse_count(const std::string& s) {
    auto t = text::trim(s);
    if (t.empty()) return std::nullopt;
    std::int64_t v = 0;
    for (char c : t) {
        if (c < '0' || c > '9') return std::nullopt;
        if (v > (std::numeric_limits<std::int64_t>::max() - (c - '0')) / 10) return std::nullopt;
        v = v * 10 + (c - '0');
    }
    return v;
}

std::optional<std::string> non_empty(std::optional<std::string> v) {
    if (v && text::trim(*v).empty()) return std::nullopt;
    return v;
}

class Validator {
public:
    void add(std::size_t row, RawRecord raw) {
        ++total_;
        Article a;
        std::string source = raw.source ? canonical_source(*raw.source) : std::string{};
        if (source.empty()) return reject(row, "missing source");
        a.source = std::move(source);

        if (!raw.body || text::trim(*raw.body).empty()) return reject(row, "missing body");
        a.body = std::move(*raw.body);

        if (!raw.published_utc || text::trim(*raw.published_utc).empty()) {
            return reject(row, "missing published_utc");
        }
        auto ts = parse_timestamp(*raw.published_utc);
        if (!ts) return reject(row, "invalid published_utc");
        a.published_utc = *ts;

        a.title = raw.title.value_or("");
        a.author = non_empty(std::move(raw.author));
        a.url = non_empty(std::move(raw.url));

        if (auto v = non_empty(std::move(raw.fb_shares))) {
            a.fb_shares = parse_count(*v);
            if (!a.fb_shares) return reject(row, "invalid fb_shares");
        }
        if (auto v = non_empty(std::move(raw.fb_reactions))) {
            a.fb_reactions = parse_count(*v);
            if (!a.fb_reactions) return reject(row, "invalid fb_reactions");
        }

        auto id = non_empty(std::move(raw.id));
        a.id = id ? std::string(text::trim(*id)) : derive_article_id(a.source, a.url, a.published_utc, a.body);

        if (!seen_.insert({a.source, a.id}).second) return reject(row, "duplicate id");
        articles_.push_back(std::move(a));
    }

    void reject(std::size_t row, std::string reason) {
        rejects_.push_back({row, std::move(reason)});
    }

    void count_unparsed() { ++total_; }

    ArticleCollection finish(const std::filesystem::path& path) {
        if (total_ > 0 && rejects_.size() * 2 > total_) {
            throw DataError(path.string() + ": " + std::to_string(rejects_.size()) + " of " +
                            std::to_string(total_) + " records rejected; schema mismatch?");
        }
        return ArticleCollection(std::move(articles_), std::move(rejects_));
    }

private:
    std::size_t total_ = 0;
    std::vector<Article> articles_;
    std::vector<Reject> rejects_;
    std::set<std::pair<std::string, std::string>> seen_;
};

std::optional<std::string> json_text(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return std::nullopt;
    if (it->is_string()) return it->get<std::string>();
    if (it->is_number_integer() || it->is_number_unsigned()) return it->dump();
    if (it->is_number_float()) {
        double d = it->get<double>();
        if (d == static_cast<double>(static_cast<std::int64_t>(d))) {
            return std::to_string(static_cast<std::int64_t>(d));
        }
        return it->dump();
    }
    if (it->is_boolean()) return it->dump();
    return std::nullopt;
}

ArticleCollection ingest_jsonl(std::istream& in, const std::filesystem::path& path) {
    Validator v;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (text::trim(line).empty()) continue;
        json obj = json::parse(line, nullptr, false);
        if (obj.is_discarded()) {
            v.count_unparsed();
            v.reject(row, "malformed json");
            continue;
        }
        if (!obj.is_object()) {
            v.count_unparsed();
            v.reject(row, "not a json object");
            continue;
        }
        RawRecord r;
        r.id = json_text(obj, "id");
        r.source = json_text(obj, "source");
        r.title = json_text(obj, "title");
        r.body = json_text(obj, "body");
        r.author = json_text(obj, "author");
        r.published_utc = json_text(obj, "published_utc");
        r.url = json_text(obj, "url");
        r.fb_shares = json_text(obj, "fb_shares");
        r.fb_reactions = json_text(obj, "fb_reactions");
        v.add(row, std::move(r));
    }
    return v.finish(path);
}

ArticleCollection ingest_csv(std::istream& in, const std::filesystem::path& path) {
    csv::Reader reader(in);
    auto header = reader.next();
    if (!header) throw DataError(path.string() + ": missing CSV header");

    std::map<std::string, std::size_t> columns;
    for (std::size_t i = 0; i < header->fields.size(); ++i) {
        auto name = text::lowercase(text::trim(header->fields[i]));
        if (i == 0 && name.rfind("\xEF\xBB\xBF", 0) == 0) name.erase(0, 3);
        columns.emplace(name, i);
    }
    for (const char* required : {"source", "body", "published_utc"}) {
        if (!columns.count(required)) {
            throw DataError(path.string() + ": unparseable header, missing column '" + required + "'");
        }
    }
    auto column = [&](const csv::Record& rec, const char* key) -> std::optional<std::string> {
        auto it = columns.find(key);
        if (it == columns.end() || it->second >= rec.fields.size()) return std::nullopt;
        return rec.fields[it->second];
    };

    Validator v;
    std::size_t row = 1;
    while (auto rec = reader.next()) {
        ++row;
        if (rec->fields.size() == 1 && text::trim(rec->fields[0]).empty()) continue;
        if (rec->fields.size() != header->fields.size()) {
            v.count_unparsed();
            v.reject(row, "field count mismatch");
            continue;
        }
        RawRecord r;
        r.id = column(*rec, "id");
        r.source = column(*rec, "source");
        r.title = column(*rec, "title");
        r.body = column(*rec, "body");
        r.author = column(*rec, "author");
        r.published_utc = column(*rec, "published_utc");
        r.url = column(*rec, "url");
        r.fb_shares = column(*rec, "fb_shares");
        r.fb_reactions = column(*rec, "fb_reactions");
        v.add(row, std::move(r));
    }
    return v.finish(path);
}

}  // namespace

ArticleCollection ingest_articles(const std::filesystem::path& path, InputFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read articles file: " + path.string());
    return format == InputFormat::csv ? ingest_csv(in, path) : ingest_jsonl(in, path);
}

std::vector<TimeWindow> partition_windows(const ArticleCollection& collection, int window_days) {
    if (collection.empty()) throw DataError("cannot partition an empty collection");
    if (window_days < 1) throw ConfigError("window_days must be positive");

    auto [lo, hi] = std::minmax_element(collection.articles().begin(), collection.articles().end(),
                                        [](const Article& a, const Article& b) {
                                            return a.published_utc < b.published_utc;
                                        });
    const EpochSeconds start = floor_to_day(lo->published_utc);
    const EpochSeconds length = static_cast<EpochSeconds>(window_days) * kSecondsPerDay;
    const auto count = static_cast<std::size_t>((hi->published_utc - start) / length) + 1;

    std::vector<TimeWindow> windows(count);
    for (std::size_t w = 0; w < count; ++w) {
        windows[w].index = w;
        windows[w].start_utc = start + static_cast<EpochSeconds>(w) * length;
        windows[w].end_utc = windows[w].start_utc + length;
    }
    for (ArticleIndex i = 0; i < collection.size(); ++i) {
        auto w = static_cast<std::size_t>((collection[i].published_utc - start) / length);
        windows[w].articles.push_back(i);
    }
    return windows;
}

std::string_view to_string(Audience v) {
    switch (v) {
        case Audience::mainstream: return "mainstream";
        case Audience::alternative: return "alternative";
        case Audience::satire_or_unknown: return "satire_or_unknown";
    }
    return "satire_or_unknown";
}

std::string_view to_string(Reliability v) {
    switch (v) {
        case Reliability::has_published_fake: return "has_published_fake";
        case Reliability::not_or_unknown: return "not_or_unknown";
        case Reliability::satire: return "satire";
    }
    return "not_or_unknown";
}

std::string_view to_string(Leaning v) {
    switch (v) {
        case Leaning::right: return "right";
        case Leaning::left: return "left";
        case Leaning::neutral_or_unknown: return "neutral_or_unknown";
    }
    return "neutral_or_unknown";
}

namespace {

template <typename Enum>
std::optional<Enum> parse_enum(std::string_view raw, std::initializer_list<Enum> values) {
    auto s = text::lowercase(text::trim(raw));
    for (Enum v : values) {
        if (to_string(v) == s) return v;
    }
    return std::nullopt;
}

}  // namespace

SourceLabels LabelTable::lookup(std::string_view source) const {
    auto key = canonical_source(source);
    auto it = rows_.find(key);
    if (it != rows_.end()) return it->second;
    SourceLabels out;
    out.source = key;
    return out;
}

bool LabelTable::contains(std::string_view source) const { return rows_.count(canonical_source(source)) > 0; }

LabelTable load_labels(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read labels file: " + path.string());
    csv::Reader reader(in);
    auto header = reader.next();
    if (!header) throw DataError(path.string() + ": empty labels file");
    std::vector<std::string> names;
    for (auto& f : header->fields) names.push_back(text::lowercase(text::trim(f)));
    if (!names.empty() && names[0].rfind("\xEF\xBB\xBF", 0) == 0) names[0].erase(0, 3);
    if (names != std::vector<std::string>{"source", "audience", "reliability", "leaning"}) {
        throw DataError(path.string() + ": expected header source,audience,reliability,leaning");
    }

    std::map<std::string, SourceLabels> rows;
    std::map<std::string, std::size_t> row_of;
    std::size_t row = 1;
    while (auto rec = reader.next()) {
        ++row;
        if (rec->fields.size() == 1 && text::trim(rec->fields[0]).empty()) continue;
        auto where = path.string() + " row " + std::to_string(row);
        if (rec->fields.size() != 4) throw DataError(where + ": expected 4 fields");
        SourceLabels l;
        l.source = canonical_source(rec->fields[0]);
        if (l.source.empty()) throw DataError(where + ": empty source");
        auto audience = parse_enum(rec->fields[1], {Audience::mainstream, Audience::alternative,
                                                    Audience::satire_or_unknown});
        auto reliability = parse_enum(rec->fields[2], {Reliability::has_published_fake,
                                                       Reliability::not_or_unknown, Reliability::satire});
        auto leaning = parse_enum(rec->fields[3], {Leaning::right, Leaning::left, Leaning::neutral_or_unknown});
        if (!audience) throw DataError(where + ": unknown audience '" + rec->fields[1] + "'");
        if (!reliability) throw DataError(where + ": unknown reliability '" + rec->fields[2] + "'");
        if (!leaning) throw DataError(where + ": unknown leaning '" + rec->fields[3] + "'");
        l.audience = *audience;
        l.reliability = *reliability;
        l.leaning = *leaning;

        auto [it, inserted] = rows.emplace(l.source, l);
        if (!inserted && !(it->second == l)) {
            throw DataError(path.string() + ": conflicting labels for '" + l.source + "' on rows " +
                            std::to_string(row_of[l.source]) + " and " + std::to_string(row));
        }
        if (inserted) row_of[l.source] = row;
    }
    return LabelTable(std::move(rows));
}

Lexicon make_lexicon(std::string name, const std::vector<std::string>& terms) {
    Lexicon lex;
    lex.name = std::move(name);
    for (const auto& t : terms) {
        auto trimmed = text::trim(t);
        if (trimmed.empty() || trimmed.front() == '#') continue;
        lex.words.insert(text::lowercase(trimmed));
    }
    if (lex.words.empty()) throw DataError("lexicon '" + lex.name + "' has no terms");
    return lex;
}

Lexicon load_lexicon(const std::filesystem::path& path, std::string name) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read lexicon file: " + path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    if (!lines.empty() && lines[0].rfind("\xEF\xBB\xBF", 0) == 0) lines[0].erase(0, 3);
    try {
        return make_lexicon(std::move(name), lines);
    } catch (const DataError&) {
        throw DataError("lexicon file has no terms: " + path.string());
    }
}

}  // namespace reprint
