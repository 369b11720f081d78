#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <random>
#include <set>

#include <json.hpp>

#include "reprint/app.hpp"
#include "reprint/csv.hpp"
#include "reprint/error.hpp"
#include "reprint/headlines.hpp"

namespace reprint::app {

namespace fs = std::filesystem;

namespace {

// mt19937_64 output is fixed by the standard; the std distributions are not, so
// everything below draws from raw engine output.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t below(std::uint64_t n) { return engine_() % n; }
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    std::int64_t between(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

private:
    std::mt19937_64 engine_;
};

std::vector<std::string> make_vocabulary(std::size_t size) {
    static constexpr std::array<const char*, 16> onsets = {"b", "c", "d", "f", "g", "h", "k", "l",
                                                           "m", "n", "p", "r", "s", "t", "v", "z"};
    static constexpr std::array<const char*, 8> nuclei = {"a", "e", "i", "o", "u", "ai", "ou", "ea"};
    std::vector<std::string> words;
    words.reserve(size);
    for (std::size_t i = 0; words.size() < size; ++i) {
        std::string w;
        std::size_t k = i;
        do {
            w += onsets[k % onsets.size()];
            k /= onsets.size();
            w += nuclei[k % nuclei.size()];
            k /= nuclei.size();
        } while (k > 0);
        w += "n";
        words.push_back(std::move(w));
    }
    return words;
}

class ZipfSampler {
public:
    ZipfSampler(std::size_t n, double exponent) : cdf_(n) {
        double total = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            total += 1.0 / std::pow(static_cast<double>(r + 1), exponent);
            cdf_[r] = total;
        }
        for (double& c : cdf_) c /= total;
    }

    std::size_t operator()(Rng& rng) const {
        const double u = rng.unit();
        auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        return std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1);
    }

private:
    std::vector<double> cdf_;
};

const std::vector<std::string> kBiasWords = {"allegedly", "claims", "slams", "radical", "shocking", "corruption"};
const std::vector<std::string> kPositiveWords = {"great", "win", "success", "hope", "praise", "strong"};
const std::vector<std::string> kNegativeWords = {"lies", "fail", "crisis", "attack", "scandal", "disaster"};

struct FixtureArticle {
    std::string id;
    std::size_t source = 0;
    std::string title;
    std::string body;
    EpochSeconds published = 0;
    std::optional<std::int64_t> shares;
    std::optional<std::int64_t> reactions;
};

std::string join_words(const std::vector<std::string>& words) {
    std::string s;
    for (std::size_t i = 0; i < words.size(); ++i) s += (i ? " " : "") + words[i];
    return s;
}

std::string source_name(std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "source-%02zu", i + 1);
    return buf;
}

void write_lines(const fs::path& path, const std::vector<std::string>& lines) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    for (const auto& l : lines) out << l << '\n';
}

}  // namespace

std::vector<PlantedCopy> generate_fixture(const FixtureOptions& options, const fs::path& dir) {
    if (options.sources < 2) throw ConfigError("fixture needs at least 2 sources");
    if (options.changed_titles > options.copies) throw ConfigError("changed_titles exceeds copies");
    if (options.copies * 2 > options.sources * options.articles_per_source) throw ConfigError("too many copies");
    const auto start = parse_timestamp(options.start_date);
    if (!start) throw ConfigError("invalid fixture start date: " + options.start_date);
    const EpochSeconds begin = floor_to_day(*start);
    const EpochSeconds span = static_cast<EpochSeconds>(options.span_days) * kSecondsPerDay;
    const EpochSeconds window = static_cast<EpochSeconds>(options.window_days) * kSecondsPerDay;

    Rng rng(options.seed);
    const auto vocab = make_vocabulary(4000);
    const ZipfSampler zipf(vocab.size(), 1.0);
    const auto stop = default_stopwords();
    const std::vector<std::string> stopwords(stop.words.begin(), stop.words.end());

    auto random_words = [&](std::size_t n) {
        std::vector<std::string> w;
        for (std::size_t i = 0; i < n; ++i) w.push_back(vocab[zipf(rng)]);
        return w;
    };
    auto random_title = [&] {
        auto words = random_words(static_cast<std::size_t>(rng.between(5, 10)));
        words.insert(words.begin() + static_cast<std::ptrdiff_t>(rng.below(words.size())),
                     stopwords[rng.below(stopwords.size())]);
        if (rng.below(4) == 0) words.push_back(kBiasWords[rng.below(kBiasWords.size())]);
        if (rng.below(5) == 0) words.push_back(kNegativeWords[rng.below(kNegativeWords.size())]);
        if (rng.below(6) == 0) words.push_back(kPositiveWords[rng.below(kPositiveWords.size())]);
        std::string t = join_words(words);
        t[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(t[0])));
        if (rng.below(3) == 0) t += rng.below(2) ? "!" : "?";
        return t;
    };
    auto engagement = [&]() -> std::optional<std::int64_t> {
        if (rng.below(10) == 0) return std::nullopt;
        return static_cast<std::int64_t>(std::floor(std::exp(rng.unit() * 9.0)));
    };

    std::vector<FixtureArticle> articles;
    for (std::size_t s = 0; s < options.sources; ++s) {
        for (std::size_t k = 0; k < options.articles_per_source; ++k) {
            FixtureArticle a;
            char id[32];
            std::snprintf(id, sizeof id, "s%02zu-a%04zu", s + 1, k + 1);
            a.id = id;
            a.source = s;
            a.title = random_title();
            a.body = join_words(random_words(static_cast<std::size_t>(rng.between(60, 140)))) + ".";
            a.published = begin + rng.between(0, span - 1);
            a.shares = engagement();
            a.reactions = engagement();
            articles.push_back(std::move(a));
        }
    }

    // Each original is copied once, into a slot of another source; no article is both.
    std::set<std::size_t> used;
    std::vector<PlantedCopy> planted;
    std::size_t attempts = 0;
    while (planted.size() < options.copies) {
        if (++attempts > 100000) throw DataError("fixture: could not place planted copies");
        const std::size_t orig = rng.below(articles.size());
        const std::size_t target = rng.below(articles.size());
        if (used.count(orig) || used.count(target)) continue;
        if (articles[orig].source == articles[target].source) continue;
        const EpochSeconds window_end = begin + ((articles[orig].published - begin) / window + 1) * window;
        const EpochSeconds room = std::min<EpochSeconds>(window_end - 1 - articles[orig].published, 2 * kSecondsPerDay);
        if (room < 60) continue;
        used.insert(orig);
        used.insert(target);

        FixtureArticle& copy = articles[target];
        copy.body = articles[orig].body;
        copy.published = articles[orig].published + rng.between(60, room);
        const bool changed = planted.size() < options.changed_titles;
        copy.title = changed ? random_title() : articles[orig].title;
        planted.push_back({source_name(articles[orig].source), articles[orig].id, source_name(copy.source), copy.id,
                           changed});
    }

    fs::create_directories(dir);
    {
        std::ofstream out(dir / "articles.jsonl", std::ios::binary);
        if (!out) throw DataError("cannot write " + (dir / "articles.jsonl").string());
        for (const auto& a : articles) {
            nlohmann::json j = {{"id", a.id},
                                {"source", source_name(a.source)},
                                {"title", a.title},
                                {"body", a.body},
                                {"published_utc", format_utc(a.published)},
                                {"url", "https://" + source_name(a.source) + ".example/" + a.id}};
            if (a.shares) j["fb_shares"] = *a.shares;
            if (a.reactions) j["fb_reactions"] = *a.reactions;
            out << j.dump() << '\n';
        }
    }
    {
        std::ofstream out(dir / "ground_truth.csv", std::ios::binary);
        csv::write_row(out, {"original_source", "original_id", "copy_source", "copy_id", "title_changed"});
        for (const auto& p : planted) {
            csv::write_row(out, {p.original_source, p.original_id, p.copy_source, p.copy_id,
                                 p.title_changed ? "true" : "false"});
        }
    }
    {
        static constexpr std::array<const char*, 3> audience = {"mainstream", "alternative", "satire_or_unknown"};
        static constexpr std::array<const char*, 3> reliability = {"has_published_fake", "not_or_unknown", "satire"};
        static constexpr std::array<const char*, 3> leaning = {"right", "left", "neutral_or_unknown"};
        std::ofstream out(dir / "labels.csv", std::ios::binary);
        csv::write_row(out, {"source", "audience", "reliability", "leaning"});
        for (std::size_t s = 0; s < options.sources; ++s) {
            csv::write_row(out, {source_name(s), audience[s % 3], reliability[(s / 3) % 3], leaning[(s / 2) % 3]});
        }
    }
    write_lines(dir / "stopwords.txt", stopwords);
    write_lines(dir / "bias.txt", kBiasWords);
    write_lines(dir / "positive.txt", kPositiveWords);
    write_lines(dir / "negative.txt", kNegativeWords);
    return planted;
}

std::vector<PlantedCopy> read_ground_truth(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read " + path.string());
    csv::Reader reader(in);
    std::vector<PlantedCopy> out;
    bool header = true;
    while (auto rec = reader.next()) {
        if (header) {
            header = false;
            continue;
        }
        const auto& f = rec->fields;
        if (f.size() != 5) throw DataError("ground_truth.csv line " + std::to_string(rec->line) + ": expected 5 fields");
        out.push_back({f[0], f[1], f[2], f[3], f[4] == "true"});
    }
    return out;
}

}  // namespace reprint::app
