#include "reprint/headlines.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "reprint/error.hpp"
#include "reprint/log.hpp"
#include "reprint/stats.hpp"
#include "reprint/text.hpp"
#include "reprint/tfidf.hpp"
#include "reprint/tokenize.hpp"

namespace reprint {

std::vector<TitlePair> title_distance(const ArticleCollection& collection, std::span<const MatchedPair> pairs) {
    std::set<ArticleIndex> articles;
    for (const auto& p : pairs) {
        articles.insert(p.earlier);
        articles.insert(p.later);
    }
    std::map<ArticleIndex, TokenizedDoc> docs;
    std::vector<TokenizedDoc> training;
    for (ArticleIndex a : articles) {
        TokenizedDoc d = tokenize(collection[a].title);
        d.article = a;
        if (d.size() > 0) training.push_back(d);
        docs.emplace(a, std::move(d));
    }
    const TfidfModel model = TfidfModel::fit(training);
    std::map<ArticleIndex, DocVector> vectors;
    for (const auto& [a, d] : docs) vectors.emplace(a, model.vectorize(d));

    std::vector<TitlePair> out;
    out.reserve(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        TitlePair t;
        t.pair_index = i;
        t.original = pairs[i].earlier;
        t.copy = pairs[i].later;
        t.original_title = collection[t.original].title;
        t.copy_title = collection[t.copy].title;
        const DocVector& a = vectors.at(t.original);
        const DocVector& b = vectors.at(t.copy);
        t.eligible = !a.empty() && !b.empty();
        if (t.eligible) {
            double d = 1.0 - cosine(a, b);
            // Equal unit vectors can land a few ulps away from cosine 1.
            if (d < 1e-12) d = 0.0;
            t.distance = std::min(1.0, d);
        }
        out.push_back(std::move(t));
    }
    return out;
}

double changed_fraction(std::span<const TitlePair> pairs, double threshold) {
    std::size_t eligible = 0;
    std::size_t changed = 0;
    for (const auto& p : pairs) {
        if (!p.eligible) continue;
        ++eligible;
        if (p.distance > threshold) ++changed;
    }
    if (eligible == 0) throw DataError("changed_fraction: no eligible title pairs");
    return static_cast<double>(changed) / static_cast<double>(eligible);
}

ChangerRankings rank_changers(const ArticleCollection& collection, std::span<const TitlePair> pairs,
                              double threshold) {
    std::map<std::string, ChangerStats> by_source;
    std::map<std::string, double> distance_sum;
    for (const auto& p : pairs) {
        if (!p.eligible) continue;
        const std::string& source = collection[p.copy].source;
        auto& s = by_source[source];
        s.source = source;
        ++s.copies;
        if (p.distance > threshold) {
            ++s.changed;
            distance_sum[source] += p.distance;
        }
    }
    ChangerRankings r;
    for (auto& [source, s] : by_source) {
        if (s.changed > 0) s.mean_changed_distance = distance_sum[source] / static_cast<double>(s.changed);
        r.most_changed.push_back(s);
        if (s.changed > 0) r.changed_by_most.push_back(s);
    }
    std::stable_sort(r.most_changed.begin(), r.most_changed.end(), [](const auto& a, const auto& b) {
        return a.changed != b.changed ? a.changed > b.changed : a.source < b.source;
    });
    std::stable_sort(r.changed_by_most.begin(), r.changed_by_most.end(), [](const auto& a, const auto& b) {
        return a.mean_changed_distance != b.mean_changed_distance ? a.mean_changed_distance > b.mean_changed_distance
                                                                  : a.source < b.source;
    });
    return r;
}

std::string_view to_string(Feature f) {
    switch (f) {
        case Feature::stopword_frac: return "stopword_frac";
        case Feature::punctuation_count: return "punctuation_count";
        case Feature::quote_count: return "quote_count";
        case Feature::readability: return "readability";
        case Feature::bias_frac: return "bias_frac";
        case Feature::pos_opinion_frac: return "pos_opinion_frac";
        case Feature::neg_opinion_frac: return "neg_opinion_frac";
    }
    return "unknown";
}

std::string_view to_string(ShiftDirection d) { return d == ShiftDirection::increase ? "increase" : "decrease"; }

double TitleFeatures::value(Feature f) const {
    switch (f) {
        case Feature::stopword_frac: return stopword_frac;
        case Feature::punctuation_count: return punctuation_count;
        case Feature::quote_count: return quote_count;
        case Feature::readability: return readability;
        case Feature::bias_frac: return bias_frac;
        case Feature::pos_opinion_frac: return pos_opinion_frac;
        case Feature::neg_opinion_frac: return neg_opinion_frac;
    }
    return 0.0;
}

std::vector<Feature> FeatureLexicons::available_features() const {
    std::vector<Feature> out;
    for (Feature f : kAllFeatures) {
        if (f == Feature::stopword_frac && !stopwords) continue;
        if (f == Feature::bias_frac && !bias) continue;
        if (f == Feature::pos_opinion_frac && !positive) continue;
        if (f == Feature::neg_opinion_frac && !negative) continue;
        out.push_back(f);
    }
    return out;
}

Lexicon default_stopwords() {
    static const std::vector<std::string> words = {
        "a",       "about",   "above",  "after",   "again",   "against", "all",     "am",     "an",
        "and",     "any",     "are",    "as",      "at",      "be",      "because", "been",   "before",
        "being",   "below",   "between", "both",   "but",     "by",      "can",     "could",  "did",
        "do",      "does",    "doing",  "down",    "during",  "each",    "few",     "for",    "from",
        "further", "had",     "has",    "have",    "having",  "he",      "her",     "here",   "hers",
        "herself", "him",     "himself", "his",    "how",     "i",       "if",      "in",     "into",
        "is",      "it",      "its",    "itself",  "just",    "me",      "more",    "most",   "my",
        "myself",  "no",      "nor",    "not",     "now",     "of",      "off",     "on",     "once",
        "only",    "or",      "other",  "our",     "ours",    "ourselves", "out",   "over",   "own",
        "same",    "she",     "should", "so",      "some",    "such",    "than",    "that",   "the",
        "their",   "theirs",  "them",   "themselves", "then", "there",   "these",   "they",   "this",
        "those",   "through", "to",     "too",     "under",   "until",   "up",      "very",   "was",
        "we",      "were",    "what",   "when",    "where",   "which",   "while",   "who",    "whom",
        "why",     "will",    "with",   "would",   "you",     "your",    "yours",   "yourself", "yourselves",
    };
    return make_lexicon("stopwords", words);
}

int estimate_syllables(std::string_view token) {
    auto vowel = [](char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y'; };
    int groups = 0;
    bool prev_vowel = false;
    bool has_alpha = false;
    for (char c : token) {
        bool is_alpha = c >= 'a' && c <= 'z';
        has_alpha = has_alpha || is_alpha;
        bool v = vowel(c);
        if (v && !prev_vowel) ++groups;
        prev_vowel = v;
    }
    if (!has_alpha) return 1;
    const std::size_t n = token.size();
    if (groups > 1 && n >= 2 && token[n - 1] == 'e' && !(n >= 3 && token[n - 2] == 'l' && !vowel(token[n - 3]))) {
        --groups;
    }
    return std::max(groups, 1);
}

double flesch_kincaid_grade(std::string_view text) {
    const auto tokens = tokenize_words(text);
    if (tokens.empty()) return 0.0;
    std::size_t sentences = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c != '.' && c != '!' && c != '?') continue;
        std::size_t j = i;
        while (j + 1 < text.size() && (text[j + 1] == '.' || text[j + 1] == '!' || text[j + 1] == '?')) ++j;
        bool at_break = j + 1 == text.size() || text[j + 1] == ' ' || text[j + 1] == '\t' || text[j + 1] == '\n';
        if (at_break) ++sentences;
        i = j;
    }
    sentences = std::max<std::size_t>(sentences, 1);
    std::size_t syllables = 0;
    for (const auto& t : tokens) syllables += static_cast<std::size_t>(estimate_syllables(t));
    const double words = static_cast<double>(tokens.size());
    return 0.39 * (words / static_cast<double>(sentences)) + 11.8 * (static_cast<double>(syllables) / words) - 15.59;
}

TitleFeatures extract_features(std::string_view title, const FeatureLexicons& lexicons) {
    TitleFeatures f;
    const auto tokens = tokenize_words(title);
    if (tokens.empty()) return f;
    f.tokens = tokens.size();
    f.eligible = true;
    f.readability_eligible = tokens.size() >= 3;

    const double n = static_cast<double>(tokens.size());
    auto fraction = [&](const std::optional<Lexicon>& lex) {
        if (!lex) return 0.0;
        std::size_t hits = 0;
        for (const auto& t : tokens) hits += lex->contains(t) ? 1 : 0;
        return static_cast<double>(hits) / n;
    };
    f.stopword_frac = fraction(lexicons.stopwords);
    f.bias_frac = fraction(lexicons.bias);
    f.pos_opinion_frac = fraction(lexicons.positive);
    f.neg_opinion_frac = fraction(lexicons.negative);

    std::size_t pos = 0;
    while (pos < title.size()) {
        char32_t cp = text::decode_utf8(title, pos);
        if (text::is_quote_char(cp)) {
            f.quote_count += 1.0;
        } else if (text::is_punctuation(cp)) {
            f.punctuation_count += 1.0;
        }
    }
    f.readability = flesch_kincaid_grade(title);
    return f;
}

ShiftAnalysis significant_shifts(const std::string& source, const ArticleCollection& collection,
                                 std::span<const TitlePair> pairs, const FeatureLexicons& lexicons,
                                 const ShiftOptions& options) {
    ShiftAnalysis result;
    result.source = source;

    std::vector<TitleFeatures> own, copied;
    for (const auto& p : pairs) {
        if (!p.eligible || collection[p.copy].source != source) continue;
        own.push_back(extract_features(p.copy_title, lexicons));
        copied.push_back(extract_features(p.original_title, lexicons));
    }
    result.pairs = own.size();
    if (own.size() <= options.min_samples_exclusive) {
        result.reason = "insufficient samples";
        log::info("shift_analysis_skipped",
                  {{"source", source}, {"reason", result.reason}, {"pairs", std::to_string(own.size())}});
        return result;
    }

    for (Feature feature : lexicons.available_features()) {
        std::vector<double> a, b;
        for (std::size_t i = 0; i < own.size(); ++i) {
            if (feature == Feature::readability && !(own[i].readability_eligible && copied[i].readability_eligible)) {
                continue;
            }
            a.push_back(own[i].value(feature));
            b.push_back(copied[i].value(feature));
        }
        if (a.size() <= options.min_samples_exclusive || b.size() <= options.min_samples_exclusive) continue;
        if (!stats::normality_test(a, options.alpha) || !stats::normality_test(b, options.alpha)) continue;
        stats::AnovaResult anova;
        try {
            anova = stats::anova_f(a, b);
        } catch (const StatsError&) {
            continue;
        }
        if (!(anova.p < options.alpha)) continue;

        double mean_a = 0.0, mean_b = 0.0;
        for (double v : a) mean_a += v;
        for (double v : b) mean_b += v;
        mean_a /= static_cast<double>(a.size());
        mean_b /= static_cast<double>(b.size());

        FeatureShift s;
        s.source = source;
        s.feature = feature;
        s.direction = mean_a > mean_b ? ShiftDirection::increase : ShiftDirection::decrease;
        s.f = anova.f;
        s.p = anova.p;
        s.n_own = a.size();
        s.n_copied = b.size();
        result.shifts.push_back(s);
    }
    return result;
}

}  // namespace reprint
