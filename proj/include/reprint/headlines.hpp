#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reprint/corpus.hpp"
#include "reprint/matching.hpp"

namespace reprint {

/// Title comparison for one matched pair: original = earlier article, copy = later.
struct TitlePair {
    std::size_t pair_index = 0;  // position in the input pair list
    ArticleIndex original = 0;
    ArticleIndex copy = 0;
    std::string original_title;
    std::string copy_title;
    double distance = 0.0;  // 1 - cosine of the title TF-IDF vectors, in [0, 1]
    bool eligible = false;  // both titles have at least one token
};

inline constexpr double kDefaultTitleChangeThreshold = 0.10;

/// Title vectors come from one TF-IDF model fitted over the distinct articles
/// appearing in `pairs`. Pairs with an empty title are returned ineligible with distance 0.
std::vector<TitlePair> title_distance(const ArticleCollection& collection, std::span<const MatchedPair> pairs);

inline bool is_changed(const TitlePair& p, double threshold = kDefaultTitleChangeThreshold) {
    return p.eligible && p.distance > threshold;
}

/// Share of eligible pairs with distance > threshold. Throws DataError when none are eligible.
double changed_fraction(std::span<const TitlePair> pairs, double threshold = kDefaultTitleChangeThreshold);

struct ChangerStats {
    std::string source;
    std::size_t copies = 0;   // eligible title pairs where this source is the copier
    std::size_t changed = 0;  // of which changed
    double mean_changed_distance = 0.0;
};

struct ChangerRankings {
    std::vector<ChangerStats> most_changed;     // by changed count desc, then name
    std::vector<ChangerStats> changed_by_most;  // by mean changed distance desc, then name; changed > 0 only
};

ChangerRankings rank_changers(const ArticleCollection& collection, std::span<const TitlePair> pairs,
                              double threshold = kDefaultTitleChangeThreshold);

enum class Feature {
    stopword_frac,
    punctuation_count,
    quote_count,
    readability,
    bias_frac,
    pos_opinion_frac,
    neg_opinion_frac,
};

inline constexpr std::array<Feature, 7> kAllFeatures = {
    Feature::stopword_frac, Feature::punctuation_count, Feature::quote_count,     Feature::readability,
    Feature::bias_frac,     Feature::pos_opinion_frac,  Feature::neg_opinion_frac,
};

std::string_view to_string(Feature f);

struct TitleFeatures {
    double stopword_frac = 0.0;
    double punctuation_count = 0.0;  // punctuation characters other than quotation marks
    double quote_count = 0.0;
    double readability = 0.0;  // Flesch-Kincaid grade level
    double bias_frac = 0.0;
    double pos_opinion_frac = 0.0;
    double neg_opinion_frac = 0.0;
    std::size_t tokens = 0;
    bool eligible = false;              // at least one token
    bool readability_eligible = false;  // at least three tokens

    double value(Feature f) const;
    bool operator==(const TitleFeatures&) const = default;
};

/// Lexicons used by extract_features. A missing lexicon leaves its feature at 0.
struct FeatureLexicons {
    std::optional<Lexicon> stopwords;
    std::optional<Lexicon> bias;
    std::optional<Lexicon> positive;
    std::optional<Lexicon> negative;

    /// Features that can be computed with the lexicons present.
    std::vector<Feature> available_features() const;
};

/// Built-in English stopword list.
Lexicon default_stopwords();

/// Vowel-group syllable estimate for one lowercase token, at least 1.
int estimate_syllables(std::string_view token);

/// 0.39 * words/sentences + 11.8 * syllables/words - 15.59
double flesch_kincaid_grade(std::string_view text);

TitleFeatures extract_features(std::string_view title, const FeatureLexicons& lexicons);

enum class ShiftDirection { increase, decrease };

std::string_view to_string(ShiftDirection d);

struct FeatureShift {
    std::string source;
    Feature feature = Feature::stopword_frac;
    ShiftDirection direction = ShiftDirection::increase;  // sign of mean(copies) - mean(originals)
    double f = 0.0;
    double p = 1.0;
    std::size_t n_own = 0;
    std::size_t n_copied = 0;
};

struct ShiftOptions {
    double alpha = 0.05;
    std::size_t min_samples_exclusive = 8;  // each group needs n > this
};

struct ShiftAnalysis {
    std::string source;
    std::size_t pairs = 0;
    std::vector<FeatureShift> shifts;
    std::string reason;  // why no test was run; empty otherwise
};

/// Compares the source's copy titles (group A) with the original titles they were
/// copied from (group B), feature by feature. A shift is reported when both groups
/// have more than 8 samples, both pass Shapiro-Wilk, and the ANOVA p-value is below alpha.
/// Readability is only compared on pairs where both titles have at least three tokens.
ShiftAnalysis significant_shifts(const std::string& source, const ArticleCollection& collection,
                                 std::span<const TitlePair> pairs, const FeatureLexicons& lexicons,
                                 const ShiftOptions& options = {});

}  // namespace reprint
