#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>

#include "reprint/tfidf.hpp"
#include "reprint/tokenize.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace reprint;
using namespace reprint::testing;

namespace {

using Strings = std::vector<std::string>;

std::vector<TokenizedDoc> tokenize_all(const Strings& texts) {
    std::vector<TokenizedDoc> docs;
    for (std::size_t i = 0; i < texts.size(); ++i) {
        docs.push_back(tokenize(texts[i]));
        docs.back().article = i;
    }
    return docs;
}


}  // namespace

TEST(Tokenize, HeadlineExample) {
    EXPECT_EQ(tokenize_words("EPA Chief Scott Pruitt Calls for Exit"),
              (Strings{"epa", "chief", "scott", "pruitt", "calls", "for", "exit"}));
}

TEST(Tokenize, EmptyText) {
    EXPECT_TRUE(tokenize_words("").empty());
    EXPECT_EQ(tokenize("").size(), 0u);
}

TEST(Tokenize, PunctuationSplitsAndCounts) {
    auto d = tokenize("U.S.-backed plan, plan!");
    EXPECT_EQ(d.tokens, (Strings{"u", "s", "backed", "plan", "plan"}));
    EXPECT_EQ(d.term_counts.at("plan"), 2);
    int total = 0;
    for (const auto& [t, c] : d.term_counts) total += c;
    EXPECT_EQ(total, static_cast<int>(d.size()));
}

TEST(Tokenize, KeepsNumeralsAndNonAsciiLetters) {
    EXPECT_EQ(tokenize_words("In 2017, 3.5% of Café owners…"),
              (Strings{"in", "2017", "3", "5", "of", "café", "owners"}));
    EXPECT_EQ(tokenize_words("ÉTÉ «Москва» — “quoted”"), (Strings{"été", "москва", "quoted"}));
    EXPECT_EQ(tokenize_words("don't"), (Strings{"don", "t"}));
}

TEST(Tfidf, IdfOfTermInEveryDocIsOne) {
    Strings texts;
    for (int i = 0; i < 10; ++i) texts.push_back("common unique" + std::to_string(i));
    auto docs = tokenize_all(texts);
    auto model = TfidfModel::fit(docs);
    EXPECT_EQ(model.num_docs(), 10u);
    EXPECT_DOUBLE_EQ(model.idf(*model.term_id("common")), 1.0);
    EXPECT_NEAR(model.idf(*model.term_id("unique3")), std::log(11.0 / 2.0) + 1.0, 1e-15);
    EXPECT_NEAR(model.idf(*model.term_id("unique3")), 2.7047, 5e-5);
}

TEST(Tfidf, VocabularyIsSortedAndDocFreqInRange) {
    auto docs = tokenize_all({"b a c", "a d", "c c e"});
    auto model = TfidfModel::fit(docs);
    ASSERT_EQ(model.vocabulary_size(), 5u);
    for (TermId t = 0; t + 1 < model.vocabulary_size(); ++t) EXPECT_LT(model.term(t), model.term(t + 1));
    for (TermId t = 0; t < model.vocabulary_size(); ++t) {
        EXPECT_GE(model.doc_freq(t), 1u);
        EXPECT_LE(model.doc_freq(t), model.num_docs());
    }
    EXPECT_FALSE(model.term_id("zzz"));
}

TEST(Tfidf, VectorsAreUnitNormAndOovDropped) {
    auto docs = tokenize_all({"alpha beta beta", "beta gamma", "delta"});
    auto model = TfidfModel::fit(docs);
    for (const auto& d : docs) {
        auto v = model.vectorize(d);
        double norm = 0.0;
        for (std::size_t i = 0; i < v.entries.size(); ++i) {
            norm += v.entries[i].second * v.entries[i].second;
            if (i) EXPECT_LT(v.entries[i - 1].first, v.entries[i].first);
        }
        EXPECT_NEAR(norm, 1.0, 1e-12);
    }
    EXPECT_TRUE(model.vectorize(tokenize("unseen words only")).empty());
    EXPECT_EQ(model.vectorize(tokenize("alpha unseen")).entries.size(), 1u);
}

TEST(Tfidf, IdenticalDocsGiveIdenticalVectorsAndCosineOne) {
    auto docs = tokenize_all({"one two three two", "one two three two", "four five"});
    auto model = TfidfModel::fit(docs);
    auto a = model.vectorize(docs[0]);
    auto b = model.vectorize(docs[1]);
    EXPECT_EQ(a.entries, b.entries);
    EXPECT_EQ(cosine(a, b), 1.0);
    EXPECT_EQ(cosine(a, model.vectorize(docs[2])), 0.0);
}

TEST(Tfidf, ThreeDocToyCorpusMatchesDenseOracle) {
    auto docs = tokenize_all({"a b", "a c", "b c"});
    auto model = TfidfModel::fit(docs);
    auto dense = dense_tfidf(docs);
    for (std::size_t i = 0; i < docs.size(); ++i) {
        for (std::size_t j = 0; j < docs.size(); ++j) {
            double sparse = cosine(model.vectorize(docs[i]), model.vectorize(docs[j]));
            EXPECT_NEAR(sparse, dense_cosine(dense[i], dense[j]), 1e-12);
        }
    }
    // Every term has df 2, so all weights are equal and cosine("a b", "a c") = 1/2.
    EXPECT_NEAR(cosine(model.vectorize(docs[0]), model.vectorize(docs[1])), 0.5, 1e-15);
}

TEST(Tfidf, CosineProperties) {
    std::mt19937_64 rng(5);
    Strings texts;
    for (int i = 0; i < 40; ++i) texts.push_back(reprint::testing::random_text(rng, 5 + rng() % 40, 60));
    auto docs = tokenize_all(texts);
    auto model = TfidfModel::fit(docs);
    auto dense = dense_tfidf(docs);
    std::vector<DocVector> v;
    for (const auto& d : docs) v.push_back(model.vectorize(d));
    for (std::size_t i = 0; i < v.size(); ++i) {
        EXPECT_NEAR(cosine(v[i], v[i]), 1.0, 1e-9);
        for (std::size_t j = 0; j < v.size(); ++j) {
            double s = cosine(v[i], v[j]);
            EXPECT_EQ(s, cosine(v[j], v[i]));
            EXPECT_GE(s, 0.0);
            EXPECT_LE(s, 1.0);
            EXPECT_NEAR(s, dense_cosine(dense[i], dense[j]), 1e-12);
        }
    }
}
