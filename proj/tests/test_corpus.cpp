#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "reprint/corpus.hpp"
#include "reprint/error.hpp"
#include "reprint/timestamp.hpp"
#include "test_support.hpp"

using namespace reprint;
using reprint::testing::kApril7;
using reprint::testing::make_article;
using reprint::testing::TempDir;
using reprint::testing::write_file;

namespace {

const std::string kBody = "the quick brown fox jumps over the lazy dog";

std::string jsonl_line(const std::string& source, const std::string& published, const std::string& extra = "") {
    return R"({"source": ")" + source + R"(", "body": ")" + kBody + R"(", "published_utc": ")" + published + "\"" +
           extra + "}\n";
}

}  // namespace

TEST(Timestamp, ParsesIsoAndEpoch) {
    EXPECT_EQ(parse_timestamp("2017-04-07"), kApril7);
    EXPECT_EQ(parse_timestamp("2017-04-07T00:00:00Z"), kApril7);
    EXPECT_EQ(parse_timestamp("1491523200"), kApril7);
    EXPECT_EQ(parse_timestamp("2017-04-07 02:00:00+02:00"), kApril7);
    EXPECT_EQ(parse_timestamp("2017-04-07T13:05:00.750Z"), kApril7 + 13 * 3600 + 5 * 60);
    EXPECT_EQ(parse_timestamp("2017-04-06T19:00:00-05:00"), kApril7);
    EXPECT_FALSE(parse_timestamp("yesterday"));
    EXPECT_FALSE(parse_timestamp("2017-13-01"));
    EXPECT_FALSE(parse_timestamp("2017-02-30"));
    EXPECT_FALSE(parse_timestamp(""));
    EXPECT_EQ(format_utc(kApril7 + 3661), "2017-04-07T01:01:01Z");
    EXPECT_EQ(utc_date(kApril7 + 86399), "2017-04-07");
    EXPECT_EQ(floor_to_day(kApril7 + 86399), kApril7);
    EXPECT_EQ(floor_to_day(-1), -86400);
}

TEST(Ingest, ThreeCleanJsonlRows) {
    TempDir dir("ingest");
    write_file(dir / "a.jsonl", jsonl_line("AP", "2017-04-07T10:00:00Z") + jsonl_line("CNN", "2017-04-08") +
                                    jsonl_line("Fox News", "1491700000"));
    auto c = ingest_articles(dir / "a.jsonl", InputFormat::jsonl);
    EXPECT_EQ(c.size(), 3u);
    EXPECT_TRUE(c.rejects().empty());
    EXPECT_EQ(c[2].source, "fox news");
    EXPECT_EQ(c[2].published_utc, 1491700000);
}

TEST(Ingest, EmptySourceIsRejected) {
    TempDir dir("ingest");
    write_file(dir / "a.jsonl", jsonl_line("AP", "2017-04-07") + jsonl_line("   ", "2017-04-07") +
                                    jsonl_line("CNN", "2017-04-07"));
    auto c = ingest_articles(dir / "a.jsonl", InputFormat::jsonl);
    ASSERT_EQ(c.size(), 2u);
    ASSERT_EQ(c.rejects().size(), 1u);
    EXPECT_EQ(c.rejects()[0], (Reject{2, "missing source"}));
}

TEST(Ingest, RejectReasonsCarryRowNumbers) {
    TempDir dir("ingest");
    std::string content;
    for (int i = 0; i < 8; ++i) content += jsonl_line("src" + std::to_string(i), "2017-04-07");
    content += "{not json\n";                                                  // row 9
    content += R"({"source": "x", "published_utc": "2017-04-07"})" "\n";       // row 10
    content += R"({"source": "x", "body": "b", "published_utc": "soon"})" "\n";  // row 11
    content += R"({"source": "x", "body": "b"})" "\n";                          // row 12
    content += "[1, 2]\n";                                                     // row 13
    content += jsonl_line("x", "2017-04-07", R"(, "fb_shares": "many")");      // row 14
    write_file(dir / "a.jsonl", content);
    auto c = ingest_articles(dir / "a.jsonl", InputFormat::jsonl);
    EXPECT_EQ(c.size(), 8u);
    std::vector<Reject> expected = {{9, "malformed json"},           {10, "missing body"},
                                    {11, "invalid published_utc"},   {12, "missing published_utc"},
                                    {13, "not a json object"},       {14, "invalid fb_shares"}};
    EXPECT_EQ(c.rejects(), expected);
}

TEST(Ingest, MostlyRejectedInputAborts) {
    TempDir dir("ingest");
    write_file(dir / "a.jsonl", jsonl_line("AP", "2017-04-07") + "{bad\n{bad\n");
    EXPECT_THROW(ingest_articles(dir / "a.jsonl", InputFormat::jsonl), DataError);
}

TEST(Ingest, HalfRejectedIsStillAccepted) {
    TempDir dir("ingest");
    write_file(dir / "a.jsonl", jsonl_line("AP", "2017-04-07") + "{bad\n");
    EXPECT_EQ(ingest_articles(dir / "a.jsonl", InputFormat::jsonl).size(), 1u);
}

TEST(Ingest, UnreadableFileThrows) {
    EXPECT_THROW(ingest_articles("/nonexistent/articles.jsonl", InputFormat::jsonl), DataError);
}

TEST(Ingest, DuplicateIdWithinSourceRejectedAcrossSourcesKept) {
    TempDir dir("ingest");
    write_file(dir / "a.jsonl", jsonl_line("AP", "2017-04-07", R"(, "id": "1")") +
                                    jsonl_line("CNN", "2017-04-07", R"(, "id": "1")") +
                                    jsonl_line("ap ", "2017-04-08", R"(, "id": "1")"));
    auto c = ingest_articles(dir / "a.jsonl", InputFormat::jsonl);
    EXPECT_EQ(c.size(), 2u);
    ASSERT_EQ(c.rejects().size(), 1u);
    EXPECT_EQ(c.rejects()[0], (Reject{3, "duplicate id"}));
    EXPECT_TRUE(c.find("ap", "1"));
    EXPECT_TRUE(c.find("cnn", "1"));
}

TEST(Ingest, CsvWithQuotedMultilineBody) {
    TempDir dir("ingest");
    write_file(dir / "a.csv",
               "id,source,title,body,published_utc,fb_shares\n"
               "1,AP,Hello,\"line one,\nline \"\"two\"\"\",2017-04-07,12\n"
               "2,CNN,Title,body text,2017-04-08T00:00:00Z,\n"
               "3,CNN,Title,body,2017-04-08\n");
    auto c = ingest_articles(dir / "a.csv", format_from_extension(dir / "a.csv"));
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(c[0].body, "line one,\nline \"two\"");
    EXPECT_EQ(c[0].fb_shares, 12);
    EXPECT_FALSE(c[1].fb_shares);
    ASSERT_EQ(c.rejects().size(), 1u);
    EXPECT_EQ(c.rejects()[0].reason, "field count mismatch");
}

TEST(Ingest, CsvWithoutRequiredColumnThrows) {
    TempDir dir("ingest");
    write_file(dir / "a.csv", "id,title,body,published_utc\n1,t,b,2017-04-07\n");
    EXPECT_THROW(ingest_articles(dir / "a.csv", InputFormat::csv), DataError);
}

TEST(Ingest, ReingestIsIdentical) {
    TempDir dir("ingest");
    std::string content;
    for (int i = 0; i < 20; ++i) {
        content += jsonl_line("src" + std::to_string(i % 4), std::to_string(kApril7 + i * 3600),
                              i % 3 ? R"(, "url": "http://x/)" + std::to_string(i) + "\"" : "");
    }
    write_file(dir / "a.jsonl", content);
    auto a = ingest_articles(dir / "a.jsonl", InputFormat::jsonl);
    auto b = ingest_articles(dir / "a.jsonl", InputFormat::jsonl);
    EXPECT_EQ(a.articles(), b.articles());
    std::set<std::pair<std::string, std::string>> keys;
    for (const auto& art : a.articles()) keys.insert({art.source, art.id});
    EXPECT_EQ(keys.size(), a.size());
}

TEST(Ingest, DerivedIdsAreStableHex) {
    auto id = derive_article_id("ap", std::string("http://ap.org/1"), kApril7, "body");
    EXPECT_EQ(id.size(), 16u);
    EXPECT_TRUE(std::all_of(id.begin(), id.end(), [](char c) { return std::isxdigit(static_cast<unsigned char>(c)); }));
    EXPECT_EQ(id, derive_article_id("ap", std::string("http://ap.org/1"), kApril7, "other body"));
    EXPECT_NE(id, derive_article_id("cnn", std::string("http://ap.org/1"), kApril7, "body"));
    EXPECT_NE(derive_article_id("ap", std::nullopt, kApril7, "a"), derive_article_id("ap", std::nullopt, kApril7, "b"));
}

TEST(CanonicalSource, TrimLowercaseCollapse) {
    EXPECT_EQ(canonical_source("  The   Daily\tCaller "), "the daily caller");
    EXPECT_EQ(canonical_source("AP"), "ap");
}

TEST(Windows, NinetyEightDayCorpusGivesSevenWindows) {
    std::vector<Article> arts = {make_article("a", "1", *parse_timestamp("2017-04-07T08:00:00Z"), kBody),
                                 make_article("b", "2", *parse_timestamp("2017-05-20T12:00:00Z"), kBody),
                                 make_article("c", "3", *parse_timestamp("2017-07-13T23:59:59Z"), kBody)};
    ArticleCollection c(arts);
    auto w = partition_windows(c, 14);
    ASSERT_EQ(w.size(), 7u);
    EXPECT_EQ(w.front().start_utc, kApril7);
    EXPECT_EQ(w.back().end_utc, *parse_timestamp("2017-07-14"));
    EXPECT_EQ(w[6].articles, std::vector<ArticleIndex>{2});
}

TEST(Windows, CountIsCeilingOfSpanInDays) {
    // Span measured from the anchoring midnight to the last article.
    for (int days : {1, 13, 14, 15, 27, 28, 97, 98}) {
        std::vector<Article> arts = {make_article("a", "1", kApril7, kBody),
                                     make_article("b", "2", kApril7 + days * kSecondsPerDay - 1, kBody)};
        auto w = partition_windows(ArticleCollection(arts), 14);
        EXPECT_EQ(w.size(), static_cast<std::size_t>((days + 13) / 14)) << days;
    }
}

TEST(Windows, SingleArticleSingleWindow) {
    ArticleCollection c({make_article("a", "1", kApril7 + 5000, kBody)});
    auto w = partition_windows(c);
    ASSERT_EQ(w.size(), 1u);
    EXPECT_EQ(w[0].articles, std::vector<ArticleIndex>{0});
    EXPECT_EQ(w[0].start_utc, kApril7);
}

TEST(Windows, BoundaryInstantBelongsToLaterWindow) {
    ArticleCollection c({make_article("a", "1", kApril7, kBody),
                         make_article("b", "2", kApril7 + 14 * kSecondsPerDay, kBody)});
    auto w = partition_windows(c, 14);
    ASSERT_EQ(w.size(), 2u);
    EXPECT_EQ(w[0].articles, std::vector<ArticleIndex>{0});
    EXPECT_EQ(w[1].articles, std::vector<ArticleIndex>{1});
}

TEST(Windows, EmptyCollectionThrows) { EXPECT_THROW(partition_windows(ArticleCollection{}), DataError); }

TEST(Windows, PartitionIsPermutationAndContiguous) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Article> arts;
        const int n = 1 + static_cast<int>(rng() % 200);
        for (int i = 0; i < n; ++i) {
            arts.push_back(make_article("s" + std::to_string(rng() % 5), std::to_string(i),
                                        kApril7 + static_cast<EpochSeconds>(rng() % (120 * kSecondsPerDay)), kBody));
        }
        ArticleCollection c(arts);
        const int days = 1 + static_cast<int>(rng() % 20);
        auto windows = partition_windows(c, days);
        std::vector<ArticleIndex> all;
        for (std::size_t i = 0; i < windows.size(); ++i) {
            if (i + 1 < windows.size()) EXPECT_EQ(windows[i].end_utc, windows[i + 1].start_utc);
            for (ArticleIndex a : windows[i].articles) {
                EXPECT_GE(c[a].published_utc, windows[i].start_utc);
                EXPECT_LT(c[a].published_utc, windows[i].end_utc);
                all.push_back(a);
            }
        }
        std::sort(all.begin(), all.end());
        std::vector<ArticleIndex> expected(c.size());
        std::iota(expected.begin(), expected.end(), 0);
        EXPECT_EQ(all, expected);
    }
}

TEST(Labels, RowParsesToEnums) {
    TempDir dir("labels");
    write_file(dir / "l.csv", "source,audience,reliability,leaning\ninfowars,alternative,has_published_fake,right\n");
    auto t = load_labels(dir / "l.csv");
    auto l = t.lookup("InfoWars ");
    EXPECT_EQ(l.audience, Audience::alternative);
    EXPECT_EQ(l.reliability, Reliability::has_published_fake);
    EXPECT_EQ(l.leaning, Leaning::right);
    EXPECT_TRUE(t.contains("INFOWARS"));
}

TEST(Labels, MissingSourceDefaultsToUnknown) {
    LabelTable t;
    auto l = t.lookup("nobody");
    EXPECT_EQ(l.audience, Audience::satire_or_unknown);
    EXPECT_EQ(l.reliability, Reliability::not_or_unknown);
    EXPECT_EQ(l.leaning, Leaning::neutral_or_unknown);
}

TEST(Labels, ConflictingRowsNameBothRows) {
    TempDir dir("labels");
    write_file(dir / "l.csv",
               "source,audience,reliability,leaning\n"
               "cnn,mainstream,not_or_unknown,left\n"
               "pbs,mainstream,not_or_unknown,neutral_or_unknown\n"
               "CNN,mainstream,not_or_unknown,right\n");
    try {
        load_labels(dir / "l.csv");
        FAIL() << "expected DataError";
    } catch (const DataError& e) {
        std::string msg = e.what();
        EXPECT_NE(msg.find('2'), std::string::npos) << msg;
        EXPECT_NE(msg.find('4'), std::string::npos) << msg;
    }
}

TEST(Labels, IdenticalDuplicateRowsAreTolerated) {
    TempDir dir("labels");
    write_file(dir / "l.csv",
               "source,audience,reliability,leaning\ncnn,mainstream,not_or_unknown,left\ncnn,mainstream,not_or_unknown,left\n");
    EXPECT_EQ(load_labels(dir / "l.csv").size(), 1u);
}

TEST(Labels, UnknownEnumValueThrows) {
    TempDir dir("labels");
    write_file(dir / "l.csv", "source,audience,reliability,leaning\ncnn,mainstream,trusted,left\n");
    EXPECT_THROW(load_labels(dir / "l.csv"), DataError);
}

TEST(Lexicon, EmptyFileThrows) {
    TempDir dir("lex");
    write_file(dir / "e.txt", "# only a comment\n\n");
    EXPECT_THROW(load_lexicon(dir / "e.txt", "empty"), DataError);
}

TEST(Lexicon, LowercasedAndDeduplicated) {
    TempDir dir("lex");
    write_file(dir / "n.txt", "Lies\nlies\n# comment\n  Crisis \n");
    auto lex = load_lexicon(dir / "n.txt", "negative");
    EXPECT_EQ(lex.words, (std::set<std::string, std::less<>>{"crisis", "lies"}));
    EXPECT_TRUE(lex.contains("lies"));
    EXPECT_FALSE(lex.contains("Lies"));
}
