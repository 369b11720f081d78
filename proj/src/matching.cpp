#include "reprint/matching.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <thread>

#include "reprint/csv.hpp"
#include "reprint/error.hpp"
#include "reprint/log.hpp"

namespace reprint {

std::string_view to_string(Direction d) { return d == Direction::forward ? "forward" : "ambiguous"; }

namespace {

// Slack absorbed by the pruning bounds so floating-point rounding can never drop a true match.
constexpr double kBoundSlack = 1e-9;

struct Posting {
    std::uint32_t doc;
    double weight;
};

struct IndexedVector {
    std::vector<std::pair<TermId, double>> prefix;  // highest-weight terms
    double residual = 0.0;                          // L2 norm of the terms not in prefix
};

IndexedVector split_prefix(const DocVector& v, const JoinOptions& options) {
    IndexedVector out;
    if (v.entries.empty()) return out;
    std::vector<std::pair<TermId, double>> by_weight = v.entries;
    std::sort(by_weight.begin(), by_weight.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    const std::size_t n = by_weight.size();
    std::vector<double> tail_sq(n + 1, 0.0);
    for (std::size_t k = n; k-- > 0;) tail_sq[k] = tail_sq[k + 1] + by_weight[k].second * by_weight[k].second;

    const double limit = options.threshold / 2.0 - kBoundSlack;
    std::size_t len = n;
    for (std::size_t p = 0; p <= n; ++p) {
        if (std::sqrt(tail_sq[p]) <= limit) {
            len = p;
            break;
        }
    }
    len = std::max(len, std::min(options.top_k, n));
    out.residual = std::sqrt(tail_sq[len]);
    by_weight.resize(len);
    out.prefix = std::move(by_weight);
    return out;
}

template <typename Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
    jobs = std::max(1u, jobs);
    if (jobs == 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(0u, i);
        return;
    }
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
    std::atomic<std::size_t> next{0};
    constexpr std::size_t kChunk = 16;
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            for (;;) {
                std::size_t begin = next.fetch_add(kChunk);
                if (begin >= count) return;
                std::size_t end = std::min(count, begin + kChunk);
                for (std::size_t i = begin; i < end; ++i) fn(w, i);
            }
        });
    }
}

}  // namespace

std::vector<ScoredPair> similarity_join(std::span<const DocVector> vectors, std::span<const std::uint32_t> groups,
                                        const JoinOptions& options) {
    const std::size_t n = vectors.size();
    if (groups.size() != n) throw std::invalid_argument("similarity_join: groups and vectors differ in length");

    std::vector<IndexedVector> indexed(n);
    TermId max_term = 0;
    for (std::size_t i = 0; i < n; ++i) {
        indexed[i] = split_prefix(vectors[i], options);
        for (const auto& [term, w] : indexed[i].prefix) max_term = std::max(max_term, term);
    }
    std::vector<std::vector<Posting>> postings(n ? static_cast<std::size_t>(max_term) + 1 : 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& [term, w] : indexed[i].prefix) postings[term].push_back({static_cast<std::uint32_t>(i), w});
    }

    struct Scratch {
        std::vector<std::size_t> stamp;
        std::vector<double> acc;
        std::vector<std::uint32_t> candidates;
    };
    const unsigned workers = std::max(1u, options.jobs);
    std::vector<Scratch> scratch(workers);
    std::vector<std::vector<ScoredPair>> per_query(n);

    parallel_for(n, workers, [&](unsigned worker, std::size_t i) {
        auto& s = scratch[worker];
        if (s.stamp.size() != n) {
            s.stamp.assign(n, 0);
            s.acc.assign(n, 0.0);
        }
        s.candidates.clear();
        const std::size_t tag = i + 1;
        for (const auto& [term, weight] : indexed[i].prefix) {
            for (const Posting& p : postings[term]) {
                if (p.doc >= i) break;
                if (groups[p.doc] == groups[i]) continue;
                if (s.stamp[p.doc] != tag) {
                    s.stamp[p.doc] = tag;
                    s.acc[p.doc] = 0.0;
                    s.candidates.push_back(p.doc);
                }
                s.acc[p.doc] += weight * p.weight;
            }
        }
        std::sort(s.candidates.begin(), s.candidates.end());
        for (std::uint32_t j : s.candidates) {
            double bound = s.acc[j] + indexed[i].residual + indexed[j].residual;
            if (bound + kBoundSlack <= options.threshold) continue;
            double score = cosine(vectors[j], vectors[i]);
            if (score > options.threshold) per_query[i].push_back({j, i, score});
        }
    });

    std::vector<ScoredPair> out;
    for (auto& q : per_query) out.insert(out.end(), q.begin(), q.end());
    std::sort(out.begin(), out.end(), [](const ScoredPair& a, const ScoredPair& b) {
        return a.first != b.first ? a.first < b.first : a.second < b.second;
    });
    return out;
}

MatchedPair orient_pair(const ArticleCollection& collection, ArticleIndex a, ArticleIndex b, double similarity,
                        std::size_t window_index) {
    const Article& x = collection[a];
    const Article& y = collection[b];
    MatchedPair p;
    p.similarity = similarity;
    p.window_index = window_index;
    if (x.published_utc != y.published_utc) {
        p.direction = Direction::forward;
        p.earlier = x.published_utc < y.published_utc ? a : b;
        p.later = x.published_utc < y.published_utc ? b : a;
    } else {
        p.direction = Direction::ambiguous;
        bool a_first = std::tie(x.source, x.id) < std::tie(y.source, y.id);
        p.earlier = a_first ? a : b;
        p.later = a_first ? b : a;
    }
    return p;
}

void sort_pairs(const ArticleCollection& collection, std::vector<MatchedPair>& pairs) {
    std::sort(pairs.begin(), pairs.end(), [&](const MatchedPair& a, const MatchedPair& b) {
        if (a.similarity != b.similarity) return a.similarity > b.similarity;
        const Article& ae = collection[a.earlier];
        const Article& al = collection[a.later];
        const Article& be = collection[b.earlier];
        const Article& bl = collection[b.later];
        return std::tie(ae.id, al.id, ae.source, al.source, a.window_index) <
               std::tie(be.id, bl.id, be.source, bl.source, b.window_index);
    });
}

WindowMatches find_matches(const ArticleCollection& collection, const TimeWindow& window,
                           const MatchOptions& options) {
    WindowMatches result;
    result.window_index = window.index;
    result.docs = window.articles.size();

    std::vector<TokenizedDoc> eligible;
    for (ArticleIndex a : window.articles) {
        TokenizedDoc doc = tokenize(collection[a].body);
        if (doc.size() < options.min_body_tokens) continue;
        doc.article = a;
        eligible.push_back(std::move(doc));
    }
    result.eligible_docs = eligible.size();
    if (eligible.size() < 2) {
        result.skipped = true;
        log::info("window_skipped", {{"window", std::to_string(window.index)},
                                     {"eligible_docs", std::to_string(eligible.size())}});
        return result;
    }

    const TfidfModel model = TfidfModel::fit(eligible, window.index);
    std::vector<DocVector> vectors;
    vectors.reserve(eligible.size());
    for (const auto& doc : eligible) vectors.push_back(model.vectorize(doc));

    std::map<std::string, std::uint32_t> source_ids;
    std::vector<std::uint32_t> groups;
    groups.reserve(vectors.size());
    for (const auto& v : vectors) {
        auto [it, _] = source_ids.emplace(collection[v.article].source, static_cast<std::uint32_t>(source_ids.size()));
        groups.push_back(it->second);
    }

    JoinOptions join{options.threshold, options.top_k, options.jobs};
    for (const ScoredPair& sp : similarity_join(vectors, groups, join)) {
        result.pairs.push_back(
            orient_pair(collection, vectors[sp.first].article, vectors[sp.second].article, sp.score, window.index));
    }
    sort_pairs(collection, result.pairs);
    return result;
}

void write_pairs_csv(std::ostream& out, const ArticleCollection& collection, std::span<const MatchedPair> pairs) {
    csv::write_row(out, {"window_index", "earlier_source", "earlier_id", "later_source", "later_id", "similarity",
                         "direction"});
    for (const auto& p : pairs) {
        const Article& e = collection[p.earlier];
        const Article& l = collection[p.later];
        csv::write_row(out, {std::to_string(p.window_index), e.source, e.id, l.source, l.id,
                             csv::format_double(p.similarity), std::string(to_string(p.direction))});
    }
}

void write_pairs_csv(const std::filesystem::path& path, const ArticleCollection& collection,
                     std::span<const MatchedPair> pairs) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    write_pairs_csv(out, collection, pairs);
}

std::vector<MatchedPair> read_pairs_csv(const std::filesystem::path& path, const ArticleCollection& collection) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read pairs file: " + path.string());
    csv::Reader reader(in);
    auto header = reader.next();
    const std::vector<std::string> expected{"window_index", "earlier_source", "earlier_id", "later_source",
                                            "later_id",     "similarity",     "direction"};
    if (!header || header->fields != expected) throw DataError(path.string() + ": unexpected pairs header");

    std::vector<MatchedPair> pairs;
    while (auto rec = reader.next()) {
        const auto& f = rec->fields;
        auto where = path.string() + " line " + std::to_string(rec->line);
        if (f.size() == 1 && f[0].empty()) continue;
        if (f.size() != expected.size()) throw DataError(where + ": expected 7 fields");
        auto earlier = collection.find(f[1], f[2]);
        auto later = collection.find(f[3], f[4]);
        if (!earlier || !later) throw DataError(where + ": pair refers to an article not in the corpus");
        MatchedPair p;
        p.earlier = *earlier;
        p.later = *later;
        try {
            p.window_index = std::stoul(f[0]);
            p.similarity = std::stod(f[5]);
        } catch (const std::exception&) {
            throw DataError(where + ": bad number");
        }
        if (f[6] == "forward") {
            p.direction = Direction::forward;
        } else if (f[6] == "ambiguous") {
            p.direction = Direction::ambiguous;
        } else {
            throw DataError(where + ": bad direction '" + f[6] + "'");
        }
        pairs.push_back(p);
    }
    return pairs;
}

}  // namespace reprint
