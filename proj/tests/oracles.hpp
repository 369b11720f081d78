#pragma once

#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "reprint/corpus.hpp"
#include "reprint/graph.hpp"
#include "reprint/tokenize.hpp"

namespace reprint::testing {

/// P(|T| < t) for Student's t with integer degrees of freedom, from the
/// finite trigonometric series (no special functions).
inline double student_t_central(double t, int nu) {
    const double theta = std::atan(t / std::sqrt(static_cast<double>(nu)));
    const double s = std::sin(theta);
    const double c2 = std::cos(theta) * std::cos(theta);
    if (nu % 2 == 0) {
        double term = 1.0, sum = 1.0;
        for (int k = 2; k <= nu - 2; k += 2) {
            term *= c2 * static_cast<double>(k - 1) / static_cast<double>(k);
            sum += term;
        }
        return s * sum;
    }
    if (nu == 1) return 2.0 * theta / std::numbers::pi;
    double term = 1.0, sum = 1.0;
    for (int k = 3; k <= nu - 2; k += 2) {
        term *= c2 * static_cast<double>(k - 1) / static_cast<double>(k);
        sum += term;
    }
    return 2.0 / std::numbers::pi * (theta + s * std::cos(theta) * sum);
}

struct TwoGroupAnova {
    double f;
    double p;
};

/// Two-group one-way ANOVA via the pooled two-sample t statistic: F = t^2 and
/// p = P(|T| > t) with n_a + n_b - 2 degrees of freedom.
inline TwoGroupAnova pooled_t_anova(std::span<const double> a, std::span<const double> b) {
    auto mean = [](std::span<const double> v) {
        double s = 0.0;
        for (double x : v) s += x;
        return s / static_cast<double>(v.size());
    };
    const double ma = mean(a), mb = mean(b);
    double ss = 0.0;
    for (double x : a) ss += (x - ma) * (x - ma);
    for (double x : b) ss += (x - mb) * (x - mb);
    const int df = static_cast<int>(a.size() + b.size()) - 2;
    const double pooled = ss / df;
    const double se = std::sqrt(pooled * (1.0 / static_cast<double>(a.size()) + 1.0 / static_cast<double>(b.size())));
    const double t = std::abs(ma - mb) / se;
    return {t * t, 1.0 - student_t_central(t, df)};
}

// Dense reference: full vocabulary matrix, smoothed idf, raw tf, L2 normalization.
inline std::vector<std::vector<double>> dense_tfidf(const std::vector<TokenizedDoc>& docs) {
    std::map<std::string, std::size_t> df;
    for (const auto& d : docs) {
        for (const auto& [t, c] : d.term_counts) df[t] += 1;
    }
    const double n = static_cast<double>(docs.size());
    std::vector<std::vector<double>> rows;
    for (const auto& d : docs) {
        std::vector<double> row;
        for (const auto& [t, f] : df) {
            auto it = d.term_counts.find(t);
            double tf = it == d.term_counts.end() ? 0.0 : it->second;
            row.push_back(tf * (std::log((1.0 + n) / (1.0 + static_cast<double>(f))) + 1.0));
        }
        double norm = 0.0;
        for (double v : row) norm += v * v;
        norm = std::sqrt(norm);
        for (double& v : row) v /= norm;
        rows.push_back(row);
    }
    return rows;
}

inline double dense_cosine(const std::vector<double>& a, const std::vector<double>& b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    return dot / std::sqrt(na * nb);
}

// Enumerates every shortest s-t path explicitly and credits each interior node
// with its share of them.
inline std::map<std::string, double> enumerate_betweenness(const RepublishGraph& g) {
    std::vector<std::string> names;
    std::map<std::string, std::size_t> id;
    for (const auto& [n, a] : g.nodes) {
        id[n] = names.size();
        names.push_back(n);
    }
    const std::size_t n = names.size();
    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& [e, w] : g.edges) adj[id[e.first]].push_back(id[e.second]);

    std::map<std::string, double> bc;
    for (const auto& name : names) bc[name] = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<int> dist(n, -1);
        dist[s] = 0;
        std::deque<std::size_t> q{s};
        while (!q.empty()) {
            auto v = q.front();
            q.pop_front();
            for (auto w : adj[v]) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    q.push_back(w);
                }
            }
        }
        for (std::size_t t = 0; t < n; ++t) {
            if (t == s || dist[t] < 0) continue;
            std::vector<std::vector<std::size_t>> paths;
            std::vector<std::size_t> current{s};
            std::function<void(std::size_t)> walk = [&](std::size_t v) {
                if (v == t) {
                    paths.push_back(current);
                    return;
                }
                for (auto w : adj[v]) {
                    if (dist[w] == dist[v] + 1 && dist[w] <= dist[t]) {
                        current.push_back(w);
                        walk(w);
                        current.pop_back();
                    }
                }
            };
            walk(s);
            for (const auto& path : paths) {
                for (std::size_t k = 1; k + 1 < path.size(); ++k) {
                    bc[names[path[k]]] += 1.0 / static_cast<double>(paths.size());
                }
            }
        }
    }
    return bc;
}

// Q = 1/(2m) * sum_ij [A_ij - k_i k_j / (2m)] delta(c_i, c_j) on the symmetrized adjacency matrix.
inline double matrix_modularity(const RepublishGraph& g, const std::map<std::string, int>& community, double gamma = 1.0) {
    std::vector<std::string> names;
    std::map<std::string, std::size_t> id;
    for (const auto& [n, a] : g.nodes) {
        id[n] = names.size();
        names.push_back(n);
    }
    const std::size_t n = names.size();
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    for (const auto& [e, w] : g.edges) {
        a[id[e.first]][id[e.second]] += static_cast<double>(w);
        a[id[e.second]][id[e.first]] += static_cast<double>(w);
    }
    std::vector<double> k(n, 0.0);
    double two_m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) k[i] += a[i][j];
        two_m += k[i];
    }
    if (two_m == 0.0) return 0.0;
    double q = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (community.at(names[i]) == community.at(names[j])) q += a[i][j] - gamma * k[i] * k[j] / two_m;
        }
    }
    return q / two_m;
}

// All cross-source pairs of eligible documents in `window` whose dense cosine exceeds
// `threshold`, keyed by (smaller index, larger index).
inline std::map<std::pair<ArticleIndex, ArticleIndex>, double> dense_exhaustive_matches(
    const ArticleCollection& collection, const TimeWindow& window, double threshold, std::size_t min_tokens) {
    std::vector<TokenizedDoc> docs;
    for (ArticleIndex a : window.articles) {
        auto d = tokenize(collection[a].body);
        d.article = a;
        if (d.size() >= min_tokens) docs.push_back(std::move(d));
    }
    auto dense = dense_tfidf(docs);
    std::map<std::pair<ArticleIndex, ArticleIndex>, double> out;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        for (std::size_t j = i + 1; j < docs.size(); ++j) {
            if (collection[docs[i].article].source == collection[docs[j].article].source) continue;
            const double s = dense_cosine(dense[i], dense[j]);
            if (s > threshold) {
                out[{std::min(docs[i].article, docs[j].article), std::max(docs[i].article, docs[j].article)}] = s;
            }
        }
    }
    return out;
}

}  // namespace reprint::testing
