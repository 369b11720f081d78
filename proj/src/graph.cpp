#include "reprint/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace reprint {

void RepublishGraph::add_edge(const std::string& copier, const std::string& original, std::int64_t weight) {
    if (copier == original) return;
    add_node(copier);
    add_node(original);
    edges[{copier, original}] += weight;
}

std::int64_t RepublishGraph::total_weight() const {
    std::int64_t total = 0;
    for (const auto& [key, w] : edges) total += w;
    return total;
}

namespace {

bool contributes(const MatchedPair& p, const GraphOptions& options) {
    return p.direction == Direction::forward || options.include_ambiguous;
}

}  // namespace

std::size_t count_edge_pairs(std::span<const MatchedPair> pairs, const GraphOptions& options) {
    return static_cast<std::size_t>(
        std::count_if(pairs.begin(), pairs.end(), [&](const MatchedPair& p) { return contributes(p, options); }));
}

RepublishGraph build_graph(const ArticleCollection& collection, std::span<const MatchedPair> pairs,
                           const GraphOptions& options, std::optional<std::size_t> window_index) {
    RepublishGraph g;
    g.window_index = window_index;
    for (const auto& p : pairs) {
        if (!contributes(p, options)) continue;
        const std::string& copier = collection[p.later].source;
        const std::string& original = collection[p.earlier].source;
        g.add_edge(copier, original, 1);
    }
    return g;
}

RepublishGraph build_window_graph(const ArticleCollection& collection, std::span<const MatchedPair> pairs,
                                  const GraphOptions& options) {
    std::optional<std::size_t> window;
    for (const auto& p : pairs) {
        if (window && *window != p.window_index) {
            throw std::invalid_argument("build_window_graph: pairs span more than one window");
        }
        window = p.window_index;
    }
    return build_graph(collection, pairs, options, window);
}

RepublishGraph merge_graphs(std::span<const RepublishGraph> graphs) {
    RepublishGraph out;
    for (const auto& g : graphs) {
        for (const auto& [name, attrs] : g.nodes) {
            auto& target = out.nodes[name];
            for (const auto& [k, v] : attrs) target[k] = v;
        }
        for (const auto& [key, w] : g.edges) out.edges[key] += w;
    }
    return out;
}

std::vector<MatchedPair> dedupe_to_origin(const ArticleCollection& collection, std::span<const MatchedPair> pairs) {
    std::map<ArticleIndex, ArticleIndex> parent;
    auto find = [&](ArticleIndex x) {
        parent.try_emplace(x, x);
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const auto& p : pairs) {
        ArticleIndex a = find(p.earlier);
        ArticleIndex b = find(p.later);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }

    auto earlier_of = [&](ArticleIndex a, ArticleIndex b) {
        const Article& x = collection[a];
        const Article& y = collection[b];
        return std::tie(x.published_utc, x.source, x.id) < std::tie(y.published_utc, y.source, y.id);
    };
    std::map<ArticleIndex, ArticleIndex> origin;  // cluster root -> first publication
    for (const auto& [article, _] : parent) {
        ArticleIndex root = find(article);
        auto it = origin.find(root);
        if (it == origin.end()) {
            origin.emplace(root, article);
        } else if (earlier_of(article, it->second)) {
            it->second = article;
        }
    }

    std::vector<MatchedPair> out;
    for (const auto& p : pairs) {
        if (origin.at(find(p.earlier)) == p.earlier) out.push_back(p);
    }
    return out;
}

std::vector<OriginFlag> flag_single_day_origins(const ArticleCollection& collection,
                                                std::span<const MatchedPair> pairs, std::size_t min_inbound,
                                                double min_share) {
    std::map<std::string, std::map<std::string, std::size_t>> by_day;
    for (const auto& p : pairs) {
        if (p.direction != Direction::forward) continue;
        const Article& original = collection[p.earlier];
        ++by_day[original.source][utc_date(original.published_utc)];
    }
    std::vector<OriginFlag> flags;
    for (const auto& [source, days] : by_day) {
        OriginFlag f;
        f.source = source;
        for (const auto& [day, n] : days) {
            f.inbound_pairs += n;
            if (n > f.peak_day_pairs) {
                f.peak_day_pairs = n;
                f.peak_day = day;
            }
        }
        if (f.inbound_pairs >= min_inbound &&
            static_cast<double>(f.peak_day_pairs) >= min_share * static_cast<double>(f.inbound_pairs)) {
            flags.push_back(std::move(f));
        }
    }
    return flags;
}

}  // namespace reprint
