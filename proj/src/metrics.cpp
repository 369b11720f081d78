#include "reprint/metrics.hpp"

#include <limits>
#include <queue>
#include <stack>

namespace reprint {

std::map<std::string, DegreeMetrics> degree_metrics(const RepublishGraph& graph) {
    std::map<std::string, DegreeMetrics> out;
    for (const auto& [name, _] : graph.nodes) out[name];
    for (const auto& [key, w] : graph.edges) {
        auto& from = out[key.first];
        auto& to = out[key.second];
        from.weighted_out += w;
        from.out_degree += 1;
        to.weighted_in += w;
        to.in_degree += 1;
    }
    const std::size_t n = out.size();
    for (auto& [name, m] : out) {
        m.in_degree_centrality = n > 1 ? static_cast<double>(m.in_degree) / static_cast<double>(n - 1) : 0.0;
    }
    return out;
}

namespace {

struct Adjacency {
    std::vector<std::string> names;
    std::vector<std::vector<std::pair<std::size_t, double>>> out;  // (target, length)
};

Adjacency make_adjacency(const RepublishGraph& graph, BetweennessMode mode) {
    Adjacency adj;
    std::map<std::string, std::size_t> id;
    for (const auto& [name, _] : graph.nodes) {
        id.emplace(name, adj.names.size());
        adj.names.push_back(name);
    }
    adj.out.resize(adj.names.size());
    for (const auto& [key, w] : graph.edges) {
        double length = mode == BetweennessMode::unweighted ? 1.0 : 1.0 / static_cast<double>(w);
        adj.out[id.at(key.first)].emplace_back(id.at(key.second), length);
    }
    return adj;
}

}  // namespace

std::map<std::string, double> betweenness(const RepublishGraph& graph, BetweennessMode mode) {
    const Adjacency adj = make_adjacency(graph, mode);
    const std::size_t n = adj.names.size();
    std::vector<double> centrality(n, 0.0);

    std::vector<std::vector<std::size_t>> preds(n);
    std::vector<double> sigma(n), delta(n), dist(n);
    std::vector<std::size_t> order;  // vertices in non-decreasing distance from s
    order.reserve(n);

    for (std::size_t s = 0; s < n; ++s) {
        for (auto& p : preds) p.clear();
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
        order.clear();
        sigma[s] = 1.0;
        dist[s] = 0.0;

        if (mode == BetweennessMode::unweighted) {
            std::queue<std::size_t> queue;
            queue.push(s);
            while (!queue.empty()) {
                std::size_t v = queue.front();
                queue.pop();
                order.push_back(v);
                for (const auto& [w, _] : adj.out[v]) {
                    if (dist[w] == std::numeric_limits<double>::infinity()) {
                        dist[w] = dist[v] + 1.0;
                        queue.push(w);
                    }
                    if (dist[w] == dist[v] + 1.0) {
                        sigma[w] += sigma[v];
                        preds[w].push_back(v);
                    }
                }
            }
        } else {
            using Item = std::pair<double, std::size_t>;
            std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
            std::vector<bool> settled(n, false);
            heap.emplace(0.0, s);
            while (!heap.empty()) {
                auto [d, v] = heap.top();
                heap.pop();
                if (settled[v]) continue;
                settled[v] = true;
                order.push_back(v);
                for (const auto& [w, length] : adj.out[v]) {
                    double candidate = d + length;
                    if (candidate < dist[w]) {
                        dist[w] = candidate;
                        sigma[w] = sigma[v];
                        preds[w].assign(1, v);
                        heap.emplace(candidate, w);
                    } else if (candidate == dist[w]) {
                        sigma[w] += sigma[v];
                        preds[w].push_back(v);
                    }
                }
            }
        }

        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            std::size_t w = *it;
            for (std::size_t v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            if (w != s) centrality[w] += delta[w];
        }
    }

    std::map<std::string, double> out;
    for (std::size_t i = 0; i < n; ++i) out.emplace(adj.names[i], centrality[i]);
    return out;
}

std::pair<double, double> mean_and_variance(std::span<const double> values) {
    if (values.empty()) return {0.0, 0.0};
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(values.size());
    return {mean, var};
}

std::vector<NodeMetrics> summarize_metrics(const RepublishGraph& combined, std::span<const RepublishGraph> windows,
                                           BetweennessMode mode) {
    const auto degrees = degree_metrics(combined);
    const auto combined_bc = betweenness(combined, mode);

    std::vector<std::map<std::string, DegreeMetrics>> window_degrees;
    std::vector<std::map<std::string, double>> window_bc;
    for (const auto& g : windows) {
        window_degrees.push_back(degree_metrics(g));
        window_bc.push_back(betweenness(g, mode));
    }

    std::vector<NodeMetrics> out;
    for (const auto& [name, d] : degrees) {
        NodeMetrics m;
        m.source = name;
        m.weighted_in = d.weighted_in;
        m.weighted_out = d.weighted_out;
        m.in_degree_centrality = d.in_degree_centrality;
        m.betweenness = combined_bc.at(name);
        for (std::size_t w = 0; w < windows.size(); ++w) {
            auto di = window_degrees[w].find(name);
            auto bi = window_bc[w].find(name);
            m.in_centrality_by_window.push_back(di == window_degrees[w].end() ? 0.0 : di->second.in_degree_centrality);
            m.betweenness_by_window.push_back(bi == window_bc[w].end() ? 0.0 : bi->second);
        }
        std::tie(m.in_centrality_mean, m.in_centrality_var) = mean_and_variance(m.in_centrality_by_window);
        std::tie(m.betweenness_mean, m.betweenness_var) = mean_and_variance(m.betweenness_by_window);
        out.push_back(std::move(m));
    }
    return out;
}

}  // namespace reprint
