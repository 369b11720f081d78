#include "reprint/community.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace reprint {

double modularity(const RepublishGraph& graph, const std::map<std::string, int>& community, double resolution) {
    for (const auto& [name, _] : graph.nodes) {
        if (!community.count(name)) throw std::invalid_argument("modularity: node '" + name + "' has no community");
    }
    double m = 0.0;
    std::map<int, double> internal;
    std::map<int, double> degree;
    for (const auto& [key, w] : graph.edges) {
        const double weight = static_cast<double>(w);
        const int cu = community.at(key.first);
        const int cv = community.at(key.second);
        m += weight;
        degree[cu] += weight;
        degree[cv] += weight;
        if (cu == cv) internal[cu] += weight;
    }
    if (m == 0.0) return 0.0;
    double q = 0.0;
    for (const auto& [c, d] : degree) {
        auto it = internal.find(c);
        const double l = it == internal.end() ? 0.0 : it->second;
        q += l / m - resolution * (d / (2.0 * m)) * (d / (2.0 * m));
    }
    return q;
}

namespace {

// Symmetric weighted graph; self[i] holds the summed internal weight of an aggregated node
// counted from both endpoints, so that degree[i] = self[i] + sum of neighbour weights.
struct Level {
    std::vector<std::vector<std::pair<std::size_t, double>>> neighbours;
    std::vector<double> self;
    std::vector<double> degree;
};

void shuffle(std::vector<std::size_t>& order, std::mt19937_64& rng) {
    // Fisher-Yates written out so the sequence is the same across standard libraries.
    for (std::size_t i = order.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(order[i - 1], order[j]);
    }
}

// One round of local moving. Returns the community of every node, renumbered 0..k-1.
std::vector<std::size_t> local_moving(const Level& level, double resolution, double two_m, std::mt19937_64& rng,
                                      bool& improved) {
    const std::size_t n = level.degree.size();
    std::vector<std::size_t> comm(n);
    std::iota(comm.begin(), comm.end(), 0);
    std::vector<double> total(level.degree);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    shuffle(order, rng);

    std::vector<double> link(n, 0.0);
    std::vector<std::size_t> touched;
    improved = false;
    for (bool moved = true; moved;) {
        moved = false;
        for (std::size_t i : order) {
            const std::size_t current = comm[i];
            const double k = level.degree[i];

            touched.clear();
            for (const auto& [j, w] : level.neighbours[i]) {
                if (link[comm[j]] == 0.0) touched.push_back(comm[j]);
                link[comm[j]] += w;
            }
            total[current] -= k;

            double best_gain = link[current] - resolution * total[current] * k / two_m;
            std::size_t best = current;
            std::sort(touched.begin(), touched.end());
            for (std::size_t c : touched) {
                double gain = link[c] - resolution * total[c] * k / two_m;
                if (gain > best_gain + 1e-12) {
                    best_gain = gain;
                    best = c;
                }
            }
            total[best] += k;
            for (std::size_t c : touched) link[c] = 0.0;
            link[current] = 0.0;

            if (best != current) {
                comm[i] = best;
                moved = true;
                improved = true;
            }
        }
    }

    std::vector<std::size_t> relabel(n, n);
    std::size_t next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (relabel[comm[i]] == n) relabel[comm[i]] = next++;
        comm[i] = relabel[comm[i]];
    }
    return comm;
}

Level aggregate(const Level& level, const std::vector<std::size_t>& comm) {
    const std::size_t k = *std::max_element(comm.begin(), comm.end()) + 1;
    Level out;
    out.self.assign(k, 0.0);
    out.degree.assign(k, 0.0);
    std::vector<std::map<std::size_t, double>> links(k);
    for (std::size_t i = 0; i < level.degree.size(); ++i) {
        out.self[comm[i]] += level.self[i];
        out.degree[comm[i]] += level.degree[i];
        for (const auto& [j, w] : level.neighbours[i]) {
            if (comm[i] == comm[j]) {
                out.self[comm[i]] += w;
            } else {
                links[comm[i]][comm[j]] += w;
            }
        }
    }
    out.neighbours.resize(k);
    for (std::size_t c = 0; c < k; ++c) out.neighbours[c].assign(links[c].begin(), links[c].end());
    return out;
}

}  // namespace

Partition louvain(const RepublishGraph& graph, double resolution, std::uint64_t seed) {
    std::vector<std::string> names;
    std::map<std::string, std::size_t> id;
    for (const auto& [name, _] : graph.nodes) {
        id.emplace(name, names.size());
        names.push_back(name);
    }
    const std::size_t n = names.size();

    Level level;
    level.self.assign(n, 0.0);
    level.degree.assign(n, 0.0);
    std::vector<std::map<std::size_t, double>> links(n);
    double two_m = 0.0;
    for (const auto& [key, w] : graph.edges) {
        const std::size_t u = id.at(key.first);
        const std::size_t v = id.at(key.second);
        const double weight = static_cast<double>(w);
        links[u][v] += weight;
        links[v][u] += weight;
        level.degree[u] += weight;
        level.degree[v] += weight;
        two_m += 2.0 * weight;
    }
    level.neighbours.resize(n);
    for (std::size_t i = 0; i < n; ++i) level.neighbours[i].assign(links[i].begin(), links[i].end());

    std::vector<std::size_t> membership(n);
    std::iota(membership.begin(), membership.end(), 0);

    if (two_m > 0.0) {
        std::mt19937_64 rng(seed);
        for (;;) {
            bool improved = false;
            auto comm = local_moving(level, resolution, two_m, rng, improved);
            if (!improved) break;
            for (auto& m : membership) m = comm[m];
            level = aggregate(level, comm);
        }
    }

    // Number communities by their smallest member name (names are already sorted).
    Partition out;
    std::map<std::size_t, int> canonical;
    for (std::size_t i = 0; i < n; ++i) {
        auto [it, _] = canonical.emplace(membership[i], static_cast<int>(canonical.size()));
        out.community.emplace(names[i], it->second);
    }
    out.modularity = modularity(graph, out.community, resolution);
    return out;
}

}  // namespace reprint
