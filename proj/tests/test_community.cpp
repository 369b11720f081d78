#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "reprint/community.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace reprint;
using namespace reprint::testing;

namespace {

std::string node(int i) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "v%02d", i);
    return buf;
}

RepublishGraph two_cliques(int size, bool bridge) {
    RepublishGraph g;
    for (int c = 0; c < 2; ++c) {
        for (int i = 0; i < size; ++i) {
            for (int j = i + 1; j < size; ++j) g.add_edge(node(c * size + i), node(c * size + j));
        }
    }
    if (bridge) g.add_edge(node(size - 1), node(size));
    return g;
}


RepublishGraph random_graph(std::mt19937_64& rng, int n, double density) {
    RepublishGraph g;
    for (int i = 0; i < n; ++i) g.add_node(node(i));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j && static_cast<double>(rng() % 1000) / 1000.0 < density) {
                g.add_edge(node(i), node(j), 1 + static_cast<std::int64_t>(rng() % 4));
            }
        }
    }
    return g;
}

}  // namespace

TEST(Modularity, TwoDisconnectedCliquesIsOneHalf) {
    auto g = two_cliques(5, false);
    std::map<std::string, int> part;
    for (int i = 0; i < 10; ++i) part[node(i)] = i / 5;
    EXPECT_NEAR(modularity(g, part), 0.5, 1e-12);
    EXPECT_NEAR(matrix_modularity(g, part), 0.5, 1e-12);
}

TEST(Modularity, TwoBridgedCliquesByHand) {
    auto g = two_cliques(8, true);
    std::map<std::string, int> part, single;
    for (int i = 0; i < 16; ++i) {
        part[node(i)] = i / 8;
        single[node(i)] = 0;
    }
    // m = 57; each side has 28 internal edges and degree 57.
    const double hand = 2.0 * (28.0 / 57.0 - 0.25);
    EXPECT_NEAR(modularity(g, part), hand, 1e-12);
    EXPECT_NEAR(matrix_modularity(g, part), hand, 1e-12);
    EXPECT_NEAR(modularity(g, single), 0.0, 1e-12);
}

TEST(Modularity, EdgelessIsZeroAndMissingNodeThrows) {
    RepublishGraph g;
    g.add_node("a");
    g.add_node("b");
    EXPECT_EQ(modularity(g, {{"a", 0}, {"b", 1}}), 0.0);
    EXPECT_THROW(modularity(g, {{"a", 0}}), std::invalid_argument);
}

TEST(Modularity, MatchesMatrixFormulaOnRandomPartitions) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        auto g = random_graph(rng, 2 + static_cast<int>(rng() % 12), 0.3);
        std::map<std::string, int> part;
        for (const auto& [n, a] : g.nodes) part[n] = static_cast<int>(rng() % 4);
        const double gamma = 0.5 + static_cast<double>(rng() % 100) / 100.0;
        EXPECT_NEAR(modularity(g, part, gamma), matrix_modularity(g, part, gamma), 1e-12);
    }
}

TEST(Louvain, RecoversTwoBridgedCliques) {
    auto g = two_cliques(8, true);
    for (std::uint64_t seed : {0ull, 1ull, 42ull, 12345ull}) {
        auto p = louvain(g, 1.0, seed);
        for (int i = 0; i < 16; ++i) EXPECT_EQ(p.community.at(node(i)), i / 8) << "seed " << seed;
        EXPECT_NEAR(p.modularity, matrix_modularity(g, p.community), 1e-9);
        EXPECT_GT(p.modularity, 0.45);
    }
}

TEST(Louvain, EdgelessGraphKeepsSingletons) {
    RepublishGraph g;
    for (const char* n : {"c", "a", "b"}) g.add_node(n);
    auto p = louvain(g);
    EXPECT_EQ(p.community, (std::map<std::string, int>{{"a", 0}, {"b", 1}, {"c", 2}}));
    EXPECT_EQ(p.modularity, 0.0);
}

TEST(Louvain, DyadIsOneCommunity) {
    RepublishGraph g;
    g.add_edge("a", "b");
    auto p = louvain(g);
    EXPECT_EQ(p.community.at("a"), p.community.at("b"));
}

TEST(Louvain, InsertionOrderDoesNotMatter) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = random_graph(rng, 6 + static_cast<int>(rng() % 20), 0.15);
        std::vector<std::pair<std::pair<std::string, std::string>, std::int64_t>> edges(g.edges.begin(), g.edges.end());
        std::vector<std::string> nodes;
        for (const auto& [n, a] : g.nodes) nodes.push_back(n);
        std::shuffle(edges.begin(), edges.end(), rng);
        std::shuffle(nodes.begin(), nodes.end(), rng);
        RepublishGraph h;
        for (const auto& n : nodes) h.add_node(n);
        for (const auto& [e, w] : edges) h.add_edge(e.first, e.second, w);
        auto a = louvain(g, 1.0, 9);
        auto b = louvain(h, 1.0, 9);
        EXPECT_EQ(a.community, b.community);
        EXPECT_EQ(a.modularity, b.modularity);
    }
}

TEST(Louvain, PartitionProperties) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        auto g = random_graph(rng, 2 + static_cast<int>(rng() % 25), 0.1 + static_cast<double>(rng() % 30) / 100.0);
        const double gamma = trial % 2 ? 1.0 : 0.7;
        auto p = louvain(g, gamma, rng());
        ASSERT_EQ(p.community.size(), g.node_count());
        EXPECT_NEAR(p.modularity, matrix_modularity(g, p.community, gamma), 1e-9);

        std::map<std::string, int> singletons;
        int next = 0;
        for (const auto& [n, a] : g.nodes) singletons[n] = next++;
        EXPECT_GE(p.modularity + 1e-12, modularity(g, singletons, gamma));

        // Ids are 0..k-1 in order of each community's smallest member.
        std::map<int, std::string> first_member;
        for (const auto& [n, c] : p.community) first_member.try_emplace(c, n);
        int expected = 0;
        std::vector<std::pair<std::string, int>> order;
        for (const auto& [c, n] : first_member) order.push_back({n, c});
        std::sort(order.begin(), order.end());
        for (const auto& [n, c] : order) EXPECT_EQ(c, expected++);
    }
}

TEST(Louvain, SameSeedSameResult) {
    std::mt19937_64 rng(29);
    auto g = random_graph(rng, 30, 0.1);
    auto a = louvain(g, 1.0, 5);
    auto b = louvain(g, 1.0, 5);
    EXPECT_EQ(a.community, b.community);
    EXPECT_EQ(a.modularity, b.modularity);
}
