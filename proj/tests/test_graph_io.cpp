#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "reprint/error.hpp"
#include "reprint/graph_io.hpp"
#include "test_support.hpp"

using namespace reprint;

namespace {

std::string graphml(const RepublishGraph& g) {
    std::ostringstream out;
    write_graphml(out, g);
    return out.str();
}

std::string dot(const RepublishGraph& g, const std::string& attr = "community") {
    std::ostringstream out;
    write_dot(out, g, attr);
    return out.str();
}

RepublishGraph attributed_graph() {
    RepublishGraph g;
    g.window_index = 3;
    g.add_edge("infowars", "ap", 3);
    g.add_edge("breitbart", "ap", 1);
    g.add_edge("ap", "breitbart", 2);
    g.add_node("lonely & <odd> \"name\"");
    g.nodes["ap"]["community"] = std::int64_t{0};
    g.nodes["ap"]["audience"] = std::string("mainstream");
    g.nodes["ap"]["median_fb_shares"] = 12.5;
    g.nodes["infowars"]["community"] = std::int64_t{1};
    g.nodes["infowars"]["betweenness"] = 0.1 + 0.2;
    g.nodes["breitbart"]["audience"] = std::string("alt <right>");
    return g;
}

}  // namespace

TEST(GraphMl, EmptyGraphIsValidDocument) {
    RepublishGraph g;
    auto text = graphml(g);
    EXPECT_NE(text.find("<graphml"), std::string::npos);
    EXPECT_NE(text.find("edgedefault=\"directed\""), std::string::npos);
    EXPECT_NE(text.find("</graphml>"), std::string::npos);
    std::istringstream in(text);
    EXPECT_EQ(read_graphml(in), g);
}

TEST(GraphMl, SingleEdgeCarriesWeight) {
    RepublishGraph g;
    g.add_edge("a", "b", 3);
    auto text = graphml(g);
    EXPECT_NE(text.find("<key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"long\"/>"),
              std::string::npos);
    EXPECT_NE(text.find("<edge id=\"e0\" source=\"a\" target=\"b\">"), std::string::npos);
    EXPECT_NE(text.find("<data key=\"weight\">3</data>"), std::string::npos);
}

TEST(GraphMl, RoundTripPreservesAttributes) {
    auto g = attributed_graph();
    std::istringstream in(graphml(g));
    auto back = read_graphml(in);
    EXPECT_EQ(back, g);
    EXPECT_EQ(std::get<double>(back.nodes.at("infowars").at("betweenness")), 0.1 + 0.2);
}

TEST(GraphMl, RoundTripRandomGraphs) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 30; ++trial) {
        RepublishGraph g;
        if (trial % 2) g.window_index = static_cast<std::size_t>(trial);
        const int n = 1 + static_cast<int>(rng() % 12);
        for (int i = 0; i < n; ++i) {
            std::string name = "n" + std::to_string(i);
            g.add_node(name);
            if (rng() % 2) g.nodes[name]["x"] = static_cast<double>(rng() % 1000) / 7.0;
            if (rng() % 2) g.nodes[name]["k"] = static_cast<std::int64_t>(rng() % 9);
            if (rng() % 2) g.nodes[name]["s"] = std::string(1 + rng() % 5, static_cast<char>('a' + rng() % 26));
        }
        for (int e = 0; e < n * 2; ++e) {
            g.add_edge("n" + std::to_string(rng() % n), "n" + std::to_string(rng() % n), 1 + rng() % 9);
        }
        std::istringstream in(graphml(g));
        EXPECT_EQ(read_graphml(in), g);
    }
}

TEST(GraphMl, OutputIsDeterministic) {
    EXPECT_EQ(graphml(attributed_graph()), graphml(attributed_graph()));
    EXPECT_EQ(dot(attributed_graph()), dot(attributed_graph()));
}

TEST(GraphMl, MalformedInputThrows) {
    std::istringstream in("<graphml><graph><node id=\"a\"></graph>");
    EXPECT_THROW(read_graphml(in), DataError);
}

TEST(Dot, PenwidthScalesWithWeightAndColorsByAttribute) {
    auto text = dot(attributed_graph());
    EXPECT_NE(text.find("digraph \"window_3\""), std::string::npos);
    EXPECT_NE(text.find("\"infowars\" -> \"ap\" [weight=3, penwidth=5.000]"), std::string::npos) << text;
    EXPECT_NE(text.find("\"breitbart\" -> \"ap\" [weight=1, penwidth=2.333]"), std::string::npos) << text;
    // Different communities get different colors; missing attribute is white.
    auto color_of = [&](const std::string& name) {
        auto pos = text.find("\"" + name + "\" [fillcolor=");
        EXPECT_NE(pos, std::string::npos) << name;
        return text.substr(pos, text.find(']', pos) - pos).substr(name.size() + 4);
    };
    EXPECT_NE(color_of("ap"), color_of("infowars"));
    EXPECT_EQ(color_of("breitbart"), "fillcolor=\"#ffffff\"");
}

TEST(Export, UnwritablePathThrows) {
    EXPECT_THROW(export_graph(attributed_graph(), GraphFormat::graphml, "/nonexistent/dir/g.graphml"), DataError);
}

TEST(Export, WritesBothFormats) {
    reprint::testing::TempDir dir("export");
    export_graph(attributed_graph(), GraphFormat::graphml, dir / "g.graphml");
    export_graph(attributed_graph(), GraphFormat::dot, dir / "g.dot");
    EXPECT_EQ(reprint::testing::read_file(dir / "g.graphml"), graphml(attributed_graph()));
    EXPECT_EQ(reprint::testing::read_file(dir / "g.dot"), dot(attributed_graph()));
}
