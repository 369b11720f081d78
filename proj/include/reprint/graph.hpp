#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "reprint/corpus.hpp"
#include "reprint/matching.hpp"

namespace reprint {

using AttrValue = std::variant<std::int64_t, double, std::string>;
using AttrMap = std::map<std::string, AttrValue>;

/// Directed source graph. An edge (A, B) with weight w means A published w
/// articles copied from B. Nodes and edges are kept in name order.
struct RepublishGraph {
    std::optional<std::size_t> window_index;  // nullopt for a combined graph
    std::map<std::string, AttrMap> nodes;
    std::map<std::pair<std::string, std::string>, std::int64_t> edges;

    void add_node(const std::string& source) { nodes.try_emplace(source); }
    /// Adds `weight` to the edge, creating both endpoints as needed. Self-loops are ignored.
    void add_edge(const std::string& copier, const std::string& original, std::int64_t weight = 1);

    std::int64_t total_weight() const;
    std::size_t node_count() const { return nodes.size(); }
    std::size_t edge_count() const { return edges.size(); }

    bool operator==(const RepublishGraph&) const = default;
};

struct GraphOptions {
    /// Include timestamp-tied pairs, directed from the lexicographically larger
    /// source to the smaller one.
    bool include_ambiguous = false;
};

/// Aggregates pairs from any number of windows. Nodes are the endpoints of the pairs that contribute edges.
RepublishGraph build_graph(const ArticleCollection& collection, std::span<const MatchedPair> pairs,
                           const GraphOptions& options = {}, std::optional<std::size_t> window_index = {});

/// Same as build_graph but requires all pairs to share one window, which becomes the graph's window index.
/// Throws std::invalid_argument on mixed windows.
RepublishGraph build_window_graph(const ArticleCollection& collection, std::span<const MatchedPair> pairs,
                                  const GraphOptions& options = {});

/// Node union with summed edge weights. Node attributes are merged, later graphs
/// overriding earlier ones on key clashes. The result is a combined graph.
RepublishGraph merge_graphs(std::span<const RepublishGraph> graphs);

/// Groups articles into story clusters (connected components of the pairs) and keeps
/// only pairs whose earlier article is the cluster's first publication.
std::vector<MatchedPair> dedupe_to_origin(const ArticleCollection& collection, std::span<const MatchedPair> pairs);

/// Number of forward pairs, plus ambiguous ones when the options include them.
std::size_t count_edge_pairs(std::span<const MatchedPair> pairs, const GraphOptions& options = {});

/// A heavily-copied source whose inbound copies mostly trace back to originals
/// published on a single UTC day. Timestamp-based direction may be wrong here.
struct OriginFlag {
    std::string source;
    std::size_t inbound_pairs = 0;
    std::string peak_day;
    std::size_t peak_day_pairs = 0;
};

std::vector<OriginFlag> flag_single_day_origins(const ArticleCollection& collection,
                                                std::span<const MatchedPair> pairs, std::size_t min_inbound = 5,
                                                double min_share = 0.5);

}  // namespace reprint
