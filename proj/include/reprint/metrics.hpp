#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "reprint/graph.hpp"

namespace reprint {

struct DegreeMetrics {
    std::int64_t weighted_in = 0;   // articles copied from this source
    std::int64_t weighted_out = 0;  // articles this source copied
    std::size_t in_degree = 0;
    std::size_t out_degree = 0;
    double in_degree_centrality = 0.0;  // in_degree / (n - 1), 0 when n <= 1
};

std::map<std::string, DegreeMetrics> degree_metrics(const RepublishGraph& graph);

enum class BetweennessMode {
    unweighted,      // hop count; edge weights ignored
    inverse_weight,  // edge length 1 / weight
};

/// Directed betweenness (Brandes accumulation), not normalized.
std::map<std::string, double> betweenness(const RepublishGraph& graph,
                                          BetweennessMode mode = BetweennessMode::unweighted);

/// Per-source summary across a combined graph and its per-window graphs.
/// Degrees come from the combined graph; centralities are averaged over the
/// windows, with a source that is absent from a window counting as 0 there.
struct NodeMetrics {
    std::string source;
    std::int64_t weighted_in = 0;
    std::int64_t weighted_out = 0;
    double in_degree_centrality = 0.0;  // on the combined graph
    double betweenness = 0.0;           // on the combined graph
    std::vector<double> in_centrality_by_window;
    std::vector<double> betweenness_by_window;
    double in_centrality_mean = 0.0;
    double in_centrality_var = 0.0;  // population variance
    double betweenness_mean = 0.0;
    double betweenness_var = 0.0;
};

std::vector<NodeMetrics> summarize_metrics(const RepublishGraph& combined, std::span<const RepublishGraph> windows,
                                           BetweennessMode mode = BetweennessMode::unweighted);

/// Mean and population variance; {0, 0} for an empty sample.
std::pair<double, double> mean_and_variance(std::span<const double> values);

}  // namespace reprint
