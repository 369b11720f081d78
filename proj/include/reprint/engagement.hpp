#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "reprint/corpus.hpp"
#include "reprint/graph.hpp"
#include "reprint/matching.hpp"

namespace reprint {

/// Median; mean of the two middle values for even counts; nullopt when empty.
std::optional<double> median(std::vector<double> values);

struct EngagementMedians {
    std::optional<double> fb_shares;
    std::optional<double> fb_reactions;
};

/// Per-source medians over the distinct articles a source has in any pair,
/// as either the original or the copy. Articles without a value are skipped.
std::map<std::string, EngagementMedians> engagement_medians(const ArticleCollection& collection,
                                                            std::span<const MatchedPair> pairs);

/// Sets `median_fb_shares` / `median_fb_reactions` on graph nodes. A node with
/// no engagement data gets no attribute (rendered as missing on export).
void attach_engagement(RepublishGraph& graph, const ArticleCollection& collection,
                       std::span<const MatchedPair> pairs);

/// Sets `audience`, `reliability` and `leaning` on every node.
void attach_labels(RepublishGraph& graph, const LabelTable& labels);

}  // namespace reprint
