#include "reprint/engagement.hpp"

#include <algorithm>
#include <set>

namespace reprint {

std::optional<double> median(std::vector<double> values) {
    if (values.empty()) return std::nullopt;
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

std::map<std::string, EngagementMedians> engagement_medians(const ArticleCollection& collection,
                                                            std::span<const MatchedPair> pairs) {
    std::map<std::string, std::set<ArticleIndex>> articles;
    for (const auto& p : pairs) {
        articles[collection[p.earlier].source].insert(p.earlier);
        articles[collection[p.later].source].insert(p.later);
    }
    std::map<std::string, EngagementMedians> out;
    for (const auto& [source, ids] : articles) {
        std::vector<double> shares, reactions;
        for (ArticleIndex a : ids) {
            if (collection[a].fb_shares) shares.push_back(static_cast<double>(*collection[a].fb_shares));
            if (collection[a].fb_reactions) reactions.push_back(static_cast<double>(*collection[a].fb_reactions));
        }
        out[source] = {median(std::move(shares)), median(std::move(reactions))};
    }
    return out;
}

void attach_engagement(RepublishGraph& graph, const ArticleCollection& collection,
                       std::span<const MatchedPair> pairs) {
    const auto medians = engagement_medians(collection, pairs);
    for (auto& [name, attrs] : graph.nodes) {
        attrs.erase("median_fb_shares");
        attrs.erase("median_fb_reactions");
        auto it = medians.find(name);
        if (it == medians.end()) continue;
        if (it->second.fb_shares) attrs["median_fb_shares"] = *it->second.fb_shares;
        if (it->second.fb_reactions) attrs["median_fb_reactions"] = *it->second.fb_reactions;
    }
}

void attach_labels(RepublishGraph& graph, const LabelTable& labels) {
    for (auto& [name, attrs] : graph.nodes) {
        const SourceLabels l = labels.lookup(name);
        attrs["audience"] = std::string(to_string(l.audience));
        attrs["reliability"] = std::string(to_string(l.reliability));
        attrs["leaning"] = std::string(to_string(l.leaning));
    }
}

}  // namespace reprint
