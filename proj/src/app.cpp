#include "reprint/app.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "reprint/community.hpp"
#include "reprint/csv.hpp"
#include "reprint/engagement.hpp"
#include "reprint/error.hpp"
#include "reprint/graph.hpp"
#include "reprint/graph_io.hpp"
#include "reprint/headlines.hpp"
#include "reprint/log.hpp"
#include "reprint/matching.hpp"
#include "reprint/metrics.hpp"
#include "reprint/text.hpp"

namespace reprint::app {

namespace fs = std::filesystem;
using nlohmann::json;

// ---------------------------------------------------------------------------
// configuration

namespace {

std::string normalize_key(std::string_view key) {
    std::string k = text::lowercase(text::trim(key));
    std::replace(k.begin(), k.end(), '-', '_');
    return k;
}

double parse_real(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config '" + key + "': expected a number, got '" + v + "'");
    }
}

long long parse_integer(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        long long i = std::stoll(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return i;
    } catch (const std::exception&) {
        throw ConfigError("config '" + key + "': expected an integer, got '" + v + "'");
    }
}

std::size_t parse_count(const std::string& key, const std::string& v) {
    long long i = parse_integer(key, v);
    if (i < 0) throw ConfigError("config '" + key + "': must not be negative");
    return static_cast<std::size_t>(i);
}

bool parse_bool(const std::string& key, const std::string& v) {
    auto s = text::lowercase(v);
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    throw ConfigError("config '" + key + "': expected true/false, got '" + v + "'");
}

using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& value)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"articles", [](RunConfig& c, auto&, auto& v) { c.articles = v; }},
        {"format",
         [](RunConfig& c, auto& k, auto& v) {
             auto s = text::lowercase(v);
             if (s == "jsonl") c.format = InputFormat::jsonl;
             else if (s == "csv") c.format = InputFormat::csv;
             else throw ConfigError("config '" + k + "': expected jsonl or csv");
         }},
        {"labels", [](RunConfig& c, auto&, auto& v) { c.labels = v; }},
        {"stopwords", [](RunConfig& c, auto&, auto& v) { c.stopwords = v; }},
        {"bias_lexicon", [](RunConfig& c, auto&, auto& v) { c.bias_lexicon = v; }},
        {"positive_lexicon", [](RunConfig& c, auto&, auto& v) { c.positive_lexicon = v; }},
        {"negative_lexicon", [](RunConfig& c, auto&, auto& v) { c.negative_lexicon = v; }},
        {"pairs", [](RunConfig& c, auto&, auto& v) { c.pairs = v; }},
        {"window_days", [](RunConfig& c, auto& k, auto& v) { c.window_days = static_cast<int>(parse_integer(k, v)); }},
        {"similarity_threshold", [](RunConfig& c, auto& k, auto& v) { c.similarity_threshold = parse_real(k, v); }},
        {"threshold", [](RunConfig& c, auto& k, auto& v) { c.similarity_threshold = parse_real(k, v); }},
        {"title_change_threshold",
         [](RunConfig& c, auto& k, auto& v) { c.title_change_threshold = parse_real(k, v); }},
        {"min_body_tokens", [](RunConfig& c, auto& k, auto& v) { c.min_body_tokens = parse_count(k, v); }},
        {"top_k", [](RunConfig& c, auto& k, auto& v) { c.top_k = parse_count(k, v); }},
        {"louvain_resolution", [](RunConfig& c, auto& k, auto& v) { c.louvain_resolution = parse_real(k, v); }},
        {"louvain_seed", [](RunConfig& c, auto& k, auto& v) { c.louvain_seed = parse_count(k, v); }},
        {"seed", [](RunConfig& c, auto& k, auto& v) { c.louvain_seed = parse_count(k, v); }},
        {"dedupe_origin", [](RunConfig& c, auto& k, auto& v) { c.dedupe_origin = parse_bool(k, v); }},
        {"include_ambiguous", [](RunConfig& c, auto& k, auto& v) { c.include_ambiguous = parse_bool(k, v); }},
        {"weighted_betweenness", [](RunConfig& c, auto& k, auto& v) { c.weighted_betweenness = parse_bool(k, v); }},
        {"min_window_docs", [](RunConfig& c, auto& k, auto& v) { c.min_window_docs = parse_count(k, v); }},
        {"alpha", [](RunConfig& c, auto& k, auto& v) { c.alpha = parse_real(k, v); }},
        {"color_attribute", [](RunConfig& c, auto&, auto& v) { c.color_attribute = v; }},
        {"jobs", [](RunConfig& c, auto& k, auto& v) { c.jobs = static_cast<unsigned>(parse_count(k, v)); }},
        {"output_dir", [](RunConfig& c, auto&, auto& v) { c.output_dir = v; }},
        {"out", [](RunConfig& c, auto&, auto& v) { c.output_dir = v; }},
    };
    return table;
}

}  // namespace

std::map<std::string, std::string> parse_config_text(std::string_view content) {
    std::map<std::string, std::string> values;
    std::istringstream in{std::string(content)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto t = text::trim(line);
        if (t.empty() || t.front() == '#') continue;
        auto eq = t.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
        }
        auto key = normalize_key(t.substr(0, eq));
        auto value = std::string(text::trim(t.substr(eq + 1)));
        if (!value.empty() && value.front() != '"') {
            // Trailing comment: '#' preceded by whitespace.
            for (std::size_t i = 1; i < value.size(); ++i) {
                if (value[i] == '#' && (value[i - 1] == ' ' || value[i - 1] == '\t')) {
                    value = std::string(text::trim(std::string_view(value).substr(0, i)));
                    break;
                }
            }
        }
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
        if (!setters().count(key)) {
            throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
        values[key] = value;
    }
    return values;
}

void apply_config(RunConfig& cfg, const std::map<std::string, std::string>& values) {
    for (const auto& [raw_key, value] : values) {
        auto key = normalize_key(raw_key);
        auto it = setters().find(key);
        if (it == setters().end()) throw ConfigError("unknown config key '" + key + "'");
        it->second(cfg, key, value);
    }
}

void load_config_file(RunConfig& cfg, const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file: " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    apply_config(cfg, parse_config_text(ss.str()));
}

void validate(const RunConfig& cfg, Command command) {
    auto in_unit = [](double v) { return v > 0.0 && v <= 1.0; };
    if (!in_unit(cfg.similarity_threshold)) throw ConfigError("similarity_threshold must be in (0, 1]");
    if (!in_unit(cfg.title_change_threshold)) throw ConfigError("title_change_threshold must be in (0, 1]");
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw ConfigError("alpha must be in (0, 1)");
    if (cfg.window_days < 1) throw ConfigError("window_days must be at least 1");
    if (cfg.jobs < 1) throw ConfigError("jobs must be at least 1");
    if (cfg.top_k < 1) throw ConfigError("top_k must be at least 1");
    if (!(cfg.louvain_resolution > 0.0)) throw ConfigError("louvain_resolution must be positive");

    auto require = [](const fs::path& p, const char* what) {
        if (p.empty()) throw ConfigError(std::string("missing required input: ") + what);
        if (!fs::exists(p)) throw ConfigError(std::string(what) + " not found: " + p.string());
    };
    auto optional_file = [](const fs::path& p, const char* what) {
        if (!p.empty() && !fs::exists(p)) throw ConfigError(std::string(what) + " not found: " + p.string());
    };
    switch (command) {
        case Command::detect:
            require(cfg.articles, "articles");
            break;
        case Command::graph:
            require(cfg.articles, "articles");
            require(cfg.pairs_path(), "pairs");
            optional_file(cfg.labels, "labels");
            break;
        case Command::headlines:
            require(cfg.articles, "articles");
            require(cfg.pairs_path(), "pairs");
            optional_file(cfg.stopwords, "stopwords");
            optional_file(cfg.bias_lexicon, "bias_lexicon");
            optional_file(cfg.positive_lexicon, "positive_lexicon");
            optional_file(cfg.negative_lexicon, "negative_lexicon");
            break;
        case Command::report:
            break;
    }
}

// ---------------------------------------------------------------------------
// shared helpers

namespace {

ArticleCollection load_articles(const RunConfig& cfg) {
    auto format = cfg.format.value_or(format_from_extension(cfg.articles));
    auto collection = ingest_articles(cfg.articles, format);
    log::info("ingested", {{"path", cfg.articles.string()},
                           {"articles", std::to_string(collection.size())},
                           {"rejects", std::to_string(collection.rejects().size())}});
    return collection;
}

std::ofstream open_output(const fs::path& path) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    return out;
}

void write_json(const fs::path& path, const json& j) {
    auto out = open_output(path);
    out << j.dump(2) << '\n';
}

json read_json(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read " + path.string());
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw DataError("malformed JSON in " + path.string());
    return j;
}

std::vector<std::vector<std::string>> read_csv_rows(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read " + path.string());
    csv::Reader reader(in);
    std::vector<std::vector<std::string>> rows;
    while (auto rec = reader.next()) {
        if (rec->fields.size() == 1 && rec->fields[0].empty()) continue;
        rows.push_back(std::move(rec->fields));
    }
    return rows;
}

GraphOptions graph_options(const RunConfig& cfg) { return GraphOptions{cfg.include_ambiguous}; }

/// Pairs in windows with at least min_window_docs articles.
std::vector<MatchedPair> occupancy_filter(const RunConfig& cfg, const ArticleCollection& collection,
                                          std::vector<MatchedPair> pairs) {
    if (cfg.min_window_docs == 0 || collection.empty()) return pairs;
    const auto windows = partition_windows(collection, cfg.window_days);
    std::set<std::size_t> kept;
    for (const auto& w : windows) {
        if (w.articles.size() >= cfg.min_window_docs) kept.insert(w.index);
    }
    std::erase_if(pairs, [&](const MatchedPair& p) { return !kept.count(p.window_index); });
    return pairs;
}

std::vector<MatchedPair> edge_pairs(const RunConfig& cfg, std::span<const MatchedPair> pairs) {
    std::vector<MatchedPair> out;
    for (const auto& p : pairs) {
        if (p.direction == Direction::forward || cfg.include_ambiguous) out.push_back(p);
    }
    return out;
}

json detect_config_json(const RunConfig& cfg) {
    return {{"window_days", cfg.window_days},
            {"similarity_threshold", cfg.similarity_threshold},
            {"min_body_tokens", cfg.min_body_tokens},
            {"top_k", cfg.top_k}};
}

}  // namespace

// ---------------------------------------------------------------------------
// detect

DetectResult cmd_detect(const RunConfig& cfg) {
    validate(cfg, Command::detect);
    const auto collection = load_articles(cfg);
    if (collection.empty()) throw DataError("corpus is empty: " + cfg.articles.string());

    const auto windows = partition_windows(collection, cfg.window_days);
    MatchOptions options{cfg.similarity_threshold, cfg.min_body_tokens, cfg.top_k, cfg.jobs};

    DetectResult result;
    result.articles = collection.size();
    result.rejects = collection.rejects().size();
    result.sources = collection.sources().size();

    std::vector<MatchedPair> all_pairs;
    for (const auto& window : windows) {
        auto matches = find_matches(collection, window, options);
        WindowSummary s;
        s.index = window.index;
        s.start_utc = window.start_utc;
        s.end_utc = window.end_utc;
        s.docs = matches.docs;
        s.eligible_docs = matches.eligible_docs;
        s.matches = matches.pairs.size();
        s.skipped = matches.skipped;
        result.windows.push_back(s);
        log::info("window_matched", {{"window", std::to_string(window.index)},
                                     {"docs", std::to_string(s.docs)},
                                     {"eligible_docs", std::to_string(s.eligible_docs)},
                                     {"matches", std::to_string(s.matches)}});
        all_pairs.insert(all_pairs.end(), matches.pairs.begin(), matches.pairs.end());
    }

    std::set<std::string> matched_sources;
    for (const auto& p : all_pairs) {
        matched_sources.insert(collection[p.earlier].source);
        matched_sources.insert(collection[p.later].source);
        if (p.direction == Direction::forward) ++result.forward_pairs;
    }
    result.pairs = all_pairs.size();
    result.sources_with_match = matched_sources.size();

    fs::create_directories(cfg.output_dir);
    {
        auto out = open_output(cfg.output_dir / "pairs.csv");
        write_pairs_csv(out, collection, all_pairs);
    }
    {
        auto out = open_output(cfg.output_dir / "windows.csv");
        csv::write_row(out, {"window_index", "start_utc", "end_utc", "docs", "eligible_docs", "matches", "skipped"});
        for (const auto& w : result.windows) {
            csv::write_row(out, {std::to_string(w.index), format_utc(w.start_utc), format_utc(w.end_utc),
                                 std::to_string(w.docs), std::to_string(w.eligible_docs), std::to_string(w.matches),
                                 w.skipped ? "true" : "false"});
        }
    }
    {
        auto out = open_output(cfg.output_dir / "rejects.csv");
        csv::write_row(out, {"row", "reason"});
        for (const auto& r : collection.rejects()) csv::write_row(out, {std::to_string(r.row), r.reason});
    }
    write_json(cfg.output_dir / "detect_summary.json",
               {{"articles", result.articles},
                {"rejects", result.rejects},
                {"sources", result.sources},
                {"sources_with_match", result.sources_with_match},
                {"pairs", result.pairs},
                {"forward_pairs", result.forward_pairs},
                {"ambiguous_pairs", result.pairs - result.forward_pairs},
                {"windows", result.windows.size()},
                {"config", detect_config_json(cfg)}});

    log::info("detect_done", {{"pairs", std::to_string(result.pairs)},
                              {"sources_with_match", std::to_string(result.sources_with_match)},
                              {"sources", std::to_string(result.sources)}});
    return result;
}

// ---------------------------------------------------------------------------
// graph

namespace {

void attach_degree_attrs(RepublishGraph& g, BetweennessMode mode) {
    const auto degrees = degree_metrics(g);
    const auto bc = betweenness(g, mode);
    for (auto& [name, attrs] : g.nodes) {
        const auto& d = degrees.at(name);
        attrs["weighted_in"] = d.weighted_in;
        attrs["weighted_out"] = d.weighted_out;
        attrs["in_degree_centrality"] = d.in_degree_centrality;
        attrs["betweenness"] = bc.at(name);
    }
}

void attach_community(RepublishGraph& g, const Partition& partition) {
    for (auto& [name, attrs] : g.nodes) attrs["community"] = static_cast<std::int64_t>(partition.community.at(name));
}

}  // namespace

GraphResult cmd_graph(const RunConfig& cfg) {
    validate(cfg, Command::graph);
    const auto collection = load_articles(cfg);
    auto pairs = occupancy_filter(cfg, collection, read_pairs_csv(cfg.pairs_path(), collection));
    if (cfg.dedupe_origin) pairs = dedupe_to_origin(collection, pairs);

    std::optional<LabelTable> labels;
    if (cfg.labels.empty()) {
        log::warn("labels_missing", {{"detail", "graphs are written without label attributes"}});
    } else {
        labels = load_labels(cfg.labels);
    }

    const GraphOptions options = graph_options(cfg);
    const BetweennessMode mode =
        cfg.weighted_betweenness ? BetweennessMode::inverse_weight : BetweennessMode::unweighted;

    std::map<std::size_t, std::vector<MatchedPair>> by_window;
    for (const auto& p : pairs) by_window[p.window_index].push_back(p);

    GraphResult result;
    const fs::path graph_dir = cfg.output_dir / "graphs";
    fs::create_directories(graph_dir);

    std::vector<RepublishGraph> window_graphs;
    for (const auto& [window, window_pairs] : by_window) {
        RepublishGraph g = build_window_graph(collection, window_pairs, options);
        g.window_index = window;
        window_graphs.push_back(g);

        if (labels) attach_labels(g, *labels);
        attach_engagement(g, collection, window_pairs);
        attach_community(g, louvain(g, cfg.louvain_resolution, cfg.louvain_seed));
        attach_degree_attrs(g, mode);
        const std::string stem = "window_" + std::to_string(window);
        export_graph(g, GraphFormat::graphml, graph_dir / (stem + ".graphml"), cfg.color_attribute);
        export_graph(g, GraphFormat::dot, graph_dir / (stem + ".dot"), cfg.color_attribute);
        result.windows.push_back(window);
    }

    RepublishGraph combined = build_graph(collection, pairs, options);
    const auto metrics = summarize_metrics(combined, window_graphs, mode);
    const Partition partition = louvain(combined, cfg.louvain_resolution, cfg.louvain_seed);

    if (labels) attach_labels(combined, *labels);
    attach_engagement(combined, collection, pairs);
    attach_community(combined, partition);
    for (const auto& m : metrics) {
        auto& attrs = combined.nodes.at(m.source);
        attrs["weighted_in"] = m.weighted_in;
        attrs["weighted_out"] = m.weighted_out;
        attrs["in_centrality_mean"] = m.in_centrality_mean;
        attrs["in_centrality_var"] = m.in_centrality_var;
        attrs["betweenness_mean"] = m.betweenness_mean;
        attrs["betweenness_var"] = m.betweenness_var;
    }
    {
        const auto titles = title_distance(collection, edge_pairs(cfg, pairs));
        const auto ranks = rank_changers(collection, titles, cfg.title_change_threshold);
        for (const auto& s : ranks.most_changed) {
            auto it = combined.nodes.find(s.source);
            if (it == combined.nodes.end()) continue;
            it->second["titles_changed"] = static_cast<std::int64_t>(s.changed);
            if (s.changed > 0) it->second["mean_title_change"] = s.mean_changed_distance;
        }
    }
    export_graph(combined, GraphFormat::graphml, graph_dir / "combined.graphml", cfg.color_attribute);
    export_graph(combined, GraphFormat::dot, graph_dir / "combined.dot", cfg.color_attribute);

    {
        auto out = open_output(cfg.output_dir / "metrics.csv");
        csv::write_row(out, {"source", "weighted_in", "weighted_out", "in_centrality_mean", "in_centrality_var",
                             "betweenness_mean", "betweenness_var", "community"});
        for (const auto& m : metrics) {
            csv::write_row(out, {m.source, std::to_string(m.weighted_in), std::to_string(m.weighted_out),
                                 csv::format_double(m.in_centrality_mean), csv::format_double(m.in_centrality_var),
                                 csv::format_double(m.betweenness_mean), csv::format_double(m.betweenness_var),
                                 std::to_string(partition.community.at(m.source))});
        }
    }
    {
        auto out = open_output(cfg.output_dir / "engagement.csv");
        csv::write_row(out, {"source", "median_fb_shares", "median_fb_reactions"});
        for (const auto& [source, med] : engagement_medians(collection, pairs)) {
            if (!combined.nodes.count(source)) continue;
            csv::write_row(out, {source, med.fb_shares ? csv::format_double(*med.fb_shares) : "",
                                 med.fb_reactions ? csv::format_double(*med.fb_reactions) : ""});
        }
    }
    {
        auto out = open_output(cfg.output_dir / "review_flags.csv");
        csv::write_row(out, {"source", "inbound_pairs", "peak_day", "peak_day_pairs"});
        for (const auto& f : flag_single_day_origins(collection, pairs)) {
            csv::write_row(out, {f.source, std::to_string(f.inbound_pairs), f.peak_day,
                                 std::to_string(f.peak_day_pairs)});
        }
    }

    std::set<int> communities;
    for (const auto& [name, c] : partition.community) communities.insert(c);
    result.nodes = combined.node_count();
    result.edges = combined.edge_count();
    result.total_weight = combined.total_weight();
    result.modularity = partition.modularity;
    result.communities = communities.size();

    write_json(cfg.output_dir / "graph_summary.json",
               {{"windows", result.windows},
                {"nodes", result.nodes},
                {"edges", result.edges},
                {"total_weight", result.total_weight},
                {"edge_pairs", count_edge_pairs(pairs, options)},
                {"modularity", result.modularity},
                {"communities", result.communities},
                {"labels_attached", labels.has_value()},
                {"config",
                 {{"louvain_seed", cfg.louvain_seed},
                  {"louvain_resolution", cfg.louvain_resolution},
                  {"dedupe_origin", cfg.dedupe_origin},
                  {"include_ambiguous", cfg.include_ambiguous},
                  {"weighted_betweenness", cfg.weighted_betweenness},
                  {"min_window_docs", cfg.min_window_docs}}}});
    log::info("graph_done", {{"nodes", std::to_string(result.nodes)},
                             {"edges", std::to_string(result.edges)},
                             {"windows", std::to_string(result.windows.size())}});
    return result;
}

// ---------------------------------------------------------------------------
// headlines

namespace {

FeatureLexicons load_feature_lexicons(const RunConfig& cfg) {
    FeatureLexicons lex;
    lex.stopwords = cfg.stopwords.empty() ? default_stopwords() : load_lexicon(cfg.stopwords, "stopwords");
    auto optional_lexicon = [](const fs::path& p, const char* name) -> std::optional<Lexicon> {
        if (p.empty()) {
            log::warn("lexicon_missing", {{"lexicon", name}, {"detail", "feature excluded from shift analysis"}});
            return std::nullopt;
        }
        return load_lexicon(p, name);
    };
    lex.bias = optional_lexicon(cfg.bias_lexicon, "bias");
    lex.positive = optional_lexicon(cfg.positive_lexicon, "positive");
    lex.negative = optional_lexicon(cfg.negative_lexicon, "negative");
    return lex;
}

void write_ranking_rows(std::ostream& out, const char* list, const std::vector<ChangerStats>& rows) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& s = rows[i];
        csv::write_row(out, {list, std::to_string(i + 1), s.source, std::to_string(s.copies),
                             std::to_string(s.changed), csv::format_double(s.mean_changed_distance)});
    }
}

}  // namespace

HeadlineResult cmd_headlines(const RunConfig& cfg) {
    validate(cfg, Command::headlines);
    const auto collection = load_articles(cfg);
    const auto pairs =
        edge_pairs(cfg, occupancy_filter(cfg, collection, read_pairs_csv(cfg.pairs_path(), collection)));
    const auto lexicons = load_feature_lexicons(cfg);

    const auto titles = title_distance(collection, pairs);
    HeadlineResult result;
    result.pairs = titles.size();
    for (const auto& t : titles) {
        if (!t.eligible) continue;
        ++result.eligible;
        if (is_changed(t, cfg.title_change_threshold)) ++result.changed;
    }
    if (result.eligible > 0) result.changed_fraction = changed_fraction(titles, cfg.title_change_threshold);

    {
        auto out = open_output(cfg.output_dir / "changed_pairs.csv");
        csv::write_row(out, {"earlier_id", "later_id", "distance", "changed"});
        for (const auto& t : titles) {
            csv::write_row(out, {collection[t.original].id, collection[t.copy].id,
                                 t.eligible ? csv::format_double(t.distance) : "",
                                 !t.eligible ? "ineligible" : (is_changed(t, cfg.title_change_threshold) ? "true"
                                                                                                         : "false")});
        }
    }

    const auto ranks = rank_changers(collection, titles, cfg.title_change_threshold);
    {
        auto out = open_output(cfg.output_dir / "rankings.csv");
        csv::write_row(out, {"ranking", "rank", "source", "copies", "changed", "mean_changed_distance"});
        write_ranking_rows(out, "most_changed", ranks.most_changed);
        write_ranking_rows(out, "changed_by_most", ranks.changed_by_most);
    }

    std::vector<ShiftAnalysis> analyses;
    for (const auto& s : ranks.most_changed) {
        analyses.push_back(
            significant_shifts(s.source, collection, titles, lexicons, ShiftOptions{cfg.alpha, 8}));
    }
    {
        auto out = open_output(cfg.output_dir / "shifts.csv");
        csv::write_row(out, {"source", "feature", "direction", "F", "p", "n_own", "n_copied"});
        for (const auto& a : analyses) {
            for (const auto& s : a.shifts) {
                csv::write_row(out, {s.source, std::string(to_string(s.feature)),
                                     std::string(to_string(s.direction)), csv::format_double(s.f),
                                     csv::format_double(s.p), std::to_string(s.n_own), std::to_string(s.n_copied)});
                ++result.significant_shifts;
            }
        }
    }

    {
        auto out = open_output(cfg.output_dir / "headlines_summary.txt");
        out << "Headline changes\n================\n\n";
        out << "title pairs: " << result.pairs << "\neligible pairs: " << result.eligible << '\n';
        if (result.changed_fraction) {
            out << "changed (distance > " << csv::format_double(cfg.title_change_threshold)
                << "): " << result.changed << " (" << csv::format_double(*result.changed_fraction) << ")\n";
        } else {
            out << "changed fraction: n/a (zero eligible pairs)\n";
        }
        out << "\nMost titles changed (top 10)\n";
        for (std::size_t i = 0; i < std::min<std::size_t>(10, ranks.most_changed.size()); ++i) {
            const auto& s = ranks.most_changed[i];
            out << "  " << i + 1 << ". " << s.source << "  changed " << s.changed << " of " << s.copies << '\n';
        }
        out << "\nChange titles by most (top 10, mean distance of changed titles)\n";
        for (std::size_t i = 0; i < std::min<std::size_t>(10, ranks.changed_by_most.size()); ++i) {
            const auto& s = ranks.changed_by_most[i];
            out << "  " << i + 1 << ". " << s.source << "  " << csv::format_double(s.mean_changed_distance) << '\n';
        }
        out << "\nSignificant feature shifts (copies vs originals)\n";
        for (const auto& a : analyses) {
            if (a.shifts.empty()) continue;
            out << "  " << a.source << ":";
            for (const auto& s : a.shifts) out << ' ' << to_string(s.direction) << ' ' << to_string(s.feature) << ';';
            out << '\n';
        }
    }

    json top_most = json::array(), top_by = json::array();
    for (std::size_t i = 0; i < std::min<std::size_t>(10, ranks.most_changed.size()); ++i) {
        const auto& s = ranks.most_changed[i];
        top_most.push_back({{"source", s.source}, {"changed", s.changed}, {"copies", s.copies}});
    }
    for (std::size_t i = 0; i < std::min<std::size_t>(10, ranks.changed_by_most.size()); ++i) {
        const auto& s = ranks.changed_by_most[i];
        top_by.push_back({{"source", s.source}, {"mean_changed_distance", s.mean_changed_distance}});
    }
    json skipped = json::object();
    for (const auto& a : analyses) {
        if (!a.reason.empty()) skipped[a.source] = a.reason;
    }
    write_json(cfg.output_dir / "headlines_summary.json",
               {{"pairs", result.pairs},
                {"eligible", result.eligible},
                {"changed", result.changed},
                {"changed_fraction", result.changed_fraction ? json(*result.changed_fraction) : json(nullptr)},
                {"significant_shifts", result.significant_shifts},
                {"most_changed", top_most},
                {"changed_by_most", top_by},
                {"shift_skipped", skipped},
                {"config",
                 {{"title_change_threshold", cfg.title_change_threshold},
                  {"alpha", cfg.alpha},
                  {"include_ambiguous", cfg.include_ambiguous}}}});
    return result;
}

// ---------------------------------------------------------------------------
// report

namespace {

std::string md_row(const std::vector<std::string>& cells) {
    std::string s = "|";
    for (const auto& c : cells) s += " " + c + " |";
    return s + "\n";
}

std::string md_rule(std::size_t n) {
    std::string s = "|";
    for (std::size_t i = 0; i < n; ++i) s += "---|";
    return s + "\n";
}

std::string json_scalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) return csv::format_double(v.get<double>());
    return v.dump();
}

void config_table(std::ostream& out, const char* stage, const json& config) {
    for (const auto& [k, v] : config.items()) out << md_row({stage, k, json_scalar(v)});
}

struct MetricRow {
    std::string source;
    long long weighted_in = 0;
    long long weighted_out = 0;
    double in_centrality_mean = 0.0;
    double in_centrality_var = 0.0;
    double betweenness_mean = 0.0;
    double betweenness_var = 0.0;
    std::string community;
};

template <typename Key>
void top10(std::ostream& out, std::vector<MetricRow> rows, const char* title, Key key,
           const std::function<std::string(const MetricRow&)>& cell, const char* header) {
    std::stable_sort(rows.begin(), rows.end(), [&](const MetricRow& a, const MetricRow& b) {
        auto ka = key(a), kb = key(b);
        return ka != kb ? ka > kb : a.source < b.source;
    });
    out << "**" << title << "**\n\n" << md_row({"rank", "source", header}) << md_rule(3);
    for (std::size_t i = 0; i < std::min<std::size_t>(10, rows.size()); ++i) {
        out << md_row({std::to_string(i + 1), rows[i].source, cell(rows[i])});
    }
    out << '\n';
}

}  // namespace

fs::path cmd_report(const RunConfig& cfg) {
    validate(cfg, Command::report);
    const fs::path dir = cfg.output_dir;
    const std::vector<std::pair<fs::path, const char*>> needed = {
        {dir / "detect_summary.json", "detect"}, {dir / "windows.csv", "detect"},
        {dir / "graph_summary.json", "graph"},   {dir / "metrics.csv", "graph"},
        {dir / "engagement.csv", "graph"},       {dir / "review_flags.csv", "graph"},
        {dir / "headlines_summary.json", "headlines"}, {dir / "shifts.csv", "headlines"},
    };
    std::set<std::string> to_run;
    std::vector<std::string> missing;
    for (const auto& [path, command] : needed) {
        if (!fs::exists(path)) {
            missing.push_back(path.filename().string());
            to_run.insert(command);
        }
    }
    if (!missing.empty()) {
        std::string msg = "missing upstream outputs (";
        for (std::size_t i = 0; i < missing.size(); ++i) msg += (i ? ", " : "") + missing[i];
        msg += "); run:";
        bool first = true;
        for (const char* c : {"detect", "graph", "headlines"}) {
            if (!to_run.count(c)) continue;
            msg += std::string(first ? " " : "; ") + "reprint " + c;
            first = false;
        }
        throw DataError(msg);
    }

    const json detect = read_json(dir / "detect_summary.json");
    const json graph = read_json(dir / "graph_summary.json");
    const json headlines = read_json(dir / "headlines_summary.json");

    std::ostringstream out;
    out << "# Republishing report\n\n";

    out << "## 1. Configuration\n\n" << md_row({"stage", "key", "value"}) << md_rule(3);
    config_table(out, "detect", detect.at("config"));
    config_table(out, "graph", graph.at("config"));
    config_table(out, "headlines", headlines.at("config"));
    out << '\n';

    out << "## 2. Detection\n\n";
    out << "- articles: " << detect.at("articles").dump() << " (rejected: " << detect.at("rejects").dump() << ")\n";
    out << "- matched pairs: " << detect.at("pairs").dump() << " (forward: " << detect.at("forward_pairs").dump()
        << ", ambiguous: " << detect.at("ambiguous_pairs").dump() << ")\n";
    out << "- sources with at least one match: " << detect.at("sources_with_match").dump() << " of "
        << detect.at("sources").dump() << "\n\n";
    out << md_row({"window", "start", "end", "docs", "eligible", "matches", "skipped"}) << md_rule(7);
    auto windows = read_csv_rows(dir / "windows.csv");
    for (std::size_t i = 1; i < windows.size(); ++i) out << md_row(windows[i]);
    out << '\n';

    std::vector<MetricRow> metrics;
    auto metric_rows = read_csv_rows(dir / "metrics.csv");
    for (std::size_t i = 1; i < metric_rows.size(); ++i) {
        const auto& r = metric_rows[i];
        if (r.size() != 8) throw DataError("metrics.csv: bad row " + std::to_string(i + 1));
        metrics.push_back({r[0], std::stoll(r[1]), std::stoll(r[2]), std::stod(r[3]), std::stod(r[4]),
                           std::stod(r[5]), std::stod(r[6]), r[7]});
    }
    out << "## 3. Network\n\n";
    out << "- graph windows: " << graph.at("windows").size() << "\n- nodes: " << graph.at("nodes").dump()
        << ", edges: " << graph.at("edges").dump() << ", total weight: " << graph.at("total_weight").dump() << '\n';
    out << "- communities: " << graph.at("communities").dump()
        << ", modularity: " << json_scalar(graph.at("modularity")) << "\n\n";
    top10(out, metrics, "Highest weighted in-degree (combined)", [](const MetricRow& m) { return m.weighted_in; },
          [](const MetricRow& m) { return std::to_string(m.weighted_in); }, "weighted in");
    top10(out, metrics, "Highest weighted out-degree (combined)", [](const MetricRow& m) { return m.weighted_out; },
          [](const MetricRow& m) { return std::to_string(m.weighted_out); }, "weighted out");
    top10(out, metrics, "In-degree centrality (mean over windows)",
          [](const MetricRow& m) { return m.in_centrality_mean; },
          [](const MetricRow& m) {
              return csv::format_double(m.in_centrality_mean) + " (var " + csv::format_double(m.in_centrality_var) +
                     ")";
          },
          "mean (variance)");
    top10(out, metrics, "Betweenness (mean over windows)", [](const MetricRow& m) { return m.betweenness_mean; },
          [](const MetricRow& m) {
              return csv::format_double(m.betweenness_mean) + " (var " + csv::format_double(m.betweenness_var) + ")";
          },
          "mean (variance)");

    std::map<std::string, std::vector<std::string>> members;
    for (const auto& m : metrics) members[m.community].push_back(m.source);
    out << "**Communities**\n\n" << md_row({"community", "members"}) << md_rule(2);
    std::vector<std::pair<std::string, std::vector<std::string>>> ordered(members.begin(), members.end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        return std::stoll(a.first) < std::stoll(b.first);
    });
    for (const auto& [c, names] : ordered) {
        std::string joined;
        for (std::size_t i = 0; i < names.size(); ++i) joined += (i ? ", " : "") + names[i];
        out << md_row({c, joined});
    }
    out << '\n';
    auto flags = read_csv_rows(dir / "review_flags.csv");
    out << "**Origins flagged for review** (inbound copies concentrated on one day)\n\n";
    if (flags.size() <= 1) {
        out << "none\n\n";
    } else {
        out << md_row({"source", "inbound pairs", "peak day", "pairs on peak day"}) << md_rule(4);
        for (std::size_t i = 1; i < flags.size(); ++i) out << md_row(flags[i]);
        out << '\n';
    }

    out << "## 4. Engagement\n\nMedian Facebook engagement over each source's matched articles.\n\n";
    out << md_row({"source", "median shares", "median reactions"}) << md_rule(3);
    auto engagement = read_csv_rows(dir / "engagement.csv");
    for (std::size_t i = 1; i < engagement.size(); ++i) {
        auto row = engagement[i];
        for (auto& c : row) {
            if (c.empty()) c = "missing";
        }
        out << md_row(row);
    }
    out << '\n';

    out << "## 5. Headlines\n\n";
    out << "- title pairs: " << headlines.at("pairs").dump() << ", eligible: " << headlines.at("eligible").dump()
        << ", changed: " << headlines.at("changed").dump() << '\n';
    if (headlines.at("changed_fraction").is_null()) {
        out << "- changed fraction: n/a (zero eligible pairs)\n\n";
    } else {
        out << "- changed fraction: " << json_scalar(headlines.at("changed_fraction")) << "\n\n";
    }
    out << "**Most titles changed**\n\n" << md_row({"rank", "source", "changed", "copies"}) << md_rule(4);
    std::size_t rank = 0;
    for (const auto& s : headlines.at("most_changed")) {
        out << md_row({std::to_string(++rank), s.at("source").get<std::string>(), s.at("changed").dump(),
                       s.at("copies").dump()});
    }
    out << "\n**Change titles by most**\n\n" << md_row({"rank", "source", "mean distance"}) << md_rule(3);
    rank = 0;
    for (const auto& s : headlines.at("changed_by_most")) {
        out << md_row({std::to_string(++rank), s.at("source").get<std::string>(),
                       json_scalar(s.at("mean_changed_distance"))});
    }
    out << "\n**Significant feature shifts**\n\n";
    auto shifts = read_csv_rows(dir / "shifts.csv");
    if (shifts.size() <= 1) {
        out << "none\n";
    } else {
        out << md_row({"source", "feature", "direction", "F", "p", "n own", "n copied"}) << md_rule(7);
        for (std::size_t i = 1; i < shifts.size(); ++i) out << md_row(shifts[i]);
    }

    const fs::path path = dir / "report.md";
    auto file = open_output(path);
    file << out.str();
    return path;
}

}  // namespace reprint::app
