#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reprint/corpus.hpp"

namespace reprint::app {

/// Everything a pipeline run needs. Paths are optional where the command can run without them.
struct RunConfig {
    std::filesystem::path articles;
    std::optional<InputFormat> format;  // default: from the file extension
    std::filesystem::path labels;
    std::filesystem::path stopwords;
    std::filesystem::path bias_lexicon;
    std::filesystem::path positive_lexicon;
    std::filesystem::path negative_lexicon;
    std::filesystem::path pairs;  // default: <output_dir>/pairs.csv

    int window_days = 14;
    double similarity_threshold = 0.90;
    double title_change_threshold = 0.10;
    std::size_t min_body_tokens = 20;
    std::size_t top_k = 32;
    double louvain_resolution = 1.0;
    std::uint64_t louvain_seed = 42;
    bool dedupe_origin = false;
    bool include_ambiguous = false;
    bool weighted_betweenness = false;
    std::size_t min_window_docs = 0;
    double alpha = 0.05;
    std::string color_attribute = "community";
    unsigned jobs = 1;
    std::filesystem::path output_dir = "out";

    std::filesystem::path pairs_path() const { return pairs.empty() ? output_dir / "pairs.csv" : pairs; }
};

/// Parses flat `key = value` text (`#` comments, blank lines ignored). Keys use the
/// long flag names with underscores or dashes (`similarity_threshold`, `window-days`).
/// Throws ConfigError on unknown keys or bad values.
std::map<std::string, std::string> parse_config_text(std::string_view text);

/// Applies parsed key/values onto cfg. Throws ConfigError on unknown keys or bad values.
void apply_config(RunConfig& cfg, const std::map<std::string, std::string>& values);

void load_config_file(RunConfig& cfg, const std::filesystem::path& path);

enum class Command { detect, graph, headlines, report };

/// Checks thresholds in (0, 1], window_days >= 1, and that every referenced input exists.
void validate(const RunConfig& cfg, Command command);

struct WindowSummary {
    std::size_t index = 0;
    EpochSeconds start_utc = 0;
    EpochSeconds end_utc = 0;
    std::size_t docs = 0;
    std::size_t eligible_docs = 0;
    std::size_t matches = 0;
    bool skipped = false;
};

struct DetectResult {
    std::size_t articles = 0;
    std::size_t rejects = 0;
    std::size_t sources = 0;
    std::size_t sources_with_match = 0;
    std::size_t pairs = 0;
    std::size_t forward_pairs = 0;
    std::vector<WindowSummary> windows;
};

/// Ingest, window, match. Writes pairs.csv, windows.csv, rejects.csv and detect_summary.json.
DetectResult cmd_detect(const RunConfig& cfg);

struct GraphResult {
    std::vector<std::size_t> windows;
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::int64_t total_weight = 0;
    double modularity = 0.0;
    std::size_t communities = 0;
};

/// Per-window and combined graphs (GraphML + DOT) under graphs/, metrics.csv,
/// review_flags.csv and graph_summary.json.
GraphResult cmd_graph(const RunConfig& cfg);

struct HeadlineResult {
    std::size_t pairs = 0;
    std::size_t eligible = 0;
    std::size_t changed = 0;
    std::optional<double> changed_fraction;
    std::size_t significant_shifts = 0;
};

/// changed_pairs.csv, rankings.csv, shifts.csv, headlines_summary.txt and headlines_summary.json.
HeadlineResult cmd_headlines(const RunConfig& cfg);

/// Combines the upstream outputs into report.md. Throws DataError listing the
/// commands to run when an upstream output is missing.
std::filesystem::path cmd_report(const RunConfig& cfg);

struct FixtureOptions {
    std::size_t sources = 20;
    std::size_t articles_per_source = 50;
    std::size_t copies = 30;
    std::size_t changed_titles = 17;  // copies whose title is rewritten
    std::uint64_t seed = 7;
    int span_days = 98;
    int window_days = 14;
    std::string start_date = "2017-04-07";
};

struct PlantedCopy {
    std::string original_source;
    std::string original_id;
    std::string copy_source;
    std::string copy_id;
    bool title_changed = false;
};

/// Synthetic corpus with verbatim cross-source copies planted inside windows. Writes
/// articles.jsonl, ground_truth.csv, labels.csv, stopwords.txt, bias.txt, positive.txt
/// and negative.txt into `dir`. Identical options give identical files.
std::vector<PlantedCopy> generate_fixture(const FixtureOptions& options, const std::filesystem::path& dir);

/// Reads ground_truth.csv written by generate_fixture.
std::vector<PlantedCopy> read_ground_truth(const std::filesystem::path& path);

}  // namespace reprint::app
