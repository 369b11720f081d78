// reprint: detect verbatim republishing in a news corpus and analyse the copy network.

#include <cstdio>
#include <exception>
#include <iostream>
#include <algorithm>
#include <map>

#include <CLI11.hpp>

#include "reprint/app.hpp"
#include "reprint/error.hpp"
#include "reprint/log.hpp"

namespace {

using reprint::app::RunConfig;

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kInternal = 3 };

// Flag values are collected as strings and applied after the config file, so
// flags win over file values while both share one parser.
struct FlagValues {
    std::map<std::string, std::string> values;
};

void add_flag(CLI::App* cmd, FlagValues& fv, const std::string& key, const std::string& help) {
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    cmd->add_option_function<std::string>(
        flag, [&fv, key](const std::string& v) { fv.values[key] = v; }, help);
}

void add_switch(CLI::App* cmd, FlagValues& fv, const std::string& key, const std::string& help) {
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    cmd->add_flag_function(
        flag, [&fv, key](std::int64_t) { fv.values[key] = "true"; }, help);
}

void add_common(CLI::App* cmd, FlagValues& fv, std::string& config_path) {
    cmd->add_option("--config", config_path, "key=value config file; flags override it");
    add_flag(cmd, fv, "articles", "article corpus (.jsonl or .csv)");
    add_flag(cmd, fv, "format", "jsonl or csv (default: from extension)");
    add_flag(cmd, fv, "output_dir", "output directory (default: out)");
    add_flag(cmd, fv, "jobs", "worker threads");
    add_flag(cmd, fv, "window_days", "window length in days (default 14)");
    add_flag(cmd, fv, "min_window_docs", "ignore windows with fewer articles");
    add_switch(cmd, fv, "include_ambiguous", "keep equal-timestamp pairs");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"reprint: verbatim republishing detection and copy-network analysis"};
    app.require_subcommand(1);

    std::string config_path;
    FlagValues fv;
    std::string verbosity = "info";
    app.add_option("--log-level", verbosity, "debug, info, warn or error")
        ->check(CLI::IsMember({"debug", "info", "warn", "error"}));

    auto* detect = app.add_subcommand("detect", "find cross-source near-duplicate articles per window");
    add_common(detect, fv, config_path);
    add_flag(detect, fv, "similarity_threshold", "cosine similarity threshold (default 0.90)");
    add_flag(detect, fv, "min_body_tokens", "minimum body length in tokens (default 20)");
    add_flag(detect, fv, "top_k", "minimum prefix length for candidate generation (default 32)");

    auto* graph = app.add_subcommand("graph", "build republishing graphs, metrics and communities");
    add_common(graph, fv, config_path);
    add_flag(graph, fv, "pairs", "pairs.csv from detect (default: <output-dir>/pairs.csv)");
    add_flag(graph, fv, "labels", "source labels CSV");
    add_flag(graph, fv, "louvain_resolution", "modularity resolution (default 1.0)");
    add_flag(graph, fv, "louvain_seed", "node-order seed (default 42)");
    add_flag(graph, fv, "color_attribute", "node attribute used for DOT fill colors");
    add_flag(graph, fv, "title_change_threshold", "title distance counted as changed (default 0.10)");
    add_switch(graph, fv, "dedupe_origin", "count each copy cluster against its earliest article only");
    add_switch(graph, fv, "weighted_betweenness", "betweenness over inverse edge weights");

    auto* headlines = app.add_subcommand("headlines", "title-change analysis over matched pairs");
    add_common(headlines, fv, config_path);
    add_flag(headlines, fv, "pairs", "pairs.csv from detect (default: <output-dir>/pairs.csv)");
    add_flag(headlines, fv, "title_change_threshold", "title distance counted as changed (default 0.10)");
    add_flag(headlines, fv, "alpha", "significance level (default 0.05)");
    add_flag(headlines, fv, "stopwords", "stopword list (default: built-in English list)");
    add_flag(headlines, fv, "bias_lexicon", "bias word list");
    add_flag(headlines, fv, "positive_lexicon", "positive opinion word list");
    add_flag(headlines, fv, "negative_lexicon", "negative opinion word list");

    auto* report = app.add_subcommand("report", "combine upstream outputs into report.md");
    add_common(report, fv, config_path);

    reprint::app::FixtureOptions fixture_options;
    std::string fixture_dir;
    auto* fixture = app.add_subcommand("gen-fixture", "write a synthetic corpus with planted copies");
    fixture->add_option("--output-dir", fixture_dir, "destination directory")->required();
    fixture->add_option("--sources", fixture_options.sources, "number of sources");
    fixture->add_option("--articles-per-source", fixture_options.articles_per_source, "articles per source");
    fixture->add_option("--copies", fixture_options.copies, "planted cross-source copies");
    fixture->add_option("--changed-titles", fixture_options.changed_titles, "copies with a rewritten title");
    fixture->add_option("--seed", fixture_options.seed, "generator seed");
    fixture->add_option("--span-days", fixture_options.span_days, "days covered by the corpus");
    fixture->add_option("--window-days", fixture_options.window_days, "window length the copies must respect");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    static const std::map<std::string, reprint::log::Level> levels = {
        {"debug", reprint::log::Level::debug},
        {"info", reprint::log::Level::info},
        {"warn", reprint::log::Level::warn},
        {"error", reprint::log::Level::error}};
    reprint::log::set_min_level(levels.at(verbosity));

    try {
        if (fixture->parsed()) {
            auto planted = reprint::app::generate_fixture(fixture_options, fixture_dir);
            reprint::log::info("fixture_written",
                               {{"dir", fixture_dir}, {"planted_copies", std::to_string(planted.size())}});
            return kOk;
        }

        RunConfig cfg;
        if (!config_path.empty()) reprint::app::load_config_file(cfg, config_path);
        reprint::app::apply_config(cfg, fv.values);

        if (detect->parsed()) {
            reprint::app::cmd_detect(cfg);
        } else if (graph->parsed()) {
            reprint::app::cmd_graph(cfg);
        } else if (headlines->parsed()) {
            reprint::app::cmd_headlines(cfg);
        } else if (report->parsed()) {
            auto path = reprint::app::cmd_report(cfg);
            reprint::log::info("report_written", {{"path", path.string()}});
        }
        return kOk;
    } catch (const reprint::ConfigError& e) {
        reprint::log::error("config_error", {{"message", e.what()}});
        return kUsage;
    } catch (const reprint::DataError& e) {
        reprint::log::error("data_error", {{"message", e.what()}});
        return kData;
    } catch (const reprint::StatsError& e) {
        reprint::log::error("data_error", {{"message", e.what()}});
        return kData;
    } catch (const std::filesystem::filesystem_error& e) {
        reprint::log::error("data_error", {{"message", e.what()}});
        return kData;
    } catch (const std::exception& e) {
        reprint::log::error("internal_error", {{"message", e.what()}});
        return kInternal;
    }
}
