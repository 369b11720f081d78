#pragma once

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "reprint/corpus.hpp"

namespace reprint::testing {

/// Scratch directory removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("reprint_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline Article make_article(std::string source, std::string id, EpochSeconds published, std::string body,
                            std::string title = "") {
    Article a;
    a.source = std::move(source);
    a.id = std::move(id);
    a.published_utc = published;
    a.body = std::move(body);
    a.title = std::move(title);
    return a;
}

/// Space-separated words drawn uniformly from a synthetic vocabulary of `vocab` terms.
inline std::string random_text(std::mt19937_64& rng, std::size_t words, std::size_t vocab) {
    std::string s;
    for (std::size_t i = 0; i < words; ++i) {
        if (i) s += ' ';
        s += "w" + std::to_string(rng() % vocab);
    }
    return s;
}

inline constexpr EpochSeconds kApril7 = 1491523200;  // 2017-04-07T00:00:00Z

}  // namespace reprint::testing
