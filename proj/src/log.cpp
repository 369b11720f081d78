#include "reprint/log.hpp"

#include <atomic>
#include <iostream>
#include <mutex>
#include <sstream>

namespace reprint::log {

namespace {

std::atomic<Level> g_min_level{Level::info};
std::mutex g_mutex;

const char* level_name(Level level) {
    switch (level) {
        case Level::debug: return "debug";
        case Level::info: return "info";
        case Level::warn: return "warn";
        case Level::error: return "error";
    }
    return "info";
}

bool needs_quotes(std::string_view v) {
    if (v.empty()) return true;
    for (char c : v) {
        if (c == ' ' || c == '"' || c == '=' || c == '\t' || c == '\n') return true;
    }
    return false;
}

void append_value(std::ostringstream& os, std::string_view v) {
    if (!needs_quotes(v)) {
        os << v;
        return;
    }
    os << '"';
    for (char c : v) {
        if (c == '"' || c == '\\') os << '\\';
        if (c == '\n') {
            os << "\\n";
            continue;
        }
        os << c;
    }
    os << '"';
}

}  // namespace

void set_min_level(Level level) { g_min_level.store(level); }

void emit(Level level, std::string_view event, std::initializer_list<Field> fields) {
    if (static_cast<int>(level) < static_cast<int>(g_min_level.load())) return;
    std::ostringstream os;
    os << "level=" << level_name(level) << " event=" << event;
    for (const auto& [key, value] : fields) {
        os << ' ' << key << '=';
        append_value(os, value);
    }
    os << '\n';
    std::lock_guard lock(g_mutex);
    std::cerr << os.str();
}

}  // namespace reprint::log
