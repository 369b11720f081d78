#pragma once

#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>

namespace reprint::log {

enum class Level { debug, info, warn, error };

using Field = std::pair<std::string_view, std::string>;

/// Writes one `level=... event=... key=value ...` line to stderr.
void emit(Level level, std::string_view event, std::initializer_list<Field> fields = {});

inline void info(std::string_view event, std::initializer_list<Field> fields = {}) {
    emit(Level::info, event, fields);
}
inline void warn(std::string_view event, std::initializer_list<Field> fields = {}) {
    emit(Level::warn, event, fields);
}
inline void error(std::string_view event, std::initializer_list<Field> fields = {}) {
    emit(Level::error, event, fields);
}

/// Messages below this level are dropped. Defaults to info.
void set_min_level(Level level);

}  // namespace reprint::log
