#include "reprint/timestamp.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>

namespace reprint {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Reads exactly `width` digits at pos.
std::optional<int> read_fixed(std::string_view s, std::size_t& pos, std::size_t width) {
    if (pos + width > s.size()) return std::nullopt;
    int value = 0;
    for (std::size_t i = 0; i < width; ++i) {
        char c = s[pos + i];
        if (!is_digit(c)) return std::nullopt;
        value = value * 10 + (c - '0');
    }
    pos += width;
    return value;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::optional<EpochSeconds> parse_epoch(std::string_view s) {
    std::size_t start = (s.front() == '-' || s.front() == '+') ? 1 : 0;
    if (start == s.size()) return std::nullopt;
    for (std::size_t i = start; i < s.size(); ++i) {
        if (!is_digit(s[i])) return std::nullopt;
    }
    if (s.front() == '+') s.remove_prefix(1);
    EpochSeconds value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return value;
}

std::optional<EpochSeconds> parse_iso(std::string_view s) {
    using namespace std::chrono;
    std::size_t pos = 0;
    auto year = read_fixed(s, pos, 4);
    if (!year || pos >= s.size() || s[pos] != '-') return std::nullopt;
    ++pos;
    auto month = read_fixed(s, pos, 2);
    if (!month || pos >= s.size() || s[pos] != '-') return std::nullopt;
    ++pos;
    auto day = read_fixed(s, pos, 2);
    if (!day) return std::nullopt;

    year_month_day ymd{std::chrono::year{*year}, std::chrono::month{static_cast<unsigned>(*month)},
                       std::chrono::day{static_cast<unsigned>(*day)}};
    if (!ymd.ok()) return std::nullopt;
    EpochSeconds t = static_cast<EpochSeconds>(sys_days{ymd}.time_since_epoch().count()) * kSecondsPerDay;
    if (pos == s.size()) return t;

    if (s[pos] != 'T' && s[pos] != 't' && s[pos] != ' ') return std::nullopt;
    ++pos;
    auto hh = read_fixed(s, pos, 2);
    if (!hh || pos >= s.size() || s[pos] != ':') return std::nullopt;
    ++pos;
    auto mm = read_fixed(s, pos, 2);
    if (!mm) return std::nullopt;
    int ss = 0;
    if (pos < s.size() && s[pos] == ':') {
        ++pos;
        auto sec = read_fixed(s, pos, 2);
        if (!sec) return std::nullopt;
        ss = *sec;
        if (pos < s.size() && (s[pos] == '.' || s[pos] == ',')) {
            ++pos;
            std::size_t digits = 0;
            while (pos < s.size() && is_digit(s[pos])) {
                ++pos;
                ++digits;
            }
            if (digits == 0) return std::nullopt;
        }
    }
    if (*hh > 23 || *mm > 59 || ss > 60) return std::nullopt;
    t += *hh * 3600 + *mm * 60 + ss;

    if (pos == s.size()) return t;
    if ((s[pos] == 'Z' || s[pos] == 'z') && pos + 1 == s.size()) return t;
    if (s[pos] == '+' || s[pos] == '-') {
        int sign = s[pos] == '+' ? 1 : -1;
        ++pos;
        auto oh = read_fixed(s, pos, 2);
        if (!oh) return std::nullopt;
        int om = 0;
        if (pos < s.size()) {
            if (s[pos] == ':') ++pos;
            auto m = read_fixed(s, pos, 2);
            if (!m) return std::nullopt;
            om = *m;
        }
        if (pos != s.size() || *oh > 23 || om > 59) return std::nullopt;
        return t - sign * (*oh * 3600 + om * 60);
    }
    return std::nullopt;
}

}  // namespace

std::optional<EpochSeconds> parse_timestamp(std::string_view text) {
    auto s = trim(text);
    if (s.empty()) return std::nullopt;
    if (auto epoch = parse_epoch(s)) return epoch;
    return parse_iso(s);
}

EpochSeconds floor_to_day(EpochSeconds t) {
    EpochSeconds d = t / kSecondsPerDay;
    if (t % kSecondsPerDay < 0) --d;
    return d * kSecondsPerDay;
}

std::string format_utc(EpochSeconds t) {
    using namespace std::chrono;
    EpochSeconds day_start = floor_to_day(t);
    EpochSeconds secs = t - day_start;
    year_month_day ymd{sys_days{days{day_start / kSecondsPerDay}}};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<int>(secs / 3600), static_cast<int>(secs % 3600 / 60), static_cast<int>(secs % 60));
    return buf;
}

std::string utc_date(EpochSeconds t) { return format_utc(t).substr(0, 10); }

}  // namespace reprint
