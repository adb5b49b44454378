#include "ridet/time.hpp"

#include <cctype>
#include <cstdio>

#include "ridet/errors.hpp"

namespace ridet {

namespace {

int digits(std::string_view s, std::size_t pos, std::size_t count) {
    int value = 0;
    for (std::size_t i = pos; i < pos + count; ++i) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        if (!std::isdigit(c)) return -1;
        value = value * 10 + (c - '0');
    }
    return value;
}

}  // namespace

TimeStamp parse_timestamp(std::string_view text) {
    if (text.size() != 10) {
        throw ParseError("bad timestamp '" + std::string(text) + "': expected YYYYMMDDHH");
    }
    const int y = digits(text, 0, 4);
    const int mo = digits(text, 4, 2);
    const int d = digits(text, 6, 2);
    const int h = digits(text, 8, 2);
    if (y < 0 || mo < 0 || d < 0 || h < 0 || h > 23) {
        throw ParseError("bad timestamp '" + std::string(text) + "'");
    }
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{unsigned(mo)},
                                          std::chrono::day{unsigned(d)}};
    if (!ymd.ok()) {
        throw ParseError("bad calendar date in timestamp '" + std::string(text) + "'");
    }
    return std::chrono::sys_days{ymd} + std::chrono::hours{h};
}

std::string format_timestamp(TimeStamp ts) {
    const auto day = std::chrono::floor<std::chrono::days>(ts);
    const std::chrono::year_month_day ymd{day};
    const int hour = int(std::chrono::duration_cast<std::chrono::hours>(ts - day).count());
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d%02u%02u%02d", int(ymd.year()), unsigned(ymd.month()),
                  unsigned(ymd.day()), hour);
    return buf;
}

int year_of(TimeStamp ts) {
    const std::chrono::year_month_day ymd{std::chrono::floor<std::chrono::days>(ts)};
    return int(ymd.year());
}

int month_of(TimeStamp ts) {
    const std::chrono::year_month_day ymd{std::chrono::floor<std::chrono::days>(ts)};
    return int(unsigned(ymd.month()));
}

int season_year(TimeStamp ts) {
    const int m = month_of(ts);
    const int y = year_of(ts);
    return m >= 7 ? y : y - 1;
}

}  // namespace ridet
