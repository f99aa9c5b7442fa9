#include "common/timeutil.hpp"

#include <cstdio>
#include <ctime>

namespace smarttrap {

std::string format_utc(UnixSeconds t) {
    std::time_t tt = static_cast<std::time_t>(t);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

std::optional<UnixSeconds> parse_utc(const std::string& text) {
    int year, mon, day, hour, min, sec;
    char z;
    if (std::sscanf(text.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%c", &year, &mon, &day, &hour, &min,
                    &sec, &z) != 7 ||
        z != 'Z' || text.size() != 20) {
        return std::nullopt;
    }
    if (mon < 1 || mon > 12 || day < 1 || day > 31 || hour > 23 || min > 59 || sec > 60 ||
        hour < 0 || min < 0 || sec < 0) {
        return std::nullopt;
    }
    std::tm tm{};
    tm.tm_year = year - 1900;
    tm.tm_mon = mon - 1;
    tm.tm_mday = day;
    tm.tm_hour = hour;
    tm.tm_min = min;
    tm.tm_sec = sec;
    std::tm check = tm;
    std::time_t tt = timegm(&tm);
    if (tt == static_cast<std::time_t>(-1)) return std::nullopt;
    // timegm normalizes out-of-range fields (e.g. Feb 30); treat that as invalid.
    if (tm.tm_mday != check.tm_mday || tm.tm_mon != check.tm_mon) return std::nullopt;
    return static_cast<UnixSeconds>(tt);
}

}  // namespace smarttrap
