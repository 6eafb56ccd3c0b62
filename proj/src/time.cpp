#include "trendforge/time.hpp"

#include <array>
#include <cstdio>
#include <cstdlib>

namespace trendforge {

namespace {

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
    static constexpr std::array<int, 12> lens = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return lens[m - 1];
}

// Parses exactly `width` ASCII digits starting at pos; advances pos.
bool take_digits(std::string_view s, size_t& pos, int width, int& out) {
    if (pos + width > s.size()) return false;
    int v = 0;
    for (int i = 0; i < width; ++i) {
        char c = s[pos + i];
        if (c < '0' || c > '9') return false;
        v = v * 10 + (c - '0');
    }
    pos += width;
    out = v;
    return true;
}

}  // namespace

// Howard Hinnant's civil date algorithms.
int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<int64_t>(doe) - 719468;
}

void civil_from_days(int64_t z, int& year, int& month, int& day) {
    z += 719468;
    const int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const int64_t y = static_cast<int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    day = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    month = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    year = static_cast<int>(y + (month <= 2));
}

bool valid_civil_date(int year, int month, int day) {
    if (month < 1 || month > 12) return false;
    if (day < 1 || day > days_in_month(year, month)) return false;
    return true;
}

TimeMs compose_utc(const CivilDateTime& c, int offset_minutes) {
    TimeMs ms = days_from_civil(c.year, c.month, c.day) * kMsPerDay;
    ms += c.hour * kMsPerHour + c.minute * kMsPerMinute + c.second * 1000LL + c.millisecond;
    return ms - static_cast<TimeMs>(offset_minutes) * kMsPerMinute;
}

CivilDateTime civil_at_offset(TimeMs utc_ms, int offset_minutes) {
    TimeMs local = utc_ms + static_cast<TimeMs>(offset_minutes) * kMsPerMinute;
    int64_t days = local / kMsPerDay;
    TimeMs rem = local % kMsPerDay;
    if (rem < 0) {
        rem += kMsPerDay;
        days -= 1;
    }
    CivilDateTime out;
    civil_from_days(days, out.year, out.month, out.day);
    out.hour = static_cast<int>(rem / kMsPerHour);
    rem %= kMsPerHour;
    out.minute = static_cast<int>(rem / kMsPerMinute);
    rem %= kMsPerMinute;
    out.second = static_cast<int>(rem / 1000);
    out.millisecond = static_cast<int>(rem % 1000);
    return out;
}

std::optional<TimeMs> parse_rfc3339(std::string_view s) {
    size_t pos = 0;
    CivilDateTime c;
    if (!take_digits(s, pos, 4, c.year)) return std::nullopt;
    if (pos >= s.size() || s[pos] != '-') return std::nullopt;
    ++pos;
    if (!take_digits(s, pos, 2, c.month)) return std::nullopt;
    if (pos >= s.size() || s[pos] != '-') return std::nullopt;
    ++pos;
    if (!take_digits(s, pos, 2, c.day)) return std::nullopt;
    if (!valid_civil_date(c.year, c.month, c.day)) return std::nullopt;
    if (pos >= s.size() || (s[pos] != 'T' && s[pos] != 't' && s[pos] != ' ')) return std::nullopt;
    ++pos;
    if (!take_digits(s, pos, 2, c.hour)) return std::nullopt;
    if (pos >= s.size() || s[pos] != ':') return std::nullopt;
    ++pos;
    if (!take_digits(s, pos, 2, c.minute)) return std::nullopt;
    if (pos >= s.size() || s[pos] != ':') return std::nullopt;
    ++pos;
    if (!take_digits(s, pos, 2, c.second)) return std::nullopt;
    if (c.hour > 23 || c.minute > 59 || c.second > 60) return std::nullopt;
    if (c.second == 60) c.second = 59;  // fold leap seconds

    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        int scale = 100;
        int frac = 0;
        size_t ndigits = 0;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
            if (ndigits < 3) frac += (s[pos] - '0') * scale;
            scale /= 10;
            ++ndigits;
            ++pos;
        }
        if (ndigits == 0) return std::nullopt;
        c.millisecond = frac;
    }

    int offset_minutes = 0;
    if (pos >= s.size()) return std::nullopt;
    char z = s[pos];
    if (z == 'Z' || z == 'z') {
        ++pos;
    } else if (z == '+' || z == '-') {
        ++pos;
        int oh = 0, om = 0;
        if (!take_digits(s, pos, 2, oh)) return std::nullopt;
        if (pos >= s.size() || s[pos] != ':') return std::nullopt;
        ++pos;
        if (!take_digits(s, pos, 2, om)) return std::nullopt;
        if (oh > 23 || om > 59) return std::nullopt;
        offset_minutes = oh * 60 + om;
        if (z == '-') offset_minutes = -offset_minutes;
    } else {
        return std::nullopt;
    }
    if (pos != s.size()) return std::nullopt;
    return compose_utc(c, offset_minutes);
}

std::string format_rfc3339(TimeMs utc_ms, int offset_minutes) {
    CivilDateTime c = civil_at_offset(utc_ms, offset_minutes);
    char buf[48];
    int n;
    if (c.millisecond != 0) {
        n = std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03d", c.year, c.month,
                          c.day, c.hour, c.minute, c.second, c.millisecond);
    } else {
        n = std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d", c.year, c.month, c.day,
                          c.hour, c.minute, c.second);
    }
    std::string out(buf, static_cast<size_t>(n));
    if (offset_minutes == 0) {
        out += 'Z';
    } else {
        int om = offset_minutes;
        char sign = '+';
        if (om < 0) {
            sign = '-';
            om = -om;
        }
        n = std::snprintf(buf, sizeof buf, "%c%02d:%02d", sign, om / 60, om % 60);
        out.append(buf, static_cast<size_t>(n));
    }
    return out;
}

std::string format_year_month(TimeMs utc_ms, int offset_minutes) {
    CivilDateTime c = civil_at_offset(utc_ms, offset_minutes);
    char buf[16];
    int n = std::snprintf(buf, sizeof buf, "%04d-%02d", c.year, c.month);
    return std::string(buf, static_cast<size_t>(n));
}

int64_t local_day_index(TimeMs utc_ms, int offset_minutes) {
    TimeMs local = utc_ms + static_cast<TimeMs>(offset_minutes) * kMsPerMinute;
    int64_t days = local / kMsPerDay;
    if (local % kMsPerDay < 0) days -= 1;
    return days;
}

}  // namespace trendforge
