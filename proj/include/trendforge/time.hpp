#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace trendforge {

// Instants are UTC milliseconds since the Unix epoch. Reports render them
// through a display offset (minutes east of UTC, default +05:30).
using TimeMs = int64_t;

constexpr int kDefaultDisplayOffsetMin = 330;
constexpr TimeMs kMsPerMinute = 60'000;
constexpr TimeMs kMsPerHour = 3'600'000;
constexpr TimeMs kMsPerDay = 86'400'000;

struct CivilDateTime {
    int year = 1970;
    int month = 1;  // 1..12
    int day = 1;    // 1..31
    int hour = 0;
    int minute = 0;
    int second = 0;
    int millisecond = 0;
};

int64_t days_from_civil(int year, int month, int day);
void civil_from_days(int64_t days, int& year, int& month, int& day);
bool valid_civil_date(int year, int month, int day);

// Composes a civil wall-clock time observed at the given UTC offset.
TimeMs compose_utc(const CivilDateTime& civil, int offset_minutes);
CivilDateTime civil_at_offset(TimeMs utc_ms, int offset_minutes);

// Accepts "YYYY-MM-DDTHH:MM:SS[.fff...][Z|±HH:MM]". Fractions beyond
// milliseconds are truncated.
std::optional<TimeMs> parse_rfc3339(std::string_view text);

// Milliseconds are emitted only when nonzero, so second-precision values
// round-trip byte-identically.
std::string format_rfc3339(TimeMs utc_ms, int offset_minutes = 0);

// "YYYY-MM" of the instant as seen at the display offset.
std::string format_year_month(TimeMs utc_ms, int offset_minutes);

// Day ordinal (days since epoch) of the instant as seen at the display offset.
int64_t local_day_index(TimeMs utc_ms, int offset_minutes);

}  // namespace trendforge
