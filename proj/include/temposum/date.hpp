#pragma once

#include <compare>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "temposum/error.hpp"

namespace temposum {

/// Proleptic Gregorian calendar date. Small value type; validity is checked
/// at parse time, arithmetic goes through the day-number representation.
struct CivilDate {
    int year = 1970;
    int month = 1;  // 1..12
    int day = 1;    // 1..31

    auto operator<=>(const CivilDate&) const = default;
};

/// Days since 1970-01-01 (negative before). Howard Hinnant's algorithm.
inline long long day_number(const CivilDate& d) {
    long long y = d.year;
    const int m = d.month;
    y -= m <= 2;
    const long long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d.day - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long long>(doe) - 719468;
}

inline CivilDate date_from_day_number(long long z) {
    z += 719468;
    const long long era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const long long y = static_cast<long long>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return CivilDate{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

inline CivilDate add_days(const CivilDate& d, long long n) {
    return date_from_day_number(day_number(d) + n);
}

/// ISO weekday, Monday = 1 .. Sunday = 7.
inline int iso_weekday(const CivilDate& d) {
    const long long z = day_number(d);  // 1970-01-01 was a Thursday
    const long long dow = ((z % 7) + 7 + 3) % 7;  // 0 = Monday
    return static_cast<int>(dow) + 1;
}

inline const char* weekday_name(int iso) {
    static const char* names[] = {"Monday", "Tuesday", "Wednesday", "Thursday",
                                  "Friday", "Saturday", "Sunday"};
    if (iso < 1 || iso > 7) fail(ErrorCode::OutOfRange, "weekday index " + std::to_string(iso));
    return names[iso - 1];
}

/// "Mondays", "Tuesdays", ... as used in day-pattern sentences.
inline std::string weekday_plural(int iso) { return std::string(weekday_name(iso)) + "s"; }

inline std::string to_iso_string(const CivilDate& d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

inline bool valid_date(const CivilDate& d) {
    if (d.month < 1 || d.month > 12 || d.day < 1) return false;
    static const int len[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    int maxd = len[d.month - 1];
    const bool leap = (d.year % 4 == 0 && d.year % 100 != 0) || d.year % 400 == 0;
    if (d.month == 2 && leap) maxd = 29;
    return d.day <= maxd;
}

/// Parses "YYYY-MM-DD". Throws UnparseableValue on malformed or invalid dates.
inline CivilDate parse_iso_date(const std::string& s) {
    CivilDate d;
    char tail = 0;
    if (std::sscanf(s.c_str(), "%d-%d-%d%c", &d.year, &d.month, &d.day, &tail) != 3 ||
        !valid_date(d)) {
        fail(ErrorCode::UnparseableValue, "bad date '" + s + "' (expected YYYY-MM-DD)");
    }
    return d;
}

}  // namespace temposum
