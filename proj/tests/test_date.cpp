#include <catch2/catch_amalgamated.hpp>

#include "temposum/date.hpp"

using namespace temposum;

TEST_CASE("day numbers round-trip and order") {
    const CivilDate epoch{1970, 1, 1};
    CHECK(day_number(epoch) == 0);
    CHECK(date_from_day_number(0) == epoch);

    CivilDate d{2024, 2, 29};
    CHECK(valid_date(d));
    CHECK(date_from_day_number(day_number(d)) == d);
    CHECK(day_number(add_days(d, 1)) == day_number(d) + 1);
    CHECK(add_days(d, 1) == CivilDate{2024, 3, 1});

    // round-trip across a few decades of consecutive days
    long long z = day_number(CivilDate{1999, 12, 20});
    for (int i = 0; i < 4000; ++i, ++z) {
        const CivilDate c = date_from_day_number(z);
        REQUIRE(day_number(c) == z);
        REQUIRE(valid_date(c));
    }
}

TEST_CASE("weekdays match known anchors") {
    CHECK(iso_weekday(CivilDate{1970, 1, 1}) == 4);   // Thursday
    CHECK(iso_weekday(CivilDate{2024, 1, 1}) == 1);   // Monday
    CHECK(iso_weekday(CivilDate{2026, 8, 23}) == 7);  // Sunday
    CHECK(std::string(weekday_name(1)) == "Monday");
    CHECK(weekday_plural(7) == "Sundays");
}

TEST_CASE("ISO parsing accepts valid dates and rejects garbage") {
    CHECK(parse_iso_date("2024-01-31") == CivilDate{2024, 1, 31});
    CHECK(to_iso_string(CivilDate{2024, 1, 31}) == "2024-01-31");
    CHECK_THROWS_AS(parse_iso_date("2023-02-29"), Error);
    CHECK_THROWS_AS(parse_iso_date("2023-13-01"), Error);
    CHECK_THROWS_AS(parse_iso_date("yesterday"), Error);
    CHECK_THROWS_AS(parse_iso_date("2023-01-01x"), Error);
}
