#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "temposum/ingest.hpp"

using namespace temposum;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("temposum_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    fs::path file(const std::string& name, const std::string& content) const {
        const fs::path p = path / name;
        std::ofstream out(p);
        out << content;
        return p;
    }
};

}  // namespace

TEST_CASE("CSV loading with ISO dates") {
    TempDir tmp;
    const auto p = tmp.file("u1.csv",
                            "date,calories,carbs\n"
                            "2024-01-01,2000,210\n"
                            "2024-01-02,1800,\n"
                            "2024-01-04,2200,230\n");
    const Dataset ds = load_csv(p, "date", {"calories", "carbs"});
    CHECK(ds.user_id == "u1");
    REQUIRE(ds.series.size() == 2);
    CHECK(ds.series[0].points.size() == 3);
    CHECK(ds.series[1].points.size() == 2);  // empty cell skipped
    CHECK(ds.series[0].points[1].value == 1800.0);
    CHECK(ds.series[1].points[1].date == CivilDate{2024, 1, 4});
    ds.series[0].validate();
    ds.series[1].validate();
}

TEST_CASE("integer day indices map onto consecutive calendar days") {
    TempDir tmp;
    const auto p = tmp.file("u2.csv",
                            "Day,Calories\n"
                            "1,2000\n"
                            "2,1900\n"
                            "9,2100\n");
    const Dataset ds = load_csv(p, "Day", {"Calories"});
    const auto& pts = ds.series[0].points;
    REQUIRE(pts.size() == 3);
    CHECK(pts[0].date == default_epoch());
    CHECK(iso_weekday(pts[0].date) == 1);  // index 1 is a Monday
    CHECK(day_number(pts[1].date) == day_number(pts[0].date) + 1);
    CHECK(day_number(pts[2].date) == day_number(pts[0].date) + 8);
}

TEST_CASE("loader errors carry their cause") {
    TempDir tmp;
    CHECK_THROWS_MATCHES(load_csv(tmp.path / "nope.csv", "date", {"x"}), Error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::StartsWith("IoError")));

    const auto missing = tmp.file("a.csv", "date,x\n2024-01-01,1\n");
    CHECK_THROWS_MATCHES(load_csv(missing, "date", {"y"}), Error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::StartsWith("MissingColumn")));

    const auto bad_value = tmp.file("b.csv", "date,x\n2024-01-01,1\n2024-01-02,oops\n");
    CHECK_THROWS_MATCHES(load_csv(bad_value, "date", {"x"}), Error,
                         Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring(
                             "row 3")));

    const auto out_of_order = tmp.file("c.csv", "date,x\n2024-01-02,1\n2024-01-01,2\n");
    CHECK_THROWS_MATCHES(load_csv(out_of_order, "date", {"x"}), Error,
                         Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring(
                             "strictly increasing")));

    const auto never_logged = tmp.file("d.csv", "date,x,y\n2024-01-01,1,\n");
    CHECK_THROWS_MATCHES(load_csv(never_logged, "date", {"x", "y"}), Error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::StartsWith("EmptySeries")));
}

TEST_CASE("cohort loading sorts, filters, and reports exclusions") {
    TempDir tmp;
    tmp.file("bob.csv", "date,x\n2024-01-01,1\n2024-01-02,2\n2024-01-03,3\n");
    tmp.file("alice.csv", "date,x\n2024-01-01,4\n2024-01-02,5\n");
    tmp.file("carol.csv", "date,x\n2024-01-01,6\n");
    tmp.file("notes.txt", "not a csv");

    const CohortLoad all = load_cohort(tmp.path, "*.csv", "date", {"x"});
    REQUIRE(all.users.size() == 3);
    CHECK(all.users[0].user_id == "alice");
    CHECK(all.users[1].user_id == "bob");
    CHECK(all.users[2].user_id == "carol");

    const CohortLoad filtered = load_cohort(tmp.path, "*.csv", "date", {"x"}, 2);
    REQUIRE(filtered.users.size() == 2);
    REQUIRE(filtered.excluded == std::vector<std::string>{"carol"});

    CHECK_THROWS_MATCHES(load_cohort(tmp.path, "*.tsv", "date", {"x"}), Error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::StartsWith("EmptyCohort")));
}

TEST_CASE("glob matching handles the single-star forms") {
    CHECK(glob_match("*.csv", "u1.csv"));
    CHECK(glob_match("user_*.csv", "user_12.csv"));
    CHECK(!glob_match("user_*.csv", "admin_12.csv"));
    CHECK(glob_match("exact.csv", "exact.csv"));
    CHECK(!glob_match("*.csv", "u1.tsv"));
}
