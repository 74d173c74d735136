#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "temposum/provenance.hpp"

using namespace temposum;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("temposum_prov_" + std::to_string(::getpid()) + "_" +
                std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Real discretization end to end, so chart bands face the same de-normalized
/// edges the letters came from.
struct Bench {
    RunConfig config;
    Vocabulary vocab = default_health_vocabulary();
    TemplateRegistry templates = TemplateRegistry::defaults();
    std::vector<std::unique_ptr<TimeSeries>> owned;
    SummaryContext ctx;

    explicit Bench(Granularity g = Granularity::week()) {
        config.granularity = g;
        ctx.config = &config;
        ctx.vocab = &vocab;
        ctx.templates = &templates;
    }

    void add(const std::string& column, const std::vector<double>& values,
             CivilDate start = {2024, 1, 1}) {
        auto ts = std::make_unique<TimeSeries>();
        ts->attribute = column;
        ts->display = column;
        CivilDate d = start;
        for (double v : values) {
            ts->points.push_back({d, v});
            d = add_days(d, 1);
        }
        AttributeContext a;
        a.column = column;
        a.display = column;
        a.series = ts.get();
        a.labels = vocab.evaluation_labels(column, 5);
        a.disc = symbolize(*ts, config.granularity, sax_scheme(5, a.labels));
        owned.push_back(std::move(ts));
        ctx.attrs.push_back(std::move(a));
    }

    void add_dated(const std::string& column,
                   const std::vector<std::pair<CivilDate, double>>& entries) {
        auto ts = std::make_unique<TimeSeries>();
        ts->attribute = column;
        ts->display = column;
        for (const auto& [d, v] : entries) ts->points.push_back({d, v});
        AttributeContext a;
        a.column = column;
        a.display = column;
        a.series = ts.get();
        a.labels = vocab.evaluation_labels(column, 5);
        a.disc = symbolize(*ts, config.granularity, sax_scheme(5, a.labels));
        owned.push_back(std::move(ts));
        ctx.attrs.push_back(std::move(a));
    }

    AttrSel all() const {
        AttrSel sel;
        for (const auto& a : ctx.attrs) sel.push_back(&a);
        return sel;
    }
};

std::vector<double> two_level_fortnight() {
    std::vector<double> v;
    for (int i = 0; i < 7; ++i) v.push_back(100.0 + i);
    for (int i = 0; i < 7; ++i) v.push_back(140.0 + i);
    return v;
}

}  // namespace

TEST_CASE("whole-window chart carries bands, focus window, and window means") {
    Bench b;
    b.add("calorie intake", two_level_fortnight());
    const auto s = gen_eval_tw(b.ctx, b.all());
    REQUIRE(s.has_value());
    const ChartSpec spec = chart_for(*s, b.ctx);

    CHECK(spec.title == s->text);
    CHECK(spec.x_unit == "day");
    CHECK(spec.x_count == 14);
    REQUIRE(spec.series.size() == 1);
    REQUIRE(spec.series[0].points.size() == 14);
    CHECK(spec.series[0].points[0] == std::pair<double, double>{0.0, 100.0});
    CHECK(spec.series[0].points[13] == std::pair<double, double>{13.0, 146.0});

    REQUIRE(spec.bands.size() == 5);
    const auto& edges = b.ctx.attrs[0].disc.days.raw_band_edges;
    REQUIRE(edges.size() == 4);
    for (std::size_t k = 0; k + 1 < spec.bands.size(); ++k) {
        CHECK(spec.bands[k].y_hi == spec.bands[k + 1].y_lo);
        CHECK(spec.bands[k].y_hi == Catch::Approx(edges[k]).margin(1e-6));
    }
    int winning = 0;
    for (const auto& band : spec.bands)
        if (band.role == "winning") {
            ++winning;
            CHECK(band.label == s->summarizers[0]);
        }
    CHECK(winning == 1);

    REQUIRE(spec.windows.size() == 1);
    CHECK(spec.windows[0].role == "focus");
    CHECK(spec.windows[0].x_lo == 7.0);
    CHECK(spec.windows[0].x_hi == 13.0);

    REQUIRE(spec.segments.size() == 2);
    CHECK(spec.segments[0].role == "window_mean");
    CHECK(spec.segments[0].y == 103.0);
    CHECK(spec.segments[1].x_lo == 7.0);
    CHECK(spec.segments[1].y == 143.0);
    CHECK(spec.highlighted_points.empty());
    CHECK(spec.goal_lines.empty());
}

TEST_CASE("subwindow chart highlights the matched days") {
    Bench b;
    b.add("calorie intake", two_level_fortnight());
    const auto s = gen_eval_stw(b.ctx, b.all());
    REQUIRE(s.has_value());
    // Day 7 sits just under the top breakpoint, the other six days above it.
    CHECK(s->text == "On most of the days in the past week, your calorie intake has been very high.");
    const ChartSpec spec = chart_for(*s, b.ctx);
    CHECK(spec.highlighted_points == std::vector<std::size_t>{8, 9, 10, 11, 12, 13});
    REQUIRE(spec.windows.size() == 1);
    CHECK(spec.windows[0].role == "focus");
    CHECK(spec.segments.empty());
}

TEST_CASE("goal evaluation chart draws the goal line") {
    Bench b;
    b.add("calorie intake", two_level_fortnight());
    Goal g;
    g.attribute = "calorie intake";
    g.comparator = Goal::Comparator::AtMost;
    g.hi = 120.0;
    g.label = "under 120";
    b.config.goals.push_back(g);
    const auto s = gen_goal_eval(b.ctx, b.all());
    REQUIRE(s.has_value());
    const ChartSpec spec = chart_for(*s, b.ctx);
    REQUIRE(spec.goal_lines.size() == 1);
    CHECK(spec.goal_lines[0] == GoalLine{120.0, "under 120"});
    CHECK(spec.highlighted_points == std::vector<std::size_t>{7, 8, 9, 10, 11, 12, 13});
}

TEST_CASE("comparison chart shades both windows") {
    Bench b;
    b.add("calorie intake", two_level_fortnight());
    const auto s = gen_comparison(b.ctx, b.all());
    REQUIRE(s.has_value());
    const ChartSpec spec = chart_for(*s, b.ctx);
    REQUIRE(spec.windows.size() == 2);
    CHECK(spec.windows[0].role == "focus");
    CHECK(spec.windows[1].role == "comparison");
    CHECK(spec.windows[1].x_lo == 0.0);
    CHECK(spec.windows[1].x_hi == 6.0);
    CHECK(spec.segments.size() == 2);
}

TEST_CASE("day-based chart draws one segment per matching day") {
    Bench b;
    std::vector<double> v;
    for (int i = 0; i < 14; ++i) v.push_back(100.0 + 5.0 * (i % 7));
    b.add("calorie intake", v);
    const auto out = gen_day_based(b.ctx, b.all());
    REQUIRE(out.size() == 7);  // every weekday repeats its class exactly
    const ChartSpec spec = chart_for(out[0], b.ctx);
    CHECK(spec.highlighted_points == std::vector<std::size_t>{0, 7});
    REQUIRE(spec.segments.size() == 2);
    CHECK(spec.segments[0].role == "weekday");
    CHECK(spec.segments[0].x_lo == 0.0);
    CHECK(spec.segments[0].x_hi == 0.0);
    CHECK(spec.segments[0].y == 100.0);
    CHECK(spec.segments[1].x_lo == 7.0);
}

TEST_CASE("rule charts mark the days where the pattern fired") {
    Bench b;
    b.config.min_confidence = 0.6;
    b.add_dated("calorie intake", {{{2024, 1, 6}, 140.0},
                                   {{2024, 1, 7}, 140.0},
                                   {{2024, 1, 13}, 140.0},
                                   {{2024, 1, 14}, 100.0},
                                   {{2024, 1, 20}, 140.0},
                                   {{2024, 1, 21}, 140.0}});
    const auto out = gen_day_if_then(b.ctx, b.all());
    REQUIRE(out.size() == 1);
    // The Saturday-to-Sunday rule held twice; the middle weekend broke it.
    CHECK(out[0].hints.highlight_days == std::vector<std::size_t>{0, 1, 4, 5});
    const ChartSpec spec = chart_for(out[0], b.ctx);
    CHECK(spec.highlighted_points == std::vector<std::size_t>{0, 1, 4, 5});
}

TEST_CASE("sequence-rule summaries record their occurrences") {
    Bench b{Granularity::week(2)};
    std::vector<double> v;
    for (int i = 0; i < 8; ++i) v.push_back(i % 2 ? 110.0 : 100.0);
    b.add("calorie intake", v);
    const auto out = gen_if_then(b.ctx, b.all());
    REQUIRE_FALSE(out.empty());
    // The alternation makes every rule's occurrences blanket the whole run.
    CHECK(out[0].hints.highlight_days ==
          std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6, 7});
}

TEST_CASE("chart files round-trip and are byte stable") {
    Bench b;
    b.add("calorie intake", two_level_fortnight());
    const auto s = gen_eval_tw(b.ctx, b.all());
    REQUIRE(s.has_value());
    const ChartSpec spec = chart_for(*s, b.ctx);

    TempDir tmp;
    const fs::path nested = tmp.path / "charts" / "deep" / "spec.json";
    write_chart(spec, nested);  // creates the directories
    REQUIRE(fs::exists(nested));
    const ChartSpec parsed = read_chart(nested);
    CHECK(parsed == spec);

    const fs::path again = tmp.path / "again.json";
    write_chart(spec, again);
    CHECK(slurp(nested) == slurp(again));

    ChartSpec empty;
    empty.title = "nothing to see";
    const fs::path ep = tmp.path / "empty.json";
    write_chart(empty, ep);
    const ChartSpec eparsed = read_chart(ep);
    CHECK(eparsed == empty);
    CHECK(slurp(ep).find("\"series\": []") != std::string::npos);

    CHECK_THROWS_AS(read_chart(tmp.path / "missing.json"), Error);
}

TEST_CASE("chart validation rejects stray points and overlapping bands") {
    ChartSpec spec;
    spec.x_count = 5;
    ChartSeries cs;
    cs.attribute = "x";
    for (int i = 0; i < 5; ++i) cs.points.emplace_back(i, 1.0);
    spec.series.push_back(cs);
    spec.highlighted_points = {4};
    spec.bands.push_back({"a", 0.0, 1.0, "plain"});
    spec.bands.push_back({"b", 1.0, 2.0, "plain"});
    CHECK_NOTHROW(spec.validate());

    ChartSpec bad_point = spec;
    bad_point.highlighted_points = {5};
    CHECK_THROWS_AS(bad_point.validate(), Error);

    ChartSpec gap = spec;
    gap.bands[1].y_lo = 1.5;
    CHECK_THROWS_AS(gap.validate(), Error);

    ChartSpec overlap = spec;
    overlap.bands[1].y_lo = 0.5;
    CHECK_THROWS_AS(overlap.validate(), Error);
}

TEST_CASE("svg rendering is deterministic and self-contained") {
    Bench b;
    b.add("calorie intake", two_level_fortnight());
    const auto s = gen_eval_stw(b.ctx, b.all());
    REQUIRE(s.has_value());
    const ChartSpec spec = chart_for(*s, b.ctx);
    const std::string svg = chart_svg(spec);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("polyline") != std::string::npos);
    CHECK(svg.find("circle") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);

    TempDir tmp;
    write_chart_svg(spec, tmp.path / "a.svg");
    write_chart_svg(spec, tmp.path / "b.svg");
    CHECK(slurp(tmp.path / "a.svg") == slurp(tmp.path / "b.svg"));
    CHECK(slurp(tmp.path / "a.svg") == svg);
}
