#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "temposum/date.hpp"
#include "temposum/error.hpp"

namespace temposum {

struct DataPoint {
    CivilDate date;
    double value = 0.0;
};

/// One logged attribute over time. Dates are strictly increasing; gaps are
/// allowed and treated as unlogged days.
struct TimeSeries {
    std::string attribute;            // column name, e.g. "calorie intake"
    std::string display;              // name used in sentences; defaults to attribute
    std::vector<DataPoint> points;

    std::size_t size() const { return points.size(); }

    const std::string& shown_as() const { return display.empty() ? attribute : display; }

    void validate() const {
        if (points.empty()) fail(ErrorCode::EmptySeries, "attribute '" + attribute + "'");
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (!std::isfinite(points[i].value))
                fail(ErrorCode::UnparseableValue,
                     "non-finite value in '" + attribute + "' at " + to_iso_string(points[i].date));
            if (i > 0 && !(day_number(points[i - 1].date) < day_number(points[i].date)))
                fail(ErrorCode::UnparseableValue,
                     "dates not strictly increasing in '" + attribute + "' at " +
                         to_iso_string(points[i].date));
        }
    }
};

/// A user's aligned collection of series (same date column, one series per
/// requested attribute).
struct Dataset {
    std::string user_id;
    std::vector<TimeSeries> series;

    const TimeSeries& by_attribute(const std::string& name) const {
        for (const auto& s : series)
            if (s.attribute == name) return s;
        fail(ErrorCode::MissingColumn, "attribute '" + name + "'");
    }
};

enum class GranularityKind { Day, Week, Month, FullRange };

/// Reporting granularity. `tw_len` is the number of logged entries that make
/// one full time window; FullRange has no windows at all.
struct Granularity {
    GranularityKind kind = GranularityKind::Week;
    int tw_len = 7;

    bool windowed() const { return kind != GranularityKind::FullRange; }

    /// Noun used in sentences for the window ("week") and for one step ("day").
    const char* window_noun() const {
        switch (kind) {
            case GranularityKind::Day: return "day";
            case GranularityKind::Week: return "week";
            case GranularityKind::Month: return "month";
            case GranularityKind::FullRange: return "time frame";
        }
        return "week";
    }
    const char* step_noun() const { return "day"; }

    static Granularity day() { return {GranularityKind::Day, 1}; }
    static Granularity week(int len = 7) { return {GranularityKind::Week, len}; }
    static Granularity month(int len = 30) { return {GranularityKind::Month, len}; }
    static Granularity full_range() { return {GranularityKind::FullRange, 0}; }
};

/// A per-attribute target, e.g. calorie intake at most 2000 ("low"), or heart
/// rate within [60, 110) ("within range"). `label` is the phrase used after
/// "keep your <attribute> ...".
struct Goal {
    enum class Comparator { AtMost, AtLeast, WithinRange };

    std::string attribute;
    Comparator comparator = Comparator::AtMost;
    double lo = 0.0;  // WithinRange lower bound; unused for AtMost
    double hi = 0.0;  // AtMost / WithinRange upper bound; unused for AtLeast
    std::string label;

    bool satisfied(double v) const {
        switch (comparator) {
            case Comparator::AtMost: return v <= hi;
            case Comparator::AtLeast: return v >= lo;
            case Comparator::WithinRange: return v >= lo && v <= hi;
        }
        return false;
    }
};

/// A recommended band per attribute plus the name of the guideline it came
/// from ("2000-calorie diet"). Values below lo suggest an increase, above hi
/// a decrease.
struct DietGuideline {
    std::string name;
    std::map<std::string, std::pair<double, double>> ranges;  // attribute -> [lo, hi]
};

/// Everything that parameterizes one summarization run.
struct RunConfig {
    int alphabet_size = 5;
    Granularity granularity = Granularity::week();
    double min_support = 0.2;
    double min_confidence = 0.8;
    double squeezer_sample_fraction = 0.2;
    unsigned rng_seed = 42;

    std::vector<Goal> goals;
    std::optional<DietGuideline> guideline;

    /// Day patterns and trend summaries are emitted when the winning truth
    /// reaches this value even if the quantifier implies a small amount.
    double emission_threshold = 0.7;
    /// Equal-value tolerance when classifying day-to-day trend direction.
    double trend_epsilon = 0.0;
    /// Relative change below which two window means count as "about the same".
    double comparison_epsilon = 0.05;
    /// Longest mined sequence pattern (prefix plus suffix), in days.
    int max_pattern_len = 4;
    /// Require window days to be consecutive calendar dates, not merely
    /// consecutive logged entries.
    bool strict_calendar = false;
    /// Multivariate sequence rules constrain every attribute in the prefix
    /// (joint tokens) instead of a single attribute.
    bool joint_prefix_rules = false;

    void validate() const {
        if (alphabet_size < 2 || alphabet_size > 26)
            fail(ErrorCode::BadConfig, "alphabet size must be in [2, 26]");
        if (!(min_support > 0.0 && min_support <= 1.0))
            fail(ErrorCode::BadConfig, "min support must be in (0, 1]");
        if (!(min_confidence > 0.0 && min_confidence <= 1.0))
            fail(ErrorCode::BadConfig, "min confidence must be in (0, 1]");
        if (!(squeezer_sample_fraction > 0.0 && squeezer_sample_fraction <= 1.0))
            fail(ErrorCode::BadConfig, "sample fraction must be in (0, 1]");
        if (granularity.windowed() && granularity.tw_len < 1)
            fail(ErrorCode::BadConfig, "window length must be positive");
        if (comparison_epsilon < 0.0)
            fail(ErrorCode::BadConfig, "comparison epsilon must be non-negative");
        if (max_pattern_len < 2)
            fail(ErrorCode::BadConfig, "max pattern length must be at least 2");
    }

    const Goal* goal_for(const std::string& attribute) const {
        for (const auto& g : goals)
            if (g.attribute == attribute) return &g;
        return nullptr;
    }
};

}  // namespace temposum
