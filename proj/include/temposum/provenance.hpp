#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "temposum/error.hpp"
#include "temposum/protoforms.hpp"

namespace temposum {

/// One horizontal value band on the chart, derived from the bin edges that
/// produced the summary's letters.
struct ChartBand {
    std::string label;
    double y_lo = 0.0;
    double y_hi = 0.0;
    std::string role;  // "plain" or "winning"
    bool operator==(const ChartBand&) const = default;
};

/// A shaded x-span marking a time window.
struct ChartWindow {
    double x_lo = 0.0;
    double x_hi = 0.0;
    std::string role;  // "focus" or "comparison"
    bool operator==(const ChartWindow&) const = default;
};

/// A horizontal line segment (window mean, weekday tick).
struct ChartSegment {
    double x_lo = 0.0;
    double x_hi = 0.0;
    double y = 0.0;
    std::string role;
    bool operator==(const ChartSegment&) const = default;
};

struct GoalLine {
    double y = 0.0;
    std::string label;
    bool operator==(const GoalLine&) const = default;
};

struct ChartSeries {
    std::string attribute;
    std::vector<std::pair<double, double>> points;  // (day index, raw value)
    bool operator==(const ChartSeries&) const = default;
};

/// Renderer-agnostic description of one summary's supporting evidence: the
/// raw series, the value bands behind the letters, highlighted windows,
/// supporting points, mean segments, and goal lines.
struct ChartSpec {
    std::string title;
    std::string x_unit = "day";
    std::size_t x_count = 0;
    std::vector<ChartSeries> series;
    std::vector<ChartBand> bands;
    std::vector<ChartWindow> windows;
    std::vector<std::size_t> highlighted_points;
    std::vector<ChartSegment> segments;
    std::vector<GoalLine> goal_lines;

    bool operator==(const ChartSpec&) const = default;

    void validate() const {
        for (std::size_t p : highlighted_points) {
            if (p >= x_count)
                fail(ErrorCode::OutOfRange, "highlighted point beyond the x axis");
            for (const auto& s : series)
                if (p >= s.points.size())
                    fail(ErrorCode::OutOfRange, "highlighted point outside a series");
        }
        for (std::size_t b = 0; b < bands.size(); ++b) {
            if (bands[b].y_hi < bands[b].y_lo)
                fail(ErrorCode::OutOfRange, "band with negative height");
            if (b > 0 && bands[b].y_lo != bands[b - 1].y_hi)
                fail(ErrorCode::OutOfRange, "bands must tile the value range");
        }
    }
};

namespace detail {

/// Values are fixed to six decimals at construction so the serialized chart
/// is byte-stable and survives a write/parse round trip unchanged.
inline double chart_round(double v) {
    return static_cast<double>(std::llround(v * 1e6)) / 1e6;
}

inline const AttributeContext& chart_attr(const SummaryContext& ctx, const std::string& column) {
    for (const auto& a : ctx.attrs)
        if (a.column == column) return a;
    fail(ErrorCode::MissingColumn, "summary names unknown attribute '" + column + "'");
}

inline void window_span(const SummaryContext& ctx, std::size_t ordinal, double& lo, double& hi) {
    const auto len = static_cast<std::size_t>(ctx.gran().tw_len);
    lo = static_cast<double>((ordinal - 1) * len);
    hi = static_cast<double>(ordinal * len - 1);
}

}  // namespace detail

/// Chart for one summary over the run it came from. The y axis (bands, goal
/// lines) belongs to the summary's first attribute; additional series are
/// drawn against the same scale.
inline ChartSpec chart_for(const Summary& summary, const SummaryContext& ctx) {
    ChartSpec spec;
    spec.title = summary.text;
    spec.x_unit = ctx.gran().step_noun();
    spec.x_count = ctx.day_count();

    for (const auto& col : summary.attributes) {
        const auto& a = detail::chart_attr(ctx, col);
        ChartSeries cs;
        cs.attribute = a.display;
        cs.points.reserve(a.series->size());
        for (std::size_t i = 0; i < a.series->size(); ++i)
            cs.points.emplace_back(static_cast<double>(i),
                                   detail::chart_round(a.series->points[i].value));
        spec.series.push_back(std::move(cs));
    }

    const auto& primary = detail::chart_attr(ctx, summary.attributes.front());
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& p : spec.series.front().points) {
        lo = std::min(lo, p.second);
        hi = std::max(hi, p.second);
    }
    auto spoken = [&](const std::string& label) {
        return std::find(summary.summarizers.begin(), summary.summarizers.end(), label) !=
               summary.summarizers.end();
    };
    const auto& edges = primary.disc.days.raw_band_edges;
    if (edges.empty()) {
        ChartBand b;
        b.label = primary.labels[primary.labels.size() / 2];
        b.y_lo = detail::chart_round(lo);
        b.y_hi = detail::chart_round(hi);
        b.role = spoken(b.label) ? "winning" : "plain";
        spec.bands.push_back(std::move(b));
    } else {
        for (std::size_t k = 0; k <= edges.size(); ++k) {
            ChartBand b;
            b.label = k < primary.labels.size() ? primary.labels[k] : "";
            b.y_lo = detail::chart_round(k == 0 ? std::min(lo, edges.front()) : edges[k - 1]);
            b.y_hi = detail::chart_round(k == edges.size() ? std::max(hi, edges.back()) : edges[k]);
            b.role = spoken(b.label) ? "winning" : "plain";
            spec.bands.push_back(std::move(b));
        }
    }

    const bool windowed = ctx.gran().windowed();
    if (windowed && summary.hints.focus_window) {
        ChartWindow w;
        w.role = "focus";
        detail::window_span(ctx, *summary.hints.focus_window, w.x_lo, w.x_hi);
        spec.windows.push_back(w);
    }
    if (windowed && summary.hints.other_window) {
        ChartWindow w;
        w.role = "comparison";
        detail::window_span(ctx, *summary.hints.other_window, w.x_lo, w.x_hi);
        spec.windows.push_back(w);
    }
    if (windowed)
        for (std::size_t m : summary.hints.member_windows) {
            if (summary.hints.focus_window && m == *summary.hints.focus_window) continue;
            ChartWindow w;
            w.role = "comparison";
            detail::window_span(ctx, m, w.x_lo, w.x_hi);
            spec.windows.push_back(w);
        }

    spec.highlighted_points = summary.hints.highlight_days;

    switch (summary.type) {
        case ProtoformType::StandardEvalTW:
        case ProtoformType::Comparison:
        case ProtoformType::GoalComparison:
        case ProtoformType::ClusterBasedPattern:
        case ProtoformType::StandardPattern: {
            if (!windowed) break;
            for (std::size_t w = 0; w < ctx.window_count(); ++w) {
                const auto days = detail::window_days(ctx, w);
                ChartSegment seg;
                seg.x_lo = static_cast<double>(days.front());
                seg.x_hi = static_cast<double>(days.back());
                seg.y = detail::chart_round(detail::window_mean(primary, days));
                seg.role = "window_mean";
                spec.segments.push_back(seg);
            }
            break;
        }
        case ProtoformType::DayBasedPattern: {
            for (std::size_t d : summary.hints.highlight_days) {
                ChartSegment seg;
                seg.x_lo = seg.x_hi = static_cast<double>(d);
                seg.y = detail::chart_round(primary.series->points[d].value);
                seg.role = "weekday";
                spec.segments.push_back(seg);
            }
            break;
        }
        default:
            break;
    }

    if (summary.type == ProtoformType::GoalEvaluation ||
        summary.type == ProtoformType::GoalComparison) {
        for (const auto& col : summary.attributes)
            if (const Goal* g = ctx.config->goal_for(col)) {
                if (g->comparator != Goal::Comparator::AtMost)
                    spec.goal_lines.push_back({detail::chart_round(g->lo), g->label});
                if (g->comparator != Goal::Comparator::AtLeast)
                    spec.goal_lines.push_back({detail::chart_round(g->hi), g->label});
            }
    }
    if (summary.type == ProtoformType::GoalAssistance && ctx.config->guideline) {
        for (const auto& col : summary.attributes) {
            auto it = ctx.config->guideline->ranges.find(col);
            if (it == ctx.config->guideline->ranges.end()) continue;
            spec.goal_lines.push_back(
                {detail::chart_round(it->second.first), ctx.config->guideline->name});
            spec.goal_lines.push_back(
                {detail::chart_round(it->second.second), ctx.config->guideline->name});
        }
    }

    spec.validate();
    return spec;
}

// ---- serialization ----------------------------------------------------------

inline nlohmann::json to_json(const ChartSpec& spec) {
    nlohmann::json j;
    j["title"] = spec.title;
    j["x_axis"] = {{"unit", spec.x_unit}, {"count", spec.x_count}};
    j["series"] = nlohmann::json::array();
    for (const auto& s : spec.series) {
        nlohmann::json pts = nlohmann::json::array();
        for (const auto& [x, y] : s.points) pts.push_back({x, y});
        j["series"].push_back({{"attribute", s.attribute}, {"points", pts}});
    }
    j["bands"] = nlohmann::json::array();
    for (const auto& b : spec.bands)
        j["bands"].push_back(
            {{"label", b.label}, {"y_lo", b.y_lo}, {"y_hi", b.y_hi}, {"role", b.role}});
    j["windows"] = nlohmann::json::array();
    for (const auto& w : spec.windows)
        j["windows"].push_back({{"x_lo", w.x_lo}, {"x_hi", w.x_hi}, {"role", w.role}});
    j["highlighted_points"] = spec.highlighted_points;
    j["segments"] = nlohmann::json::array();
    for (const auto& s : spec.segments)
        j["segments"].push_back(
            {{"x_lo", s.x_lo}, {"x_hi", s.x_hi}, {"y", s.y}, {"role", s.role}});
    j["goal_lines"] = nlohmann::json::array();
    for (const auto& g : spec.goal_lines)
        j["goal_lines"].push_back({{"y", g.y}, {"label", g.label}});
    return j;
}

inline ChartSpec chart_from_json(const nlohmann::json& j) {
    ChartSpec spec;
    spec.title = j.at("title").get<std::string>();
    spec.x_unit = j.at("x_axis").at("unit").get<std::string>();
    spec.x_count = j.at("x_axis").at("count").get<std::size_t>();
    for (const auto& s : j.at("series")) {
        ChartSeries cs;
        cs.attribute = s.at("attribute").get<std::string>();
        for (const auto& p : s.at("points"))
            cs.points.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
        spec.series.push_back(std::move(cs));
    }
    for (const auto& b : j.at("bands"))
        spec.bands.push_back({b.at("label").get<std::string>(), b.at("y_lo").get<double>(),
                              b.at("y_hi").get<double>(), b.at("role").get<std::string>()});
    for (const auto& w : j.at("windows"))
        spec.windows.push_back({w.at("x_lo").get<double>(), w.at("x_hi").get<double>(),
                                w.at("role").get<std::string>()});
    spec.highlighted_points = j.at("highlighted_points").get<std::vector<std::size_t>>();
    for (const auto& s : j.at("segments"))
        spec.segments.push_back({s.at("x_lo").get<double>(), s.at("x_hi").get<double>(),
                                 s.at("y").get<double>(), s.at("role").get<std::string>()});
    for (const auto& g : j.at("goal_lines"))
        spec.goal_lines.push_back({g.at("y").get<double>(), g.at("label").get<std::string>()});
    return spec;
}

/// Canonical JSON file: keys sorted (map-backed objects), fixed-precision
/// values, trailing newline. Parent directories are created as needed.
inline void write_chart(const ChartSpec& spec, const std::filesystem::path& path) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::IoError, "cannot write '" + path.string() + "'");
    out << to_json(spec).dump(2) << '\n';
    if (!out.good()) fail(ErrorCode::IoError, "short write to '" + path.string() + "'");
}

inline ChartSpec read_chart(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::IoError, "cannot read '" + path.string() + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::UnparseableValue, "bad chart file '" + path.string() + "': " + e.what());
    }
    return chart_from_json(j);
}

// ---- static SVG rendering ---------------------------------------------------

namespace detail {

inline std::string svg_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace detail

/// Minimal self-contained rendering for quick inspection; the JSON spec is
/// the format contract, this is a convenience view of it.
inline std::string chart_svg(const ChartSpec& spec) {
    const double width = 880.0, height = 440.0;
    const double ml = 60.0, mr = 20.0, mt = 40.0, mb = 30.0;
    double ylo = std::numeric_limits<double>::infinity(), yhi = -ylo;
    for (const auto& b : spec.bands) {
        ylo = std::min(ylo, b.y_lo);
        yhi = std::max(yhi, b.y_hi);
    }
    for (const auto& s : spec.series)
        for (const auto& [x, y] : s.points) {
            (void)x;
            ylo = std::min(ylo, y);
            yhi = std::max(yhi, y);
        }
    for (const auto& g : spec.goal_lines) {
        ylo = std::min(ylo, g.y);
        yhi = std::max(yhi, g.y);
    }
    if (!(ylo < yhi)) {
        ylo = ylo - 1.0;
        yhi = yhi + 1.0;
    }
    const double xspan = static_cast<double>(spec.x_count > 1 ? spec.x_count - 1 : 1);
    auto sx = [&](double x) { return ml + (width - ml - mr) * x / xspan; };
    auto sy = [&](double y) { return mt + (height - mt - mb) * (yhi - y) / (yhi - ylo); };
    using detail::svg_num;

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + svg_num(width) +
           "\" height=\"" + svg_num(height) + "\">\n";
    out += "<title>" + spec.title + "</title>\n";
    for (const auto& b : spec.bands)
        out += "<rect x=\"" + svg_num(ml) + "\" y=\"" + svg_num(sy(b.y_hi)) + "\" width=\"" +
               svg_num(width - ml - mr) + "\" height=\"" + svg_num(sy(b.y_lo) - sy(b.y_hi)) +
               "\" fill=\"" + (b.role == "winning" ? "#dcefdc" : "#f4f4f4") +
               "\" stroke=\"#dddddd\"/>\n";
    for (const auto& w : spec.windows)
        out += "<rect x=\"" + svg_num(sx(w.x_lo)) + "\" y=\"" + svg_num(mt) + "\" width=\"" +
               svg_num(sx(w.x_hi) - sx(w.x_lo)) + "\" height=\"" + svg_num(height - mt - mb) +
               "\" fill=\"" + (w.role == "focus" ? "#fde9c8" : "#dde7f5") +
               "\" fill-opacity=\"0.5\"/>\n";
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
    for (std::size_t i = 0; i < spec.series.size(); ++i) {
        out += "<polyline fill=\"none\" stroke=\"";
        out += palette[i % 4];
        out += "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : spec.series[i].points)
            out += svg_num(sx(x)) + "," + svg_num(sy(y)) + " ";
        out += "\"/>\n";
    }
    for (const auto& s : spec.segments)
        out += "<line x1=\"" + svg_num(sx(s.x_lo)) + "\" y1=\"" + svg_num(sy(s.y)) + "\" x2=\"" +
               svg_num(sx(s.x_hi)) + "\" y2=\"" + svg_num(sy(s.y)) +
               "\" stroke=\"#2ca02c\" stroke-width=\"3\"/>\n";
    for (const auto& g : spec.goal_lines)
        out += "<line x1=\"" + svg_num(ml) + "\" y1=\"" + svg_num(sy(g.y)) + "\" x2=\"" +
               svg_num(width - mr) + "\" y2=\"" + svg_num(sy(g.y)) +
               "\" stroke=\"#888888\" stroke-dasharray=\"6,3\"/>\n";
    if (!spec.series.empty())
        for (std::size_t p : spec.highlighted_points)
            out += "<circle cx=\"" + svg_num(sx(spec.series.front().points[p].first)) +
                   "\" cy=\"" + svg_num(sy(spec.series.front().points[p].second)) +
                   "\" r=\"3.5\" fill=\"#d62728\"/>\n";
    out += "</svg>\n";
    return out;
}

inline void write_chart_svg(const ChartSpec& spec, const std::filesystem::path& path) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::IoError, "cannot write '" + path.string() + "'");
    out << chart_svg(spec);
    if (!out.good()) fail(ErrorCode::IoError, "short write to '" + path.string() + "'");
}

}  // namespace temposum
