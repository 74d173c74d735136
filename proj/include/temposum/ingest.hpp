#pragma once

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "temposum/core.hpp"
#include "temposum/date.hpp"
#include "temposum/error.hpp"

namespace temposum {

/// Date assigned to integer day index 1. A Monday, so day indices 1..7 span
/// one calendar week in order.
inline CivilDate default_epoch() { return CivilDate{2018, 1, 1}; }

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace detail

/// Loads one user's log. The date column holds either ISO dates (YYYY-MM-DD)
/// or positive integer day indices, which are mapped onto consecutive
/// calendar days starting at `epoch` (index 1 = epoch). Cells are plain
/// comma-separated (no quoting); an empty cell means the attribute was not
/// logged that day. Dates must be strictly increasing.
inline Dataset load_csv(const std::filesystem::path& path, const std::string& date_col,
                        const std::vector<std::string>& attributes,
                        CivilDate epoch = default_epoch()) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::IoError, "cannot open '" + path.string() + "'");

    std::string line;
    if (!std::getline(in, line)) fail(ErrorCode::EmptySeries, "'" + path.string() + "' is empty");
    const auto header = detail::split_csv_line(line);

    auto column_index = [&](const std::string& name) -> std::size_t {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (detail::trim(header[i]) == name) return i;
        fail(ErrorCode::MissingColumn, "column '" + name + "' in '" + path.string() + "'");
    };

    const std::size_t date_idx = column_index(date_col);
    std::vector<std::size_t> attr_idx;
    attr_idx.reserve(attributes.size());
    for (const auto& a : attributes) attr_idx.push_back(column_index(a));

    Dataset ds;
    ds.user_id = path.stem().string();
    for (const auto& a : attributes) {
        TimeSeries ts;
        ts.attribute = a;
        ds.series.push_back(std::move(ts));
    }

    long long last_day = 0;
    bool have_last = false;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (detail::trim(line).empty()) continue;
        const auto cells = detail::split_csv_line(line);
        auto cell = [&](std::size_t i) -> std::string {
            return i < cells.size() ? detail::trim(cells[i]) : std::string();
        };

        const std::string date_text = cell(date_idx);
        CivilDate date;
        if (detail::all_digits(date_text)) {
            const long long idx = std::atoll(date_text.c_str());
            if (idx < 1)
                fail(ErrorCode::UnparseableValue,
                     "day index must be >= 1 at row " + std::to_string(row) + " of '" +
                         path.string() + "'");
            date = add_days(epoch, idx - 1);
        } else {
            try {
                date = parse_iso_date(date_text);
            } catch (const Error&) {
                fail(ErrorCode::UnparseableValue,
                     "bad date '" + date_text + "' at row " + std::to_string(row) + " of '" +
                         path.string() + "'");
            }
        }
        const long long day = day_number(date);
        if (have_last && day <= last_day)
            fail(ErrorCode::UnparseableValue,
                 "dates must be strictly increasing at row " + std::to_string(row) + " of '" +
                     path.string() + "'");
        last_day = day;
        have_last = true;

        for (std::size_t k = 0; k < attr_idx.size(); ++k) {
            const std::string text = cell(attr_idx[k]);
            if (text.empty()) continue;  // unlogged day for this attribute
            char* end = nullptr;
            const double v = std::strtod(text.c_str(), &end);
            if (end == text.c_str() || *end != '\0' || !std::isfinite(v))
                fail(ErrorCode::UnparseableValue,
                     "bad value '" + text + "' for '" + attributes[k] + "' at row " +
                         std::to_string(row) + " of '" + path.string() + "'");
            ds.series[k].points.push_back({date, v});
        }
    }

    for (const auto& s : ds.series)
        if (s.points.empty())
            fail(ErrorCode::EmptySeries,
                 "attribute '" + s.attribute + "' has no values in '" + path.string() + "'");
    return ds;
}

/// True when `name` matches a glob with at most one '*'.
inline bool glob_match(const std::string& pattern, const std::string& name) {
    const auto star = pattern.find('*');
    if (star == std::string::npos) return pattern == name;
    const std::string head = pattern.substr(0, star);
    const std::string tail = pattern.substr(star + 1);
    return name.size() >= head.size() + tail.size() && name.compare(0, head.size(), head) == 0 &&
           name.compare(name.size() - tail.size(), tail.size(), tail) == 0;
}

struct CohortLoad {
    std::vector<Dataset> users;             // kept users, sorted by file name
    std::vector<std::string> excluded;      // user ids dropped by the day filter
};

/// Loads every matching file in a directory as one user each (user id = file
/// stem). Users whose shortest series has fewer than `min_days` points are
/// excluded but reported.
inline CohortLoad load_cohort(const std::filesystem::path& dir, const std::string& pattern,
                              const std::string& date_col,
                              const std::vector<std::string>& attributes, std::size_t min_days = 0,
                              CivilDate epoch = default_epoch()) {
    if (!std::filesystem::is_directory(dir))
        fail(ErrorCode::IoError, "'" + dir.string() + "' is not a directory");
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && glob_match(pattern, entry.path().filename().string()))
            files.push_back(entry.path());
    if (files.empty())
        fail(ErrorCode::EmptyCohort, "no files matching '" + pattern + "' in '" + dir.string() + "'");
    std::sort(files.begin(), files.end());

    CohortLoad out;
    for (const auto& f : files) {
        Dataset ds = load_csv(f, date_col, attributes, epoch);
        std::size_t shortest = ds.series.front().size();
        for (const auto& s : ds.series) shortest = std::min(shortest, s.size());
        if (shortest < min_days) {
            out.excluded.push_back(ds.user_id);
        } else {
            out.users.push_back(std::move(ds));
        }
    }
    return out;
}

}  // namespace temposum
