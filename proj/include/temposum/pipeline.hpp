#pragma once

#include <atomic>
#include <cstdio>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "temposum/group.hpp"
#include "temposum/ingest.hpp"
#include "temposum/provenance.hpp"

namespace temposum {

/// Everything a run needs besides the data. The contexts built from it keep
/// pointers into this object, so it must outlive them.
struct PipelineSetup {
    RunConfig config;
    Vocabulary vocab = default_health_vocabulary();
    TemplateRegistry templates = TemplateRegistry::defaults();
    std::vector<ProtoformType> keep;  // empty keeps every type

    /// Apply vocabulary wording overrides and validate. Call once after the
    /// pieces are assembled and before any context is built.
    void finalize() {
        vocab.validate();
        config.validate();
        templates.merge(vocab.template_overrides);
    }
};

namespace detail {

/// Run every job and place its result in the slot matching its index. The
/// reduction order therefore never depends on scheduling, which keeps output
/// bytes identical across worker counts.
template <typename R>
std::vector<R> run_indexed(std::vector<std::function<R()>>& jobs, int threads) {
    std::vector<R> results(jobs.size());
    if (threads <= 1 || jobs.size() <= 1) {
        for (std::size_t i = 0; i < jobs.size(); ++i) results[i] = jobs[i]();
        return results;
    }
    std::atomic<std::size_t> next{0};
    std::mutex err_mu;
    std::exception_ptr first_error;
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            try {
                results[i] = jobs[i]();
            } catch (...) {
                const std::lock_guard<std::mutex> lock(err_mu);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    const auto width = std::min<std::size_t>(static_cast<std::size_t>(threads), jobs.size());
    pool.reserve(width);
    for (std::size_t t = 0; t < width; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
    return results;
}

inline bool dates_aligned(const std::vector<AttributeContext>& attrs) {
    for (std::size_t i = 1; i < attrs.size(); ++i) {
        const auto& a = attrs[0].series->points;
        const auto& b = attrs[i].series->points;
        if (a.size() != b.size()) return false;
        for (std::size_t k = 0; k < a.size(); ++k)
            if (a[k].date != b[k].date) return false;
    }
    return true;
}

}  // namespace detail

/// One user's data discretized and wired into a generation context. The
/// dataset lives here so the context's series pointers stay valid.
struct UserRun {
    Dataset data;
    SummaryContext ctx;
    bool joint = false;  // every attribute logged on the same days
    std::vector<std::string> notes;
};

inline std::unique_ptr<UserRun> prepare_user(Dataset data, const PipelineSetup& setup,
                                             int threads = 1) {
    auto run = std::make_unique<UserRun>();
    run->data = std::move(data);
    run->ctx.config = &setup.config;
    run->ctx.vocab = &setup.vocab;
    run->ctx.templates = &setup.templates;

    std::vector<std::function<Discretized()>> jobs;
    jobs.reserve(run->data.series.size());
    for (const auto& series : run->data.series) {
        const TimeSeries* ts = &series;
        jobs.push_back([ts, &setup] {
            BinningScheme scheme;
            if (auto it = setup.vocab.raw_schemes.find(ts->attribute);
                it != setup.vocab.raw_schemes.end())
                scheme = it->second;
            else
                scheme = sax_scheme(
                    setup.config.alphabet_size,
                    setup.vocab.evaluation_labels(ts->attribute, setup.config.alphabet_size));
            return symbolize(*ts, setup.config.granularity, scheme);
        });
    }
    auto discs = detail::run_indexed(jobs, threads);

    for (std::size_t i = 0; i < run->data.series.size(); ++i) {
        AttributeContext a;
        a.column = run->data.series[i].attribute;
        a.display = setup.vocab.shown_as(a.column);
        a.series = &run->data.series[i];
        a.disc = std::move(discs[i]);
        a.labels = setup.vocab.evaluation_labels(a.column, setup.config.alphabet_size);
        run->ctx.attrs.push_back(std::move(a));
    }
    run->joint = run->ctx.attrs.size() >= 2 && detail::dates_aligned(run->ctx.attrs);
    if (run->ctx.attrs.size() >= 2 && !run->joint)
        run->notes.push_back("user " + run->data.user_id +
                             ": attributes are not logged on the same days; "
                             "joint summaries skipped");
    return run;
}

inline std::vector<Summary> filter_types(std::vector<Summary> in,
                                         const std::vector<ProtoformType>& keep) {
    if (keep.empty()) return in;
    std::vector<Summary> out;
    for (auto& s : in)
        if (std::find(keep.begin(), keep.end(), s.type) != keep.end())
            out.push_back(std::move(s));
    return out;
}

/// Every summary for one user: each attribute alone, then the joint view
/// when the attributes line up day for day.
inline std::vector<Summary> run_user(const UserRun& run, const PipelineSetup& setup,
                                     int threads = 1) {
    std::vector<std::function<std::vector<Summary>()>> jobs;
    for (const auto& attr : run.ctx.attrs) {
        const AttributeContext* ap = &attr;
        jobs.push_back([ap, &run] { return generate_individual(run.ctx, AttrSel{ap}); });
    }
    if (run.joint)
        jobs.push_back([&run] {
            AttrSel sel;
            for (const auto& a : run.ctx.attrs) sel.push_back(&a);
            return generate_individual(run.ctx, sel);
        });
    auto parts = detail::run_indexed(jobs, threads);
    std::vector<Summary> out;
    for (auto& p : parts)
        for (auto& s : p) out.push_back(std::move(s));
    return filter_types(std::move(out), setup.keep);
}

struct GroupResult {
    std::vector<std::unique_ptr<UserRun>> users;  // cohort file order
    std::vector<Summary> group;
};

/// Per-user generation fans out across workers; each user's own stages run
/// serially inside the job. Aggregation consumes members in file order.
inline GroupResult run_group(std::vector<Dataset> datasets, const PipelineSetup& setup,
                             int threads = 1) {
    GroupResult result;
    result.users.resize(datasets.size());
    std::vector<std::function<std::vector<Summary>()>> jobs;
    jobs.reserve(datasets.size());
    for (std::size_t i = 0; i < datasets.size(); ++i)
        jobs.push_back([i, &datasets, &result, &setup] {
            result.users[i] = prepare_user(std::move(datasets[i]), setup, 1);
            return run_user(*result.users[i], setup, 1);
        });
    auto per_user = detail::run_indexed(jobs, threads);

    std::vector<GroupMember> members;
    members.reserve(result.users.size());
    for (std::size_t i = 0; i < result.users.size(); ++i)
        members.push_back(
            {result.users[i]->data.user_id, &result.users[i]->ctx, std::move(per_user[i])});
    result.group = generate_group(members);
    return result;
}

// ---- flag material ----------------------------------------------------------

inline const std::vector<ProtoformType>& all_protoform_types() {
    static const std::vector<ProtoformType> types = {
        ProtoformType::StandardEvalTW,      ProtoformType::StandardEvalSTW,
        ProtoformType::StandardEvalQualifier, ProtoformType::GoalEvaluation,
        ProtoformType::Comparison,          ProtoformType::GoalComparison,
        ProtoformType::StandardTrend,       ProtoformType::ClusterBasedPattern,
        ProtoformType::StandardPattern,     ProtoformType::IfThenPattern,
        ProtoformType::DayIfThenPattern,    ProtoformType::DayBasedPattern,
        ProtoformType::GeneralIfThen,       ProtoformType::GoalAssistance,
        ProtoformType::GroupPopulationEval, ProtoformType::GroupClusterPattern,
        ProtoformType::GroupStandardPattern, ProtoformType::GroupIfThen,
    };
    return types;
}

/// Comma-separated type names, or "all". An empty result means no filter.
inline std::vector<ProtoformType> parse_protoform_list(const std::string& arg) {
    if (arg.empty() || arg == "all") return {};
    std::vector<ProtoformType> out;
    std::stringstream ss(arg);
    std::string item;
    while (std::getline(ss, item, ',')) {
        while (!item.empty() && item.front() == ' ') item.erase(item.begin());
        while (!item.empty() && item.back() == ' ') item.pop_back();
        if (item.empty()) continue;
        bool found = false;
        for (ProtoformType t : all_protoform_types())
            if (item == to_string(t)) {
                out.push_back(t);
                found = true;
                break;
            }
        if (!found) fail(ErrorCode::BadConfig, "unknown summary type '" + item + "'");
    }
    if (out.empty()) fail(ErrorCode::BadConfig, "summary type list is empty");
    return out;
}

namespace detail {

inline double parse_number(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        fail(ErrorCode::BadConfig, what + " is not a number: '" + s + "'");
    }
    if (used != s.size()) fail(ErrorCode::BadConfig, what + " is not a number: '" + s + "'");
    return v;
}

}  // namespace detail

/// Goal flag grammar: "attr<=value:label", "attr>=value:label", or
/// "attr=lo..hi:label" for a band.
inline Goal parse_goal_flag(const std::string& arg) {
    Goal g;
    std::size_t op_pos = std::string::npos;
    std::size_t op_len = 0;
    for (const char* op : {"<=", ">=", "="}) {
        op_pos = arg.find(op);
        if (op_pos != std::string::npos) {
            op_len = std::char_traits<char>::length(op);
            g.comparator = op[0] == '<'   ? Goal::Comparator::AtMost
                           : op[0] == '>' ? Goal::Comparator::AtLeast
                                          : Goal::Comparator::WithinRange;
            break;
        }
    }
    if (op_pos == std::string::npos || op_pos == 0)
        fail(ErrorCode::BadConfig, "goal must look like attr<=value:label, got '" + arg + "'");
    g.attribute = arg.substr(0, op_pos);
    const std::string rest = arg.substr(op_pos + op_len);
    const std::size_t colon = rest.rfind(':');
    if (colon == std::string::npos || colon + 1 == rest.size())
        fail(ErrorCode::BadConfig, "goal needs a :label suffix, got '" + arg + "'");
    const std::string value = rest.substr(0, colon);
    g.label = rest.substr(colon + 1);
    if (g.comparator == Goal::Comparator::WithinRange) {
        const std::size_t dots = value.find("..");
        if (dots == std::string::npos)
            fail(ErrorCode::BadConfig, "range goal needs lo..hi, got '" + arg + "'");
        g.lo = detail::parse_number(value.substr(0, dots), "goal lower bound");
        g.hi = detail::parse_number(value.substr(dots + 2), "goal upper bound");
        if (!(g.lo < g.hi)) fail(ErrorCode::BadConfig, "goal range is empty: '" + arg + "'");
    } else if (g.comparator == Goal::Comparator::AtMost) {
        g.hi = detail::parse_number(value, "goal value");
    } else {
        g.lo = detail::parse_number(value, "goal value");
    }
    return g;
}

inline DietGuideline guideline_from_json(const nlohmann::json& j) {
    DietGuideline g;
    if (!j.contains("name") || !j.contains("ranges"))
        fail(ErrorCode::BadConfig, "guideline needs 'name' and 'ranges'");
    g.name = j["name"].get<std::string>();
    for (const auto& [attr, range] : j["ranges"].items()) {
        if (!range.is_array() || range.size() != 2)
            fail(ErrorCode::BadConfig, "guideline range for '" + attr + "' must be [lo, hi]");
        const double lo = range[0].get<double>();
        const double hi = range[1].get<double>();
        if (!(lo < hi)) fail(ErrorCode::BadConfig, "guideline range for '" + attr + "' is empty");
        g.ranges[attr] = {lo, hi};
    }
    if (g.ranges.empty()) fail(ErrorCode::BadConfig, "guideline has no ranges");
    return g;
}

/// Attribute -> raw-range scheme overrides, e.g.
/// {"heart rate": {"bins": [{"label": "low", "upper_bound": 60}, ...]}}.
inline std::map<std::string, BinningScheme> bin_overrides_from_json(const nlohmann::json& j) {
    if (!j.is_object() || j.empty())
        fail(ErrorCode::BadConfig, "bin override file must map attributes to schemes");
    std::map<std::string, BinningScheme> out;
    for (const auto& [attr, scheme] : j.items()) out[attr] = binning_scheme_from_json(scheme);
    return out;
}

// ---- output rows ------------------------------------------------------------

inline nlohmann::json summary_row(const Summary& s,
                                  const std::optional<std::string>& provenance_path,
                                  const MetricOptions& opts = {}) {
    nlohmann::json j;
    j["type"] = to_string(s.type);
    j["attributes"] = s.attributes;
    j["text"] = s.text;
    j["metrics"] = to_json(metric_set(s.basis, opts));
    j["provenance_path"] =
        provenance_path ? nlohmann::json(*provenance_path) : nlohmann::json(nullptr);
    return j;
}

namespace detail {

inline std::string metric_cell(const std::optional<double>& v) {
    if (!v) return "N/A";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", *v);
    return buf;
}

}  // namespace detail

/// Terminal-friendly rendering: one row per summary, metrics to two decimals,
/// N/A where a metric does not apply.
inline std::string table_format(const std::vector<Summary>& summaries,
                                const MetricOptions& opts = {}) {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"type", "T1", "T2", "T3", "T4", "T5", "T6", "text"});
    for (const auto& s : summaries) {
        const MetricSet m = metric_set(s.basis, opts);
        rows.push_back({to_string(s.type), detail::metric_cell(m.t1), detail::metric_cell(m.t2),
                        detail::metric_cell(m.t3), detail::metric_cell(m.t4),
                        detail::metric_cell(m.t5), detail::metric_cell(m.t6), s.text});
    }
    std::vector<std::size_t> widths(7, 0);
    for (const auto& r : rows)
        for (std::size_t c = 0; c < 7; ++c) widths[c] = std::max(widths[c], r[c].size());
    std::string out;
    for (const auto& r : rows) {
        for (std::size_t c = 0; c < 7; ++c) {
            out += r[c];
            out.append(widths[c] - r[c].size() + 2, ' ');
        }
        out += r[7];
        out += '\n';
    }
    return out;
}

}  // namespace temposum
