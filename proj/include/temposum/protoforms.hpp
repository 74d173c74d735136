#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "temposum/core.hpp"
#include "temposum/date.hpp"
#include "temposum/discretize.hpp"
#include "temposum/error.hpp"
#include "temposum/fuzzy.hpp"
#include "temposum/metrics.hpp"
#include "temposum/mining.hpp"
#include "temposum/templates.hpp"
#include "temposum/vocabulary.hpp"

namespace temposum {

enum class ProtoformType {
    StandardEvalTW,
    StandardEvalSTW,
    StandardEvalQualifier,
    GoalEvaluation,
    Comparison,
    GoalComparison,
    StandardTrend,
    ClusterBasedPattern,
    StandardPattern,
    IfThenPattern,
    DayIfThenPattern,
    DayBasedPattern,
    GeneralIfThen,
    GoalAssistance,
    GroupPopulationEval,
    GroupClusterPattern,
    GroupStandardPattern,
    GroupIfThen,
};

inline const char* to_string(ProtoformType t) {
    switch (t) {
        case ProtoformType::StandardEvalTW: return "standard_evaluation_tw";
        case ProtoformType::StandardEvalSTW: return "standard_evaluation_stw";
        case ProtoformType::StandardEvalQualifier: return "standard_evaluation_qualifier";
        case ProtoformType::GoalEvaluation: return "goal_evaluation";
        case ProtoformType::Comparison: return "comparison";
        case ProtoformType::GoalComparison: return "goal_comparison";
        case ProtoformType::StandardTrend: return "standard_trend";
        case ProtoformType::ClusterBasedPattern: return "cluster_based_pattern";
        case ProtoformType::StandardPattern: return "standard_pattern";
        case ProtoformType::IfThenPattern: return "if_then_pattern";
        case ProtoformType::DayIfThenPattern: return "day_if_then_pattern";
        case ProtoformType::DayBasedPattern: return "day_based_pattern";
        case ProtoformType::GeneralIfThen: return "general_if_then";
        case ProtoformType::GoalAssistance: return "goal_assistance";
        case ProtoformType::GroupPopulationEval: return "group_population_evaluation";
        case ProtoformType::GroupClusterPattern: return "group_cluster_pattern";
        case ProtoformType::GroupStandardPattern: return "group_standard_pattern";
        case ProtoformType::GroupIfThen: return "group_if_then";
    }
    return "unknown";
}

/// Pointers into the source data a chart needs to justify one summary.
struct ProvenanceHints {
    std::optional<std::size_t> focus_window;  // 1-based, as spoken in sentences
    std::optional<std::size_t> other_window;  // comparison or similar window
    std::vector<std::size_t> highlight_days;  // 0-based positions in the day series
    std::vector<std::size_t> member_windows;  // 1-based cluster members
    std::optional<std::string> weekday;
};

struct Summary {
    ProtoformType type{};
    std::vector<std::string> attributes;  // column names, sentence order
    std::string text;
    MetricBasis basis;

    std::optional<std::string> quantifier;       // winning name, even when unspoken
    std::optional<std::string> sub_quantifier;   // inner quantifier of group forms
    std::optional<double> confidence;            // sequence rules, in [0, 1]
    std::vector<std::string> summarizers;        // tokens spoken in the sentence
    std::vector<std::string> conclusion;         // canonical class tokens, for grouping
    std::optional<std::string> condition_attribute;
    ProvenanceHints hints;
    std::optional<ProtoformType> group_subtype;
};

/// One attribute of one user, discretized and ready for generation.
struct AttributeContext {
    std::string column;
    std::string display;
    const TimeSeries* series = nullptr;
    Discretized disc;
    std::vector<std::string> labels;  // letter index -> spoken label

    int letter_at(std::size_t day) const { return disc.days.symbols[day].letter; }
    const std::string& label_at(std::size_t day) const {
        return labels[static_cast<std::size_t>(letter_at(day))];
    }
};

struct SummaryContext {
    const RunConfig* config = nullptr;
    const Vocabulary* vocab = nullptr;
    const TemplateRegistry* templates = nullptr;
    std::vector<AttributeContext> attrs;

    const Granularity& gran() const { return config->granularity; }
    std::size_t day_count() const { return attrs.empty() ? 0 : attrs.front().disc.days.symbols.size(); }
    std::size_t window_count() const {
        return attrs.empty() ? 0 : attrs.front().disc.windows.symbols.size();
    }
};

using AttrSel = std::vector<const AttributeContext*>;

namespace detail {

using Slots = std::vector<std::pair<std::string, std::string>>;

inline Slots base_slots(const SummaryContext& ctx) {
    return {{"poss", ctx.vocab->article},
            {"window", ctx.gran().window_noun()},
            {"step", ctx.gran().step_noun()}};
}

inline Slots with(Slots s, std::initializer_list<std::pair<std::string, std::string>> more) {
    for (const auto& kv : more) s.push_back(kv);
    return s;
}

/// Highest-membership quantifier per candidate, then the overall winner:
/// highest truth, ties to the larger quantifier, then to the earlier
/// candidate. Matches the scored-pair selection used for plain ratios.
struct Pick {
    std::size_t index = 0;
    ScoredPair pair;
};

inline std::optional<Pick> pick_best(const std::vector<Quantifier>& qs,
                                     const std::vector<double>& ratios) {
    std::optional<Pick> best;
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        ScoredPair sp = best_quantifier(qs, "", ratios[i]);
        if (!best || sp.truth > best->pair.truth + kTruthTieEpsilon ||
            (sp.truth > best->pair.truth - kTruthTieEpsilon &&
             sp.quantifier_rank > best->pair.quantifier_rank))
            best = Pick{i, sp};
    }
    return best;
}

/// Day positions of the most recent complete window, or every day when the
/// run has no windows.
inline std::vector<std::size_t> recent_days(const SummaryContext& ctx) {
    std::vector<std::size_t> out;
    if (!ctx.gran().windowed()) {
        out.resize(ctx.day_count());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
        return out;
    }
    const std::size_t w = ctx.window_count();
    if (w == 0) return out;
    const auto len = static_cast<std::size_t>(ctx.gran().tw_len);
    for (std::size_t i = (w - 1) * len; i < w * len; ++i) out.push_back(i);
    return out;
}

inline std::vector<std::size_t> window_days(const SummaryContext& ctx, std::size_t w) {
    const auto len = static_cast<std::size_t>(ctx.gran().tw_len);
    std::vector<std::size_t> out;
    for (std::size_t i = w * len; i < (w + 1) * len; ++i) out.push_back(i);
    return out;
}

/// Joint letter combinations observed over the given days, in letter order
/// (map order), with occurrence counts.
inline std::map<std::vector<int>, long long> observed_combos(
    const AttrSel& sel, const std::vector<std::size_t>& days) {
    std::map<std::vector<int>, long long> m;
    std::vector<int> key(sel.size());
    for (std::size_t d : days) {
        for (std::size_t j = 0; j < sel.size(); ++j) key[j] = sel[j]->letter_at(d);
        ++m[key];
    }
    return m;
}

/// Share of the attribute's whole history spent in one class.
inline double global_class_ratio(const AttributeContext& a, int letter) {
    const auto& syms = a.disc.days.symbols;
    if (syms.empty()) return 0.0;
    long long hits = 0;
    for (const auto& s : syms) hits += s.letter == letter ? 1 : 0;
    return static_cast<double>(hits) / static_cast<double>(syms.size());
}

inline double marginal_ratio(const AttributeContext& a, const std::vector<std::size_t>& days,
                             int letter) {
    if (days.empty()) return 0.0;
    long long hits = 0;
    for (std::size_t d : days) hits += a.letter_at(d) == letter ? 1 : 0;
    return static_cast<double>(hits) / static_cast<double>(days.size());
}

inline double window_mean(const AttributeContext& a, const std::vector<std::size_t>& days) {
    double sum = 0.0;
    for (std::size_t d : days) sum += a.series->points[d].value;
    return days.empty() ? 0.0 : sum / static_cast<double>(days.size());
}

/// higher / lower / about the same, by relative change of window means.
inline std::string compare_values(double recent, double earlier, double epsilon) {
    const double base = std::abs(earlier);
    const double diff = recent - earlier;
    const bool same = base == 0.0 ? diff == 0.0 : std::abs(diff) / base <= epsilon;
    if (same) return "about the same";
    return diff > 0.0 ? "higher" : "lower";
}

inline std::string percent_text(double confidence) {
    return std::to_string(static_cast<long long>(std::llround(confidence * 100.0)));
}

/// Consecutive-calendar-day runs as index segments over the aligned series.
inline std::vector<std::vector<std::size_t>> consecutive_runs(const SummaryContext& ctx) {
    std::vector<std::vector<std::size_t>> runs;
    const auto& pts = ctx.attrs.front().series->points;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const bool continues =
            !runs.empty() && !runs.back().empty() &&
            day_number(pts[i].date) == day_number(pts[runs.back().back()].date) + 1;
        if (!continues) runs.emplace_back();
        runs.back().push_back(i);
    }
    return runs;
}

}  // namespace detail

// ---- individual generators --------------------------------------------------

/// "In the past full week, your calorie intake has been moderate."
inline std::optional<Summary> gen_eval_tw(const SummaryContext& ctx, const AttrSel& sel) {
    if (!ctx.gran().windowed() || ctx.window_count() == 0) return std::nullopt;
    const auto& reg = *ctx.templates;

    Summary s;
    s.type = ProtoformType::StandardEvalTW;
    std::vector<std::string> clauses;
    for (const auto* a : sel) {
        const int letter = a->disc.windows.symbols.back().letter;
        const std::string& label = a->labels[static_cast<std::size_t>(letter)];
        clauses.push_back(reg.render("eval_tw.clause",
                                     detail::with(detail::base_slots(ctx),
                                                  {{"attribute", a->display}, {"summarizer", label}})));
        s.attributes.push_back(a->column);
        s.summarizers.push_back(label);
        s.conclusion.push_back(label);
    }
    s.text = text::capitalize(reg.render(
        "eval_tw.frame",
        detail::with(detail::base_slots(ctx), {{"clauses", text::join_clauses(clauses)}})));
    s.basis.quantified = false;
    s.basis.covering = 1.0;
    s.basis.attribute_ratios = std::vector<double>{};
    s.basis.coverage_ratio = 1.0;
    s.basis.summarizer_count = static_cast<int>(sel.size());
    s.hints.focus_window = ctx.window_count();
    return s;
}

/// "On some of the days in the past week, your calorie intake has been low."
inline std::optional<Summary> gen_eval_stw(const SummaryContext& ctx, const AttrSel& sel) {
    const auto days = detail::recent_days(ctx);
    if (days.empty()) return std::nullopt;
    const auto& reg = *ctx.templates;

    const auto combos = detail::observed_combos(sel, days);
    std::vector<std::vector<int>> keys;
    std::vector<double> ratios;
    for (const auto& [k, c] : combos) {
        keys.push_back(k);
        ratios.push_back(static_cast<double>(c) / static_cast<double>(days.size()));
    }
    const auto pick = detail::pick_best(ctx.vocab->quantifiers, ratios);
    if (!pick) return std::nullopt;
    const auto& winner = keys[pick->index];
    const double r = ratios[pick->index];

    Summary s;
    s.type = ProtoformType::StandardEvalSTW;
    s.quantifier = pick->pair.quantifier;
    std::vector<std::string> clauses;
    for (std::size_t j = 0; j < sel.size(); ++j) {
        const std::string& label = sel[j]->labels[static_cast<std::size_t>(winner[j])];
        clauses.push_back(reg.render(
            "eval_stw.clause", detail::with(detail::base_slots(ctx),
                                            {{"attribute", sel[j]->display}, {"summarizer", label}})));
        s.attributes.push_back(sel[j]->column);
        s.summarizers.push_back(label);
        s.conclusion.push_back(label);
        s.basis.imprecision_ratios.push_back(detail::global_class_ratio(*sel[j], winner[j]));
    }
    const char* frame = ctx.gran().windowed() ? "eval_stw.frame" : "eval_stw.frame_bare";
    s.text = text::capitalize(
        reg.render(frame, detail::with(detail::base_slots(ctx),
                                       {{"quantifier", *s.quantifier},
                                        {"clauses", text::join_clauses(clauses)}})));
    s.basis.quantified = true;
    s.basis.truth = pick->pair.truth;
    s.basis.covering = r;
    if (sel.size() > 1) {
        std::vector<double> marg;
        for (std::size_t j = 0; j < sel.size(); ++j)
            marg.push_back(detail::marginal_ratio(*sel[j], days, winner[j]));
        s.basis.attribute_ratios = marg;
    } else {
        s.basis.attribute_ratios = std::vector<double>{};
    }
    s.basis.coverage_ratio = r;
    s.basis.summarizer_count = static_cast<int>(sel.size());
    if (ctx.gran().windowed()) s.hints.focus_window = ctx.window_count();
    for (std::size_t d : days) {
        bool match = true;
        for (std::size_t j = 0; j < sel.size(); ++j)
            if (sel[j]->letter_at(d) != winner[j]) match = false;
        if (match) s.hints.highlight_days.push_back(d);
    }
    return s;
}

/// Ingredients of one qualified evaluation: condition attribute and class,
/// winning conclusion over the days matching the condition.
struct QualifierFinding {
    std::size_t qual_index = 0;  // into the selection
    int qual_letter = 0;
    std::vector<int> cons_letters;  // per non-qualifier attribute, selection order
    double ratio = 0.0;             // conclusion share of the matching days
    double joint_fraction = 0.0;    // condition-and-conclusion share of the window
    ScoredPair best;
    std::vector<std::size_t> subset_days;
};

/// The strongest qualified claim per condition attribute, preferring higher
/// truth, then more matching days, then the lower condition class.
inline std::vector<QualifierFinding> qualifier_findings(const SummaryContext& ctx,
                                                        const AttrSel& sel) {
    std::vector<QualifierFinding> out;
    if (sel.size() < 2 || !ctx.gran().windowed()) return out;
    const auto days = detail::recent_days(ctx);
    if (days.empty()) return out;

    for (std::size_t qi = 0; qi < sel.size(); ++qi) {
        AttrSel rest;
        std::vector<std::size_t> rest_index;
        for (std::size_t j = 0; j < sel.size(); ++j)
            if (j != qi) {
                rest.push_back(sel[j]);
                rest_index.push_back(j);
            }
        std::optional<QualifierFinding> found;
        for (int kq = 0; kq < static_cast<int>(sel[qi]->labels.size()); ++kq) {
            std::vector<std::size_t> subset;
            for (std::size_t d : days)
                if (sel[qi]->letter_at(d) == kq) subset.push_back(d);
            if (subset.empty()) continue;
            const auto combos = detail::observed_combos(rest, subset);
            std::vector<std::vector<int>> keys;
            std::vector<double> ratios;
            for (const auto& [k, c] : combos) {
                keys.push_back(k);
                ratios.push_back(static_cast<double>(c) / static_cast<double>(subset.size()));
            }
            const auto pick = detail::pick_best(ctx.vocab->quantifiers, ratios);
            if (!pick) continue;
            QualifierFinding f;
            f.qual_index = qi;
            f.qual_letter = kq;
            f.cons_letters = keys[pick->index];
            f.ratio = ratios[pick->index];
            f.best = pick->pair;
            f.subset_days = subset;
            long long joint = 0;
            for (std::size_t d : subset) {
                bool match = true;
                for (std::size_t j = 0; j < rest.size(); ++j)
                    if (rest[j]->letter_at(d) != f.cons_letters[j]) match = false;
                joint += match ? 1 : 0;
            }
            f.joint_fraction = static_cast<double>(joint) / static_cast<double>(days.size());
            const bool better =
                !found || f.best.truth > found->best.truth + kTruthTieEpsilon ||
                (f.best.truth > found->best.truth - kTruthTieEpsilon &&
                 f.subset_days.size() > found->subset_days.size());
            if (better) found = std::move(f);
        }
        if (found) out.push_back(std::move(*found));
    }
    return out;
}

/// "On all of the days in the past week when your calorie intake was very
/// low, your carbohydrate intake was moderate."
inline std::vector<Summary> gen_eval_qualifier(const SummaryContext& ctx, const AttrSel& sel) {
    std::vector<Summary> out;
    const auto& reg = *ctx.templates;
    const auto days = detail::recent_days(ctx);
    for (const auto& f : qualifier_findings(ctx, sel)) {
        const auto* qa = sel[f.qual_index];
        const std::string& qual_label = qa->labels[static_cast<std::size_t>(f.qual_letter)];

        Summary s;
        s.type = ProtoformType::StandardEvalQualifier;
        s.quantifier = f.best.quantifier;
        s.condition_attribute = qa->column;
        s.conclusion.push_back(qual_label);
        s.summarizers.push_back(qual_label);
        std::string qual_clause = reg.render(
            "eval_qualifier.qualifier_clause",
            detail::with(detail::base_slots(ctx),
                         {{"attribute", qa->display}, {"summarizer", qual_label}}));

        std::vector<std::string> clauses;
        std::vector<double> marginals{detail::marginal_ratio(*qa, days, f.qual_letter)};
        std::size_t ci = 0;
        for (std::size_t j = 0; j < sel.size(); ++j) {
            if (j == f.qual_index) {
                s.attributes.push_back(sel[j]->column);
                continue;
            }
            const int letter = f.cons_letters[ci++];
            const std::string& label = sel[j]->labels[static_cast<std::size_t>(letter)];
            clauses.push_back(reg.render(
                "eval_qualifier.clause",
                detail::with(detail::base_slots(ctx),
                             {{"attribute", sel[j]->display}, {"summarizer", label}})));
            s.attributes.push_back(sel[j]->column);
            s.summarizers.push_back(label);
            s.conclusion.push_back(label);
            s.basis.imprecision_ratios.push_back(detail::global_class_ratio(*sel[j], letter));
            marginals.push_back(detail::marginal_ratio(*sel[j], days, letter));
        }
        s.basis.imprecision_ratios.insert(s.basis.imprecision_ratios.begin(),
                                          detail::global_class_ratio(*qa, f.qual_letter));

        s.text = text::capitalize(
            reg.render("eval_qualifier.frame",
                       detail::with(detail::base_slots(ctx),
                                    {{"quantifier", *s.quantifier},
                                     {"qualifier_clauses", qual_clause},
                                     {"clauses", text::join_clauses(clauses)}})));
        s.basis.quantified = true;
        s.basis.truth = f.best.truth;
        s.basis.covering = f.ratio;
        s.basis.attribute_ratios = marginals;
        s.basis.coverage_ratio = f.joint_fraction;
        s.basis.summarizer_count = static_cast<int>(sel.size());
        s.hints.focus_window = ctx.window_count();
        s.hints.highlight_days = f.subset_days;
        out.push_back(std::move(s));
    }
    return out;
}

/// "On most of the days in the past week, you did not reach your goal to
/// keep your calorie intake low."
inline std::optional<Summary> gen_goal_eval(const SummaryContext& ctx, const AttrSel& sel) {
    AttrSel goal_attrs;
    std::vector<const Goal*> goals;
    for (const auto* a : sel)
        if (const Goal* g = ctx.config->goal_for(a->column)) {
            goal_attrs.push_back(a);
            goals.push_back(g);
        }
    if (goal_attrs.empty()) return std::nullopt;
    const auto days = detail::recent_days(ctx);
    if (days.empty()) return std::nullopt;
    const auto& reg = *ctx.templates;

    // 0 = reached, 1 = missed; map order puts reached first on truth ties.
    std::map<std::vector<int>, long long> combos;
    std::vector<int> key(goal_attrs.size());
    for (std::size_t d : days) {
        for (std::size_t j = 0; j < goal_attrs.size(); ++j)
            key[j] = goals[j]->satisfied(goal_attrs[j]->series->points[d].value) ? 0 : 1;
        ++combos[key];
    }
    std::vector<std::vector<int>> keys;
    std::vector<double> ratios;
    for (const auto& [k, c] : combos) {
        keys.push_back(k);
        ratios.push_back(static_cast<double>(c) / static_cast<double>(days.size()));
    }
    const auto pick = detail::pick_best(ctx.vocab->quantifiers, ratios);
    if (!pick) return std::nullopt;
    const auto& winner = keys[pick->index];
    const double r = ratios[pick->index];

    Summary s;
    s.type = ProtoformType::GoalEvaluation;
    s.quantifier = pick->pair.quantifier;
    std::vector<std::string> clauses;
    std::vector<double> marginals;
    for (std::size_t j = 0; j < goal_attrs.size(); ++j) {
        const bool met = winner[j] == 0;
        const std::string& outcome = ctx.vocab->set(summarizer_set::goal)[met ? 0 : 1];
        clauses.push_back(
            reg.render(met ? "goal_eval.clause_met" : "goal_eval.clause_missed",
                       detail::with(detail::base_slots(ctx), {{"attribute", goal_attrs[j]->display},
                                                              {"goal", goals[j]->label}})));
        s.attributes.push_back(goal_attrs[j]->column);
        s.summarizers.push_back(outcome);
        s.conclusion.push_back(outcome);

        // The goal region's share of the whole history measures how selective
        // the stated predicate is, whichever outcome the sentence reports.
        const auto& pts = goal_attrs[j]->series->points;
        long long inside = 0;
        for (const auto& p : pts) inside += goals[j]->satisfied(p.value) ? 1 : 0;
        s.basis.imprecision_ratios.push_back(static_cast<double>(inside) /
                                             static_cast<double>(pts.size()));

        long long hits = 0;
        for (std::size_t d : days)
            hits += (goals[j]->satisfied(goal_attrs[j]->series->points[d].value) ? 0 : 1) ==
                            winner[j]
                        ? 1
                        : 0;
        marginals.push_back(static_cast<double>(hits) / static_cast<double>(days.size()));
    }
    const char* frame = ctx.gran().windowed() ? "goal_eval.frame" : "goal_eval.frame_bare";
    s.text = text::capitalize(
        reg.render(frame, detail::with(detail::base_slots(ctx),
                                       {{"quantifier", *s.quantifier},
                                        {"clauses", text::join_clauses(clauses)}})));
    s.basis.quantified = true;
    s.basis.truth = pick->pair.truth;
    s.basis.covering = r;
    s.basis.attribute_ratios =
        goal_attrs.size() > 1 ? marginals : std::vector<double>{};
    s.basis.coverage_ratio = r;
    s.basis.summarizer_count = static_cast<int>(goal_attrs.size());
    if (ctx.gran().windowed()) s.hints.focus_window = ctx.window_count();
    for (std::size_t d : days) {
        bool match = true;
        for (std::size_t j = 0; j < goal_attrs.size(); ++j)
            if ((goals[j]->satisfied(goal_attrs[j]->series->points[d].value) ? 0 : 1) != winner[j])
                match = false;
        if (match) s.hints.highlight_days.push_back(d);
    }
    return s;
}

/// "Your calorie intake was about the same in week 24 as it was in week 12."
inline std::optional<Summary> gen_comparison(const SummaryContext& ctx, const AttrSel& sel) {
    if (!ctx.gran().windowed() || ctx.window_count() < 2) return std::nullopt;
    const auto& reg = *ctx.templates;
    const std::size_t recent = ctx.window_count();      // 1-based
    const std::size_t earlier = ctx.window_count() / 2;  // 1-based partner
    const auto rd = detail::window_days(ctx, recent - 1);
    const auto ed = detail::window_days(ctx, earlier - 1);

    Summary s;
    s.type = ProtoformType::Comparison;
    std::vector<std::string> clauses;
    bool all_same = true;
    for (const auto* a : sel) {
        const std::string cls = detail::compare_values(detail::window_mean(*a, rd),
                                                       detail::window_mean(*a, ed),
                                                       ctx.config->comparison_epsilon);
        all_same = all_same && cls == "about the same";
        clauses.push_back(reg.render(
            "comparison.clause",
            detail::with(detail::base_slots(ctx), {{"attribute", a->display}, {"summarizer", cls}})));
        s.attributes.push_back(a->column);
        s.summarizers.push_back(cls);
        s.conclusion.push_back(cls);
    }
    const char* frame = all_same ? "comparison.frame_as" : "comparison.frame_than";
    s.text = text::capitalize(reg.render(
        frame, detail::with(detail::base_slots(ctx),
                            {{"clauses", text::join_clauses(clauses)},
                             {"recent", std::to_string(recent)},
                             {"earlier", std::to_string(earlier)},
                             {"pronoun", sel.size() == 1 ? "it was" : "they were"}})));
    s.basis.quantified = false;
    s.basis.covering = 1.0;
    s.basis.attribute_ratios = std::vector<double>{};
    s.basis.coverage_ratio = 1.0;
    s.basis.summarizer_count = static_cast<int>(sel.size());
    s.hints.focus_window = recent;
    s.hints.other_window = earlier;
    return s;
}

/// "You did about the same overall with keeping your calorie intake low in
/// week 24 than you did in week 12."
inline std::optional<Summary> gen_goal_comparison(const SummaryContext& ctx, const AttrSel& sel) {
    if (!ctx.gran().windowed() || ctx.window_count() < 2) return std::nullopt;
    AttrSel goal_attrs;
    std::vector<const Goal*> goals;
    for (const auto* a : sel)
        if (const Goal* g = ctx.config->goal_for(a->column)) {
            goal_attrs.push_back(a);
            goals.push_back(g);
        }
    if (goal_attrs.empty()) return std::nullopt;
    const auto& reg = *ctx.templates;
    const std::size_t recent = ctx.window_count();
    const std::size_t earlier = ctx.window_count() / 2;
    const auto rd = detail::window_days(ctx, recent - 1);
    const auto ed = detail::window_days(ctx, earlier - 1);

    Summary s;
    s.type = ProtoformType::GoalComparison;
    std::vector<std::string> clauses;
    for (std::size_t j = 0; j < goal_attrs.size(); ++j) {
        long long recent_hits = 0, earlier_hits = 0;
        for (std::size_t d : rd)
            recent_hits += goals[j]->satisfied(goal_attrs[j]->series->points[d].value) ? 1 : 0;
        for (std::size_t d : ed)
            earlier_hits += goals[j]->satisfied(goal_attrs[j]->series->points[d].value) ? 1 : 0;
        const auto& set = ctx.vocab->set(summarizer_set::goal_comparison);
        const std::string& cls = recent_hits == earlier_hits ? set[2]
                                 : recent_hits > earlier_hits ? set[0]
                                                              : set[1];
        clauses.push_back(reg.render(
            "goal_comparison.clause",
            detail::with(detail::base_slots(ctx), {{"attribute", goal_attrs[j]->display},
                                                   {"summarizer", cls},
                                                   {"goal", goals[j]->label}})));
        s.attributes.push_back(goal_attrs[j]->column);
        s.summarizers.push_back(cls);
        s.conclusion.push_back(cls);
    }
    s.text = text::capitalize(
        reg.render("goal_comparison.frame",
                   detail::with(detail::base_slots(ctx), {{"clauses", text::join_clauses(clauses)},
                                                          {"recent", std::to_string(recent)},
                                                          {"earlier", std::to_string(earlier)}})));
    s.basis.quantified = false;
    s.basis.covering = 1.0;
    s.basis.attribute_ratios = std::vector<double>{};
    s.basis.coverage_ratio = 1.0;
    s.basis.summarizer_count = static_cast<int>(goal_attrs.size());
    s.hints.focus_window = recent;
    s.hints.other_window = earlier;
    return s;
}

/// "Half of the time, your calorie intake increases from one day to the next."
inline std::optional<Summary> gen_trend(const SummaryContext& ctx, const AttrSel& sel) {
    const auto& reg = *ctx.templates;
    const auto& trend_set = ctx.vocab->set(summarizer_set::trend);  // increased/decreased/stayed

    // Joint direction class per consecutive-calendar transition.
    std::vector<std::size_t> starts;
    std::map<std::vector<int>, long long> combos;
    std::vector<std::vector<int>> per_start;
    const auto& pts = sel.front()->series->points;
    for (std::size_t i = 0; i + 1 < ctx.day_count(); ++i) {
        if (day_number(pts[i + 1].date) != day_number(pts[i].date) + 1) continue;
        std::vector<int> key(sel.size());
        for (std::size_t j = 0; j < sel.size(); ++j) {
            const double delta =
                sel[j]->series->points[i + 1].value - sel[j]->series->points[i].value;
            key[j] = std::abs(delta) <= ctx.config->trend_epsilon ? 2 : (delta > 0.0 ? 0 : 1);
        }
        ++combos[key];
        starts.push_back(i);
        per_start.push_back(key);
    }
    if (starts.empty()) return std::nullopt;
    const auto total = static_cast<double>(starts.size());

    std::vector<std::vector<int>> keys;
    std::vector<double> ratios;
    for (const auto& [k, c] : combos) {
        keys.push_back(k);
        ratios.push_back(static_cast<double>(c) / total);
    }
    const auto pick = detail::pick_best(ctx.vocab->quantifiers, ratios);
    const auto& winner = keys[pick->index];
    const double r = ratios[pick->index];

    Summary s;
    s.type = ProtoformType::StandardTrend;
    s.quantifier = pick->pair.quantifier;
    std::vector<std::string> clauses;
    for (std::size_t j = 0; j < sel.size(); ++j) {
        const std::string& cls = trend_set[static_cast<std::size_t>(winner[j])];
        clauses.push_back(
            reg.render("trend.clause",
                       detail::with(detail::base_slots(ctx),
                                    {{"attribute", sel[j]->display},
                                     {"verb", reg.at("trend.verb." + cls)}})));
        s.attributes.push_back(sel[j]->column);
        s.summarizers.push_back(cls);
        s.conclusion.push_back(cls);
    }
    s.text = text::capitalize(
        reg.render("trend.frame", detail::with(detail::base_slots(ctx),
                                               {{"quantifier", *s.quantifier},
                                                {"clauses", text::join_clauses(clauses)}})));
    s.basis.quantified = true;
    s.basis.truth = pick->pair.truth;
    s.basis.covering = r;
    // All direction combinations, observed or not; an empty one marks the
    // claim as fully imprecise by convention.
    std::size_t combo_count = 1;
    for (std::size_t j = 0; j < sel.size(); ++j) combo_count *= 3;
    std::vector<int> probe(sel.size(), 0);
    for (std::size_t c = 0; c < combo_count; ++c) {
        std::size_t rem = c;
        for (std::size_t j = 0; j < sel.size(); ++j) {
            probe[j] = static_cast<int>(rem % 3);
            rem /= 3;
        }
        auto it = combos.find(probe);
        s.basis.imprecision_ratios.push_back(
            it == combos.end() ? 0.0 : static_cast<double>(it->second) / total);
    }
    if (sel.size() > 1) {
        std::vector<double> marg;
        for (std::size_t j = 0; j < sel.size(); ++j) {
            long long hits = 0;
            for (const auto& k : per_start) hits += k[j] == winner[j] ? 1 : 0;
            marg.push_back(static_cast<double>(hits) / total);
        }
        s.basis.attribute_ratios = marg;
    } else {
        s.basis.attribute_ratios = std::vector<double>{};
    }
    s.basis.coverage_ratio = r;
    s.basis.summarizer_count = static_cast<int>(sel.size());
    for (std::size_t i = 0; i < starts.size(); ++i)
        if (per_start[i] == winner) s.hints.highlight_days.push_back(starts[i]);
    return s;
}

// ---- similar-window patterns ------------------------------------------------

struct ClusterAnalysis {
    std::vector<WindowTuple> tuples;
    ThresholdEstimate estimate;
    std::vector<Cluster> clusters;
    std::size_t last_cluster = 0;  // index of the cluster holding the newest window
};

inline std::optional<ClusterAnalysis> analyze_clusters(const SummaryContext& ctx,
                                                       const AttrSel& sel) {
    if (!ctx.gran().windowed() || ctx.window_count() < 2) return std::nullopt;
    ClusterAnalysis a;
    std::vector<const SymbolicSeries*> day_series;
    for (const auto* s : sel) day_series.push_back(&s->disc.days);
    a.tuples = make_window_tuples(day_series, ctx.gran().tw_len);
    a.estimate =
        estimate_threshold(a.tuples, ctx.config->squeezer_sample_fraction, ctx.config->rng_seed);
    a.clusters = squeezer(a.tuples, a.estimate.threshold);
    const std::size_t last = ctx.window_count() - 1;
    for (std::size_t c = 0; c < a.clusters.size(); ++c)
        for (std::size_t m : a.clusters[c].members)
            if (m == last) a.last_cluster = c;
    return a;
}

/// Direction classes of each attribute from window w to w+1, as
/// rose/dropped/stayed the same.
inline std::vector<std::string> window_change(const SummaryContext& ctx, const AttrSel& sel,
                                              std::size_t w) {
    const auto& followup = ctx.vocab->set(summarizer_set::cluster_followup);
    const auto from = detail::window_days(ctx, w);
    const auto to = detail::window_days(ctx, w + 1);
    std::vector<std::string> out;
    for (const auto* a : sel) {
        const std::string cls = detail::compare_values(detail::window_mean(*a, to),
                                                       detail::window_mean(*a, from),
                                                       ctx.config->comparison_epsilon);
        out.push_back(cls == "higher" ? followup[0] : cls == "lower" ? followup[1] : followup[2]);
    }
    return out;
}

/// "In week 24, your calorie intake was moderate, then very low, ... During
/// half of the weeks similar to week 24, your calorie intake dropped the
/// next week."
inline std::optional<Summary> gen_cluster(const SummaryContext& ctx, const AttrSel& sel) {
    const auto analysis = analyze_clusters(ctx, sel);
    if (!analysis) return std::nullopt;
    const auto& reg = *ctx.templates;
    const auto& cluster = analysis->clusters[analysis->last_cluster];
    const auto followers = pair_with_followers(cluster, ctx.window_count());
    if (followers.empty()) return std::nullopt;
    const auto& followup = ctx.vocab->set(summarizer_set::cluster_followup);

    std::map<std::vector<std::string>, long long> combos;
    std::vector<std::vector<std::string>> per_follower;
    for (const auto& [m, next] : followers) {
        (void)next;
        auto change = window_change(ctx, sel, m);
        ++combos[change];
        per_follower.push_back(std::move(change));
    }
    // Candidates in followup-set order so earlier classes win ties.
    std::vector<std::vector<std::string>> keys;
    std::vector<double> ratios;
    const auto total = static_cast<double>(followers.size());
    {
        std::vector<std::vector<std::string>> raw;
        for (const auto& [k, c] : combos) raw.push_back(k);
        auto class_rank = [&](const std::string& cls) {
            for (std::size_t i = 0; i < followup.size(); ++i)
                if (followup[i] == cls) return i;
            return followup.size();
        };
        std::sort(raw.begin(), raw.end(), [&](const auto& x, const auto& y) {
            for (std::size_t j = 0; j < x.size(); ++j)
                if (class_rank(x[j]) != class_rank(y[j])) return class_rank(x[j]) < class_rank(y[j]);
            return false;
        });
        for (const auto& k : raw) {
            keys.push_back(k);
            ratios.push_back(static_cast<double>(combos[k]) / total);
        }
    }
    const auto pick = detail::pick_best(ctx.vocab->quantifiers, ratios);
    const auto& winner = keys[pick->index];
    const double r = ratios[pick->index];

    Summary s;
    s.type = ProtoformType::ClusterBasedPattern;
    s.quantifier = pick->pair.quantifier;
    const std::size_t recent = ctx.window_count();
    const auto rd = detail::window_days(ctx, recent - 1);

    std::vector<std::string> describe_clauses;
    int step_tokens = 0;
    for (const auto* a : sel) {
        std::vector<std::string> labels;
        for (std::size_t d : rd) labels.push_back(a->label_at(d));
        const auto steps = text::compress_runs(labels);
        step_tokens += static_cast<int>(steps.size());
        for (const auto& st : steps) s.summarizers.push_back(st);
        describe_clauses.push_back(
            reg.render("cluster.describe.clause",
                       detail::with(detail::base_slots(ctx),
                                    {{"attribute", a->display}, {"steps", text::join_steps(steps)}})));
    }
    const std::string describe = text::capitalize(reg.render(
        "cluster.describe.frame",
        detail::with(detail::base_slots(ctx), {{"clauses", text::join_clauses(describe_clauses)},
                                               {"recent", std::to_string(recent)}})));

    std::vector<std::string> clauses;
    for (std::size_t j = 0; j < sel.size(); ++j) {
        clauses.push_back(reg.render(
            "cluster.clause", detail::with(detail::base_slots(ctx), {{"attribute", sel[j]->display},
                                                                     {"verb", winner[j]}})));
        s.attributes.push_back(sel[j]->column);
        s.summarizers.push_back(winner[j]);
        s.conclusion.push_back(winner[j]);
    }
    const std::string main = text::capitalize(
        reg.render("cluster.frame",
                   detail::with(detail::base_slots(ctx), {{"quantifier", *s.quantifier},
                                                          {"clauses", text::join_clauses(clauses)},
                                                          {"recent", std::to_string(recent)}})));
    s.text = describe + " " + main;
    s.basis.quantified = true;
    s.basis.truth = pick->pair.truth;
    s.basis.covering = r;
    // All direction combinations over the followed windows.
    std::size_t combo_count = 1;
    for (std::size_t j = 0; j < sel.size(); ++j) combo_count *= followup.size();
    std::vector<std::string> probe(sel.size());
    for (std::size_t c = 0; c < combo_count; ++c) {
        std::size_t rem = c;
        for (std::size_t j = 0; j < sel.size(); ++j) {
            probe[j] = followup[rem % followup.size()];
            rem /= followup.size();
        }
        auto it = combos.find(probe);
        s.basis.imprecision_ratios.push_back(
            it == combos.end() ? 0.0 : static_cast<double>(it->second) / total);
    }
    if (sel.size() > 1) {
        std::vector<double> marg;
        for (std::size_t j = 0; j < sel.size(); ++j) {
            long long hits = 0;
            for (const auto& k : per_follower) hits += k[j] == winner[j] ? 1 : 0;
            marg.push_back(static_cast<double>(hits) / total);
        }
        s.basis.attribute_ratios = marg;
    } else {
        s.basis.attribute_ratios = std::vector<double>{};
    }
    s.basis.coverage_ratio = r;
    s.basis.summarizer_count = step_tokens + static_cast<int>(sel.size());
    s.hints.focus_window = recent;
    for (std::size_t m : cluster.members) s.hints.member_windows.push_back(m + 1);
    return s;
}

/// "The last time you had a week similar to week 24, your calorie intake
/// dropped the next week."
inline std::optional<Summary> gen_pattern(const SummaryContext& ctx, const AttrSel& sel) {
    const auto analysis = analyze_clusters(ctx, sel);
    if (!analysis) return std::nullopt;
    const auto& reg = *ctx.templates;
    const auto& cluster = analysis->clusters[analysis->last_cluster];
    const std::size_t last = ctx.window_count() - 1;
    std::optional<std::size_t> similar;
    for (std::size_t m : cluster.members)
        if (m < last && (!similar || m > *similar)) similar = m;
    if (!similar) return std::nullopt;

    const auto change = window_change(ctx, sel, *similar);
    Summary s;
    s.type = ProtoformType::StandardPattern;
    std::vector<std::string> clauses;
    for (std::size_t j = 0; j < sel.size(); ++j) {
        clauses.push_back(reg.render(
            "pattern.clause", detail::with(detail::base_slots(ctx), {{"attribute", sel[j]->display},
                                                                     {"verb", change[j]}})));
        s.attributes.push_back(sel[j]->column);
        s.summarizers.push_back(change[j]);
        s.conclusion.push_back(change[j]);
    }
    s.text = text::capitalize(
        reg.render("pattern.frame",
                   detail::with(detail::base_slots(ctx),
                                {{"clauses", text::join_clauses(clauses)},
                                 {"recent", std::to_string(ctx.window_count())}})));
    s.basis.quantified = false;
    s.basis.covering = 1.0;
    s.basis.attribute_ratios = std::vector<double>{};
    s.basis.coverage_ratio = 1.0;
    s.basis.summarizer_count = static_cast<int>(sel.size());
    s.hints.focus_window = ctx.window_count();
    s.hints.other_window = *similar + 1;
    return s;
}

// ---- sequence rules ---------------------------------------------------------

/// Per-attribute condition stream and joint stream over consecutive runs.
inline void rule_streams(const SummaryContext& ctx, const AttrSel& sel, std::size_t condition,
                         std::vector<std::vector<std::string>>& cond_segments,
                         std::vector<std::vector<std::string>>& joint_segments) {
    for (const auto& run : detail::consecutive_runs(ctx)) {
        std::vector<std::string> cond, joint;
        for (std::size_t d : run) {
            cond.emplace_back(1, static_cast<char>('a' + sel[condition]->letter_at(d)));
            std::vector<char> letters;
            for (const auto* a : sel) letters.push_back(static_cast<char>('a' + a->letter_at(d)));
            joint.push_back(joint_token(letters));
        }
        cond_segments.push_back(std::move(cond));
        joint_segments.push_back(std::move(joint));
    }
}

inline std::vector<int> split_joint(const std::string& token) {
    std::vector<int> out;
    for (char c : token)
        if (c != '-') out.push_back(c - 'a');
    return out;
}

/// "There is 100% confidence that, when your calorie intake follows the
/// pattern of being very high, your calorie intake tends to be very high
/// the next day."
inline std::vector<Summary> gen_if_then(const SummaryContext& ctx, const AttrSel& sel) {
    std::vector<Summary> out;
    if (!ctx.gran().windowed()) return out;
    const auto& reg = *ctx.templates;

    std::vector<std::size_t> condition_ids;
    if (sel.size() == 1 || ctx.config->joint_prefix_rules)
        condition_ids.push_back(sel.size());  // sentinel: joint condition
    else
        for (std::size_t i = 0; i < sel.size(); ++i) condition_ids.push_back(i);

    for (std::size_t ci : condition_ids) {
        const bool joint_condition = ci == sel.size();
        const std::size_t cond_attr = joint_condition ? 0 : ci;
        std::vector<std::vector<std::string>> cond_segments, joint_segments;
        rule_streams(ctx, sel, cond_attr, cond_segments, joint_segments);
        const auto& condition_input = joint_condition ? joint_segments : cond_segments;
        const auto rules =
            projected_rules(condition_input, joint_segments, ctx.config->max_pattern_len,
                            ctx.config->min_support, ctx.config->min_confidence);
        for (const auto& rule : rules) {
            Summary s;
            s.type = ProtoformType::IfThenPattern;
            s.confidence = rule.confidence();
            s.condition_attribute = joint_condition ? std::optional<std::string>{}
                                                    : std::optional<std::string>{sel[ci]->column};
            for (const auto* a : sel) s.attributes.push_back(a->column);

            // Condition clause(s).
            std::vector<std::string> prefix_clauses;
            if (joint_condition) {
                std::vector<std::vector<std::string>> steps(sel.size());
                for (const auto& tok : rule.prefix) {
                    const auto letters = split_joint(tok);
                    for (std::size_t j = 0; j < sel.size(); ++j) {
                        const auto& label = sel[j]->labels[static_cast<std::size_t>(letters[j])];
                        steps[j].push_back(label);
                        s.summarizers.push_back(label);
                        s.basis.imprecision_ratios.push_back(
                            detail::global_class_ratio(*sel[j], letters[j]));
                    }
                }
                for (std::size_t j = 0; j < sel.size(); ++j)
                    prefix_clauses.push_back(reg.render(
                        "if_then.prefix_clause",
                        detail::with(detail::base_slots(ctx),
                                     {{"attribute", sel[j]->display},
                                      {"steps", text::join_steps(steps[j])}})));
            } else {
                std::vector<std::string> steps;
                for (const auto& tok : rule.prefix) {
                    const int letter = tok[0] - 'a';
                    const auto& label = sel[ci]->labels[static_cast<std::size_t>(letter)];
                    steps.push_back(label);
                    s.summarizers.push_back(label);
                    s.basis.imprecision_ratios.push_back(
                        detail::global_class_ratio(*sel[ci], letter));
                }
                prefix_clauses.push_back(reg.render(
                    "if_then.prefix_clause",
                    detail::with(detail::base_slots(ctx), {{"attribute", sel[ci]->display},
                                                           {"steps", text::join_steps(steps)}})));
            }

            // Conclusion clauses over the joint stream.
            std::vector<std::vector<std::string>> suffix_steps(sel.size());
            for (const auto& tok : rule.suffix) {
                const auto letters = split_joint(tok);
                for (std::size_t j = 0; j < sel.size(); ++j) {
                    const auto& label = sel[j]->labels[static_cast<std::size_t>(letters[j])];
                    suffix_steps[j].push_back(label);
                    s.summarizers.push_back(label);
                    s.basis.imprecision_ratios.push_back(
                        detail::global_class_ratio(*sel[j], letters[j]));
                }
            }
            std::vector<std::string> suffix_clauses;
            for (std::size_t j = 0; j < sel.size(); ++j)
                suffix_clauses.push_back(reg.render(
                    "if_then.suffix_clause",
                    detail::with(detail::base_slots(ctx),
                                 {{"attribute", sel[j]->display},
                                  {"steps", text::join_steps(suffix_steps[j])}})));

            s.text = text::capitalize(reg.render(
                "if_then.frame",
                detail::with(detail::base_slots(ctx),
                             {{"confidence", detail::percent_text(*s.confidence)},
                              {"prefix_clauses", text::join_clauses(prefix_clauses)},
                              {"suffix_clauses", text::join_clauses(suffix_clauses)}})));

            for (const auto& tok : rule.prefix) s.conclusion.push_back("if:" + tok);
            for (const auto& tok : rule.suffix) s.conclusion.push_back("then:" + tok);

            const double support = rule.support();
            const auto best = best_quantifier(ctx.vocab->quantifiers, "", support);
            s.quantifier = best.quantifier;
            s.basis.quantified = true;
            s.basis.truth = best.truth;
            s.basis.covering = support;
            s.basis.coverage_ratio = support;
            s.basis.summarizer_count = static_cast<int>(s.summarizers.size());

            // Occurrence days, for provenance charts.
            const auto runs = detail::consecutive_runs(ctx);
            const std::size_t plen = rule.prefix.size(), slen = rule.suffix.size();
            for (std::size_t si = 0; si < runs.size(); ++si) {
                const auto& condv = condition_input[si];
                const auto& jointv = joint_segments[si];
                for (std::size_t st = 0; st + plen + slen <= condv.size(); ++st) {
                    bool match = true;
                    for (std::size_t k = 0; k < plen && match; ++k)
                        match = condv[st + k] == rule.prefix[k];
                    for (std::size_t k = 0; k < slen && match; ++k)
                        match = jointv[st + plen + k] == rule.suffix[k];
                    if (match)
                        for (std::size_t k = 0; k < plen + slen; ++k)
                            s.hints.highlight_days.push_back(runs[si][st + k]);
                }
            }
            std::sort(s.hints.highlight_days.begin(), s.hints.highlight_days.end());
            s.hints.highlight_days.erase(
                std::unique(s.hints.highlight_days.begin(), s.hints.highlight_days.end()),
                s.hints.highlight_days.end());
            out.push_back(std::move(s));
        }
    }
    return out;
}

/// "There is 100% confidence that, when your calorie intake follows the
/// pattern of being very high on a Saturday, your calorie intake tends to be
/// very high the next Sunday."
inline std::vector<Summary> gen_day_if_then(const SummaryContext& ctx, const AttrSel& sel) {
    std::vector<Summary> out;
    if (!ctx.gran().windowed()) return out;
    const auto& reg = *ctx.templates;

    // Aligned day stream with weekday labels and gap flags.
    DayEventStream joint;
    const auto& pts = sel.front()->series->points;
    for (std::size_t i = 0; i < ctx.day_count(); ++i) {
        std::vector<char> letters;
        for (const auto* a : sel) letters.push_back(static_cast<char>('a' + a->letter_at(i)));
        joint.tokens.push_back(joint_token(letters));
        joint.weekdays.push_back(iso_weekday(pts[i].date));
        joint.next_consecutive.push_back(
            i + 1 < ctx.day_count() &&
            day_number(pts[i + 1].date) == day_number(pts[i].date) + 1);
    }

    std::vector<std::size_t> condition_ids;
    if (sel.size() == 1 || ctx.config->joint_prefix_rules)
        condition_ids.push_back(sel.size());
    else
        for (std::size_t i = 0; i < sel.size(); ++i) condition_ids.push_back(i);

    for (std::size_t ci : condition_ids) {
        const bool joint_condition = ci == sel.size();
        std::vector<std::string> cond_tokens;
        if (joint_condition) {
            cond_tokens = joint.tokens;
        } else {
            for (std::size_t i = 0; i < ctx.day_count(); ++i)
                cond_tokens.emplace_back(1, static_cast<char>('a' + sel[ci]->letter_at(i)));
        }
        const auto rules =
            day_projected_rules(joint, cond_tokens, ctx.config->max_pattern_len,
                                ctx.config->min_support, ctx.config->min_confidence);
        for (const auto& rule : rules) {
            Summary s;
            s.type = ProtoformType::DayIfThenPattern;
            s.confidence = rule.confidence();
            s.condition_attribute = joint_condition ? std::optional<std::string>{}
                                                    : std::optional<std::string>{sel[ci]->column};
            for (const auto* a : sel) s.attributes.push_back(a->column);

            std::vector<std::string> prefix_clauses;
            auto add_prefix = [&](std::size_t attr, const std::vector<std::string>& tokens,
                                  bool joint_tok) {
                std::vector<std::string> steps;
                for (std::size_t p = 0; p < tokens.size(); ++p) {
                    const int letter = joint_tok ? split_joint(tokens[p])[attr]
                                                 : tokens[p][0] - 'a';
                    const auto& label = sel[attr]->labels[static_cast<std::size_t>(letter)];
                    steps.push_back(reg.render(
                        "day_if_then.prefix_step",
                        {{"summarizer", label},
                         {"weekday", weekday_name(rule.prefix_weekdays[p])}}));
                    s.summarizers.push_back(label);
                    s.basis.imprecision_ratios.push_back(
                        detail::global_class_ratio(*sel[attr], letter));
                }
                prefix_clauses.push_back(reg.render(
                    "if_then.prefix_clause",
                    detail::with(detail::base_slots(ctx), {{"attribute", sel[attr]->display},
                                                           {"steps", text::join_steps(steps)}})));
            };
            if (joint_condition)
                for (std::size_t j = 0; j < sel.size(); ++j) add_prefix(j, rule.prefix, true);
            else
                add_prefix(ci, rule.prefix, false);

            std::vector<std::string> suffix_clauses;
            for (std::size_t j = 0; j < sel.size(); ++j) {
                std::vector<std::string> steps;
                for (std::size_t p = 0; p < rule.suffix.size(); ++p) {
                    const int letter = split_joint(rule.suffix[p])[j];
                    const auto& label = sel[j]->labels[static_cast<std::size_t>(letter)];
                    steps.push_back(reg.render(
                        "day_if_then.suffix_step",
                        {{"summarizer", label},
                         {"weekday", weekday_name(rule.suffix_weekdays[p])}}));
                    s.summarizers.push_back(label);
                    s.basis.imprecision_ratios.push_back(
                        detail::global_class_ratio(*sel[j], letter));
                }
                suffix_clauses.push_back(reg.render(
                    "if_then.suffix_clause",
                    detail::with(detail::base_slots(ctx),
                                 {{"attribute", sel[j]->display},
                                  {"steps", text::join_steps(steps)}})));
            }

            s.text = text::capitalize(reg.render(
                "day_if_then.frame",
                detail::with(detail::base_slots(ctx),
                             {{"confidence", detail::percent_text(*s.confidence)},
                              {"prefix_clauses", text::join_clauses(prefix_clauses)},
                              {"suffix_clauses", text::join_clauses(suffix_clauses)}})));

            for (std::size_t p = 0; p < rule.prefix.size(); ++p)
                s.conclusion.push_back("if:" + std::to_string(rule.prefix_weekdays[p]) + ":" +
                                       rule.prefix[p]);
            for (std::size_t p = 0; p < rule.suffix.size(); ++p)
                s.conclusion.push_back("then:" + std::to_string(rule.suffix_weekdays[p]) + ":" +
                                       rule.suffix[p]);

            const double support = rule.support();
            const auto best = best_quantifier(ctx.vocab->quantifiers, "", support);
            s.quantifier = best.quantifier;
            s.basis.quantified = true;
            s.basis.truth = best.truth;
            s.basis.covering = support;
            s.basis.coverage_ratio = support;
            s.basis.summarizer_count = static_cast<int>(s.summarizers.size());
            s.hints.weekday = weekday_name(rule.prefix_weekdays.front());

            // Occurrence days: stream position == day index here.
            const std::size_t plen = rule.prefix.size(), slen = rule.suffix.size();
            const std::size_t total = plen + slen;
            for (std::size_t st = 0; st + total <= joint.tokens.size(); ++st) {
                bool match = true;
                for (std::size_t k = 0; k + 1 < total && match; ++k)
                    match = joint.next_consecutive[st + k];
                for (std::size_t k = 0; k < plen && match; ++k)
                    match = cond_tokens[st + k] == rule.prefix[k] &&
                            joint.weekdays[st + k] == rule.prefix_weekdays[k];
                for (std::size_t k = 0; k < slen && match; ++k)
                    match = joint.tokens[st + plen + k] == rule.suffix[k] &&
                            joint.weekdays[st + plen + k] == rule.suffix_weekdays[k];
                if (match)
                    for (std::size_t k = 0; k < total; ++k)
                        s.hints.highlight_days.push_back(st + k);
            }
            std::sort(s.hints.highlight_days.begin(), s.hints.highlight_days.end());
            s.hints.highlight_days.erase(
                std::unique(s.hints.highlight_days.begin(), s.hints.highlight_days.end()),
                s.hints.highlight_days.end());
            out.push_back(std::move(s));
        }
    }
    return out;
}

// ---- whole-history observations ---------------------------------------------

/// Strongest class combination per weekday across the whole history.
struct DayConclusion {
    int weekday = 0;
    std::vector<int> letters;
    double ratio = 0.0;  // share of that weekday's days
    std::vector<std::size_t> matching_days;
    long long weekday_count = 0;
};

inline std::vector<DayConclusion> day_based_conclusions(const SummaryContext& ctx,
                                                        const AttrSel& sel) {
    std::vector<DayConclusion> out;
    const auto& pts = sel.front()->series->points;
    for (int wd = 1; wd <= 7; ++wd) {
        std::vector<std::size_t> days;
        for (std::size_t i = 0; i < ctx.day_count(); ++i)
            if (iso_weekday(pts[i].date) == wd) days.push_back(i);
        if (days.empty()) continue;
        const auto combos = detail::observed_combos(sel, days);
        std::vector<int> best_key;
        long long best_count = -1;
        for (const auto& [k, c] : combos)
            if (c > best_count) {  // map order resolves ties to the lower letters
                best_key = k;
                best_count = c;
            }
        DayConclusion d;
        d.weekday = wd;
        d.letters = best_key;
        d.weekday_count = static_cast<long long>(days.size());
        d.ratio = static_cast<double>(best_count) / static_cast<double>(days.size());
        for (std::size_t i : days) {
            bool match = true;
            for (std::size_t j = 0; j < sel.size(); ++j)
                if (sel[j]->letter_at(i) != best_key[j]) match = false;
            if (match) d.matching_days.push_back(i);
        }
        out.push_back(std::move(d));
    }
    return out;
}

/// "Your calorie intake tends to be low on Tuesdays."
inline std::vector<Summary> gen_day_based(const SummaryContext& ctx, const AttrSel& sel) {
    std::vector<Summary> out;
    const auto& reg = *ctx.templates;
    for (const auto& d : day_based_conclusions(ctx, sel)) {
        const auto best = best_quantifier(ctx.vocab->quantifiers, "", d.ratio);
        if (best.truth < ctx.config->emission_threshold) continue;

        Summary s;
        s.type = ProtoformType::DayBasedPattern;
        s.quantifier = best.quantifier;
        std::vector<std::string> clauses;
        std::vector<double> marginals;
        std::vector<std::size_t> weekday_days;
        const auto& pts = sel.front()->series->points;
        for (std::size_t i = 0; i < ctx.day_count(); ++i)
            if (iso_weekday(pts[i].date) == d.weekday) weekday_days.push_back(i);
        for (std::size_t j = 0; j < sel.size(); ++j) {
            const auto& label = sel[j]->labels[static_cast<std::size_t>(d.letters[j])];
            clauses.push_back(reg.render(
                "day_based.clause",
                detail::with(detail::base_slots(ctx),
                             {{"attribute", sel[j]->display}, {"summarizer", label}})));
            s.attributes.push_back(sel[j]->column);
            s.summarizers.push_back(label);
            s.conclusion.push_back(label);
            s.basis.imprecision_ratios.push_back(detail::global_class_ratio(*sel[j], d.letters[j]));
            marginals.push_back(detail::marginal_ratio(*sel[j], weekday_days, d.letters[j]));
        }
        s.text = text::capitalize(
            reg.render("day_based.frame",
                       detail::with(detail::base_slots(ctx),
                                    {{"clauses", text::join_clauses(clauses)},
                                     {"weekdays", weekday_plural(d.weekday)}})));
        s.basis.quantified = true;
        s.basis.truth = best.truth;
        s.basis.covering = d.ratio;
        s.basis.attribute_ratios = sel.size() > 1 ? marginals : std::vector<double>{};
        s.basis.coverage_ratio = d.ratio;
        s.basis.summarizer_count = static_cast<int>(sel.size());
        s.hints.weekday = weekday_name(d.weekday);
        s.hints.highlight_days = d.matching_days;
        out.push_back(std::move(s));
    }
    return out;
}

/// One mined day-level co-occurrence between attributes.
struct GeneralRule {
    std::size_t ante_index = 0;  // into the selection
    int ante_letter = 0;
    std::vector<int> cons_letters;  // other attributes, selection order
    long long joint_count = 0;
    long long ante_count = 0;
    double confidence = 0.0;
    std::vector<std::size_t> matching_days;
};

inline std::vector<GeneralRule> general_rules(const SummaryContext& ctx, const AttrSel& sel) {
    std::vector<GeneralRule> out;
    if (sel.size() < 2) return out;
    const std::size_t total = ctx.day_count();
    if (total == 0) return out;

    for (std::size_t ai = 0; ai < sel.size(); ++ai) {
        AttrSel rest;
        for (std::size_t j = 0; j < sel.size(); ++j)
            if (j != ai) rest.push_back(sel[j]);
        for (int ka = 0; ka < static_cast<int>(sel[ai]->labels.size()); ++ka) {
            std::vector<std::size_t> subset;
            for (std::size_t i = 0; i < total; ++i)
                if (sel[ai]->letter_at(i) == ka) subset.push_back(i);
            if (subset.empty()) continue;
            const auto combos = detail::observed_combos(rest, subset);
            std::vector<int> best_key;
            long long best_count = -1;
            for (const auto& [k, c] : combos)
                if (c > best_count) {
                    best_key = k;
                    best_count = c;
                }
            GeneralRule g;
            g.ante_index = ai;
            g.ante_letter = ka;
            g.cons_letters = best_key;
            g.joint_count = best_count;
            g.ante_count = static_cast<long long>(subset.size());
            g.confidence = static_cast<double>(best_count) / static_cast<double>(subset.size());
            if (g.confidence + 1e-12 < ctx.config->min_confidence) continue;
            if (static_cast<double>(g.joint_count) / static_cast<double>(total) + 1e-12 <
                ctx.config->min_support)
                continue;
            for (std::size_t i : subset) {
                bool match = true;
                std::size_t rj = 0;
                for (std::size_t j = 0; j < sel.size(); ++j) {
                    if (j == ai) continue;
                    if (sel[j]->letter_at(i) != best_key[rj]) match = false;
                    ++rj;
                }
                if (match) g.matching_days.push_back(i);
            }
            out.push_back(std::move(g));
        }
    }
    return out;
}

/// "In general, if your calorie intake is high, then your carbohydrate intake
/// is high."
inline std::vector<Summary> gen_general_if_then(const SummaryContext& ctx, const AttrSel& sel) {
    std::vector<Summary> out;
    if (!ctx.gran().windowed()) return out;
    const auto& reg = *ctx.templates;
    const auto total = static_cast<double>(ctx.day_count());
    for (const auto& g : general_rules(ctx, sel)) {
        const auto* aa = sel[g.ante_index];
        const auto& ante_label = aa->labels[static_cast<std::size_t>(g.ante_letter)];

        Summary s;
        s.type = ProtoformType::GeneralIfThen;
        s.confidence = g.confidence;
        s.condition_attribute = aa->column;
        s.quantifier = best_quantifier(ctx.vocab->quantifiers, "", g.confidence).quantifier;
        s.summarizers.push_back(ante_label);
        s.conclusion.push_back(ante_label);
        const std::string ante_clause = reg.render(
            "general_if_then.clause",
            detail::with(detail::base_slots(ctx),
                         {{"attribute", aa->display}, {"summarizer", ante_label}}));

        std::vector<std::string> clauses;
        std::vector<double> global_ratios{detail::global_class_ratio(*aa, g.ante_letter)};
        std::size_t rj = 0;
        for (std::size_t j = 0; j < sel.size(); ++j) {
            s.attributes.push_back(sel[j]->column);
            if (j == g.ante_index) continue;
            const int letter = g.cons_letters[rj++];
            const auto& label = sel[j]->labels[static_cast<std::size_t>(letter)];
            clauses.push_back(reg.render(
                "general_if_then.clause",
                detail::with(detail::base_slots(ctx),
                             {{"attribute", sel[j]->display}, {"summarizer", label}})));
            s.summarizers.push_back(label);
            s.conclusion.push_back(label);
            global_ratios.push_back(detail::global_class_ratio(*sel[j], letter));
        }
        s.text = text::capitalize(
            reg.render("general_if_then.frame",
                       detail::with(detail::base_slots(ctx),
                                    {{"antecedent_clauses", ante_clause},
                                     {"clauses", text::join_clauses(clauses)}})));

        // Spread of conclusions seen alongside this antecedent class.
        AttrSel rest;
        for (std::size_t j = 0; j < sel.size(); ++j)
            if (j != g.ante_index) rest.push_back(sel[j]);
        std::vector<std::size_t> subset;
        for (std::size_t i = 0; i < ctx.day_count(); ++i)
            if (aa->letter_at(i) == g.ante_letter) subset.push_back(i);
        for (const auto& [k, c] : detail::observed_combos(rest, subset)) {
            (void)k;
            s.basis.imprecision_ratios.push_back(static_cast<double>(c) /
                                                 static_cast<double>(subset.size()));
        }

        const auto best = best_quantifier(ctx.vocab->quantifiers, "", g.confidence);
        s.basis.quantified = true;
        s.basis.truth = best.truth;
        s.basis.covering = g.confidence;
        s.basis.attribute_ratios = global_ratios;
        s.basis.coverage_ratio = static_cast<double>(g.joint_count) / total;
        s.basis.summarizer_count = static_cast<int>(sel.size());
        s.hints.highlight_days = g.matching_days;
        out.push_back(std::move(s));
    }
    return out;
}

/// Increase/decrease advice per attribute against the configured guideline,
/// judged on the most recent window's mean.
inline std::vector<std::pair<std::size_t, std::string>> goal_assist_directives(
    const SummaryContext& ctx, const AttrSel& sel) {
    std::vector<std::pair<std::size_t, std::string>> out;
    if (!ctx.config->guideline || !ctx.gran().windowed() || ctx.window_count() == 0) return out;
    const auto& dirs = ctx.vocab->set(summarizer_set::goal_assistance);  // increase/decrease
    const auto days = detail::recent_days(ctx);
    for (std::size_t j = 0; j < sel.size(); ++j) {
        auto it = ctx.config->guideline->ranges.find(sel[j]->column);
        if (it == ctx.config->guideline->ranges.end()) continue;
        const double mean = detail::window_mean(*sel[j], days);
        if (mean > it->second.second)
            out.emplace_back(j, dirs[1]);
        else if (mean < it->second.first)
            out.emplace_back(j, dirs[0]);
    }
    return out;
}

/// "In order to better follow the 2000-calorie diet, you should decrease
/// your calorie intake."
inline std::optional<Summary> gen_goal_assist(const SummaryContext& ctx, const AttrSel& sel) {
    const auto directives = goal_assist_directives(ctx, sel);
    if (directives.empty()) return std::nullopt;
    const auto& reg = *ctx.templates;

    Summary s;
    s.type = ProtoformType::GoalAssistance;
    std::vector<std::string> clauses;
    for (const auto& [j, direction] : directives) {
        clauses.push_back(reg.render(
            "goal_assist.clause",
            detail::with(detail::base_slots(ctx),
                         {{"attribute", sel[j]->display}, {"direction", direction}})));
        s.attributes.push_back(sel[j]->column);
        s.summarizers.push_back(direction);
        s.conclusion.push_back(direction);
    }
    s.text = text::capitalize(
        reg.render("goal_assist.frame",
                   detail::with(detail::base_slots(ctx),
                                {{"guideline", ctx.config->guideline->name},
                                 {"clauses", text::join_clauses(clauses)}})));
    s.basis.quantified = false;
    s.basis.summarizer_count = static_cast<int>(directives.size());
    s.hints.focus_window = ctx.window_count();
    return s;
}

/// Every individual summary for one attribute selection, in presentation
/// order. FullRange granularity keeps only the window-free forms.
inline std::vector<Summary> generate_individual(const SummaryContext& ctx, const AttrSel& sel) {
    std::vector<Summary> out;
    auto add = [&](std::optional<Summary> s) {
        if (s) out.push_back(std::move(*s));
    };
    auto add_all = [&](std::vector<Summary> v) {
        for (auto& s : v) out.push_back(std::move(s));
    };
    add(gen_eval_tw(ctx, sel));
    add(gen_eval_stw(ctx, sel));
    add_all(gen_eval_qualifier(ctx, sel));
    add(gen_goal_eval(ctx, sel));
    add(gen_comparison(ctx, sel));
    add(gen_goal_comparison(ctx, sel));
    add(gen_trend(ctx, sel));
    add(gen_cluster(ctx, sel));
    add(gen_pattern(ctx, sel));
    add_all(gen_if_then(ctx, sel));
    add_all(gen_day_if_then(ctx, sel));
    add_all(gen_day_based(ctx, sel));
    add_all(gen_general_if_then(ctx, sel));
    add(gen_goal_assist(ctx, sel));
    return out;
}

}  // namespace temposum
