#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "temposum/protoforms.hpp"

namespace temposum {

/// One cohort participant with their individually generated summaries over
/// the shared attribute set.
struct GroupMember {
    std::string id;
    const SummaryContext* ctx = nullptr;
    std::vector<Summary> summaries;
};

namespace detail {

constexpr std::size_t kWhole = static_cast<std::size_t>(-1);

/// One member's claim, reduced to a structural family key plus the full key
/// including the concluded classes. Members sharing a full key are counted
/// together; families normalize the competing conclusions for scoring.
struct Contribution {
    ProtoformType subtype{};
    std::string family;
    std::string key;
    const Summary* rep = nullptr;
    const SummaryContext* ctx = nullptr;
    std::size_t part = kWhole;  // goal advice splits per attribute
};

inline std::string packed(std::initializer_list<const std::vector<std::string>*> lists,
                          std::initializer_list<std::string> extras) {
    std::string out;
    for (const auto* l : lists)
        for (const auto& p : *l) {
            out += p;
            out += '\x1f';
        }
    out += '\x1e';
    for (const auto& x : extras) {
        out += x;
        out += '\x1f';
    }
    return out;
}

inline void contribute(const GroupMember& m, const Summary& s, std::vector<Contribution>& out) {
    Contribution c;
    c.subtype = s.type;
    c.rep = &s;
    c.ctx = m.ctx;
    const std::string type_tag = to_string(s.type);
    const std::string sub = s.quantifier ? *s.quantifier : "";
    const std::string cond = s.condition_attribute ? *s.condition_attribute : "*";

    switch (s.type) {
        case ProtoformType::StandardEvalTW:
        case ProtoformType::ClusterBasedPattern:
        case ProtoformType::StandardPattern:
            c.family = packed({&s.attributes}, {type_tag});
            break;
        case ProtoformType::StandardEvalSTW:
        case ProtoformType::GoalEvaluation:
            // The cohort frame names the window, which a full-range run
            // does not have.
            if (!m.ctx->gran().windowed()) return;
            c.family = packed({&s.attributes}, {type_tag, sub});
            break;
        case ProtoformType::StandardTrend:
            c.family = packed({&s.attributes}, {type_tag, sub});
            break;
        case ProtoformType::StandardEvalQualifier:
            c.family = packed({&s.attributes}, {type_tag, sub, cond, s.conclusion.front()});
            break;
        case ProtoformType::GeneralIfThen:
            c.family = packed({&s.attributes}, {type_tag, cond, s.conclusion.front()});
            break;
        case ProtoformType::Comparison:
        case ProtoformType::GoalComparison:
            c.family = packed({&s.attributes},
                              {type_tag, std::to_string(*s.hints.focus_window),
                               std::to_string(*s.hints.other_window)});
            break;
        case ProtoformType::IfThenPattern:
        case ProtoformType::DayIfThenPattern:
            c.family = packed({&s.attributes}, {type_tag, cond});
            break;
        case ProtoformType::DayBasedPattern:
            c.family = packed({&s.attributes}, {type_tag, *s.hints.weekday});
            break;
        case ProtoformType::GoalAssistance:
            for (std::size_t j = 0; j < s.attributes.size(); ++j) {
                Contribution g = c;
                g.part = j;
                g.family = packed({}, {type_tag, s.attributes[j]});
                g.key = g.family + s.summarizers[j];
                out.push_back(std::move(g));
            }
            return;
        default:
            return;  // already a cohort-level summary
    }
    c.key = c.family + packed({&s.conclusion}, {});
    out.push_back(std::move(c));
}

struct GroupSlot {
    ProtoformType subtype{};
    std::string family;
    std::set<std::string> holders;  // member ids, counted once each
    const Summary* rep = nullptr;
    const SummaryContext* ctx = nullptr;
    std::size_t part = kWhole;
};

inline const AttributeContext* find_attr(const SummaryContext& ctx, const std::string& column) {
    for (const auto& a : ctx.attrs)
        if (a.column == column) return &a;
    fail(ErrorCode::MissingColumn, "attribute '" + column + "' absent from member context");
}

inline std::string shown(const SummaryContext& ctx, const std::string& column) {
    return find_attr(ctx, column)->display;
}

inline std::string goal_phrase(const SummaryContext& ctx, const std::string& column) {
    const Goal* g = ctx.config->goal_for(column);
    if (!g) fail(ErrorCode::MissingGoal, "no goal configured for '" + column + "'");
    return g->label;
}

/// Tokens of a stored rule conclusion: "if:<tok>" / "then:<tok>", day rules
/// carry "if:<weekday>:<tok>".
struct RuleShape {
    std::vector<std::string> prefix, suffix;
    std::vector<int> prefix_weekdays, suffix_weekdays;
};

inline RuleShape decode_rule(const Summary& s, bool with_weekdays) {
    RuleShape r;
    for (const auto& tok : s.conclusion) {
        const bool is_prefix = tok.rfind("if:", 0) == 0;
        std::string body = tok.substr(is_prefix ? 3 : 5);
        int wd = 0;
        if (with_weekdays) {
            const auto colon = body.find(':');
            wd = std::stoi(body.substr(0, colon));
            body = body.substr(colon + 1);
        }
        if (is_prefix) {
            r.prefix.push_back(body);
            r.prefix_weekdays.push_back(wd);
        } else {
            r.suffix.push_back(body);
            r.suffix_weekdays.push_back(wd);
        }
    }
    return r;
}

}  // namespace detail

/// Cohort-level summaries: each conclusion shared by enough participants
/// becomes one sentence quantified over the whole cohort. A member counts
/// toward a conclusion when their own data produced it, and the share is
/// always taken against the full cohort size.
inline std::vector<Summary> generate_group(const std::vector<GroupMember>& members) {
    if (members.size() < 2)
        fail(ErrorCode::CohortTooSmall, "group summaries need at least two participants");
    const auto& front_ctx = *members.front().ctx;
    const auto& reg = *front_ctx.templates;
    const auto& quantifiers = front_ctx.vocab->quantifiers;
    const double threshold = front_ctx.config->emission_threshold;
    const auto cohort = static_cast<double>(members.size());

    std::map<std::string, detail::GroupSlot> slots;
    for (const auto& m : members) {
        std::vector<detail::Contribution> contributions;
        for (const auto& s : m.summaries) detail::contribute(m, s, contributions);
        for (const auto& c : contributions) {
            auto& slot = slots[c.key];
            if (!slot.rep) {
                slot.subtype = c.subtype;
                slot.family = c.family;
                slot.rep = c.rep;
                slot.ctx = c.ctx;
                slot.part = c.part;
            }
            slot.holders.insert(m.id);
        }
    }

    std::map<std::string, long long> family_totals;
    for (const auto& [key, slot] : slots) {
        (void)key;
        family_totals[slot.family] += static_cast<long long>(slot.holders.size());
    }

    // Fixed presentation order: subtype rank, then key text.
    std::vector<const std::pair<const std::string, detail::GroupSlot>*> ordered;
    for (const auto& kv : slots) ordered.push_back(&kv);
    std::sort(ordered.begin(), ordered.end(), [](const auto* a, const auto* b) {
        const int ra = static_cast<int>(a->second.subtype);
        const int rb = static_cast<int>(b->second.subtype);
        if (ra != rb) return ra < rb;
        return a->first < b->first;
    });

    std::vector<Summary> out;
    for (const auto* kv : ordered) {
        const auto& slot = kv->second;
        const double r = static_cast<double>(slot.holders.size()) / cohort;
        const auto best = best_quantifier(quantifiers, "", r);
        if (best.truth < threshold) continue;

        const Summary& rep = *slot.rep;
        const SummaryContext& ctx = *slot.ctx;
        auto base = detail::base_slots(ctx);

        Summary g;
        g.group_subtype = slot.subtype;
        g.quantifier = best.quantifier;
        g.attributes = rep.attributes;
        g.conclusion = rep.conclusion;
        g.basis.quantified = true;
        g.basis.truth = best.truth;
        g.basis.covering = r;
        g.basis.attribute_ratios = std::vector<double>{};
        g.basis.coverage_ratio = r;

        std::vector<std::string> clauses;
        auto clause_per_attr = [&](const std::string& tmpl_key) {
            for (std::size_t j = 0; j < rep.attributes.size(); ++j)
                clauses.push_back(reg.render(tmpl_key,
                                             {{"summarizer", rep.summarizers[j]},
                                              {"attribute", detail::shown(ctx, rep.attributes[j])}}));
        };

        switch (slot.subtype) {
            case ProtoformType::StandardEvalTW: {
                g.type = ProtoformType::GroupPopulationEval;
                clause_per_attr("group.eval_tw.clause");
                g.text = text::capitalize(reg.render(
                    "group.eval_tw.frame",
                    detail::with(base, {{"quantifier", *g.quantifier},
                                        {"clauses", text::join_clauses(clauses)}})));
                g.summarizers = rep.summarizers;
                g.basis.summarizer_count = static_cast<int>(rep.attributes.size());
                break;
            }
            case ProtoformType::StandardEvalSTW: {
                g.type = ProtoformType::GroupPopulationEval;
                g.sub_quantifier = rep.quantifier;
                clause_per_attr("group.eval_stw.clause");
                g.text = text::capitalize(reg.render(
                    "group.eval_stw.frame",
                    detail::with(base, {{"quantifier", *g.quantifier},
                                        {"sub_quantifier", *g.sub_quantifier},
                                        {"clauses", text::join_clauses(clauses)}})));
                g.summarizers = rep.summarizers;
                g.basis.summarizer_count = static_cast<int>(rep.attributes.size());
                break;
            }
            case ProtoformType::StandardEvalQualifier: {
                g.type = ProtoformType::GroupPopulationEval;
                g.sub_quantifier = rep.quantifier;
                g.condition_attribute = rep.condition_attribute;
                const std::string qual_clause = reg.render(
                    "group.eval_qualifier.qualifier_clause",
                    {{"summarizer", rep.summarizers.front()},
                     {"attribute", detail::shown(ctx, *rep.condition_attribute)}});
                std::size_t label = 1;
                for (const auto& col : rep.attributes) {
                    if (col == *rep.condition_attribute) continue;
                    clauses.push_back(
                        reg.render("group.eval_qualifier.clause",
                                   {{"summarizer", rep.summarizers[label++]},
                                    {"attribute", detail::shown(ctx, col)}}));
                }
                g.text = text::capitalize(reg.render(
                    "group.eval_qualifier.frame",
                    detail::with(base, {{"quantifier", *g.quantifier},
                                        {"sub_quantifier", *g.sub_quantifier},
                                        {"qualifier_clauses", qual_clause},
                                        {"clauses", text::join_clauses(clauses)}})));
                g.summarizers = rep.summarizers;
                g.basis.summarizer_count = static_cast<int>(rep.summarizers.size());
                break;
            }
            case ProtoformType::GoalEvaluation: {
                g.type = ProtoformType::GroupPopulationEval;
                g.sub_quantifier = rep.quantifier;
                const auto& met_label = ctx.vocab->set(summarizer_set::goal)[0];
                for (std::size_t j = 0; j < rep.attributes.size(); ++j) {
                    const bool met = rep.conclusion[j] == met_label;
                    clauses.push_back(reg.render(
                        met ? "group.goal_eval.clause_met" : "group.goal_eval.clause_missed",
                        {{"attribute", detail::shown(ctx, rep.attributes[j])},
                         {"goal", detail::goal_phrase(ctx, rep.attributes[j])}}));
                }
                g.text = text::capitalize(reg.render(
                    "group.goal_eval.frame",
                    detail::with(base, {{"quantifier", *g.quantifier},
                                        {"sub_quantifier", *g.sub_quantifier},
                                        {"clauses", text::join_clauses(clauses)}})));
                g.summarizers = rep.summarizers;
                g.basis.summarizer_count = static_cast<int>(rep.attributes.size());
                break;
            }
            case ProtoformType::GoalAssistance: {
                g.type = ProtoformType::GroupPopulationEval;
                g.attributes = {rep.attributes[slot.part]};
                g.conclusion = {rep.summarizers[slot.part]};
                g.summarizers = g.conclusion;
                clauses.push_back(reg.render(
                    "group.goal_assist.clause",
                    {{"direction", rep.summarizers[slot.part]},
                     {"attribute", detail::shown(ctx, rep.attributes[slot.part])}}));
                g.text = text::capitalize(reg.render(
                    "group.goal_assist.frame",
                    detail::with(base, {{"quantifier", *g.quantifier},
                                        {"clauses", text::join_clauses(clauses)}})));
                g.basis.summarizer_count = 1;
                break;
            }
            case ProtoformType::DayBasedPattern: {
                g.type = ProtoformType::GroupPopulationEval;
                g.hints.weekday = rep.hints.weekday;
                clause_per_attr("group.day_based.clause");
                g.text = text::capitalize(reg.render(
                    "group.day_based.frame",
                    detail::with(base, {{"quantifier", *g.quantifier},
                                        {"clauses", text::join_clauses(clauses)},
                                        {"weekdays", *rep.hints.weekday + "s"}})));
                g.summarizers = rep.summarizers;
                g.basis.summarizer_count = static_cast<int>(rep.attributes.size());
                break;
            }
            case ProtoformType::StandardTrend: {
                g.type = ProtoformType::GroupPopulationEval;
                g.sub_quantifier = rep.quantifier;
                for (std::size_t j = 0; j < rep.attributes.size(); ++j)
                    clauses.push_back(
                        reg.render("group.trend.clause." + rep.conclusion[j],
                                   {{"attribute", detail::shown(ctx, rep.attributes[j])}}));
                g.text = text::capitalize(reg.render(
                    "group.trend.frame",
                    detail::with(base, {{"quantifier", *g.quantifier},
                                        {"sub_quantifier", *g.sub_quantifier},
                                        {"clauses", text::join_clauses(clauses)}})));
                g.summarizers = rep.summarizers;
                g.basis.summarizer_count = static_cast<int>(rep.attributes.size());
                break;
            }
            case ProtoformType::GeneralIfThen: {
                g.type = ProtoformType::GroupPopulationEval;
                g.condition_attribute = rep.condition_attribute;
                const std::string ante = reg.render(
                    "group.general_if_then.clause",
                    {{"summarizer", rep.summarizers.front()},
                     {"attribute", detail::shown(ctx, *rep.condition_attribute)}});
                std::size_t label = 1;
                for (const auto& col : rep.attributes) {
                    if (col == *rep.condition_attribute) continue;
                    clauses.push_back(
                        reg.render("group.general_if_then.clause",
                                   {{"summarizer", rep.summarizers[label++]},
                                    {"attribute", detail::shown(ctx, col)}}));
                }
                g.text = text::capitalize(reg.render(
                    "group.general_if_then.frame",
                    detail::with(base, {{"quantifier", *g.quantifier},
                                        {"antecedent_clauses", ante},
                                        {"clauses", text::join_clauses(clauses)}})));
                g.summarizers = rep.summarizers;
                g.basis.summarizer_count = static_cast<int>(rep.summarizers.size());
                break;
            }
            case ProtoformType::Comparison: {
                g.type = ProtoformType::GroupPopulationEval;
                g.hints = rep.hints;
                for (std::size_t j = 0; j < rep.attributes.size(); ++j) {
                    const std::string& adj =
                        reg.at("group.comparison.adj." + rep.conclusion[j]);
                    g.summarizers.push_back(adj);
                    clauses.push_back(
                        reg.render("group.comparison.clause",
                                   {{"summarizer", adj},
                                    {"attribute", detail::shown(ctx, rep.attributes[j])}}));
                }
                g.text = text::capitalize(reg.render(
                    "group.comparison.frame",
                    detail::with(base,
                                 {{"quantifier", *g.quantifier},
                                  {"clauses", text::join_clauses(clauses)},
                                  {"recent", std::to_string(*rep.hints.focus_window)},
                                  {"earlier", std::to_string(*rep.hints.other_window)}})));
                g.basis.summarizer_count = static_cast<int>(rep.attributes.size());
                break;
            }
            case ProtoformType::GoalComparison: {
                g.type = ProtoformType::GroupPopulationEval;
                g.hints = rep.hints;
                for (std::size_t j = 0; j < rep.attributes.size(); ++j)
                    clauses.push_back(reg.render(
                        j == 0 ? "group.goal_comparison.clause_first"
                               : "group.goal_comparison.clause_rest",
                        {{"summarizer", rep.conclusion[j]},
                         {"attribute", detail::shown(ctx, rep.attributes[j])},
                         {"goal", detail::goal_phrase(ctx, rep.attributes[j])}}));
                g.text = text::capitalize(reg.render(
                    "group.goal_comparison.frame",
                    detail::with(base,
                                 {{"quantifier", *g.quantifier},
                                  {"clauses", text::join_clauses(clauses)},
                                  {"recent", std::to_string(*rep.hints.focus_window)},
                                  {"earlier", std::to_string(*rep.hints.other_window)}})));
                g.summarizers = rep.conclusion;
                g.basis.summarizer_count = static_cast<int>(rep.attributes.size());
                break;
            }
            case ProtoformType::ClusterBasedPattern:
            case ProtoformType::StandardPattern: {
                const bool clustered = slot.subtype == ProtoformType::ClusterBasedPattern;
                g.type = clustered ? ProtoformType::GroupClusterPattern
                                   : ProtoformType::GroupStandardPattern;
                const std::string head = clustered ? "group.cluster." : "group.pattern.";
                for (std::size_t j = 0; j < rep.attributes.size(); ++j) {
                    const std::string& change = reg.at(head + "change." + rep.conclusion[j]);
                    g.summarizers.push_back(change);
                    clauses.push_back(
                        reg.render(head + "clause",
                                   {{"change", change},
                                    {"attribute", detail::shown(ctx, rep.attributes[j])}}));
                }
                g.text = text::capitalize(reg.render(
                    head + "frame", detail::with(base, {{"quantifier", *g.quantifier},
                                                        {"clauses", text::join_clauses(clauses)}})));
                g.basis.summarizer_count = static_cast<int>(rep.attributes.size());
                break;
            }
            case ProtoformType::IfThenPattern:
            case ProtoformType::DayIfThenPattern: {
                const bool day_form = slot.subtype == ProtoformType::DayIfThenPattern;
                g.type = ProtoformType::GroupIfThen;
                g.condition_attribute = rep.condition_attribute;
                const auto shape = detail::decode_rule(rep, day_form);
                const std::string head = day_form ? "group.day_if_then." : "group.if_then.";

                auto label_of = [&](const std::string& col, int letter) -> const std::string& {
                    return detail::find_attr(ctx, col)->labels[static_cast<std::size_t>(letter)];
                };
                auto step_text = [&](const std::string& label, int wd, bool is_prefix) {
                    if (!day_form) return label;
                    return reg.render(head + (is_prefix ? "prefix_step" : "suffix_step"),
                                      {{"summarizer", label}, {"weekday", weekday_name(wd)}});
                };

                std::vector<std::string> prefix_clauses;
                if (rep.condition_attribute) {
                    std::vector<std::string> steps;
                    for (std::size_t p = 0; p < shape.prefix.size(); ++p) {
                        const std::string& label =
                            label_of(*rep.condition_attribute, shape.prefix[p][0] - 'a');
                        g.summarizers.push_back(label);
                        steps.push_back(step_text(label, shape.prefix_weekdays[p], true));
                    }
                    prefix_clauses.push_back(reg.render(
                        "group.if_then.prefix_clause",
                        {{"attribute", detail::shown(ctx, *rep.condition_attribute)},
                         {"steps", text::join_steps(steps)}}));
                } else {
                    for (std::size_t j = 0; j < rep.attributes.size(); ++j) {
                        std::vector<std::string> steps;
                        for (std::size_t p = 0; p < shape.prefix.size(); ++p) {
                            const int letter = split_joint(shape.prefix[p])[j];
                            const std::string& label = label_of(rep.attributes[j], letter);
                            g.summarizers.push_back(label);
                            steps.push_back(step_text(label, shape.prefix_weekdays[p], true));
                        }
                        prefix_clauses.push_back(
                            reg.render("group.if_then.prefix_clause",
                                       {{"attribute", detail::shown(ctx, rep.attributes[j])},
                                        {"steps", text::join_steps(steps)}}));
                    }
                }
                std::vector<std::string> suffix_clauses;
                for (std::size_t j = 0; j < rep.attributes.size(); ++j) {
                    std::vector<std::string> steps;
                    for (std::size_t p = 0; p < shape.suffix.size(); ++p) {
                        const int letter = split_joint(shape.suffix[p])[j];
                        const std::string& label = label_of(rep.attributes[j], letter);
                        g.summarizers.push_back(label);
                        steps.push_back(step_text(label, shape.suffix_weekdays[p], false));
                    }
                    suffix_clauses.push_back(
                        reg.render("group.if_then.suffix_clause",
                                   {{"attribute", detail::shown(ctx, rep.attributes[j])},
                                    {"steps", text::join_steps(steps)}}));
                }
                g.text = text::capitalize(reg.render(
                    head + "frame",
                    detail::with(base,
                                 {{"quantifier", *g.quantifier},
                                  {"prefix_clauses", text::join_clauses(prefix_clauses)},
                                  {"suffix_clauses", text::join_clauses(suffix_clauses)}})));
                if (day_form) g.hints.weekday = rep.hints.weekday;
                g.basis.summarizer_count = static_cast<int>(g.summarizers.size());
                break;
            }
            default:
                continue;
        }

        // Spread of competing conclusions inside this structural family.
        const auto total = static_cast<double>(family_totals[slot.family]);
        for (const auto& other : ordered)
            if (other->second.family == slot.family)
                g.basis.imprecision_ratios.push_back(
                    static_cast<double>(other->second.holders.size()) / total);

        out.push_back(std::move(g));
    }
    return out;
}

}  // namespace temposum
