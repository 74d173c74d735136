#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "temposum/error.hpp"

namespace temposum {

/// Sentence frames and clause fragments, keyed by "<form>.<part>". Slots are
/// written {name} and filled by render(). Every entry can be replaced from a
/// vocabulary file, so wording changes never require a rebuild.
struct TemplateRegistry {
    std::map<std::string, std::string> entries;

    static TemplateRegistry defaults();

    const std::string& at(const std::string& key) const {
        auto it = entries.find(key);
        if (it == entries.end()) fail(ErrorCode::BadConfig, "no template named '" + key + "'");
        return it->second;
    }

    void merge(const std::map<std::string, std::string>& overrides) {
        for (const auto& [k, v] : overrides) entries[k] = v;
    }

    std::string render(const std::string& key,
                       const std::vector<std::pair<std::string, std::string>>& slots) const;
};

namespace text {

/// "a", "a and b", "a, b, and c".
inline std::string join_clauses(const std::vector<std::string>& parts) {
    if (parts.empty()) return "";
    if (parts.size() == 1) return parts[0];
    if (parts.size() == 2) return parts[0] + " and " + parts[1];
    std::string out;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) out += parts[i] + ", ";
    return out + "and " + parts.back();
}

/// "a, then b, then c".
inline std::string join_steps(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ", then ";
        out += parts[i];
    }
    return out;
}

/// Uppercases the first letter so frames can start with a filled slot.
inline std::string capitalize(std::string s) {
    for (auto& c : s) {
        if (c >= 'a' && c <= 'z') {
            c = static_cast<char>(c - 'a' + 'A');
            break;
        }
        if (c != ' ') break;
    }
    return s;
}

/// Collapses adjacent repeats, keeping first appearance order.
inline std::vector<std::string> compress_runs(const std::vector<std::string>& xs) {
    std::vector<std::string> out;
    for (const auto& x : xs)
        if (out.empty() || out.back() != x) out.push_back(x);
    return out;
}

inline std::string fill(const std::string& tmpl,
                        const std::vector<std::pair<std::string, std::string>>& slots) {
    std::string out;
    out.reserve(tmpl.size());
    std::size_t i = 0;
    while (i < tmpl.size()) {
        if (tmpl[i] != '{') {
            out += tmpl[i++];
            continue;
        }
        auto close = tmpl.find('}', i);
        if (close == std::string::npos)
            fail(ErrorCode::BadConfig, "unterminated slot in template '" + tmpl + "'");
        std::string name = tmpl.substr(i + 1, close - i - 1);
        bool found = false;
        for (const auto& [k, v] : slots) {
            if (k == name) {
                out += v;
                found = true;
                break;
            }
        }
        if (!found) fail(ErrorCode::BadConfig, "template slot '" + name + "' has no value");
        i = close + 1;
    }
    return out;
}

}  // namespace text

inline std::string TemplateRegistry::render(
    const std::string& key,
    const std::vector<std::pair<std::string, std::string>>& slots) const {
    return text::fill(at(key), slots);
}

inline TemplateRegistry TemplateRegistry::defaults() {
    TemplateRegistry r;
    auto& e = r.entries;

    // Individual evaluations over the most recent window.
    e["eval_tw.frame"] = "In the past full {window}, {clauses}.";
    e["eval_tw.clause"] = "{poss} {attribute} has been {summarizer}";
    e["eval_stw.frame"] = "On {quantifier} {step}s in the past {window}, {clauses}.";
    e["eval_stw.frame_bare"] = "On {quantifier} {step}s, {clauses}.";
    e["eval_stw.clause"] = "{poss} {attribute} has been {summarizer}";
    e["eval_qualifier.frame"] =
        "On {quantifier} {step}s in the past {window} when {qualifier_clauses}, {clauses}.";
    e["eval_qualifier.qualifier_clause"] = "{poss} {attribute} was {summarizer}";
    e["eval_qualifier.clause"] = "{poss} {attribute} was {summarizer}";
    e["goal_eval.frame"] = "On {quantifier} {step}s in the past {window}, {clauses}.";
    e["goal_eval.frame_bare"] = "On {quantifier} {step}s, {clauses}.";
    e["goal_eval.clause_met"] = "you reached your goal to keep {poss} {attribute} {goal}";
    e["goal_eval.clause_missed"] =
        "you did not reach your goal to keep {poss} {attribute} {goal}";
    e["goal_assist.frame"] = "In order to better follow the {guideline}, you should {clauses}.";
    e["goal_assist.clause"] = "{direction} {poss} {attribute}";

    // Whole-history observations.
    e["day_based.frame"] = "{clauses} on {weekdays}.";
    e["day_based.clause"] = "{poss} {attribute} tends to be {summarizer}";
    e["trend.frame"] = "{quantifier} time, {clauses} from one {step} to the next.";
    e["trend.clause"] = "{poss} {attribute} {verb}";
    e["trend.verb.increased"] = "increases";
    e["trend.verb.decreased"] = "decreases";
    e["trend.verb.stayed the same"] = "stays the same";
    e["general_if_then.frame"] = "In general, if {antecedent_clauses}, then {clauses}.";
    e["general_if_then.clause"] = "{poss} {attribute} is {summarizer}";

    // Sequence rules.
    e["if_then.frame"] =
        "There is {confidence}% confidence that, when {prefix_clauses}, {suffix_clauses} the "
        "next {step}.";
    e["if_then.prefix_clause"] = "{poss} {attribute} follows the pattern of being {steps}";
    e["if_then.suffix_clause"] = "{poss} {attribute} tends to be {steps}";
    e["day_if_then.frame"] =
        "There is {confidence}% confidence that, when {prefix_clauses}, {suffix_clauses}.";
    e["day_if_then.prefix_step"] = "{summarizer} on a {weekday}";
    e["day_if_then.suffix_step"] = "{summarizer} the next {weekday}";

    // Window-to-window comparisons.
    e["comparison.frame_than"] =
        "{clauses} in {window} {recent} than {pronoun} in {window} {earlier}.";
    e["comparison.frame_as"] = "{clauses} in {window} {recent} as {pronoun} in {window} {earlier}.";
    e["comparison.clause"] = "{poss} {attribute} was {summarizer}";
    e["goal_comparison.frame"] =
        "{clauses} in {window} {recent} than you did in {window} {earlier}.";
    e["goal_comparison.clause"] =
        "you did {summarizer} overall with keeping {poss} {attribute} {goal}";

    // Patterns anchored on windows similar to the most recent one.
    e["cluster.describe.frame"] = "In {window} {recent}, {clauses}.";
    e["cluster.describe.clause"] = "{poss} {attribute} was {steps}";
    e["cluster.frame"] =
        "During {quantifier} {window}s similar to {window} {recent}, {clauses} the next "
        "{window}.";
    e["cluster.clause"] = "{poss} {attribute} {verb}";
    e["pattern.frame"] =
        "The last time you had a {window} similar to {window} {recent}, {clauses} the next "
        "{window}.";
    e["pattern.clause"] = "{poss} {attribute} {verb}";

    // Cohort-level variants.
    e["group.eval_tw.frame"] =
        "{quantifier} participants in this study had {clauses} in the past full {window}.";
    e["group.eval_tw.clause"] = "a {summarizer} {attribute}";
    e["group.eval_stw.frame"] =
        "{quantifier} participants in this study had {clauses} on {sub_quantifier} {step}s in "
        "the past {window}.";
    e["group.eval_stw.clause"] = "a {summarizer} {attribute}";
    e["group.eval_qualifier.frame"] =
        "{quantifier} participants in this study had {clauses}, when they had "
        "{qualifier_clauses} on {sub_quantifier} {step}s in the past {window}.";
    e["group.eval_qualifier.qualifier_clause"] = "a {summarizer} {attribute}";
    e["group.eval_qualifier.clause"] = "a {summarizer} {attribute}";
    e["group.goal_eval.frame"] =
        "{quantifier} participants in this study {clauses} on {sub_quantifier} {step}s in the "
        "past {window}.";
    e["group.goal_eval.clause_met"] = "reached their goal to keep their {attribute} {goal}";
    e["group.goal_eval.clause_missed"] =
        "did not reach their goal to keep their {attribute} {goal}";
    e["group.goal_assist.frame"] =
        "{quantifier} participants in this study have been given advice to {clauses}.";
    e["group.goal_assist.clause"] = "{direction} their {attribute}";
    e["group.day_based.frame"] =
        "{quantifier} participants in this study tend to have {clauses} on {weekdays}.";
    e["group.day_based.clause"] = "a {summarizer} {attribute}";
    e["group.trend.frame"] =
        "{quantifier} participants in this study {clauses} from one {step} to the next "
        "{sub_quantifier} time.";
    e["group.trend.clause.increased"] = "increase their {attribute}";
    e["group.trend.clause.decreased"] = "decrease their {attribute}";
    e["group.trend.clause.stayed the same"] = "keep their {attribute} the same";
    e["group.general_if_then.frame"] =
        "For {quantifier} participants in this study, it is true that when they had "
        "{antecedent_clauses}, they had {clauses}.";
    e["group.general_if_then.clause"] = "a {summarizer} {attribute}";
    e["group.if_then.frame"] =
        "For {quantifier} participants in this study, it is true that when {prefix_clauses}, "
        "{suffix_clauses} the next {step}.";
    e["group.if_then.prefix_clause"] = "their {attribute} follows the pattern of being {steps}";
    e["group.if_then.suffix_clause"] = "their {attribute} tends to be {steps}";
    e["group.day_if_then.frame"] =
        "For {quantifier} participants in this study, it is true that when {prefix_clauses}, "
        "{suffix_clauses}.";
    e["group.day_if_then.prefix_step"] = "{summarizer} on a {weekday}";
    e["group.day_if_then.suffix_step"] = "{summarizer} on a {weekday}";
    e["group.comparison.frame"] =
        "{quantifier} participants in this study had {clauses} in {window} {recent} than they "
        "did in {window} {earlier}.";
    e["group.comparison.clause"] = "a {summarizer} {attribute}";
    e["group.comparison.adj.higher"] = "higher";
    e["group.comparison.adj.lower"] = "lower";
    e["group.comparison.adj.about the same"] = "similar";
    e["group.goal_comparison.frame"] =
        "{quantifier} participants in this study {clauses} in {window} {recent} as they did in "
        "{window} {earlier}.";
    e["group.goal_comparison.clause_first"] = "did {summarizer} with keeping their {attribute} {goal}";
    e["group.goal_comparison.clause_rest"] = "{summarizer} with keeping their {attribute} {goal}";
    e["group.cluster.frame"] =
        "After looking at clusters containing {window}s similar to this past one, it can be "
        "seen that {quantifier} participants with these clusters may see {clauses} next "
        "{window}.";
    e["group.cluster.clause"] = "{change} in their {attribute}";
    e["group.cluster.change.rose"] = "a rise";
    e["group.cluster.change.dropped"] = "a drop";
    e["group.cluster.change.stayed the same"] = "little to no change";
    e["group.pattern.frame"] =
        "Based on the most recent {window}s similar to this past one, it can be seen that "
        "{quantifier} participants may see {clauses} next {window}.";
    e["group.pattern.clause"] = "{change} in their {attribute}";
    e["group.pattern.change.rose"] = "a rise";
    e["group.pattern.change.dropped"] = "a drop";
    e["group.pattern.change.stayed the same"] = "little to no change";

    return r;
}

}  // namespace temposum
