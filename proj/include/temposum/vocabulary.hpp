#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "temposum/discretize.hpp"
#include "temposum/error.hpp"

namespace temposum {

/// A relative quantifier ("some of the") as a piecewise-linear membership
/// function over the agreement ratio r in [0, 1]. `rank` orders quantifiers
/// by the amount they imply; ties in truth go to the higher rank.
struct Quantifier {
    std::string name;
    int rank = 0;
    std::vector<std::pair<double, double>> vertices;  // (r, mu), r ascending

    void validate() const {
        if (vertices.empty()) fail(ErrorCode::BadConfig, "quantifier '" + name + "' has no vertices");
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            const auto& [r, mu] = vertices[i];
            if (r < 0.0 || r > 1.0 || mu < 0.0 || mu > 1.0)
                fail(ErrorCode::BadConfig, "quantifier '" + name + "' vertex out of [0,1]");
            if (i > 0 && !(vertices[i - 1].first < r))
                fail(ErrorCode::BadConfig, "quantifier '" + name + "' vertices not ascending");
        }
    }

    /// Membership at ratio r. Outside the vertex span the nearest endpoint's
    /// value extends flat.
    double membership(double r) const {
        if (r < 0.0 || r > 1.0) fail(ErrorCode::OutOfRange, "ratio must be in [0, 1]");
        if (r <= vertices.front().first) return vertices.front().second;
        if (r >= vertices.back().first) return vertices.back().second;
        for (std::size_t i = 1; i < vertices.size(); ++i) {
            if (r <= vertices[i].first) {
                const auto& [x0, y0] = vertices[i - 1];
                const auto& [x1, y1] = vertices[i];
                return y0 + (y1 - y0) * (r - x0) / (x1 - x0);
            }
        }
        return vertices.back().second;
    }
};

namespace summarizer_set {
// Keys into Vocabulary::summarizer_sets.
inline constexpr const char* evaluation = "evaluation";        // very low .. very high
inline constexpr const char* goal = "goal";                    // reached / did not reach
inline constexpr const char* goal_assistance = "goal_assistance";  // increase / decrease
inline constexpr const char* trend = "trend";                  // increased / decreased / stayed the same
inline constexpr const char* comparison = "comparison";        // higher / lower / about the same
inline constexpr const char* goal_comparison = "goal_comparison";  // better / not do as well / about the same
inline constexpr const char* cluster_followup = "cluster_followup";  // rose / dropped / stayed the same
}  // namespace summarizer_set

/// The language side of a run: quantifiers, summarizer label sets, optional
/// raw-unit binning schemes per attribute, display names, wording options.
/// Serializes to a single JSON document.
struct Vocabulary {
    std::vector<Quantifier> quantifiers;  // ascending rank
    std::map<std::string, std::vector<std::string>> summarizer_sets;
    std::map<std::string, BinningScheme> raw_schemes;      // attribute -> raw ranges
    std::map<std::string, std::string> display_names;      // column -> sentence name
    std::map<std::string, std::string> template_overrides; // protoform type -> template
    std::string article = "your";                          // "your" or "the"

    void validate() const {
        if (quantifiers.empty()) fail(ErrorCode::BadConfig, "vocabulary has no quantifiers");
        for (const auto& q : quantifiers) q.validate();
        for (std::size_t i = 1; i < quantifiers.size(); ++i)
            if (!(quantifiers[i - 1].rank < quantifiers[i].rank))
                fail(ErrorCode::BadConfig, "quantifier ranks must be strictly ascending");
        for (const auto& [attr, scheme] : raw_schemes) {
            (void)attr;
            scheme.validate();
        }
    }

    const Quantifier& quantifier(const std::string& name) const {
        for (const auto& q : quantifiers)
            if (q.name == name) return q;
        fail(ErrorCode::BadConfig, "unknown quantifier '" + name + "'");
    }

    const std::vector<std::string>& set(const std::string& key) const {
        auto it = summarizer_sets.find(key);
        if (it == summarizer_sets.end())
            fail(ErrorCode::BadConfig, "missing summarizer set '" + key + "'");
        return it->second;
    }

    /// Labels describing letter bins for an attribute with `n` letters: the
    /// evaluation set when sizes agree, otherwise a raw-scheme label set or
    /// generated "level i" names.
    std::vector<std::string> evaluation_labels(const std::string& attribute, int n) const {
        if (auto it = raw_schemes.find(attribute); it != raw_schemes.end())
            return it->second.labels;
        const auto& ev = set(summarizer_set::evaluation);
        if (static_cast<int>(ev.size()) == n) return ev;
        std::vector<std::string> out;
        out.reserve(n);
        for (int i = 0; i < n; ++i) out.push_back("level " + std::to_string(i + 1));
        return out;
    }

    std::string shown_as(const std::string& column) const {
        auto it = display_names.find(column);
        return it == display_names.end() ? column : it->second;
    }
};

/// Quantifier family fitted to everyday wellness summaries. "Most of the"
/// uses the explicit piecewise definition (plateau to 0.9); the drawn variant
/// with a plateau to 0.99 can be loaded from a vocabulary file instead.
inline std::vector<Quantifier> default_quantifiers() {
    return {
        {"none of the", 0, {{0.0, 1.0}, {0.01, 0.0}}},
        {"almost none of the", 1, {{0.0, 0.0}, {0.01, 1.0}, {0.2, 1.0}, {0.3, 0.0}}},
        {"some of the", 2, {{0.1, 0.0}, {0.3, 1.0}, {0.4, 1.0}, {0.5, 0.0}}},
        {"half of the", 3, {{0.4, 0.0}, {0.5, 1.0}, {0.6, 0.0}}},
        {"more than half of the", 4, {{0.5, 0.0}, {0.6, 1.0}, {0.75, 1.0}, {1.0, 0.0}}},
        {"most of the", 5, {{0.5, 0.0}, {0.75, 1.0}, {0.9, 1.0}, {1.0, 0.0}}},
        {"all of the", 6, {{0.99, 0.0}, {1.0, 1.0}}},
    };
}

inline Vocabulary default_health_vocabulary() {
    Vocabulary v;
    v.quantifiers = default_quantifiers();
    v.summarizer_sets[summarizer_set::evaluation] = {"very low", "low", "moderate", "high",
                                                     "very high"};
    v.summarizer_sets[summarizer_set::goal] = {"reached", "did not reach"};
    v.summarizer_sets[summarizer_set::goal_assistance] = {"increase", "decrease"};
    v.summarizer_sets[summarizer_set::trend] = {"increased", "decreased", "stayed the same"};
    v.summarizer_sets[summarizer_set::comparison] = {"higher", "lower", "about the same"};
    v.summarizer_sets[summarizer_set::goal_comparison] = {"better", "not do as well",
                                                          "about the same"};
    v.summarizer_sets[summarizer_set::cluster_followup] = {"rose", "dropped", "stayed the same"};
    v.article = "your";
    return v;
}

/// Clinical resting heart-rate bands in beats per minute. Values are binned
/// in raw units; a reading on a boundary belongs to the upper band.
inline BinningScheme heart_rate_scheme() {
    BinningScheme s;
    s.mode = BinningScheme::Mode::RawRanges;
    s.breakpoints = {50.0, 60.0, 110.0, 120.0};
    s.labels = {"abnormally low", "low", "within range", "high", "abnormally high"};
    return s;
}

/// Default vocabulary plus the heart-rate raw-range scheme registered for the
/// "heart rate" attribute.
inline Vocabulary heart_rate_vocabulary() {
    Vocabulary v = default_health_vocabulary();
    v.raw_schemes["heart rate"] = heart_rate_scheme();
    return v;
}

// ---- JSON (de)serialization -------------------------------------------------

inline nlohmann::json to_json(const BinningScheme& s) {
    nlohmann::json bins = nlohmann::json::array();
    for (std::size_t i = 0; i < s.labels.size(); ++i) {
        nlohmann::json b;
        b["label"] = s.labels[i];
        if (i < s.breakpoints.size()) b["upper_bound"] = s.breakpoints[i];
        bins.push_back(b);
    }
    return nlohmann::json{{"bins", bins}};
}

inline BinningScheme binning_scheme_from_json(const nlohmann::json& j) {
    BinningScheme s;
    s.mode = BinningScheme::Mode::RawRanges;
    if (!j.contains("bins") || !j["bins"].is_array())
        fail(ErrorCode::BadConfig, "raw range scheme needs a 'bins' array");
    for (const auto& b : j["bins"]) {
        s.labels.push_back(b.at("label").get<std::string>());
        if (b.contains("upper_bound")) s.breakpoints.push_back(b["upper_bound"].get<double>());
    }
    if (s.breakpoints.size() + 1 != s.labels.size())
        fail(ErrorCode::BadConfig, "every bin except the last needs an upper_bound");
    s.validate();
    return s;
}

inline nlohmann::json to_json(const Vocabulary& v) {
    nlohmann::json j;
    j["article"] = v.article;
    nlohmann::json qs = nlohmann::json::array();
    for (const auto& q : v.quantifiers) {
        nlohmann::json verts = nlohmann::json::array();
        for (const auto& [r, mu] : q.vertices) verts.push_back({r, mu});
        qs.push_back({{"name", q.name}, {"rank", q.rank}, {"vertices", verts}});
    }
    j["quantifiers"] = qs;
    j["summarizer_sets"] = v.summarizer_sets;
    nlohmann::json raw = nlohmann::json::object();
    for (const auto& [attr, scheme] : v.raw_schemes) raw[attr] = to_json(scheme);
    j["raw_ranges"] = raw;
    j["display_names"] = v.display_names;
    j["templates"] = v.template_overrides;
    return j;
}

inline Vocabulary vocabulary_from_json(const nlohmann::json& j) {
    Vocabulary v;
    if (j.contains("article")) v.article = j["article"].get<std::string>();
    if (!j.contains("quantifiers")) fail(ErrorCode::BadConfig, "vocabulary needs 'quantifiers'");
    for (const auto& q : j["quantifiers"]) {
        Quantifier out;
        out.name = q.at("name").get<std::string>();
        out.rank = q.at("rank").get<int>();
        for (const auto& vert : q.at("vertices"))
            out.vertices.emplace_back(vert.at(0).get<double>(), vert.at(1).get<double>());
        v.quantifiers.push_back(std::move(out));
    }
    if (j.contains("summarizer_sets"))
        v.summarizer_sets =
            j["summarizer_sets"].get<std::map<std::string, std::vector<std::string>>>();
    if (j.contains("raw_ranges"))
        for (const auto& [attr, scheme] : j["raw_ranges"].items())
            v.raw_schemes[attr] = binning_scheme_from_json(scheme);
    if (j.contains("display_names"))
        v.display_names = j["display_names"].get<std::map<std::string, std::string>>();
    if (j.contains("templates"))
        v.template_overrides = j["templates"].get<std::map<std::string, std::string>>();
    v.validate();
    return v;
}

}  // namespace temposum
