#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "temposum/error.hpp"

namespace temposum {

/// The ingredients a summary exposes for quality scoring. Optional fields
/// encode "not applicable": unquantified sentence forms have no truth or
/// imprecision, advice sentences have no data ratio at all.
struct MetricBasis {
    /// True when the sentence form carries (or evaluates through) a fuzzy
    /// quantifier; enables T1 and T2.
    bool quantified = false;
    double truth = 0.0;  // winning mu_Q when quantified

    /// T3 ingredient: share of the queried objects the conclusion holds for.
    /// Unquantified factual forms use 1; advice forms have none.
    std::optional<double> covering;

    /// T2 ingredient: the conclusion-class ratios the quantified choice was
    /// made over (all possible classes for individual summaries, observed
    /// classes for group ones, per-step frequencies for sequence rules).
    std::vector<double> imprecision_ratios;

    /// T4 ingredient: independent per-attribute ratios over the full query
    /// range. Empty vector = univariate (T4 is 0); absent = not applicable.
    std::optional<std::vector<double>> attribute_ratios;

    /// T5 ingredient: fraction of the data backing the conclusion. Usually
    /// equals the covering ratio; conditioned forms use the joint fraction.
    std::optional<double> coverage_ratio;

    /// T6 ingredient: summarizer tokens spoken in the sentence.
    int summarizer_count = 1;
};

struct MetricOptions {
    /// Reproduce the coverage curve exactly as printed in its source, typo
    /// included (linear numerators over a squared denominator, which jumps
    /// past 1 before the midpoint). Off by default in favor of the smooth
    /// S-shaped correction.
    bool literal_coverage_curve = false;
    double coverage_r1 = 0.02;
    double coverage_r2 = 0.15;
};

/// T1, degree of truth: the membership of the chosen quantifier.
inline std::optional<double> degree_of_truth(const MetricBasis& b) {
    if (!b.quantified) return std::nullopt;
    return b.truth;
}

/// T2, degree of imprecision: one minus the geometric mean of the class
/// ratios. Any empty class forces full imprecision.
inline std::optional<double> degree_of_imprecision(const MetricBasis& b) {
    if (!b.quantified || b.imprecision_ratios.empty()) return std::nullopt;
    const std::size_t m = b.imprecision_ratios.size();
    double log_sum = 0.0;
    for (double r : b.imprecision_ratios) {
        if (r < 0.0 || r > 1.0) fail(ErrorCode::OutOfRange, "imprecision ratio outside [0, 1]");
        if (r == 0.0) return 1.0;
        log_sum += std::log(r);
    }
    return 1.0 - std::exp(log_sum / static_cast<double>(m));
}

/// T3, degree of covering: how much of the queried subset follows the claim.
inline std::optional<double> degree_of_covering(const MetricBasis& b) { return b.covering; }

/// T4, degree of appropriateness: how far the joint claim departs from what
/// independent per-attribute rates would predict. Zero for univariate claims.
inline std::optional<double> degree_of_appropriateness(const MetricBasis& b) {
    if (!b.attribute_ratios || !b.covering) return std::nullopt;
    if (b.attribute_ratios->size() <= 1) return 0.0;
    double product = 1.0;
    for (double r : *b.attribute_ratios) {
        if (r < 0.0 || r > 1.0) fail(ErrorCode::OutOfRange, "attribute ratio outside [0, 1]");
        product *= r;
    }
    return std::abs(product - *b.covering);
}

/// T5, degree of coverage: S-shaped relevance of the supporting fraction,
/// flat 0 below r1 and flat 1 above r2.
inline std::optional<double> degree_of_coverage(const MetricBasis& b,
                                                const MetricOptions& opts = {}) {
    if (!b.coverage_ratio) return std::nullopt;
    const double r = *b.coverage_ratio;
    if (r < 0.0 || r > 1.0) fail(ErrorCode::OutOfRange, "coverage ratio outside [0, 1]");
    const double r1 = opts.coverage_r1, r2 = opts.coverage_r2;
    const double mid = 0.5 * (r1 + r2);
    if (opts.literal_coverage_curve) {
        const double d2 = (r2 - r1) * (r2 - r1);
        if (r <= r1) return 0.0;
        if (r < mid) return 2.0 * (r - r1) / d2;
        if (r < r2) return 1.0 - 2.0 * (r - r1) / d2;
        return 1.0;
    }
    if (r <= r1) return 0.0;
    if (r >= r2) return 1.0;
    const double t = (r - r1) / (r2 - r1);
    if (r < mid) return 2.0 * t * t;
    const double u = (r - r2) / (r2 - r1);
    return 1.0 - 2.0 * u * u;
}

/// T6, length quality: 2 * 0.5^(number of summarizers), halving per token.
inline double length_quality(const MetricBasis& b) {
    if (b.summarizer_count < 1) fail(ErrorCode::OutOfRange, "summarizer count must be >= 1");
    return 2.0 * std::pow(0.5, b.summarizer_count);
}

/// The six scores of one summary; absent entries are not applicable to its
/// sentence form.
struct MetricSet {
    std::optional<double> t1, t2, t3, t4, t5;
    double t6 = 1.0;
};

inline MetricSet metric_set(const MetricBasis& b, const MetricOptions& opts = {}) {
    MetricSet m;
    m.t1 = degree_of_truth(b);
    m.t2 = degree_of_imprecision(b);
    m.t3 = degree_of_covering(b);
    m.t4 = degree_of_appropriateness(b);
    m.t5 = degree_of_coverage(b, opts);
    m.t6 = length_quality(b);
    return m;
}

inline nlohmann::json to_json(const MetricSet& m) {
    auto put = [](const std::optional<double>& v) {
        return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
    };
    return nlohmann::json{{"T1", put(m.t1)}, {"T2", put(m.t2)}, {"T3", put(m.t3)},
                          {"T4", put(m.t4)}, {"T5", put(m.t5)}, {"T6", m.t6}};
}

}  // namespace temposum
