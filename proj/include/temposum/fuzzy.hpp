#pragma once

#include <algorithm>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "temposum/error.hpp"
#include "temposum/vocabulary.hpp"

namespace temposum {

/// Fraction of query objects matching a crisp predicate: r = hits / n.
inline double agreement_ratio(std::size_t hits, std::size_t n) {
    if (n == 0) fail(ErrorCode::EmptyQuery, "agreement ratio over an empty query");
    if (hits > n) fail(ErrorCode::OutOfRange, "more hits than objects");
    return static_cast<double>(hits) / static_cast<double>(n);
}

template <typename Iterable, typename Pred>
    requires(!std::is_arithmetic_v<Iterable>)
double agreement_ratio(const Iterable& objects, Pred&& pred) {
    std::size_t n = 0, hits = 0;
    for (const auto& o : objects) {
        ++n;
        if (pred(o)) ++hits;
    }
    return agreement_ratio(hits, n);
}

/// One (summarizer, quantifier) candidate with its truth value.
struct ScoredPair {
    std::string summarizer;
    std::string quantifier;
    int quantifier_rank = 0;
    double truth = 0.0;
    double ratio = 0.0;
};

struct BestPair {
    ScoredPair winner;
    std::vector<ScoredPair> runners_up;  // remaining candidates, best first
};

/// Truth values that an exact rational computation would tie can drift apart
/// by an ulp in doubles; memberships this close count as equal so the rank
/// tie-break still applies.
inline constexpr double kTruthTieEpsilon = 1e-9;

/// Best quantifier for one ratio: arg-max membership, ties to the quantifier
/// implying the larger amount.
inline ScoredPair best_quantifier(const std::vector<Quantifier>& quantifiers,
                                  const std::string& summarizer, double ratio) {
    if (quantifiers.empty()) fail(ErrorCode::BadConfig, "no quantifiers");
    ScoredPair best;
    bool have = false;
    for (const auto& q : quantifiers) {
        const double mu = q.membership(ratio);
        if (!have || mu > best.truth + kTruthTieEpsilon ||
            (mu > best.truth - kTruthTieEpsilon && q.rank > best.quantifier_rank)) {
            best = {summarizer, q.name, q.rank, mu, ratio};
            have = true;
        }
    }
    return best;
}

/// Winning (summarizer, quantifier) pair over candidate summarizers given in
/// set order. Selection: highest truth, then higher-rank quantifier, then the
/// earlier summarizer in the given order. Callers pass only summarizers that
/// actually occur; a zero ratio would otherwise always win as "none of the".
inline BestPair best_pair(const std::vector<Quantifier>& quantifiers,
                          const std::vector<std::pair<std::string, double>>& ratio_by_summarizer) {
    if (ratio_by_summarizer.empty()) fail(ErrorCode::EmptyQuery, "no candidate summarizers");
    std::vector<ScoredPair> scored;
    scored.reserve(ratio_by_summarizer.size());
    for (const auto& [summarizer, ratio] : ratio_by_summarizer)
        scored.push_back(best_quantifier(quantifiers, summarizer, ratio));

    std::size_t best = 0;
    for (std::size_t i = 1; i < scored.size(); ++i) {
        const auto& a = scored[i];
        const auto& b = scored[best];
        if (a.truth > b.truth + kTruthTieEpsilon ||
            (a.truth > b.truth - kTruthTieEpsilon && a.quantifier_rank > b.quantifier_rank)) {
            best = i;
        }
    }

    BestPair out;
    out.winner = scored[best];
    for (std::size_t i = 0; i < scored.size(); ++i)
        if (i != best) out.runners_up.push_back(scored[i]);
    std::stable_sort(out.runners_up.begin(), out.runners_up.end(),
                     [](const ScoredPair& a, const ScoredPair& b) {
                         if (a.truth != b.truth) return a.truth > b.truth;
                         return a.quantifier_rank > b.quantifier_rank;
                     });
    return out;
}

}  // namespace temposum
