#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "temposum/discretize.hpp"
#include "temposum/error.hpp"

namespace temposum {

/// One time window as a categorical tuple: `events[i]` is the symbol of day i
/// within the window, joined across attributes with '-' when multivariate.
struct WindowTuple {
    std::size_t window = 0;  // 0-based window ordinal
    std::vector<std::string> events;
};

/// Joint event token for one position across several attributes ("b-d").
inline std::string joint_token(const std::vector<char>& letters) {
    std::string out;
    for (std::size_t i = 0; i < letters.size(); ++i) {
        if (i) out.push_back('-');
        out.push_back(letters[i]);
    }
    return out;
}

/// Tuples over the complete windows of the given day-level symbol series
/// (one series per attribute, equal lengths).
inline std::vector<WindowTuple> make_window_tuples(
    const std::vector<const SymbolicSeries*>& day_series, int tw_len) {
    if (day_series.empty()) fail(ErrorCode::EmptyQuery, "no series");
    if (tw_len < 1) fail(ErrorCode::OutOfRange, "window length must be positive");
    const std::size_t n = day_series.front()->symbols.size();
    for (const auto* s : day_series)
        if (s->symbols.size() != n) fail(ErrorCode::LengthMismatch, "series lengths differ");
    const std::size_t windows = n / static_cast<std::size_t>(tw_len);
    std::vector<WindowTuple> out;
    out.reserve(windows);
    for (std::size_t w = 0; w < windows; ++w) {
        WindowTuple t;
        t.window = w;
        t.events.reserve(tw_len);
        for (int j = 0; j < tw_len; ++j) {
            std::vector<char> letters;
            letters.reserve(day_series.size());
            for (const auto* s : day_series)
                letters.push_back(
                    static_cast<char>('a' + s->symbols[w * tw_len + j].letter));
            t.events.push_back(joint_token(letters));
        }
        out.push_back(std::move(t));
    }
    return out;
}

/// Number of positions where two equal-length tuples carry the same event.
inline int similarity(const WindowTuple& a, const WindowTuple& b) {
    if (a.events.size() != b.events.size())
        fail(ErrorCode::LengthMismatch, "tuple lengths differ");
    int matches = 0;
    for (std::size_t i = 0; i < a.events.size(); ++i)
        if (a.events[i] == b.events[i]) ++matches;
    return matches;
}

struct ThresholdEstimate {
    double average = 0.0;    // mean pairwise similarity across repeats
    double threshold = 0.0;  // average + 1
    int repeats = 0;
    int sample_size = 0;
};

/// Data-driven clustering threshold: ceil(1/f) repeats, each sampling
/// ceil(f*N) tuples without replacement and averaging pairwise similarity;
/// the threshold is one more than the grand mean. Sampling uses a dedicated
/// generator so results are reproducible for a given seed.
inline ThresholdEstimate estimate_threshold(const std::vector<WindowTuple>& tuples, double f,
                                            unsigned seed) {
    if (tuples.size() < 2) fail(ErrorCode::TooFewTuples, "need at least 2 tuples");
    if (!(f > 0.0 && f <= 1.0)) fail(ErrorCode::OutOfRange, "sample fraction must be in (0, 1]");

    const std::size_t n = tuples.size();
    ThresholdEstimate est;
    est.repeats = static_cast<int>(std::ceil(1.0 / f));
    est.sample_size = static_cast<int>(
        std::min<std::size_t>(n, std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(
                                                              f * static_cast<double>(n))))));

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> idx(n);
    double total = 0.0;
    for (int rep = 0; rep < est.repeats; ++rep) {
        for (std::size_t i = 0; i < n; ++i) idx[i] = i;
        // Partial Fisher-Yates; explicit modulo draw keeps the sequence
        // identical across standard libraries.
        for (int i = 0; i < est.sample_size; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng() % (n - i));
            std::swap(idx[i], idx[j]);
        }
        double sum = 0.0;
        long long pairs = 0;
        for (int i = 0; i < est.sample_size; ++i)
            for (int j = i + 1; j < est.sample_size; ++j) {
                sum += similarity(tuples[idx[i]], tuples[idx[j]]);
                ++pairs;
            }
        total += sum / static_cast<double>(pairs);
    }
    est.average = total / est.repeats;
    est.threshold = est.average + 1.0;
    return est;
}

struct Cluster {
    std::vector<std::size_t> members;  // indices into the tuple list, ascending
};

/// Online categorical clustering: tuples are visited in temporal order; each
/// joins the cluster with the highest mean similarity to its members when that
/// mean reaches the threshold, else starts a new cluster. Ties go to the
/// earliest cluster.
inline std::vector<Cluster> squeezer(const std::vector<WindowTuple>& tuples, double threshold) {
    std::vector<Cluster> clusters;
    for (std::size_t t = 0; t < tuples.size(); ++t) {
        double best = -1.0;
        std::size_t best_cluster = 0;
        for (std::size_t c = 0; c < clusters.size(); ++c) {
            double sum = 0.0;
            for (std::size_t m : clusters[c].members) sum += similarity(tuples[t], tuples[m]);
            const double mean = sum / static_cast<double>(clusters[c].members.size());
            if (mean > best) {
                best = mean;
                best_cluster = c;
            }
        }
        if (!clusters.empty() && best >= threshold) {
            clusters[best_cluster].members.push_back(t);
        } else {
            clusters.push_back(Cluster{{t}});
        }
    }
    return clusters;
}

/// (member, follower) window pairs for every cluster member that has a
/// successor window in the data.
inline std::vector<std::pair<std::size_t, std::size_t>> pair_with_followers(
    const Cluster& cluster, std::size_t window_count) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t m : cluster.members)
        if (m + 1 < window_count) out.emplace_back(m, m + 1);
    return out;
}

// ---- contiguous sequence mining ---------------------------------------------

struct MinedPattern {
    std::vector<std::string> tokens;
    long long count = 0;      // occurrences across all segments
    long long positions = 0;  // admissible start positions for this length

    double support() const {
        return positions == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(positions);
    }
};

namespace detail {
// Support/confidence thresholds compare rationals against user-supplied
// doubles; the slack keeps exact-boundary cases (e.g. 37/185 vs 0.2) on the
// accepted side without admitting genuinely smaller ratios, whose gap is
// bounded below by 1/positions^2.
inline constexpr double kRatioSlack = 1e-12;

inline bool ratio_at_least(long long num, long long den, double threshold) {
    if (den == 0) return false;
    return static_cast<double>(num) / static_cast<double>(den) + kRatioSlack >= threshold;
}
}  // namespace detail

/// Every contiguous subsequence of length 1..max_len whose support reaches
/// min_support. Support divides the occurrence count by the number of start
/// positions for that length: sum over segments of max(0, len - patlen + 1).
/// Multiple segments count jointly (used when gaps split the event stream);
/// min_support 0 returns every occurring subsequence.
inline std::vector<MinedPattern> mine_frequent(
    const std::vector<std::vector<std::string>>& segments, int max_len, double min_support) {
    if (max_len < 1) fail(ErrorCode::OutOfRange, "max pattern length must be positive");
    if (min_support < 0.0 || min_support > 1.0)
        fail(ErrorCode::OutOfRange, "min support must be in [0, 1]");

    std::map<std::vector<std::string>, long long> counts;
    std::vector<long long> positions(static_cast<std::size_t>(max_len) + 1, 0);
    for (const auto& seg : segments) {
        const long long len = static_cast<long long>(seg.size());
        for (int pl = 1; pl <= max_len; ++pl)
            positions[pl] += std::max<long long>(0, len - pl + 1);
        for (std::size_t start = 0; start < seg.size(); ++start) {
            std::vector<std::string> pat;
            pat.reserve(max_len);
            for (std::size_t end = start;
                 end < seg.size() && end - start < static_cast<std::size_t>(max_len); ++end) {
                pat.push_back(seg[end]);
                ++counts[pat];
            }
        }
    }

    std::vector<MinedPattern> out;
    for (auto& [tokens, count] : counts) {
        const long long pos = positions[tokens.size()];
        if (min_support == 0.0 || detail::ratio_at_least(count, pos, min_support))
            out.push_back(MinedPattern{tokens, count, pos});
    }
    return out;  // map iteration order: lexicographic by token sequence
}

inline std::vector<MinedPattern> mine_frequent(const std::vector<std::string>& events, int max_len,
                                               double min_support) {
    return mine_frequent(std::vector<std::vector<std::string>>{events}, max_len, min_support);
}

/// Convenience for letter strings: each character is one event.
inline std::vector<MinedPattern> mine_frequent(const std::string& letters, int max_len,
                                               double min_support) {
    std::vector<std::string> events;
    events.reserve(letters.size());
    for (char c : letters) events.emplace_back(1, c);
    return mine_frequent(events, max_len, min_support);
}

struct SequenceRule {
    std::vector<std::string> prefix;
    std::vector<std::string> suffix;
    long long pattern_count = 0;
    long long prefix_count = 0;
    long long positions = 0;  // admissible starts for the full pattern

    double confidence() const {
        return prefix_count == 0
                   ? 0.0
                   : static_cast<double>(pattern_count) / static_cast<double>(prefix_count);
    }
    double support() const {
        return positions == 0 ? 0.0
                              : static_cast<double>(pattern_count) / static_cast<double>(positions);
    }
};

namespace detail {
// confidence desc, support desc, then lexicographic; exact cross
// multiplication avoids FP ties ordering differently across platforms.
inline bool rule_order(const SequenceRule& a, const SequenceRule& b) {
    const long long confl = a.pattern_count * b.prefix_count;
    const long long confr = b.pattern_count * a.prefix_count;
    if (confl != confr) return confl > confr;
    const long long supl = a.pattern_count * b.positions;
    const long long supr = b.pattern_count * a.positions;
    if (supl != supr) return supl > supr;
    if (a.prefix != b.prefix) return a.prefix < b.prefix;
    return a.suffix < b.suffix;
}
}  // namespace detail

/// Rules from every prefix/suffix split of each frequent pattern of length at
/// least 2, kept when confidence = count(pattern) / count(prefix) reaches
/// min_confidence. Prefixes of frequent patterns are themselves frequent, so
/// their counts are always available in the input.
inline std::vector<SequenceRule> rules_from_patterns(const std::vector<MinedPattern>& patterns,
                                                     double min_confidence) {
    if (min_confidence < 0.0 || min_confidence > 1.0)
        fail(ErrorCode::OutOfRange, "min confidence must be in [0, 1]");
    std::map<std::vector<std::string>, long long> counts;
    for (const auto& p : patterns) counts[p.tokens] = p.count;

    std::vector<SequenceRule> rules;
    for (const auto& p : patterns) {
        if (p.tokens.size() < 2) continue;
        for (std::size_t cut = 1; cut < p.tokens.size(); ++cut) {
            SequenceRule r;
            r.prefix.assign(p.tokens.begin(), p.tokens.begin() + cut);
            r.suffix.assign(p.tokens.begin() + cut, p.tokens.end());
            r.pattern_count = p.count;
            r.positions = p.positions;
            auto it = counts.find(r.prefix);
            if (it == counts.end()) continue;  // prefix fell below support; skip split
            r.prefix_count = it->second;
            if (detail::ratio_at_least(r.pattern_count, r.prefix_count, min_confidence))
                rules.push_back(std::move(r));
        }
    }
    std::sort(rules.begin(), rules.end(), detail::rule_order);
    return rules;
}

/// Rules whose condition is read from one token stream and whose conclusion
/// from a parallel stream at the same positions. With both arguments equal
/// this matches rules_from_patterns over mine_frequent; passing per-attribute
/// tokens as the condition and joint tokens as the conclusion yields rules
/// that watch a single attribute but predict all of them.
inline std::vector<SequenceRule> projected_rules(
    const std::vector<std::vector<std::string>>& condition_segments,
    const std::vector<std::vector<std::string>>& joint_segments, int max_len, double min_support,
    double min_confidence) {
    if (max_len < 2) return {};
    if (condition_segments.size() != joint_segments.size())
        fail(ErrorCode::LengthMismatch, "segment counts differ");
    if (min_support < 0.0 || min_support > 1.0)
        fail(ErrorCode::OutOfRange, "min support must be in [0, 1]");
    if (min_confidence < 0.0 || min_confidence > 1.0)
        fail(ErrorCode::OutOfRange, "min confidence must be in [0, 1]");

    std::map<std::vector<std::string>, long long> prefix_counts;
    using Key = std::pair<std::vector<std::string>, std::vector<std::string>>;
    std::map<Key, long long> full_counts;
    std::vector<long long> positions(static_cast<std::size_t>(max_len) + 1, 0);

    for (std::size_t s = 0; s < condition_segments.size(); ++s) {
        const auto& cond = condition_segments[s];
        const auto& joint = joint_segments[s];
        if (cond.size() != joint.size())
            fail(ErrorCode::LengthMismatch, "condition and joint segments misaligned");
        const long long len = static_cast<long long>(cond.size());
        for (int pl = 1; pl <= max_len; ++pl)
            positions[pl] += std::max<long long>(0, len - pl + 1);
        for (std::size_t start = 0; start < cond.size(); ++start) {
            std::vector<std::string> pre;
            for (std::size_t cut = start + 1;
                 cut <= cond.size() && cut - start <= static_cast<std::size_t>(max_len); ++cut) {
                pre.push_back(cond[cut - 1]);
                ++prefix_counts[pre];
                std::vector<std::string> suf;
                for (std::size_t end = cut + 1;
                     end <= cond.size() && end - start <= static_cast<std::size_t>(max_len);
                     ++end) {
                    suf.push_back(joint[end - 1]);
                    ++full_counts[{pre, suf}];
                }
            }
        }
    }

    std::vector<SequenceRule> rules;
    for (const auto& [key, count] : full_counts) {
        SequenceRule r;
        r.prefix = key.first;
        r.suffix = key.second;
        r.pattern_count = count;
        r.prefix_count = prefix_counts[r.prefix];
        r.positions = positions[r.prefix.size() + r.suffix.size()];
        if (!detail::ratio_at_least(r.pattern_count, r.positions, min_support)) continue;
        if (!detail::ratio_at_least(r.pattern_count, r.prefix_count, min_confidence)) continue;
        rules.push_back(std::move(r));
    }
    std::sort(rules.begin(), rules.end(), detail::rule_order);
    return rules;
}

// ---- day-annotated mining ---------------------------------------------------

/// An event stream where every position carries its ISO weekday and a flag
/// telling whether the next logged entry is the next calendar day.
struct DayEventStream {
    std::vector<std::string> tokens;
    std::vector<int> weekdays;          // 1..7, aligned with tokens
    std::vector<bool> next_consecutive; // [i] true when entry i+1 is the next calendar day
};

struct DayRule {
    std::vector<int> prefix_weekdays;
    std::vector<std::string> prefix;
    std::vector<int> suffix_weekdays;
    std::vector<std::string> suffix;
    long long pattern_count = 0;
    long long prefix_count = 0;
    long long weekday_positions = 0;  // runs matching the full weekday shape

    double confidence() const {
        return prefix_count == 0
                   ? 0.0
                   : static_cast<double>(pattern_count) / static_cast<double>(prefix_count);
    }
    double support() const {
        return weekday_positions == 0 ? 0.0
                                      : static_cast<double>(pattern_count) /
                                            static_cast<double>(weekday_positions);
    }
};

namespace detail {
inline bool day_rule_order(const DayRule& a, const DayRule& b) {
    const long long confl = a.pattern_count * b.prefix_count;
    const long long confr = b.pattern_count * a.prefix_count;
    if (confl != confr) return confl > confr;
    const long long supl = a.pattern_count * b.weekday_positions;
    const long long supr = b.pattern_count * a.weekday_positions;
    if (supl != supr) return supl > supr;
    if (a.prefix_weekdays != b.prefix_weekdays) return a.prefix_weekdays < b.prefix_weekdays;
    if (a.prefix != b.prefix) return a.prefix < b.prefix;
    if (a.suffix_weekdays != b.suffix_weekdays) return a.suffix_weekdays < b.suffix_weekdays;
    return a.suffix < b.suffix;
}
}  // namespace detail

/// Weekday-anchored rules with the condition tokens taken from a parallel
/// stream, like projected_rules. Support divides by the number of consecutive
/// runs whose weekday shape matches the pattern, which keeps weekly habits
/// reachable at ordinary support floors.
inline std::vector<DayRule> day_projected_rules(const DayEventStream& joint,
                                                const std::vector<std::string>& condition_tokens,
                                                int max_len, double min_support,
                                                double min_confidence) {
    if (max_len < 2) return {};
    const std::size_t n = joint.tokens.size();
    if (joint.weekdays.size() != n || joint.next_consecutive.size() != n ||
        condition_tokens.size() != n)
        fail(ErrorCode::LengthMismatch, "day event stream fields misaligned");

    using Half = std::vector<std::pair<int, std::string>>;
    std::map<Half, long long> prefix_counts;
    std::map<std::pair<Half, Half>, long long> full_counts;
    std::map<std::vector<int>, long long> weekday_counts;

    for (std::size_t start = 0; start < n; ++start) {
        std::size_t run_end = start;  // exclusive end of the consecutive run
        while (run_end < n && run_end - start < static_cast<std::size_t>(max_len) &&
               (run_end == start || joint.next_consecutive[run_end - 1]))
            ++run_end;

        std::vector<int> days;
        Half pre;
        for (std::size_t cut = start + 1; cut <= run_end; ++cut) {
            days.push_back(joint.weekdays[cut - 1]);
            ++weekday_counts[days];
            pre.emplace_back(joint.weekdays[cut - 1], condition_tokens[cut - 1]);
            ++prefix_counts[pre];
            Half suf;
            for (std::size_t end = cut + 1; end <= run_end; ++end) {
                suf.emplace_back(joint.weekdays[end - 1], joint.tokens[end - 1]);
                ++full_counts[{pre, suf}];
            }
        }
    }

    std::vector<DayRule> rules;
    for (const auto& [key, count] : full_counts) {
        DayRule r;
        std::vector<int> days;
        for (const auto& [wd, tok] : key.first) {
            r.prefix_weekdays.push_back(wd);
            r.prefix.push_back(tok);
            days.push_back(wd);
        }
        for (const auto& [wd, tok] : key.second) {
            r.suffix_weekdays.push_back(wd);
            r.suffix.push_back(tok);
            days.push_back(wd);
        }
        r.pattern_count = count;
        r.prefix_count = prefix_counts[key.first];
        r.weekday_positions = weekday_counts[days];
        if (!detail::ratio_at_least(r.pattern_count, r.weekday_positions, min_support)) continue;
        if (!detail::ratio_at_least(r.pattern_count, r.prefix_count, min_confidence)) continue;
        rules.push_back(std::move(r));
    }
    std::sort(rules.begin(), rules.end(), detail::day_rule_order);
    return rules;
}

/// Weekday-anchored rules ("very high on a Saturday -> very high the next
/// Sunday") over a single stream of (weekday, token) events.
inline std::vector<DayRule> day_annotated_rules(const DayEventStream& stream, int max_len,
                                                double min_support, double min_confidence) {
    return day_projected_rules(stream, stream.tokens, max_len, min_support, min_confidence);
}

}  // namespace temposum
