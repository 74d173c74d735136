#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>
#include <string>

#include "temposum/mining.hpp"

using namespace temposum;

namespace {

WindowTuple tuple_of(std::size_t w, const std::string& letters) {
    WindowTuple t;
    t.window = w;
    for (char c : letters) t.events.emplace_back(1, c);
    return t;
}

// Brute-force reference: substring counts via sliding windows, thresholds as
// exact integer comparisons (only valid for thresholds k/4).
struct OracleResult {
    std::map<std::string, long long> frequent;  // pattern -> count
    std::map<std::string, long long> positions; // pattern -> admissible starts
};

OracleResult oracle_mine(const std::string& seq, int max_len, int num4, int den4 = 4) {
    OracleResult out;
    const long long L = static_cast<long long>(seq.size());
    std::map<std::string, long long> counts;
    for (long long start = 0; start < L; ++start)
        for (long long len = 1; len <= max_len && start + len <= L; ++len)
            ++counts[seq.substr(start, len)];
    for (const auto& [pat, count] : counts) {
        const long long pos = L - static_cast<long long>(pat.size()) + 1;
        if (count * den4 >= num4 * pos) {
            out.frequent[pat] = count;
            out.positions[pat] = pos;
        }
    }
    return out;
}

std::string flatten(const std::vector<std::string>& tokens) {
    std::string s;
    for (const auto& t : tokens) s += t;
    return s;
}

}  // namespace

TEST_CASE("similarity counts matching positions") {
    CHECK(similarity(tuple_of(0, "abcabca"), tuple_of(1, "abcabca")) == 7);
    CHECK(similarity(tuple_of(0, "abcabca"), tuple_of(1, "bbcabcb")) == 5);
    CHECK(similarity(tuple_of(0, "aaa"), tuple_of(1, "bbb")) == 0);
    CHECK_THROWS_AS(similarity(tuple_of(0, "ab"), tuple_of(1, "abc")), Error);

    // exhaustive check against a positional oracle, short tuples
    std::vector<std::string> all;
    for (int len = 1; len <= 4; ++len) {
        std::vector<std::string> cur{""};
        for (int i = 0; i < len; ++i) {
            std::vector<std::string> next;
            for (const auto& s : cur)
                for (char c : {'a', 'b'}) next.push_back(s + c);
            cur = next;
        }
        all.insert(all.end(), cur.begin(), cur.end());
    }
    for (const auto& x : all)
        for (const auto& y : all) {
            if (x.size() != y.size()) continue;
            int expect = 0;
            for (std::size_t i = 0; i < x.size(); ++i)
                if (x[i] == y[i]) ++expect;
            REQUIRE(similarity(tuple_of(0, x), tuple_of(1, y)) == expect);
        }
}

TEST_CASE("threshold estimation repeats ceil(1/f) samples") {
    std::vector<WindowTuple> same;
    for (std::size_t i = 0; i < 10; ++i) same.push_back(tuple_of(i, "aaaaaaa"));
    const ThresholdEstimate est = estimate_threshold(same, 0.2, 42u);
    CHECK(est.repeats == 5);
    CHECK(est.sample_size == 2);
    CHECK(est.average == 7.0);
    CHECK(est.threshold == 8.0);

    const ThresholdEstimate est3 = estimate_threshold(same, 0.34, 42u);
    CHECK(est3.repeats == 3);

    CHECK_THROWS_AS(estimate_threshold({tuple_of(0, "a")}, 0.2, 42u), Error);
    CHECK_THROWS_AS(estimate_threshold(same, 0.0, 42u), Error);

    // same seed, same estimate; different seed may differ but stays in range
    const ThresholdEstimate again = estimate_threshold(same, 0.2, 42u);
    CHECK(again.average == est.average);
}

TEST_CASE("squeezer clusters by mean similarity with temporal order") {
    const std::vector<WindowTuple> tuples{tuple_of(0, "aaaaaaa"), tuple_of(1, "aaaaaaa"),
                                          tuple_of(2, "bbbbbbb")};
    const auto clusters = squeezer(tuples, 4.0);
    REQUIRE(clusters.size() == 2);
    CHECK(clusters[0].members == std::vector<std::size_t>{0, 1});
    CHECK(clusters[1].members == std::vector<std::size_t>{2});
}

TEST_CASE("squeezer ties go to the earliest cluster") {
    const std::vector<WindowTuple> tuples{tuple_of(0, "aabb"), tuple_of(1, "bbaa"),
                                          tuple_of(2, "abab")};
    const auto clusters = squeezer(tuples, 2.0);
    REQUIRE(clusters.size() == 2);
    CHECK(clusters[0].members == std::vector<std::size_t>{0, 2});
    CHECK(clusters[1].members == std::vector<std::size_t>{1});
}

TEST_CASE("followers pair members with their next window") {
    Cluster c;
    c.members = {0, 3, 5};
    const auto pairs = pair_with_followers(c, 6);
    REQUIRE(pairs.size() == 2);  // window 5 is the last one, no follower
    CHECK(pairs[0] == std::pair<std::size_t, std::size_t>{0, 1});
    CHECK(pairs[1] == std::pair<std::size_t, std::size_t>{3, 4});
}

TEST_CASE("mined patterns on a known sequence") {
    const auto patterns = mine_frequent(std::string("abcabca"), 7, 0.25);
    std::map<std::string, long long> got;
    for (const auto& p : patterns) got[flatten(p.tokens)] = p.count;

    CHECK(got.at("a") == 3);
    CHECK(got.at("ab") == 2);
    CHECK(got.at("abca") == 2);
    CHECK(got.at("abcabca") == 1);
    CHECK(!got.count("cab"));  // support 1/5 below 0.25

    const auto rules = rules_from_patterns(patterns, 0.8);
    bool saw_ab_ca = false, saw_a_bca = false;
    for (const auto& r : rules) {
        if (flatten(r.prefix) == "ab" && flatten(r.suffix) == "ca") {
            saw_ab_ca = true;
            CHECK(r.confidence() == 1.0);
        }
        if (flatten(r.prefix) == "a" && flatten(r.suffix) == "bca") saw_a_bca = true;
    }
    CHECK(saw_ab_ca);
    CHECK(!saw_a_bca);  // confidence 2/3
}

TEST_CASE("minimum support zero keeps every occurring subsequence") {
    const auto patterns = mine_frequent(std::string("abc"), 3, 0.0);
    CHECK(patterns.size() == 6);  // a, b, c, ab, bc, abc
}

TEST_CASE("segments count jointly, gaps never match across") {
    const std::vector<std::vector<std::string>> segs{{"a", "b"}, {"a", "b"}, {"b"}};
    const auto patterns = mine_frequent(segs, 2, 0.25);
    std::map<std::string, MinedPattern> got;
    for (const auto& p : patterns) got[flatten(p.tokens)] = p;
    CHECK(got.at("a").count == 2);
    CHECK(got.at("a").positions == 5);
    CHECK(got.at("ab").count == 2);
    CHECK(got.at("ab").positions == 2);
    CHECK(!got.count("ba"));  // would require matching across a gap
}

TEST_CASE("mining agrees with the oracle exhaustively and on random input") {
    auto compare = [](const std::string& seq, int max_len, int num4) {
        const double minsup = num4 / 4.0;
        const auto got = mine_frequent(seq, max_len, minsup);
        const auto expect = oracle_mine(seq, max_len, num4);
        REQUIRE(got.size() == expect.frequent.size());
        for (const auto& p : got) {
            const std::string key = flatten(p.tokens);
            auto it = expect.frequent.find(key);
            REQUIRE(it != expect.frequent.end());
            REQUIRE(p.count == it->second);
            REQUIRE(p.positions == expect.positions.at(key));
        }
    };

    // exhaustive over a 3-letter alphabet, lengths 1..8
    std::vector<std::string> frontier{""};
    for (int len = 1; len <= 8; ++len) {
        std::vector<std::string> next;
        next.reserve(frontier.size() * 3);
        for (const auto& s : frontier)
            for (char c : {'a', 'b', 'c'}) next.push_back(s + c);
        frontier = std::move(next);
        for (const auto& s : frontier) {
            compare(s, 7, 1);  // minsup 0.25
            compare(s, 7, 2);  // minsup 0.5
        }
    }

    // random longer sequences
    std::mt19937 rng(99);
    for (int i = 0; i < 200; ++i) {
        const int len = 9 + static_cast<int>(rng() % 40);
        std::string s;
        for (int j = 0; j < len; ++j) s.push_back(static_cast<char>('a' + rng() % 3));
        compare(s, 7, 1);
        compare(s, 12, 2);
    }
}

TEST_CASE("rules order by confidence, then support, then lexicographic") {
    std::mt19937 rng(7);
    for (int i = 0; i < 50; ++i) {
        std::string s;
        const int len = 10 + static_cast<int>(rng() % 30);
        for (int j = 0; j < len; ++j) s.push_back(static_cast<char>('a' + rng() % 2));
        const auto rules = rules_from_patterns(mine_frequent(s, 6, 0.25), 0.25);
        for (std::size_t k = 1; k < rules.size(); ++k) {
            const auto& a = rules[k - 1];
            const auto& b = rules[k];
            const double ca = a.confidence(), cb = b.confidence();
            REQUIRE(ca >= cb - 1e-15);
            if (ca == cb) REQUIRE(a.support() >= b.support() - 1e-15);
        }
    }
}

TEST_CASE("projected rules reduce to pattern rules on a single stream") {
    std::mt19937 rng(321);
    auto key_of = [](const SequenceRule& r) { return flatten(r.prefix) + ">" + flatten(r.suffix); };
    for (int iter = 0; iter < 60; ++iter) {
        std::vector<std::vector<std::string>> segs(1 + rng() % 3);
        for (auto& seg : segs) {
            const std::size_t len = rng() % 19;
            for (std::size_t j = 0; j < len; ++j)
                seg.emplace_back(1, static_cast<char>('a' + rng() % 3));
        }
        const double minconf = (rng() % 3) * 0.4;

        // With every pattern kept, the two constructions agree exactly,
        // ordering included.
        const auto direct = projected_rules(segs, segs, 5, 0.0, minconf);
        const auto via_patterns = rules_from_patterns(mine_frequent(segs, 5, 0.0), minconf);
        REQUIRE(direct.size() == via_patterns.size());
        for (std::size_t k = 0; k < direct.size(); ++k) {
            REQUIRE(direct[k].prefix == via_patterns[k].prefix);
            REQUIRE(direct[k].suffix == via_patterns[k].suffix);
            REQUIRE(direct[k].pattern_count == via_patterns[k].pattern_count);
            REQUIRE(direct[k].prefix_count == via_patterns[k].prefix_count);
            REQUIRE(direct[k].positions == via_patterns[k].positions);
        }

        // A support floor can drop a rule's prefix from the frequent set while
        // the longer pattern stays; projected rules still see it, so the
        // pattern-based list is a subset with identical counts.
        const auto direct_f = projected_rules(segs, segs, 5, 0.3, minconf);
        const auto via_f = rules_from_patterns(mine_frequent(segs, 5, 0.3), minconf);
        std::map<std::string, const SequenceRule*> by_key;
        for (const auto& r : direct_f) by_key[key_of(r)] = &r;
        for (const auto& r : via_f) {
            auto it = by_key.find(key_of(r));
            REQUIRE(it != by_key.end());
            REQUIRE(it->second->pattern_count == r.pattern_count);
            REQUIRE(it->second->prefix_count == r.prefix_count);
        }
        std::set<std::string> via_keys;
        for (const auto& r : via_f) via_keys.insert(key_of(r));
        for (const auto& r : direct_f) {
            if (via_keys.count(key_of(r))) continue;
            // The only legitimate reason to be missing: an infrequent prefix.
            long long prefix_positions = 0;
            for (const auto& seg : segs)
                prefix_positions += std::max<long long>(
                    0, static_cast<long long>(seg.size()) -
                           static_cast<long long>(r.prefix.size()) + 1);
            REQUIRE_FALSE(static_cast<double>(r.prefix_count) /
                                  static_cast<double>(prefix_positions) +
                              1e-12 >=
                          0.3);
        }
    }
}

TEST_CASE("projected rules watch one stream and conclude on another") {
    const std::vector<std::vector<std::string>> cond{{"a", "a", "b", "a", "a", "b"}};
    const std::vector<std::vector<std::string>> joint{
        {"a-c", "a-d", "b-c", "a-c", "a-d", "b-c"}};
    const auto rules = projected_rules(cond, joint, 3, 0.25, 0.6);
    REQUIRE(rules.size() == 2);
    CHECK(rules[0].prefix == std::vector<std::string>{"a", "a"});
    CHECK(rules[0].suffix == std::vector<std::string>{"b-c"});
    CHECK(rules[0].pattern_count == 2);
    CHECK(rules[0].prefix_count == 2);
    CHECK(rules[0].positions == 4);
    CHECK(rules[1].prefix == std::vector<std::string>{"b", "a"});
    CHECK(rules[1].suffix == std::vector<std::string>{"a-d"});
    CHECK(rules[1].confidence() == 1.0);
    CHECK(rules[1].support() == 0.25);

    CHECK(projected_rules(cond, joint, 1, 0.0, 0.0).empty());
    CHECK_THROWS_AS(projected_rules(cond, {}, 3, 0.25, 0.6), Error);
}

TEST_CASE("day projected rules carry the joint conclusion") {
    DayEventStream joint;
    joint.tokens = {"a-c", "b-d"};
    joint.weekdays = {6, 7};
    joint.next_consecutive = {true, false};
    const std::vector<std::string> cond{"a", "b"};
    const auto rules = day_projected_rules(joint, cond, 7, 0.5, 0.8);
    REQUIRE(rules.size() == 1);
    CHECK(rules[0].prefix == std::vector<std::string>{"a"});
    CHECK(rules[0].prefix_weekdays == std::vector<int>{6});
    CHECK(rules[0].suffix == std::vector<std::string>{"b-d"});
    CHECK(rules[0].suffix_weekdays == std::vector<int>{7});
    CHECK(rules[0].confidence() == 1.0);
}

TEST_CASE("day-annotated rules anchor on weekday shapes") {
    // Four (Sat, Sun) pairs; three carry e->e, one e->a. A calendar gap
    // removes a fifth pair from consideration entirely.
    DayEventStream stream;
    auto push = [&stream](int weekday, const std::string& tok, bool consec) {
        stream.tokens.push_back(tok);
        stream.weekdays.push_back(weekday);
        stream.next_consecutive.push_back(consec);
    };
    for (int week = 0; week < 3; ++week) {
        push(6, "e", true);
        push(7, "e", false);  // next entry jumps to the following Saturday
    }
    push(6, "e", true);
    push(7, "a", false);
    push(6, "e", false);  // gap: its Sunday was never logged
    push(7, "e", false);

    const auto rules = day_annotated_rules(stream, 7, 0.25, 0.55);
    REQUIRE_FALSE(rules.empty());
    const auto& r = rules.front();
    CHECK(r.prefix_weekdays == std::vector<int>{6});
    CHECK(r.prefix == std::vector<std::string>{"e"});
    CHECK(r.suffix_weekdays == std::vector<int>{7});
    CHECK(r.suffix == std::vector<std::string>{"e"});
    CHECK(r.pattern_count == 3);
    CHECK(r.prefix_count == 5);  // every Saturday counts as a length-1 run
    CHECK(r.weekday_positions == 4);  // the gapped Saturday starts no 2-day run
    CHECK(r.confidence() == 0.6);

    // tighter confidence floor drops it
    CHECK(day_annotated_rules(stream, 7, 0.25, 0.65).empty());
}
