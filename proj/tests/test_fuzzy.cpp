#include <catch2/catch_amalgamated.hpp>

#include "temposum/fuzzy.hpp"

using namespace temposum;

TEST_CASE("agreement ratio is a plain fraction with guarded edges") {
    CHECK(agreement_ratio(2, 7) == 2.0 / 7.0);
    CHECK(agreement_ratio(0, 5) == 0.0);
    CHECK(agreement_ratio(5, 5) == 1.0);
    CHECK_THROWS_AS(agreement_ratio(1, 0), Error);
    CHECK_THROWS_AS(agreement_ratio(6, 5), Error);

    const std::vector<int> xs{1, 2, 3, 4, 5, 6, 7};
    CHECK(agreement_ratio(xs, [](int x) { return x <= 2; }) == 2.0 / 7.0);
}

TEST_CASE("best pair picks the highest-truth quantifier across summarizers") {
    const auto qs = default_quantifiers();

    // 2 of 7 low days vs 4 of 7 high days: "some of the" at 0.93 beats
    // "more than half of the" at 0.71.
    const BestPair bp = best_pair(qs, {{"low", 2.0 / 7.0}, {"high", 4.0 / 7.0}});
    CHECK(bp.winner.summarizer == "low");
    CHECK(bp.winner.quantifier == "some of the");
    CHECK_THAT(bp.winner.truth, Catch::Matchers::WithinAbs(0.9286, 1e-3));
    REQUIRE(bp.runners_up.size() == 1);
    CHECK(bp.runners_up[0].summarizer == "high");
    CHECK_THAT(bp.runners_up[0].truth, Catch::Matchers::WithinAbs(0.7143, 1e-3));
}

TEST_CASE("equal truths go to the quantifier implying the larger amount") {
    const auto qs = default_quantifiers();
    // r = 1 gives mu = 1 for both "most of the" (plateau ends above) and
    // "all of the"; the sentence should claim "all".
    const ScoredPair sp = best_quantifier(qs, "s", 1.0);
    CHECK(sp.quantifier == "all of the");

    // Cross-summarizer tie at equal rank falls back to set order.
    const BestPair bp = best_pair(qs, {{"low", 2.0 / 7.0}, {"high", 2.0 / 7.0}});
    CHECK(bp.winner.summarizer == "low");
    CHECK(bp.winner.quantifier == "some of the");
}

TEST_CASE("zero ratio wins as none-of-the only when explicitly offered") {
    const auto qs = default_quantifiers();
    const BestPair bp = best_pair(qs, {{"x", 0.0}});
    CHECK(bp.winner.quantifier == "none of the");
    CHECK(bp.winner.truth == 1.0);
    CHECK_THROWS_AS(best_pair(qs, {}), Error);
}

TEST_CASE("small nonzero ratios favor almost-none") {
    const auto qs = default_quantifiers();
    const ScoredPair sp = best_quantifier(qs, "s", 1.0 / 7.0);
    CHECK(sp.quantifier == "almost none of the");
    CHECK(sp.truth == 1.0);
}

TEST_CASE("every candidate keeps its winning quantifier in the runner-up list") {
    const auto qs = default_quantifiers();
    const BestPair bp = best_pair(
        qs, {{"very low", 1.0 / 7.0}, {"moderate", 4.0 / 7.0}, {"very high", 2.0 / 7.0}});
    CHECK(bp.winner.summarizer == "very low");  // almost none, mu = 1
    REQUIRE(bp.runners_up.size() == 2);
    CHECK(bp.runners_up[0].truth >= bp.runners_up[1].truth);
}
