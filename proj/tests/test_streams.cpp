#include <gtest/gtest.h>

#include "support.hpp"
#include "tracktruth/fixtures.hpp"

using namespace tracktruth;

TEST(StreamSpec, Positions) {
    const StreamSpec spec({7, 8}, {1, 2, 3});
    EXPECT_EQ(spec.at(0), 7u);
    EXPECT_EQ(spec.at(1), 8u);
    EXPECT_EQ(spec.at(2), 1u);
    EXPECT_EQ(spec.at(5), 1u);
    EXPECT_EQ(unroll(spec, 6), (DataSequence{7, 8, 1, 2, 3, 1}));
    EXPECT_THROW(StreamSpec({1}, {}), Error);
}

TEST(Streams, SoundAndComplete) {
    const auto sp = fixtures::two_ellipses();
    const auto p = sp.observable("p"), q = sp.observable("q");
    const auto s = sp.world("s"), u = sp.world("u");
    const StreamSpec pq({}, {p, q});
    EXPECT_TRUE(is_sound(sp, pq, s));
    EXPECT_TRUE(is_complete(sp, pq, s));
    EXPECT_FALSE(is_sound(sp, pq, u));
    EXPECT_TRUE(is_complete(sp, pq, u));
    const StreamSpec only_p({}, {p});
    EXPECT_FALSE(is_complete(sp, only_p, s));
    EXPECT_TRUE(is_sound(sp, DataSequence{}, s));
}

TEST(Streams, FairFixture) {
    const auto sp = fixtures::square();
    const auto s = sp.world("s");
    const StreamSpec fair({sp.observable("q"), sp.observable("pbar"), sp.observable("p")}, {sp.observable("qbar")});
    EXPECT_TRUE(is_fair(sp, fair, s));
    EXPECT_FALSE(is_sound(sp, fair, s));
}

TEST(Streams, UncorrectedErrorIsUnfair) {
    const auto sp = fixtures::square();
    const auto s = sp.world("s");
    // pbar is never corrected after its last occurrence
    const StreamSpec unfair({sp.observable("p"), sp.observable("pbar")}, {sp.observable("qbar")});
    EXPECT_FALSE(is_fair(sp, unfair, s));
    // error inside the cycle repeats forever
    const StreamSpec cyc({}, {sp.observable("p"), sp.observable("qbar"), sp.observable("q")});
    EXPECT_FALSE(is_fair(sp, cyc, s));
    // incomplete
    const StreamSpec partial({}, {sp.observable("p")});
    EXPECT_FALSE(is_fair(sp, partial, s));
}

TEST(Streams, FairnessNeedsNegationClosure) {
    const auto sp = fixtures::triangle();
    EXPECT_THROW(is_fair(sp, StreamSpec({}, {0}), 0), Error);
}

TEST(Streams, CanonicalStream) {
    const auto sp = fixtures::triangle();
    for (WorldId s = 0; s < sp.world_count(); ++s) {
        const auto c = canonical_sc_stream(sp, s);
        EXPECT_TRUE(c.prefix.empty());
        EXPECT_TRUE(is_sound(sp, c, s));
        EXPECT_TRUE(is_complete(sp, c, s));
    }
    const auto lone = EpistemicSpace::from_names({"a", "b"}, {{"p", {"a"}}});
    EXPECT_THROW(canonical_sc_stream(lone, lone.world("b")), Error);
}

TEST(StreamProperties, SoundCompleteStreamsAreFair) {
    std::size_t checked = 0;
    for (const auto& sp : tt_test::all_spaces(4, 4, {true, true})) {
        if (!is_negation_closed(sp)) continue;
        for (WorldId s = 0; s < sp.world_count(); ++s) {
            const auto c = canonical_sc_stream(sp, s);
            EXPECT_TRUE(is_fair(sp, c, s));
            ++checked;
        }
    }
    EXPECT_GT(checked, 0u);
}

TEST(StreamProperties, SoundnessIsPrefixClosed) {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 500; ++i) {
        const auto sp = tt_test::random_space(rng, 5, 5);
        const auto s = std::uniform_int_distribution<WorldId>(0, sp.world_count() - 1)(rng);
        if (sp.observables_at(s).empty()) continue;
        const auto seq = tt_test::random_sound(rng, sp, s, 8);
        for (std::size_t k = 0; k <= seq.size(); ++k) EXPECT_TRUE(is_sound(sp, std::span(seq).first(k), s));
    }
}
