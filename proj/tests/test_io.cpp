#include <gtest/gtest.h>

#include "support.hpp"
#include "tracktruth/fixtures.hpp"
#include "tracktruth/io.hpp"

using namespace tracktruth;
using io::Json;

TEST(Io, SpaceRoundTrip) {
    for (const auto& sp : tt_test::all_spaces(3, 3)) {
        const auto text = io::to_json(sp).dump();
        EXPECT_EQ(io::space_from_json(io::parse_document(text)), sp);
    }
    const auto sq = fixtures::square();
    EXPECT_EQ(io::space_from_json(io::to_json(sq)), sq);
}

TEST(Io, SpaceKeepsDeclarationOrder) {
    const auto j = io::to_json(fixtures::square());
    std::vector<std::string> labels;
    for (auto it = j["observables"].begin(); it != j["observables"].end(); ++it) labels.push_back(it.key());
    EXPECT_EQ(labels, (std::vector<std::string>{"p", "pbar", "q", "qbar"}));
}

TEST(Io, PreorderRoundTrip) {
    const auto sp = fixtures::two_ellipses();
    for (const auto& p : all_preorders(3)) {
        const auto j = io::to_json(sp, p);
        EXPECT_EQ(io::preorder_from_json(sp, io::parse_document(j.dump())), p);
        EXPECT_EQ(j.contains("layers"), p.is_total());
    }
    // restricted domain, as left by conditioning
    const auto r = restrict(fixtures::two_ellipses_prior(sp), sp.worlds_named({"u", "s"}));
    const auto j = io::to_json(sp, r);
    EXPECT_TRUE(j.contains("worlds"));
    EXPECT_EQ(io::preorder_from_json(sp, j), r);
}

TEST(Io, PreorderFormats) {
    const auto sp = fixtures::two_ellipses();
    const auto layers = io::preorder_from_json(sp, Json::parse(R"({"layers": [["t"], ["u"], ["s"]]})"));
    EXPECT_EQ(layers, fixtures::two_ellipses_prior(sp));
    const auto pairs = io::preorder_from_json(sp, Json::parse(R"({"pairs": [["t", "u"], ["u", "s"]]})"));
    EXPECT_EQ(pairs, layers);
    EXPECT_THROW(io::preorder_from_json(sp, Json::parse(R"({"layers": [["t"], ["u"]]})")), Error);
    EXPECT_THROW(io::preorder_from_json(sp, Json::parse(R"({"pairs": [["t"]]})")), Error);
    EXPECT_THROW(io::preorder_from_json(sp, Json::parse(R"({"layers": [["t"], ["t", "u", "s"]]})")), Error);
    EXPECT_THROW(io::preorder_from_json(sp, Json::parse(R"({})")), Error);
}

TEST(Io, StreamRoundTrip) {
    const auto sp = fixtures::square();
    const StreamSpec spec({sp.observable("q"), sp.observable("pbar")}, {sp.observable("qbar")});
    EXPECT_EQ(io::stream_from_json(sp, io::to_json(sp, spec)), spec);
    const auto no_prefix = io::stream_from_json(sp, Json::parse(R"({"cycle": ["p"]})"));
    EXPECT_TRUE(no_prefix.prefix.empty());
    EXPECT_THROW(io::stream_from_json(sp, Json::parse(R"({"cycle": []})")), Error);
    EXPECT_THROW(io::stream_from_json(sp, Json::parse(R"({"cycle": ["nope"]})")), Error);
}

TEST(Io, VerdictRoundTrip) {
    const auto sp = fixtures::square();
    for (WorldId s = 0; s < 4; ++s)
        for (auto mode : {StreamMode::sound_complete, StreamMode::fair}) {
            const auto v = decide(sp, Preorder::flat(4), Method::mini, s, mode);
            EXPECT_EQ(io::verdict_from_json(sp, io::parse_document(io::to_json(sp, v).dump())), v);
        }
    const auto lone = EpistemicSpace::from_names({"a", "b"}, {{"p", {"a"}}});
    const auto none = decide_in_limit(lone, Preorder::flat(2), Method::cond, 1);
    EXPECT_EQ(io::verdict_from_json(lone, io::to_json(lone, none)), none);
}

TEST(Io, TellTaleRoundTrip) {
    const auto sp = fixtures::triangle();
    const auto map = *dftt_construct(sp).map;
    EXPECT_EQ(io::telltale_from_json(sp, io::to_json(sp, map)), map);
    EXPECT_THROW(io::telltale_from_json(sp, Json::parse(R"({"kind": "dftt", "map": {"s": []}})")), Error);
}

TEST(Io, ParseErrorsCarryLineAndColumn) {
    const std::string text = "{\n  \"worlds\": [\"a\",\n  oops\n}";
    try {
        io::parse_document(text, "doc.json");
        FAIL() << "expected a parse error";
    } catch (const io::ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_GE(e.column(), 3u);
        EXPECT_NE(std::string(e.what()).find("doc.json:3:"), std::string::npos) << e.what();
    }
}

TEST(Io, SemanticErrorsNameTheProblem) {
    try {
        io::space_from_json(Json::parse(R"({"worlds": ["a", "a"], "observables": {}})"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("duplicate world"), std::string::npos);
    }
    EXPECT_THROW(io::space_from_json(Json::parse(R"({"worlds": ["a"]})")), Error);
    EXPECT_THROW(io::space_from_json(Json::parse(R"({"worlds": ["a"], "observables": {"p": ["b"]}})")), Error);
    EXPECT_THROW(io::space_from_json(Json::parse(R"({"worlds": "a", "observables": {}})")), Error);
}
