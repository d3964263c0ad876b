#pragma once

// Small named spaces used throughout the tests, the CLI's self-checking
// fixtures and the samples.

#include <string>
#include <vector>

#include "tracktruth/core.hpp"
#include "tracktruth/preorder.hpp"

namespace tracktruth::fixtures {

/// S = {u, s, t}; p = {u, s}, q = {s, t}.
inline EpistemicSpace two_ellipses() { return EpistemicSpace::from_names({"u", "s", "t"}, {{"p", {"u", "s"}}, {"q", {"s", "t"}}}); }

/// t ≺ u ≺ s over two_ellipses().
inline Preorder two_ellipses_prior(const EpistemicSpace& space) {
    return Preorder::from_layers(space.world_count(),
                                 {space.worlds_named({"t"}), space.worlds_named({"u"}), space.worlds_named({"s"})});
}

/// S = {s, u, t}; p = {s, u}, q = {s, t}, r = {u, t}. Strongly separated,
/// not negation-closed.
inline EpistemicSpace triangle() {
    return EpistemicSpace::from_names({"s", "u", "t"}, {{"p", {"s", "u"}}, {"q", {"s", "t"}}, {"r", {"u", "t"}}});
}

/// t ≺ s ≃ u over triangle(): not appropriate for minimal revision.
inline Preorder triangle_bad_prior(const EpistemicSpace& space) {
    return Preorder::from_layers(space.world_count(), {space.worlds_named({"t"}), space.worlds_named({"s", "u"})});
}

/// S = {s, t, u, w}; p = {s, t}, pbar = {u, w}, q = {t, u}, qbar = {s, w}.
inline EpistemicSpace square() {
    return EpistemicSpace::from_names(
        {"s", "t", "u", "w"}, {{"p", {"s", "t"}}, {"pbar", {"u", "w"}}, {"q", {"t", "u"}}, {"qbar", {"s", "w"}}});
}

/// First n worlds of the infinite ladder in which world i satisfies p_i and
/// p_{i+1}. Observables are restricted to the kept worlds, so p_n = {s_{n-1}}.
inline EpistemicSpace ladder(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("s" + std::to_string(i));
    std::vector<std::pair<std::string, std::vector<std::string>>> obs;
    obs.push_back({"p0", {"s0"}});
    for (std::size_t j = 1; j <= n; ++j) {
        std::vector<std::string> members{"s" + std::to_string(j - 1)};
        if (j < n) members.push_back("s" + std::to_string(j));
        obs.push_back({"p" + std::to_string(j), members});
    }
    return EpistemicSpace::from_names(names, obs);
}

/// s_i ⪯ s_j iff i ≤ j.
inline Preorder ladder_prior(std::size_t n) {
    std::vector<WorldSet> layers;
    for (std::size_t i = 0; i < n; ++i) layers.push_back(WorldSet::single(i));
    return Preorder::from_layers(n, layers);
}

/// S = {s, t}; p = {s}, q = {s, t}: O_t ⊆ O_s.
inline EpistemicSpace nested_pair() { return EpistemicSpace::from_names({"s", "t"}, {{"p", {"s"}}, {"q", {"s", "t"}}}); }

}  // namespace tracktruth::fixtures
