#pragma once

// Shared generators and oracles for the unit, property and acceptance tests.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tracktruth/tracktruth.hpp"

namespace tt_test {

using namespace tracktruth;

/// Space with worlds w0..w{n-1} and observables o0.. with the given extensions.
inline EpistemicSpace make_space(std::size_t n, const std::vector<std::uint64_t>& extensions) {
    std::vector<std::string> worlds;
    for (std::size_t i = 0; i < n; ++i) worlds.push_back("w" + std::to_string(i));
    std::vector<Observable> obs;
    for (std::size_t j = 0; j < extensions.size(); ++j)
        obs.push_back({"o" + std::to_string(j), WorldSet::from_bits(extensions[j])});
    return EpistemicSpace(std::move(worlds), std::move(obs));
}

struct SpaceFilter {
    bool require_cover = false;  // every world in some observable
    bool allow_empty_observable = true;
};

namespace detail {

inline std::uint64_t permute_bits(std::uint64_t bits, const std::vector<std::size_t>& perm) {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        if ((bits >> i) & 1U) out |= std::uint64_t{1} << perm[i];
    return out;
}

inline std::vector<std::uint64_t> canonical(std::size_t n, std::vector<std::uint64_t> ext) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::uint64_t> best;
    do {
        std::vector<std::uint64_t> img;
        for (auto e : ext) img.push_back(permute_bits(e, perm));
        std::sort(img.begin(), img.end());
        if (best.empty() || img < best) best = img;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace detail

/// Every valid space with 1..max_worlds worlds and 0..max_obs observables
/// (distinct extensions, distinguishable worlds), one per isomorphism class.
inline std::vector<EpistemicSpace> all_spaces(std::size_t max_worlds, std::size_t max_obs, SpaceFilter filter = {}) {
    std::vector<EpistemicSpace> out;
    for (std::size_t n = 1; n <= max_worlds; ++n) {
        const std::uint64_t subsets = std::uint64_t{1} << n;
        std::set<std::vector<std::uint64_t>> seen;
        std::vector<std::uint64_t> chosen;
        auto emit = [&] {
            auto canon = detail::canonical(n, chosen);
            if (!seen.insert(canon).second) return;
            auto space = make_space(n, canon);
            if (!validate_space(space).ok()) return;
            if (filter.require_cover)
                for (WorldId s = 0; s < n; ++s)
                    if (space.observables_at(s).empty()) return;
            out.push_back(std::move(space));
        };
        // choose strictly increasing extension masks
        auto rec = [&](auto&& self, std::uint64_t from) -> void {
            emit();
            if (chosen.size() == max_obs) return;
            for (std::uint64_t e = from; e < subsets; ++e) {
                if (e == 0 && !filter.allow_empty_observable) continue;
                chosen.push_back(e);
                self(self, e + 1);
                chosen.pop_back();
            }
        };
        rec(rec, 0);
    }
    return out;
}

/// Random valid space with 1..max_worlds worlds and up to max_obs observables.
inline EpistemicSpace random_space(std::mt19937_64& rng, std::size_t max_worlds, std::size_t max_obs) {
    for (;;) {
        const auto n = std::uniform_int_distribution<std::size_t>(1, max_worlds)(rng);
        const auto m = std::uniform_int_distribution<std::size_t>(0, max_obs)(rng);
        std::set<std::uint64_t> ext;
        std::uniform_int_distribution<std::uint64_t> pick(0, (std::uint64_t{1} << n) - 1);
        for (std::size_t j = 0; j < m; ++j) ext.insert(pick(rng));
        auto space = make_space(n, {ext.begin(), ext.end()});
        if (validate_space(space).ok()) return space;
    }
}

/// Random total preorder: each world gets a rank in [0, n).
inline Preorder random_total(std::mt19937_64& rng, std::size_t n) {
    std::vector<WorldSet> layers(n);
    std::uniform_int_distribution<std::size_t> rank(0, n - 1);
    for (WorldId w = 0; w < n; ++w) layers[rank(rng)].insert(w);
    std::erase_if(layers, [](WorldSet l) { return l.empty(); });
    return Preorder::from_layers(n, layers);
}

/// Random preorder: closure of random pairs.
inline Preorder random_preorder(std::mt19937_64& rng, std::size_t n) {
    std::vector<std::pair<WorldId, WorldId>> pairs;
    std::bernoulli_distribution coin(0.3);
    for (WorldId a = 0; a < n; ++a)
        for (WorldId b = 0; b < n; ++b)
            if (a != b && coin(rng)) pairs.emplace_back(a, b);
    return Preorder::from_pairs(n, pairs);
}

/// Random sequence over O_s of the given length (O_s must be nonempty).
inline DataSequence random_sound(std::mt19937_64& rng, const EpistemicSpace& space, WorldId s, std::size_t len) {
    const auto truths = space.observables_at(s).to_vector();
    std::uniform_int_distribution<std::size_t> pick(0, truths.size() - 1);
    DataSequence out;
    for (std::size_t i = 0; i < len; ++i) out.push_back(truths[pick(rng)]);
    return out;
}

// ---------------------------------------------------------------------------
// Stream-enumeration oracle for identification in the limit.
//
// Considers every stream prefix·cycle^ω over O_s with |prefix|, |cycle| ≤
// R + |O_s| (R = number of revision states reachable by sound observations)
// that is complete for s. Prefixes are grouped by the (state, coverage) they
// reach and cycles by their effect on every reachable state, which loses no
// stream: two words in the same group behave identically from any start.

struct OracleResult {
    bool identified = true;
    std::size_t window = 0;
};

inline OracleResult oracle_identified(const EpistemicSpace& space, const Preorder& prior, Method method, WorldId s) {
    const auto truths = space.observables_at(s);
    const auto letters = truths.to_vector();
    const auto goal = WorldSet::single(s);

    // reachable states, keyed by their relation rows
    std::map<std::pair<std::uint64_t, std::vector<std::uint64_t>>, std::size_t> index;
    std::vector<RevisionState> states;
    auto key_of = [](const RevisionState& st) {
        std::vector<std::uint64_t> rows;
        for (WorldId w = 0; w < st.order.universe(); ++w) rows.push_back(st.order.upset(w).bits());
        return std::make_pair(st.order.domain().bits(), rows);
    };
    auto intern = [&](const RevisionState& st) {
        auto [it, fresh] = index.emplace(key_of(st), states.size());
        if (fresh) states.push_back(st);
        return it->second;
    };
    intern(initial_state(prior));
    std::vector<std::vector<std::size_t>> delta;
    for (std::size_t i = 0; i < states.size(); ++i) {
        std::vector<std::size_t> row;
        for (auto p : letters) row.push_back(intern(revise(method, space, states[i], p).state));
        delta.push_back(row);
    }
    const auto r = states.size();
    std::vector<bool> bad(r);
    for (std::size_t i = 0; i < r; ++i) bad[i] = conjecture(states[i]) != goal;
    const auto window = r + letters.size();

    // prefix classes: (state, coverage) reachable within the window
    std::set<std::pair<std::size_t, std::uint64_t>> prefixes{{0, 0}};
    std::vector<std::pair<std::size_t, std::uint64_t>> frontier{{0, 0}};
    for (std::size_t len = 1; len <= window && !frontier.empty(); ++len) {
        std::vector<std::pair<std::size_t, std::uint64_t>> next;
        for (auto [st, cov] : frontier)
            for (std::size_t k = 0; k < letters.size(); ++k) {
                std::pair<std::size_t, std::uint64_t> node{delta[st][k], cov | (std::uint64_t{1} << letters[k])};
                if (prefixes.insert(node).second) next.push_back(node);
            }
        frontier = std::move(next);
    }

    // cycle classes: (map on states, bad-visit flags, letter set)
    struct Effect {
        std::vector<std::size_t> map;
        std::vector<bool> touches_bad;
        std::uint64_t letters = 0;
        auto operator<=>(const Effect&) const = default;
    };
    std::set<Effect> cycles;
    std::vector<Effect> layer;
    for (std::size_t k = 0; k < letters.size(); ++k) {
        Effect e{std::vector<std::size_t>(r), std::vector<bool>(r), std::uint64_t{1} << letters[k]};
        for (std::size_t i = 0; i < r; ++i) {
            e.map[i] = delta[i][k];
            e.touches_bad[i] = bad[i];
        }
        if (cycles.insert(e).second) layer.push_back(e);
    }
    for (std::size_t len = 2; len <= window && !layer.empty(); ++len) {
        std::vector<Effect> next;
        for (const auto& e : layer)
            for (std::size_t k = 0; k < letters.size(); ++k) {
                Effect f{std::vector<std::size_t>(r), std::vector<bool>(r), e.letters | (std::uint64_t{1} << letters[k])};
                for (std::size_t i = 0; i < r; ++i) {
                    f.map[i] = delta[e.map[i]][k];
                    f.touches_bad[i] = e.touches_bad[i] || bad[e.map[i]];
                }
                if (cycles.insert(f).second) next.push_back(std::move(f));
            }
        layer = std::move(next);
    }

    for (auto [start, cov] : prefixes)
        for (const auto& c : cycles) {
            if ((cov | c.letters) != truths.bits()) continue;
            std::map<std::size_t, std::size_t> seen;
            std::vector<std::size_t> orbit;
            auto x = start;
            while (!seen.count(x)) {
                seen[x] = orbit.size();
                orbit.push_back(x);
                x = c.map[x];
            }
            for (auto i = seen[x]; i < orbit.size(); ++i)
                if (c.touches_bad[orbit[i]]) return {false, window};
        }
    return {true, window};
}


// ---------------------------------------------------------------------------
// Preservation properties on random (space, prior, sound prefix) instances.

struct PreservationTally {
    std::size_t instances = 0;
    std::size_t flat_keeps_truth = 0;  // counterexamples per property
    std::size_t mini_keeps_min = 0;
    std::size_t lex_comparable = 0;
    std::size_t lex_incomparable = 0;
    std::size_t lex_strict = 0;
    std::size_t lex_keeps_min = 0;

    std::size_t failures() const { return flat_keeps_truth + mini_keeps_min + lex_comparable + lex_incomparable + lex_strict + lex_keeps_min; }
};

inline PreservationTally check_preservation(std::uint64_t seed, std::size_t count) {
    std::mt19937_64 rng(seed);
    PreservationTally tally;
    while (tally.instances < count) {
        const auto sp = random_space(rng, 5, 5);
        const auto n = sp.world_count();
        const auto s = std::uniform_int_distribution<WorldId>(0, n - 1)(rng);
        if (sp.observables_at(s).empty()) continue;
        ++tally.instances;
        const auto len = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
        const auto seq = random_sound(rng, sp, s, len);

        // flat prior, mini: s is always conjectured
        auto flat = initial_state(Preorder::flat(n));
        for (auto p : seq) {
            flat = mini_step(sp, flat, p).state;
            if (!conjecture(flat).contains(s)) ++tally.flat_keeps_truth;
        }

        // mini: s minimal in some p ∈ O_s stays minimal in p
        const auto prior = random_total(rng, n);
        std::vector<ObsId> held;
        for (auto p : sp.observables_at(s))
            if (min_elements(prior, sp.extension(p)).contains(s)) held.push_back(p);
        auto mini = initial_state(prior);
        for (auto p : seq) {
            mini = mini_step(sp, mini, p).state;
            for (auto q : held)
                if (!min_elements(mini.order, sp.extension(q)).contains(s)) ++tally.mini_keeps_min;
        }

        // lex over a general preorder
        const auto general = (tally.instances % 2) ? random_preorder(rng, n) : prior;
        auto lex = initial_state(general);
        const bool s_min = conjecture(lex).contains(s);
        for (std::size_t k = 0; k < seq.size(); ++k) {
            const auto before = lex.order;
            lex = lex_step(sp, lex, seq[k]).state;
            const auto prefix = std::span(seq).first(k + 1);
            for (WorldId t = 0; t < n; ++t) {
                if (before.comparable(s, t) && !lex.order.comparable(s, t)) ++tally.lex_comparable;
                if (!general.comparable(s, t) && is_sound(sp, prefix, t) && lex.order.comparable(s, t)) ++tally.lex_incomparable;
                if (general.less(s, t) && !lex.order.less(s, t)) ++tally.lex_strict;
            }
            if (s_min && !conjecture(lex).contains(s)) ++tally.lex_keeps_min;
        }
    }
    return tally;
}

// ---------------------------------------------------------------------------
// Necessary conditions on mini-appropriate priors.

/// Every world is minimal in one of its observables.
inline bool minimal_somewhere(const EpistemicSpace& sp, const Preorder& prior) {
    for (WorldId s = 0; s < sp.world_count(); ++s) {
        bool found = false;
        for (auto p : sp.observables_at(s)) found = found || min_elements(prior, sp.extension(p)).contains(s);
        if (!found) return false;
    }
    return true;
}

/// Tied worlds are separated by an observable in which s is minimal and t is false.
inline bool ties_separated(const EpistemicSpace& sp, const Preorder& prior) {
    for (WorldId s = 0; s < sp.world_count(); ++s)
        for (WorldId t = 0; t < sp.world_count(); ++t) {
            if (s == t || !prior.equiv(s, t)) continue;
            bool found = false;
            for (auto p : sp.observables_at(s))
                found = found || (min_elements(prior, sp.extension(p)).contains(s) && !sp.extension(p).contains(t));
            if (!found) return false;
        }
    return true;
}

}  // namespace tt_test
