#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tracktruth/core.hpp"
#include "tracktruth/preorder.hpp"
#include "tracktruth/streams.hpp"

namespace tracktruth {

enum class TellTaleKind { dftt, mini, cond };

inline std::string_view to_string(TellTaleKind k) {
    switch (k) {
        case TellTaleKind::dftt: return "dftt";
        case TellTaleKind::mini: return "mini";
        case TellTaleKind::cond: return "cond";
    }
    return "?";
}

inline std::optional<TellTaleKind> parse_telltale_kind(std::string_view s) {
    if (s == "dftt") return TellTaleKind::dftt;
    if (s == "mini") return TellTaleKind::mini;
    if (s == "cond") return TellTaleKind::cond;
    return std::nullopt;
}

/// One tell-tale set per world (indexed by world id).
struct TellTaleMap {
    TellTaleKind kind;
    std::vector<ObsSet> sets;

    friend bool operator==(const TellTaleMap&, const TellTaleMap&) = default;
};

/// Either a complete map or the first world for which no set exists.
struct TellTaleResult {
    std::optional<TellTaleMap> map;
    std::optional<WorldId> failure;

    bool ok() const { return map.has_value(); }
};

// ---------------------------------------------------------------------------
// Definite finite tell-tales

/// D ⊆ O_s and no other world satisfies all of D.
inline bool is_dftt_set(const EpistemicSpace& space, WorldId s, ObsSet d) {
    if (!d.subset_of(space.observables_at(s))) return false;
    for (WorldId t = 0; t < space.world_count(); ++t)
        if (t != s && d.subset_of(space.observables_at(t))) return false;
    return true;
}

/// Candidate D^s = union over s' ≠ s of (O_s ∖ O_s'). On a finite space it
/// is a definite finite tell-tale set whenever any exists.
inline ObsSet dftt_candidate(const EpistemicSpace& space, WorldId s) {
    ObsSet d;
    for (WorldId t = 0; t < space.world_count(); ++t)
        if (t != s) d |= space.observables_at(s) - space.observables_at(t);
    return d;
}

inline TellTaleResult dftt_construct(const EpistemicSpace& space) {
    TellTaleMap map{TellTaleKind::dftt, {}};
    for (WorldId s = 0; s < space.world_count(); ++s) {
        const auto d = dftt_candidate(space, s);
        if (!is_dftt_set(space, s, d)) return {std::nullopt, s};
        map.sets.push_back(d);
    }
    return {std::move(map), std::nullopt};
}

inline bool is_finitely_identifiable(const EpistemicSpace& space) { return dftt_construct(space).ok(); }

struct FiniteGuess {
    std::optional<WorldId> world;
    /// prefix length at which the single guess was emitted
    std::size_t emitted_at = 0;
};

/// One-shot learner driven by the definite finite tell-tale map: at the
/// first prefix length k for which some world s_i with i ≤ k has
/// D_{s_i} ⊆ set(seq[..k]), it guesses the least such s_i and keeps that
/// guess for the rest of the sequence.
inline FiniteGuess finite_identifier(const EpistemicSpace& space, std::span<const ObsId> seq) {
    const auto dftt = dftt_construct(space);
    if (!dftt.ok()) throw Error("space is not finitely identifiable");
    const auto& sets = dftt.map->sets;
    ObsSet seen;
    for (std::size_t k = 0; k <= seq.size(); ++k) {
        if (k > 0) seen.insert(seq[k - 1]);
        const auto limit = std::min(k, sets.size() - 1);
        for (std::size_t i = 0; i <= limit; ++i)
            if (sets[i].subset_of(seen)) return {i, k};
    }
    return {};
}

// ---------------------------------------------------------------------------
// Mini tell-tales (finite spaces, total orders)

/// Checks the mini tell-tale clauses for F at s: F ⊆ O_s, and some p ∈ F
/// with s ∈ min p such that every other t ≃ s in min p is separated by some
/// q ∈ F (s ∈ min q, t ∉ min q). q may differ per t.
inline bool is_mini_telltale_set(const EpistemicSpace& space, const Preorder& order, WorldId s, ObsSet f) {
    if (!f.subset_of(space.observables_at(s))) return false;
    ObsSet favouring;
    for (auto p : f) {
        const auto m = min_elements(order, space.extension(p));
        if (m.contains(s)) favouring.insert(p);
    }
    for (auto p : favouring) {
        const auto min_p = min_elements(order, space.extension(p));
        bool all_separated = true;
        for (auto t : min_p) {
            if (t == s || !order.equiv(t, s)) continue;
            bool separated = false;
            for (auto q : favouring) {
                if (!min_elements(order, space.extension(q)).contains(t)) {
                    separated = true;
                    break;
                }
            }
            if (!separated) {
                all_separated = false;
                break;
            }
        }
        if (all_separated) return true;
    }
    return false;
}

/// Uses F_s = O_s, which works whenever any F_s does. Worlds with O_s = ∅
/// have no sound stream, so nothing is required of them (F_s = ∅).
inline TellTaleResult mini_telltale_exists(const EpistemicSpace& space, const Preorder& order) {
    if (!order.is_total()) throw Error("mini tell-tale maps are defined for total plausibility orders");
    if (order.universe() != space.world_count() || order.domain() != space.all_worlds())
        throw Error("order does not cover the space");
    TellTaleMap map{TellTaleKind::mini, {}};
    for (WorldId s = 0; s < space.world_count(); ++s) {
        const auto f = space.observables_at(s);
        if (f.empty()) {
            map.sets.push_back(f);
            continue;
        }
        if (!is_mini_telltale_set(space, order, s, f)) return {std::nullopt, s};
        map.sets.push_back(f);
    }
    return {std::move(map), std::nullopt};
}

// ---------------------------------------------------------------------------
// Generalised conditioning tell-tales (arbitrary preorders)

inline bool is_cond_telltale_set(const EpistemicSpace& space, const Preorder& order, WorldId s, ObsSet f) {
    const auto truths = space.observables_at(s);
    if (!f.subset_of(truths)) return false;
    const auto n = space.world_count();
    // (iii): comparable worlds that satisfy F are strictly less plausible than s
    for (WorldId t = 0; t < n; ++t)
        if (t != s && order.comparable(t, s) && f.subset_of(space.observables_at(t)) && !order.less(s, t))
            return false;
    // (iv): for every F' between F and O_s, each incomparable t satisfying F'
    // is beaten by some v satisfying F'
    const auto extra = truths - f;
    const auto extra_bits = extra.bits();
    std::uint64_t sub = 0;
    do {
        const auto fprime = f | ObsSet::from_bits(sub);
        for (WorldId t = 0; t < n; ++t) {
            if (order.comparable(t, s) || !fprime.subset_of(space.observables_at(t))) continue;
            bool beaten = false;
            for (WorldId v = 0; v < n && !beaten; ++v)
                beaten = order.less(v, t) && fprime.subset_of(space.observables_at(v));
            if (!beaten) return false;
        }
        sub = (sub - extra_bits) & extra_bits;  // next subset of extra
    } while (sub != 0);
    return true;
}

enum class SubsetOrder { smallest_first, largest_first };

/// Subsets of `base` ordered by size, ties broken by their bit pattern.
inline std::vector<ObsSet> subsets_by_size(ObsSet base, SubsetOrder order) {
    std::vector<ObsSet> subs;
    const auto bits = base.bits();
    std::uint64_t sub = 0;
    do {
        subs.push_back(ObsSet::from_bits(sub));
        sub = (sub - bits) & bits;
    } while (sub != 0);
    std::stable_sort(subs.begin(), subs.end(), [](ObsSet a, ObsSet b) {
        return a.size() != b.size() ? a.size() < b.size() : a.bits() < b.bits();
    });
    if (order == SubsetOrder::largest_first) std::reverse(subs.begin(), subs.end());
    return subs;
}

/// Searches F_s ⊆ O_s for every world; reports the first world without one.
/// Worlds with O_s = ∅ are exempt, as for mini.
inline TellTaleResult cond_telltale_exists(const EpistemicSpace& space, const Preorder& order,
                                           SubsetOrder search = SubsetOrder::smallest_first) {
    if (order.universe() != space.world_count() || order.domain() != space.all_worlds())
        throw Error("order does not cover the space");
    TellTaleMap map{TellTaleKind::cond, {}};
    for (WorldId s = 0; s < space.world_count(); ++s) {
        if (space.observables_at(s).empty()) {
            map.sets.push_back({});
            continue;
        }
        std::optional<ObsSet> found;
        for (auto f : subsets_by_size(space.observables_at(s), search)) {
            if (is_cond_telltale_set(space, order, s, f)) {
                found = f;
                break;
            }
        }
        if (!found) return {std::nullopt, s};
        map.sets.push_back(*found);
    }
    return {std::move(map), std::nullopt};
}

}  // namespace tracktruth
