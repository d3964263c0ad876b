#pragma once

#include <span>
#include <vector>

#include "tracktruth/core.hpp"

namespace tracktruth {

/// Finite sequence of observations, by observable id.
using DataSequence = std::vector<ObsId>;

/// Eventually periodic stream: prefix · cycle · cycle · ...
struct StreamSpec {
    DataSequence prefix;
    DataSequence cycle;

    StreamSpec() = default;
    StreamSpec(DataSequence prefix_items, DataSequence cycle_items)
        : prefix(std::move(prefix_items)), cycle(std::move(cycle_items)) {
        if (cycle.empty()) throw Error("a stream cycle must be nonempty");
    }

    /// Observation at 0-based position k.
    ObsId at(std::size_t k) const {
        if (k < prefix.size()) return prefix[k];
        return cycle[(k - prefix.size()) % cycle.size()];
    }

    friend bool operator==(const StreamSpec&, const StreamSpec&) = default;
};

inline ObsSet set_of(std::span<const ObsId> seq) {
    ObsSet out;
    for (auto o : seq) out.insert(o);
    return out;
}

inline ObsSet set_of(const StreamSpec& spec) { return set_of(spec.prefix) | set_of(spec.cycle); }

inline bool is_sound(const EpistemicSpace& space, std::span<const ObsId> seq, WorldId s) {
    return set_of(seq).subset_of(space.observables_at(s));
}

inline bool is_sound(const EpistemicSpace& space, const StreamSpec& spec, WorldId s) {
    return set_of(spec).subset_of(space.observables_at(s));
}

inline bool is_complete(const EpistemicSpace& space, std::span<const ObsId> seq, WorldId s) {
    return space.observables_at(s).subset_of(set_of(seq));
}

inline bool is_complete(const EpistemicSpace& space, const StreamSpec& spec, WorldId s) {
    return space.observables_at(s).subset_of(set_of(spec));
}

/// Fairness for eventually periodic streams over a negation-closed space:
/// complete for s, no error inside the cycle (so errors stop), and every
/// erroneous prefix observation is followed later by its complement.
inline bool is_fair(const EpistemicSpace& space, const StreamSpec& spec, WorldId s) {
    const auto pairing = negation_pairing(space);
    if (!pairing) throw Error("fairness is only defined on negation-closed spaces");
    if (!is_complete(space, spec, s)) return false;
    const auto truths = space.observables_at(s);
    for (auto o : spec.cycle)
        if (!truths.contains(o)) return false;
    const auto in_cycle = set_of(spec.cycle);
    for (std::size_t i = 0; i < spec.prefix.size(); ++i) {
        const auto o = spec.prefix[i];
        if (truths.contains(o)) continue;
        const auto fix = (*pairing)[o];
        bool corrected = in_cycle.contains(fix);
        for (std::size_t k = i + 1; k < spec.prefix.size() && !corrected; ++k) corrected = spec.prefix[k] == fix;
        if (!corrected) return false;
    }
    return true;
}

/// ε · (O_s in declaration order)^ω; sound and complete for s.
inline StreamSpec canonical_sc_stream(const EpistemicSpace& space, WorldId s) {
    const auto truths = space.observables_at(s);
    if (truths.empty())
        throw Error("world '" + space.world_name(s) + "' satisfies no observable: no sound stream exists");
    return StreamSpec({}, truths.to_vector());
}

/// First k observations of the stream.
inline DataSequence unroll(const StreamSpec& spec, std::size_t k) {
    DataSequence out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) out.push_back(spec.at(i));
    return out;
}

}  // namespace tracktruth
