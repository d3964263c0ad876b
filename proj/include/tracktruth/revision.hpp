#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tracktruth/core.hpp"
#include "tracktruth/preorder.hpp"

namespace tracktruth {

enum class Method { mini, cond, lex };

inline constexpr Method all_methods[] = {Method::mini, Method::cond, Method::lex};

inline std::string_view to_string(Method m) {
    switch (m) {
        case Method::mini: return "mini";
        case Method::cond: return "cond";
        case Method::lex: return "lex";
    }
    return "?";
}

inline std::optional<Method> parse_method(std::string_view s) {
    if (s == "mini") return Method::mini;
    if (s == "cond") return Method::cond;
    if (s == "lex") return Method::lex;
    return std::nullopt;
}

/// Revision state carried through learning. For mini and lex the domain of
/// the order stays the whole space; for cond it is the set of surviving
/// worlds and the order is the prior restricted to them. Observables keep
/// their labels; their current extension is the original one intersected
/// with the survivors.
struct RevisionState {
    Preorder order;

    WorldSet worlds() const { return order.domain(); }
    friend bool operator==(const RevisionState&, const RevisionState&) = default;
};

struct RevisionStateHash {
    std::size_t operator()(const RevisionState& s) const { return s.order.hash(); }
};

inline RevisionState initial_state(const Preorder& prior) { return {prior}; }

struct StepRecord {
    Method method;
    ObsId observable;
    /// promoted worlds (mini), eliminated worlds (cond), or upgraded p-worlds (lex)
    WorldSet affected;
    /// the observable had no surviving world; mini/lex were no-ops
    bool empty_extension = false;
    /// cond removed every remaining world
    bool all_eliminated = false;
};

struct StepResult {
    RevisionState state;
    StepRecord record;
};

namespace detail {

inline WorldSet current_extension(const EpistemicSpace& space, const RevisionState& state, ObsId p) {
    if (p >= space.observable_count()) throw Error("unknown observable id " + std::to_string(p));
    if (state.order.universe() != space.world_count()) throw Error("revision state does not match the space");
    return space.extension(p) & state.worlds();
}

}  // namespace detail

/// Minimal revision: the ⪯-minimal p-worlds move strictly below every other
/// world; every other pair keeps its relation.
inline StepResult mini_step(const EpistemicSpace& space, const RevisionState& state, ObsId p) {
    const auto ext = detail::current_extension(space, state, p);
    const auto dom = state.worlds();
    const auto promoted = min_elements(state.order, ext);
    std::vector<WorldSet> up(state.order.universe());
    for (auto s : dom) {
        const auto row = state.order.upset(s);
        up[s] = promoted.contains(s) ? ((row & promoted) | (dom - promoted)) : (row - promoted);
    }
    return {{PreorderAccess::trusted(dom, std::move(up))}, {Method::mini, p, promoted, ext.empty(), false}};
}

/// Conditioning: drop every world outside p and restrict the order.
inline StepResult cond_step(const EpistemicSpace& space, const RevisionState& state, ObsId p) {
    const auto ext = detail::current_extension(space, state, p);
    const auto eliminated = state.worlds() - ext;
    auto next = restrict(state.order, ext);
    return {{std::move(next)}, {Method::cond, p, eliminated, ext.empty(), ext.empty() && !state.worlds().empty()}};
}

/// Lexicographic upgrade: s ⪯' t iff s ⪯_p t, or s ⪯_p̄ t, or (s ∈ p and t ∉ p).
inline StepResult lex_step(const EpistemicSpace& space, const RevisionState& state, ObsId p) {
    const auto ext = detail::current_extension(space, state, p);
    const auto dom = state.worlds();
    std::vector<WorldSet> up(state.order.universe());
    for (auto s : dom) {
        const auto row = state.order.upset(s);
        up[s] = ext.contains(s) ? ((row & ext) | (dom - ext)) : (row - ext);
    }
    return {{PreorderAccess::trusted(dom, std::move(up))}, {Method::lex, p, ext, ext.empty(), false}};
}

inline StepResult revise(Method method, const EpistemicSpace& space, const RevisionState& state, ObsId p) {
    switch (method) {
        case Method::mini: return mini_step(space, state, p);
        case Method::cond: return cond_step(space, state, p);
        case Method::lex: return lex_step(space, state, p);
    }
    throw Error("unknown revision method");
}

struct Iteration {
    RevisionState state;
    std::vector<StepRecord> log;
};

/// Left fold of the one-step operator over the sequence.
inline Iteration iterate(Method method, const EpistemicSpace& space, const Preorder& prior,
                         std::span<const ObsId> sequence) {
    Iteration out{initial_state(prior), {}};
    out.log.reserve(sequence.size());
    for (std::size_t i = 0; i < sequence.size(); ++i) {
        try {
            auto step = revise(method, space, out.state, sequence[i]);
            out.state = std::move(step.state);
            out.log.push_back(step.record);
        } catch (const Error& e) {
            throw Error("step " + std::to_string(i) + ": " + e.what());
        }
    }
    return out;
}

/// Canonical learner output: the minimal worlds of the current state.
inline WorldSet conjecture(const RevisionState& state) { return min_elements(state.order, state.worlds()); }

}  // namespace tracktruth
