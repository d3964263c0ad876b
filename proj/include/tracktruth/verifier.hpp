#pragma once

// Decision procedures for identification in the limit.
//
// On a finite space, the revision states reachable from a prior form a
// finite deterministic transition system labelled by observables. A stream
// that is sound and complete for s but keeps the conjecture away from {s}
// infinitely often must eventually stay inside the nodes whose coverage is
// all of O_s, and must visit some bad node (conjecture ≠ {s}) infinitely
// often. Those nodes are then mutually reachable, so the bad node sits on a
// cycle and the stream can be replaced by a prefix reaching it followed by
// that cycle forever. Searching for such lassos is therefore complete, and
// eventually periodic streams suffice as counterexamples.
//
// Fair streams add a pending-error set to each node: an erroneous
// observation enters the set, its complement clears it. Errors are allowed
// before the cycle only; the cycle lives in nodes with full coverage and
// nothing pending.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tracktruth/core.hpp"
#include "tracktruth/preorder.hpp"
#include "tracktruth/revision.hpp"
#include "tracktruth/streams.hpp"
#include "tracktruth/telltale.hpp"

namespace tracktruth {

struct Budget {
    std::size_t max_nodes = 1'000'000;

    /// Default budget, overridden by TRACKTRUTH_BUDGET when set.
    static Budget from_env() {
        Budget b;
        if (const char* v = std::getenv("TRACKTRUTH_BUDGET")) {
            try {
                b.max_nodes = static_cast<std::size_t>(std::stoull(v));
            } catch (const std::exception&) {
                throw Error(std::string("TRACKTRUTH_BUDGET is not a number: ") + v);
            }
        }
        return b;
    }
};

class BudgetExceeded : public Error {
public:
    explicit BudgetExceeded(std::size_t limit)
        : Error("state-space budget of " + std::to_string(limit) + " nodes exceeded"), limit_(limit) {}
    std::size_t limit() const { return limit_; }

private:
    std::size_t limit_;
};

enum class Status { identified, not_identified, no_sound_stream };
enum class StreamMode { sound_complete, fair };

inline std::string_view to_string(Status s) {
    switch (s) {
        case Status::identified: return "identified";
        case Status::not_identified: return "not-identified";
        case Status::no_sound_stream: return "no-sound-stream";
    }
    return "?";
}

inline std::optional<Status> parse_status(std::string_view s) {
    if (s == "identified") return Status::identified;
    if (s == "not-identified") return Status::not_identified;
    if (s == "no-sound-stream") return Status::no_sound_stream;
    return std::nullopt;
}

inline std::string_view to_string(StreamMode m) { return m == StreamMode::fair ? "fair" : "sound-complete"; }

/// Erroneous observation at `position`, corrected by its complement at `corrected_at`.
struct Correction {
    std::size_t position;
    ObsId error;
    std::size_t corrected_at;

    friend bool operator==(const Correction&, const Correction&) = default;
};

struct Verdict {
    WorldId target = 0;
    Method method = Method::mini;
    StreamMode mode = StreamMode::sound_complete;
    Status status = Status::identified;
    std::optional<StreamSpec> witness;
    std::vector<Correction> corrections;
    std::size_t explored = 0;

    bool identified() const { return status == Status::identified; }
    friend bool operator==(const Verdict&, const Verdict&) = default;
};

// ---------------------------------------------------------------------------
// Traces

struct TraceStep {
    std::size_t position;  // observations consumed so far (1-based)
    ObsId observable;
    RevisionState state;
    WorldSet conjecture;
    StepRecord record;
};

struct LearningTrace {
    StreamSpec stream;
    std::vector<TraceStep> steps;
    /// positions j1 < j2 inside the periodic part with equal state and cycle
    /// phase; from j1 on the run repeats with period j2 - j1
    std::optional<std::pair<std::size_t, std::size_t>> recurrence;
};

namespace detail {

struct PhaseKey {
    RevisionState state;
    std::size_t phase;
    friend bool operator==(const PhaseKey&, const PhaseKey&) = default;
};
struct PhaseKeyHash {
    std::size_t operator()(const PhaseKey& k) const { return k.state.order.hash() * 31 + k.phase; }
};

}  // namespace detail

inline LearningTrace run_trace(const EpistemicSpace& space, const Preorder& prior, Method method,
                               const StreamSpec& spec, std::size_t horizon) {
    if (horizon == 0) throw Error("trace horizon must be at least 1");
    LearningTrace trace{spec, {}, std::nullopt};
    std::unordered_map<detail::PhaseKey, std::size_t, detail::PhaseKeyHash> seen;
    auto state = initial_state(prior);
    auto note = [&](std::size_t j) {
        if (trace.recurrence || j < spec.prefix.size()) return;
        detail::PhaseKey key{state, (j - spec.prefix.size()) % spec.cycle.size()};
        auto [it, fresh] = seen.emplace(std::move(key), j);
        if (!fresh) trace.recurrence = std::make_pair(it->second, j);
    };
    note(0);
    for (std::size_t j = 1; j <= horizon; ++j) {
        const auto obs = spec.at(j - 1);
        auto step = revise(method, space, state, obs);
        state = step.state;
        trace.steps.push_back({j, obs, state, conjecture(state), step.record});
        note(j);
    }
    return trace;
}

struct LassoOutcome {
    /// conjecture differs from {target} somewhere in the periodic part
    bool fails_infinitely_often = false;
    std::size_t period_start = 0;
    std::size_t period_end = 0;  // exclusive
};

/// Runs the stream until (state, cycle phase) repeats and inspects the
/// periodic part, which fully determines the limit behaviour.
inline LassoOutcome evaluate_lasso(const EpistemicSpace& space, const Preorder& prior, Method method,
                                   const StreamSpec& spec, WorldId target) {
    std::unordered_map<detail::PhaseKey, std::size_t, detail::PhaseKeyHash> seen;
    std::vector<WorldSet> conjectures;
    auto state = initial_state(prior);
    const auto goal = WorldSet::single(target);
    for (std::size_t j = 0;; ++j) {
        conjectures.push_back(conjecture(state));
        if (j >= spec.prefix.size()) {
            detail::PhaseKey key{state, (j - spec.prefix.size()) % spec.cycle.size()};
            auto [it, fresh] = seen.emplace(std::move(key), j);
            if (!fresh) {
                LassoOutcome out{false, it->second, j};
                for (auto k = it->second; k < j; ++k)
                    if (conjectures[k] != goal) out.fails_infinitely_often = true;
                return out;
            }
        }
        state = revise(method, space, state, spec.at(j)).state;
    }
}

namespace detail {

/// Interned revision states reachable from a prior, with cached transitions.
class StateGraph {
public:
    StateGraph(const EpistemicSpace& space, Method method, const Preorder& prior, WorldId target)
        : space_(space), method_(method), goal_(WorldSet::single(target)) {
        if (prior.universe() != space.world_count()) throw Error("prior does not match the space");
        intern(initial_state(prior));
    }

    std::size_t size() const { return states_.size(); }
    const RevisionState& state(std::size_t i) const { return states_[i]; }
    bool bad(std::size_t i) const { return bad_[i]; }

    std::size_t next(std::size_t i, ObsId p) {
        const auto m = space_.observable_count();
        const auto slot = i * m + p;
        if (slot >= succ_.size()) succ_.resize(states_.size() * m, npos);
        if (succ_[slot] == npos) {
            auto result = revise(method_, space_, states_[i], p);
            const auto j = intern(std::move(result.state));
            if (slot >= succ_.size()) succ_.resize(states_.size() * m, npos);
            succ_[slot] = j;
        }
        return succ_[slot];
    }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::size_t intern(RevisionState s) {
        auto it = index_.find(s);
        if (it != index_.end()) return it->second;
        const auto id = states_.size();
        bad_.push_back(conjecture(s) != goal_);
        index_.emplace(s, id);
        states_.push_back(std::move(s));
        return id;
    }

    const EpistemicSpace& space_;
    Method method_;
    WorldSet goal_;
    std::vector<RevisionState> states_;
    std::vector<bool> bad_;
    std::unordered_map<RevisionState, std::size_t, RevisionStateHash> index_;
    std::vector<std::size_t> succ_;
};

struct ProductKey {
    std::size_t state;
    std::uint64_t coverage;
    std::uint64_t pending;
    friend bool operator==(const ProductKey&, const ProductKey&) = default;
};

struct ProductKeyHash {
    std::size_t operator()(const ProductKey& k) const {
        std::size_t h = k.state * 0x9e3779b97f4a7c15ULL;
        h ^= k.coverage + 0x7f4a7c15 + (h << 6) + (h >> 2);
        h ^= k.pending + 0x165667b1 + (h << 6) + (h >> 2);
        return h;
    }
};

struct LassoSearchResult {
    std::optional<StreamSpec> witness;
    std::size_t explored = 0;
};

/// Explores (state, coverage, pending) nodes from the prior. Edges use every
/// label in `alphabet`; labels outside O_target are errors and require a
/// complement pairing. Looks for a bad node on a cycle of sound edges inside
/// the region {coverage = O_target, pending = ∅}.
inline LassoSearchResult search_lasso(const EpistemicSpace& space, const Preorder& prior, Method method,
                                      WorldId target, ObsSet alphabet, const std::vector<ObsId>* pairing,
                                      Budget budget) {
    const auto truths = space.observables_at(target);
    StateGraph graph(space, method, prior, target);

    std::vector<ProductKey> nodes;
    std::vector<std::size_t> parent;
    std::vector<ObsId> via;
    std::vector<std::vector<std::pair<ObsId, std::size_t>>> edges;
    std::unordered_map<ProductKey, std::size_t, ProductKeyHash> index;

    auto add = [&](ProductKey key, std::size_t from, ObsId label) -> std::size_t {
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        if (nodes.size() >= budget.max_nodes) throw BudgetExceeded(budget.max_nodes);
        const auto id = nodes.size();
        index.emplace(key, id);
        nodes.push_back(key);
        parent.push_back(from);
        via.push_back(label);
        edges.emplace_back();
        return id;
    };

    add({0, 0, 0}, static_cast<std::size_t>(-1), 0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (auto p : alphabet) {
            const auto cur = nodes[i];
            auto cov = ObsSet::from_bits(cur.coverage);
            auto pend = ObsSet::from_bits(cur.pending);
            if (truths.contains(p)) {
                cov.insert(p);
                if (pairing) pend.erase((*pairing)[p]);
            } else {
                pend.insert(p);
            }
            const auto next_state = graph.next(cur.state, p);
            const auto j = add({next_state, cov.bits(), pend.bits()}, i, p);
            edges[i].emplace_back(p, j);
        }
    }

    const auto full = truths.bits();
    auto in_region = [&](std::size_t i) { return nodes[i].coverage == full && nodes[i].pending == 0; };
    auto region_edge = [&](ObsId p) { return truths.contains(p); };

    // Tarjan's SCC over the region subgraph, iterative.
    const auto n = nodes.size();
    constexpr auto unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> low(n, unset), num(n, unset), comp(n, unset);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::size_t counter = 0, comp_count = 0;
    for (std::size_t root = 0; root < n; ++root) {
        if (!in_region(root) || num[root] != unset) continue;
        std::vector<std::pair<std::size_t, std::size_t>> call{{root, 0}};
        num[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            auto& [v, e] = call.back();
            if (e < edges[v].size()) {
                const auto [label, w] = edges[v][e++];
                if (!region_edge(label)) continue;
                if (num[w] == unset) {
                    num[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], num[w]);
                }
            } else {
                const auto done = v;
                call.pop_back();
                if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
                if (low[done] == num[done]) {
                    std::size_t w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp[w] = comp_count;
                    } while (w != done);
                    ++comp_count;
                }
            }
        }
    }

    std::vector<std::size_t> comp_size(comp_count, 0);
    for (std::size_t i = 0; i < n; ++i)
        if (comp[i] != unset) ++comp_size[comp[i]];
    auto on_cycle = [&](std::size_t i) {
        if (comp[i] == unset) return false;
        if (comp_size[comp[i]] > 1) return true;
        for (auto [label, w] : edges[i])
            if (w == i && region_edge(label)) return true;
        return false;
    };

    for (std::size_t b = 0; b < n; ++b) {
        if (!in_region(b) || !graph.bad(nodes[b].state) || !on_cycle(b)) continue;
        DataSequence prefix;
        for (auto i = b; parent[i] != unset; i = parent[i]) prefix.push_back(via[i]);
        std::reverse(prefix.begin(), prefix.end());
        // shortest cycle through b inside its component
        std::vector<std::size_t> from(n, unset);
        std::vector<ObsId> label_in(n, 0);
        std::deque<std::size_t> queue{b};
        std::optional<std::pair<std::size_t, ObsId>> closing;
        std::vector<bool> visited(n, false);
        visited[b] = true;
        while (!queue.empty() && !closing) {
            const auto v = queue.front();
            queue.pop_front();
            for (auto [label, w] : edges[v]) {
                if (!region_edge(label) || comp[w] != comp[b]) continue;
                if (w == b) {
                    closing = std::make_pair(v, label);
                    break;
                }
                if (!visited[w]) {
                    visited[w] = true;
                    from[w] = v;
                    label_in[w] = label;
                    queue.push_back(w);
                }
            }
        }
        DataSequence cycle{closing->second};
        for (auto v = closing->first; v != b; v = from[v]) cycle.push_back(label_in[v]);
        std::reverse(cycle.begin(), cycle.end());
        return {StreamSpec(std::move(prefix), std::move(cycle)), n};
    }
    return {std::nullopt, n};
}

inline std::vector<Correction> corrections_of(const EpistemicSpace& space, const StreamSpec& spec, WorldId target,
                                              const std::vector<ObsId>& pairing) {
    std::vector<Correction> out;
    const auto truths = space.observables_at(target);
    const auto horizon = spec.prefix.size() + spec.cycle.size();
    for (std::size_t i = 0; i < spec.prefix.size(); ++i) {
        const auto o = spec.prefix[i];
        if (truths.contains(o)) continue;
        for (std::size_t k = i + 1; k < horizon; ++k) {
            if (spec.at(k) == pairing[o]) {
                out.push_back({i, o, k});
                break;
            }
        }
    }
    return out;
}

}  // namespace detail

/// Decides whether the canonical learner for (prior, method) identifies
/// `target` in the limit on every sound and complete stream.
inline Verdict decide_in_limit(const EpistemicSpace& space, const Preorder& prior, Method method, WorldId target,
                               Budget budget = Budget::from_env()) {
    Verdict v;
    v.target = target;
    v.method = method;
    v.mode = StreamMode::sound_complete;
    const auto truths = space.observables_at(target);
    if (truths.empty()) {
        v.status = Status::no_sound_stream;
        return v;
    }
    auto found = detail::search_lasso(space, prior, method, target, truths, nullptr, budget);
    v.explored = found.explored;
    v.status = found.witness ? Status::not_identified : Status::identified;
    v.witness = std::move(found.witness);
    return v;
}

/// Same question over fair streams (negation-closed spaces only).
/// Conditioning never recovers from an error, so any possible error
/// defeats it; mini and lex are searched with pending-error tracking.
inline Verdict decide_fair(const EpistemicSpace& space, const Preorder& prior, Method method, WorldId target,
                           Budget budget = Budget::from_env()) {
    const auto pairing = negation_pairing(space);
    if (!pairing) throw Error("fair-stream decisions require a negation-closed space");
    Verdict v;
    v.target = target;
    v.method = method;
    v.mode = StreamMode::fair;
    const auto truths = space.observables_at(target);
    if (truths.empty()) {
        v.status = Status::no_sound_stream;
        return v;
    }
    const auto errors = space.all_observables() - truths;
    if (method == Method::cond) {
        if (errors.empty()) return decide_in_limit(space, prior, method, target, budget);
        const auto e = errors.front();
        v.status = Status::not_identified;
        v.witness = StreamSpec({e, (*pairing)[e]}, truths.to_vector());
        v.corrections = detail::corrections_of(space, *v.witness, target, *pairing);
        return v;
    }
    auto found = detail::search_lasso(space, prior, method, target, space.all_observables(), &*pairing, budget);
    v.explored = found.explored;
    v.status = found.witness ? Status::not_identified : Status::identified;
    v.witness = std::move(found.witness);
    if (v.witness) v.corrections = detail::corrections_of(space, *v.witness, target, *pairing);
    return v;
}

/// Unified entry point for both stream modes.
inline Verdict decide(const EpistemicSpace& space, const Preorder& prior, Method method, WorldId target,
                      StreamMode mode, Budget budget = Budget::from_env()) {
    return mode == StreamMode::fair ? decide_fair(space, prior, method, target, budget)
                                    : decide_in_limit(space, prior, method, target, budget);
}

/// Witness check: the stream satisfies the mode's predicate and its
/// periodic part keeps the conjecture away from {target} somewhere.
inline bool witness_is_valid(const EpistemicSpace& space, const Preorder& prior, const Verdict& v) {
    if (!v.witness) return false;
    const auto& w = *v.witness;
    const bool admissible = v.mode == StreamMode::fair
                                ? is_fair(space, w, v.target)
                                : is_sound(space, w, v.target) && is_complete(space, w, v.target);
    return admissible && evaluate_lasso(space, prior, v.method, w, v.target).fails_infinitely_often;
}

struct AppropriatenessReport {
    Method method = Method::mini;
    StreamMode mode = StreamMode::sound_complete;
    std::vector<Verdict> verdicts;  // one per world; stops at the first failure when short-circuiting

    /// Worlds without any sound stream count as vacuously identified.
    bool appropriate() const {
        return std::all_of(verdicts.begin(), verdicts.end(),
                           [](const Verdict& v) { return v.status != Status::not_identified; });
    }
    std::optional<WorldId> first_failure() const {
        for (const auto& v : verdicts)
            if (v.status == Status::not_identified) return v.target;
        return std::nullopt;
    }
};

inline AppropriatenessReport decide_appropriate(const EpistemicSpace& space, const Preorder& prior, Method method,
                                                StreamMode mode = StreamMode::sound_complete,
                                                Budget budget = Budget::from_env(), bool stop_at_failure = false) {
    AppropriatenessReport report{method, mode, {}};
    for (WorldId s = 0; s < space.world_count(); ++s) {
        report.verdicts.push_back(decide(space, prior, method, s, mode, budget));
        if (stop_at_failure && report.verdicts.back().status == Status::not_identified) break;
    }
    return report;
}

inline AppropriatenessReport decide_fair_appropriate(const EpistemicSpace& space, const Preorder& prior,
                                                     Method method, Budget budget = Budget::from_env()) {
    return decide_appropriate(space, prior, method, StreamMode::fair, budget);
}

// ---------------------------------------------------------------------------
// Sweeps

struct SweepOptions {
    bool include_general = false;  // non-total preorders too (cond/lex only)
    std::size_t total_bound = default_enumeration_bound;
    std::size_t general_bound = default_general_preorder_bound;
    std::size_t jobs = 1;
    Budget budget = Budget::from_env();
};

struct SweepReport {
    Method method = Method::mini;
    StreamMode mode = StreamMode::sound_complete;
    std::size_t examined = 0;
    std::vector<Preorder> appropriate;  // in enumeration order
};

/// Runs `fn(i)` for i in [0, count) on up to `jobs` threads.
template <class Fn>
void parallel_for(std::size_t count, std::size_t jobs, Fn&& fn) {
    jobs = std::max<std::size_t>(1, std::min(jobs, count));
    if (jobs == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> workers;
    for (std::size_t w = 0; w < jobs; ++w) {
        workers.emplace_back([&] {
            for (auto i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : workers) t.join();
    if (failure) std::rethrow_exception(failure);
}

inline std::vector<Preorder> sweep_candidates(const EpistemicSpace& space, Method method, const SweepOptions& opts) {
    if (opts.include_general && method != Method::mini)
        return all_preorders(space.world_count(), opts.general_bound);
    return total_preorders(space.world_count(), opts.total_bound);
}

inline SweepReport sweep_priors(const EpistemicSpace& space, Method method, StreamMode mode,
                                const SweepOptions& opts = {}) {
    const auto candidates = sweep_candidates(space, method, opts);
    std::vector<char> ok(candidates.size(), 0);
    parallel_for(candidates.size(), opts.jobs, [&](std::size_t i) {
        ok[i] = decide_appropriate(space, candidates[i], method, mode, opts.budget, true).appropriate() ? 1 : 0;
    });
    SweepReport report{method, mode, candidates.size(), {}};
    for (std::size_t i = 0; i < candidates.size(); ++i)
        if (ok[i]) report.appropriate.push_back(candidates[i]);
    return report;
}

// ---------------------------------------------------------------------------
// Characterisation cross-checks

struct CrossCheckReport {
    std::optional<bool> mini_semantic;  // total priors only
    std::optional<bool> mini_telltale;
    bool cond_semantic = false;
    bool lex_semantic = false;
    bool cond_telltale = false;
    std::optional<bool> lex_fair_semantic;  // negation-closed spaces only
    std::vector<std::string> mismatches;

    bool consistent() const { return mismatches.empty(); }
};

inline CrossCheckReport cross_check(const EpistemicSpace& space, const Preorder& prior,
                                    Budget budget = Budget::from_env()) {
    CrossCheckReport r;
    auto yes_no = [](bool b) { return std::string(b ? "yes" : "no"); };
    if (prior.is_total()) {
        r.mini_semantic = decide_appropriate(space, prior, Method::mini, StreamMode::sound_complete, budget, true)
                              .appropriate();
        r.mini_telltale = mini_telltale_exists(space, prior).ok();
        if (*r.mini_semantic != *r.mini_telltale)
            r.mismatches.push_back("mini: semantic decision says " + yes_no(*r.mini_semantic) +
                                   ", mini tell-tale map exists: " + yes_no(*r.mini_telltale));
    }
    r.cond_semantic =
        decide_appropriate(space, prior, Method::cond, StreamMode::sound_complete, budget, true).appropriate();
    r.lex_semantic =
        decide_appropriate(space, prior, Method::lex, StreamMode::sound_complete, budget, true).appropriate();
    r.cond_telltale = cond_telltale_exists(space, prior).ok();
    if (r.cond_semantic != r.cond_telltale)
        r.mismatches.push_back("cond: semantic decision says " + yes_no(r.cond_semantic) +
                               ", conditioning tell-tale map exists: " + yes_no(r.cond_telltale));
    if (r.lex_semantic != r.cond_telltale)
        r.mismatches.push_back("lex: semantic decision says " + yes_no(r.lex_semantic) +
                               ", conditioning tell-tale map exists: " + yes_no(r.cond_telltale));
    if (is_negation_closed(space)) {
        r.lex_fair_semantic = decide_appropriate(space, prior, Method::lex, StreamMode::fair, budget, true).appropriate();
        if (*r.lex_fair_semantic != r.cond_telltale)
            r.mismatches.push_back("lex on fair streams: semantic decision says " + yes_no(*r.lex_fair_semantic) +
                                   ", conditioning tell-tale map exists: " + yes_no(r.cond_telltale));
    }
    return r;
}

// ---------------------------------------------------------------------------
// Locking sequences

namespace detail {

struct SoundReach {
    StateGraph graph;
    std::vector<std::size_t> parent;
    std::vector<ObsId> via;
    std::vector<std::size_t> depth;
};

/// BFS over revision states reachable from the prior by observations true at s.
inline SoundReach explore_sound(const EpistemicSpace& space, const Preorder& prior, Method method, WorldId s,
                                Budget budget) {
    SoundReach r{StateGraph(space, method, prior, s), {static_cast<std::size_t>(-1)}, {0}, {0}};
    const auto truths = space.observables_at(s);
    for (std::size_t i = 0; i < r.graph.size(); ++i) {
        for (auto p : truths) {
            const auto before = r.graph.size();
            const auto j = r.graph.next(i, p);
            if (r.graph.size() > before) {
                if (r.graph.size() > budget.max_nodes) throw BudgetExceeded(budget.max_nodes);
                r.parent.push_back(i);
                r.via.push_back(p);
                r.depth.push_back(r.depth[i] + 1);
            }
            (void)j;
        }
    }
    return r;
}

}  // namespace detail

/// Number of revision states reachable from the prior via observations true at s.
inline std::size_t reachable_state_count(const EpistemicSpace& space, const Preorder& prior, Method method,
                                         WorldId s, Budget budget = Budget::from_env()) {
    return detail::explore_sound(space, prior, method, s, budget).graph.size();
}

/// Shortest sound σ of length ≤ bound with conjecture {s} after σ and after
/// every sound continuation of σ.
inline std::optional<DataSequence> locking_sequence_search(const EpistemicSpace& space, const Preorder& prior,
                                                           Method method, WorldId s, std::size_t bound,
                                                           Budget budget = Budget::from_env()) {
    auto r = detail::explore_sound(space, prior, method, s, budget);
    const auto n = r.graph.size();
    const auto truths = space.observables_at(s);
    // states from which some sound continuation reaches a bad conjecture
    std::vector<std::vector<std::size_t>> preds(n);
    for (std::size_t i = 0; i < n; ++i)
        for (auto p : truths) preds[r.graph.next(i, p)].push_back(i);
    std::vector<bool> tainted(n, false);
    std::deque<std::size_t> queue;
    for (std::size_t i = 0; i < n; ++i)
        if (r.graph.bad(i)) {
            tainted[i] = true;
            queue.push_back(i);
        }
    while (!queue.empty()) {
        const auto v = queue.front();
        queue.pop_front();
        for (auto u : preds[v])
            if (!tainted[u]) {
                tainted[u] = true;
                queue.push_back(u);
            }
    }
    for (std::size_t i = 0; i < n; ++i) {  // BFS order: shortest first
        if (tainted[i] || r.depth[i] > bound) continue;
        DataSequence sigma;
        for (auto v = i; v != 0; v = r.parent[v]) sigma.push_back(r.via[v]);
        std::reverse(sigma.begin(), sigma.end());
        return sigma;
    }
    return std::nullopt;
}

}  // namespace tracktruth
