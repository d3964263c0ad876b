#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "tracktruth/core.hpp"

namespace tracktruth {

/// Reflexive, transitive relation over a subset (the domain) of a world
/// universe 0..n-1. Row s holds every t with s ⪯ t ("s is at least as
/// plausible as t"). Full priors have domain = all worlds; conditioning
/// shrinks the domain.
class Preorder {
public:
    Preorder() = default;

    static Preorder flat(std::size_t n) { return flat(WorldSet::first_n(n), n); }
    static Preorder flat(WorldSet domain, std::size_t n) {
        check_universe(n);
        std::vector<WorldSet> up(n);
        for (auto s : domain) up[s] = domain;
        return Preorder(domain, std::move(up));
    }

    /// Weak order from layers; earlier layers are strictly more plausible.
    /// The layers must partition the domain.
    static Preorder from_layers(std::size_t n, const std::vector<WorldSet>& layers) {
        check_universe(n);
        WorldSet domain;
        for (auto layer : layers) {
            if (layer.empty()) throw Error("empty layer in weak order");
            if (layer.intersects(domain)) throw Error("a world appears in two layers");
            domain |= layer;
        }
        if (!domain.subset_of(WorldSet::first_n(n))) throw Error("layer mentions a world outside the space");
        std::vector<WorldSet> up(n);
        WorldSet at_or_below = domain;
        for (auto layer : layers) {
            for (auto s : layer) up[s] = at_or_below;
            at_or_below -= layer;
        }
        return Preorder(domain, std::move(up));
    }

    /// Reflexive-transitive closure of the given pairs (a ⪯ b) over the domain.
    static Preorder from_pairs(std::size_t n, const std::vector<std::pair<WorldId, WorldId>>& pairs,
                               std::optional<WorldSet> domain = std::nullopt) {
        check_universe(n);
        const auto dom = domain.value_or(WorldSet::first_n(n));
        std::vector<WorldSet> up(n);
        for (auto s : dom) up[s] = WorldSet::single(s);
        for (auto [a, b] : pairs) {
            if (!dom.contains(a) || !dom.contains(b)) throw Error("pair mentions a world outside the domain");
            up[a].insert(b);
        }
        close_transitively(up, dom);
        return Preorder(dom, std::move(up));
    }

    /// Relation given row by row; rejected unless reflexive and transitive on the domain.
    static Preorder from_relation(WorldSet domain, std::vector<WorldSet> up) {
        check_universe(up.size());
        if (!domain.subset_of(WorldSet::first_n(up.size()))) throw Error("domain exceeds the universe");
        for (std::size_t s = 0; s < up.size(); ++s) {
            if (!domain.contains(s)) {
                if (!up[s].empty()) throw Error("relation mentions a world outside the domain");
                continue;
            }
            if (!up[s].subset_of(domain)) throw Error("relation mentions a world outside the domain");
            if (!up[s].contains(s)) throw Error("relation is not reflexive");
        }
        for (auto s : domain)
            for (auto t : up[s])
                if (!up[t].subset_of(up[s])) throw Error("relation is not transitive");
        return Preorder(domain, std::move(up));
    }

    std::size_t universe() const { return up_.size(); }
    WorldSet domain() const { return domain_; }
    bool is_total() const { return total_; }

    bool leq(WorldId s, WorldId t) const { return s < up_.size() && up_[s].contains(t); }
    bool less(WorldId s, WorldId t) const { return leq(s, t) && !leq(t, s); }
    bool equiv(WorldId s, WorldId t) const { return leq(s, t) && leq(t, s); }
    bool comparable(WorldId s, WorldId t) const { return leq(s, t) || leq(t, s); }

    /// {t : s ⪯ t}
    WorldSet upset(WorldId s) const { return up_.at(s); }
    /// {t : t ⪯ s}
    WorldSet downset(WorldId s) const {
        WorldSet out;
        for (auto t : domain_)
            if (up_[t].contains(s)) out.insert(t);
        return out;
    }
    const std::vector<WorldSet>& rows() const { return up_; }

    /// Layers of a total order, most plausible first.
    std::optional<std::vector<WorldSet>> layers() const {
        if (!total_) return std::nullopt;
        std::vector<WorldSet> out;
        WorldSet rest = domain_;
        while (!rest.empty()) {
            WorldSet layer;
            for (auto s : rest)
                if (rest.subset_of(up_[s])) layer.insert(s);
            out.push_back(layer);
            rest -= layer;
        }
        return out;
    }

    std::size_t hash() const {
        std::size_t h = std::hash<std::uint64_t>{}(domain_.bits());
        for (auto row : up_) h ^= std::hash<std::uint64_t>{}(row.bits()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }

    friend bool operator==(const Preorder& a, const Preorder& b) {
        return a.domain_ == b.domain_ && a.up_ == b.up_;
    }

private:
    friend struct PreorderAccess;

    Preorder(WorldSet domain, std::vector<WorldSet> up) : domain_(domain), up_(std::move(up)) {
        total_ = true;
        for (auto s : domain_) {
            if ((up_[s] | downset(s)) != domain_) {
                total_ = false;
                break;
            }
        }
    }

    static void check_universe(std::size_t n) {
        if (n == 0 || n > max_worlds) throw Error("preorder universe must hold 1..64 worlds");
    }

    static void close_transitively(std::vector<WorldSet>& up, WorldSet domain) {
        // Warshall over the domain
        for (auto k : domain)
            for (auto i : domain)
                if (up[i].contains(k)) up[i] |= up[k];
    }

    WorldSet domain_;
    std::vector<WorldSet> up_;
    bool total_ = true;
};

/// Builds preorders from rows already known to be reflexive and transitive.
/// Used by the revision operators, which preserve both properties.
struct PreorderAccess {
    static Preorder trusted(WorldSet domain, std::vector<WorldSet> up) { return Preorder(domain, std::move(up)); }
};

struct PreorderHash {
    std::size_t operator()(const Preorder& p) const { return p.hash(); }
};

/// min_⪯ X: s ∈ X is minimal iff s ⪯ t for every t ∈ X comparable with s.
/// Worlds of X outside the order's domain are ignored.
inline WorldSet min_elements(const Preorder& order, WorldSet x) {
    x &= order.domain();
    WorldSet out;
    for (auto s : x) {
        bool minimal = true;
        for (auto t : x) {
            if (order.leq(t, s) && !order.leq(s, t)) {
                minimal = false;
                break;
            }
        }
        if (minimal) out.insert(s);
    }
    return out;
}

/// ⪯ ∩ (p × p)
inline Preorder restrict(const Preorder& order, WorldSet p) {
    const auto dom = order.domain() & p;
    std::vector<WorldSet> up(order.universe());
    for (auto s : dom) up[s] = order.upset(s) & dom;
    return PreorderAccess::trusted(dom, std::move(up));
}

/// ⪯ ∩ ((S∖p) × (S∖p)), S being the order's domain.
inline Preorder restrict_complement(const Preorder& order, WorldSet p) { return restrict(order, order.domain() - p); }

inline constexpr std::size_t default_enumeration_bound = 6;

/// Visits every total preorder (weak order) on n worlds exactly once, as an
/// ordered set partition built layer by layer.
template <class Fn>
void for_each_total_preorder(std::size_t n, Fn&& fn, std::size_t bound = default_enumeration_bound) {
    if (n == 0 || n > bound) throw Error("weak-order enumeration is bounded to 1.." + std::to_string(bound) + " worlds");
    std::vector<WorldSet> layers;
    const auto all = WorldSet::first_n(n);
    std::function<void(WorldSet)> rec = [&](WorldSet rest) {
        if (rest.empty()) {
            fn(Preorder::from_layers(n, layers));
            return;
        }
        // nonempty subsets of rest, in increasing bit order
        const auto bits = rest.bits();
        for (std::uint64_t sub = bits; sub != 0; sub = (sub - 1) & bits) {
            layers.push_back(WorldSet::from_bits(sub));
            rec(rest - WorldSet::from_bits(sub));
            layers.pop_back();
        }
    };
    rec(all);
}

inline std::vector<Preorder> total_preorders(std::size_t n, std::size_t bound = default_enumeration_bound) {
    std::vector<Preorder> out;
    for_each_total_preorder(n, [&](Preorder p) { out.push_back(std::move(p)); }, bound);
    return out;
}

inline constexpr std::size_t default_general_preorder_bound = 3;

/// Every preorder (total or not) on n worlds, by filtering all relations
/// for transitivity. Only feasible for tiny n.
inline std::vector<Preorder> all_preorders(std::size_t n, std::size_t bound = default_general_preorder_bound) {
    if (n == 0 || n > bound || n > 5)
        throw Error("general preorder enumeration is bounded to 1.." + std::to_string(std::min<std::size_t>(bound, 5)) +
                    " worlds");
    std::vector<std::pair<WorldId, WorldId>> off_diagonal;
    for (WorldId s = 0; s < n; ++s)
        for (WorldId t = 0; t < n; ++t)
            if (s != t) off_diagonal.emplace_back(s, t);
    std::vector<Preorder> out;
    const std::uint64_t combos = std::uint64_t{1} << off_diagonal.size();
    for (std::uint64_t mask = 0; mask < combos; ++mask) {
        std::vector<WorldSet> up(n);
        for (WorldId s = 0; s < n; ++s) up[s] = WorldSet::single(s);
        for (std::size_t k = 0; k < off_diagonal.size(); ++k)
            if ((mask >> k) & 1U) up[off_diagonal[k].first].insert(off_diagonal[k].second);
        bool transitive = true;
        for (WorldId s = 0; s < n && transitive; ++s)
            for (auto t : up[s])
                if (!up[t].subset_of(up[s])) {
                    transitive = false;
                    break;
                }
        if (transitive) out.push_back(PreorderAccess::trusted(WorldSet::first_n(n), std::move(up)));
    }
    return out;
}

}  // namespace tracktruth
