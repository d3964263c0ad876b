#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tracktruth {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using WorldId = std::size_t;
using ObsId = std::size_t;

inline constexpr std::size_t max_worlds = 64;
inline constexpr std::size_t max_observables = 64;

/// Set of small indices (< 64) packed into one machine word. The tag keeps
/// world sets and observable sets from being mixed up.
template <class Tag>
class IndexSet {
public:
    class iterator {
    public:
        using value_type = std::size_t;
        using difference_type = std::ptrdiff_t;

        iterator() = default;
        explicit iterator(std::uint64_t rest) : rest_(rest) {}

        std::size_t operator*() const { return static_cast<std::size_t>(std::countr_zero(rest_)); }
        iterator& operator++() {
            rest_ &= rest_ - 1;
            return *this;
        }
        iterator operator++(int) {
            auto old = *this;
            ++*this;
            return old;
        }
        friend bool operator==(iterator a, iterator b) { return a.rest_ == b.rest_; }

    private:
        std::uint64_t rest_ = 0;
    };

    constexpr IndexSet() = default;
    IndexSet(std::initializer_list<std::size_t> items) {
        for (auto i : items) insert(i);
    }

    static constexpr IndexSet from_bits(std::uint64_t bits) {
        IndexSet s;
        s.bits_ = bits;
        return s;
    }
    /// {0, ..., n-1}
    static constexpr IndexSet first_n(std::size_t n) {
        return from_bits(n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1));
    }
    static constexpr IndexSet single(std::size_t i) { return from_bits(std::uint64_t{1} << i); }

    constexpr std::uint64_t bits() const { return bits_; }
    constexpr bool contains(std::size_t i) const { return i < 64 && ((bits_ >> i) & 1U); }
    constexpr void insert(std::size_t i) {
        if (i >= 64) throw Error("index set holds at most 64 elements");
        bits_ |= std::uint64_t{1} << i;
    }
    constexpr void erase(std::size_t i) {
        if (i < 64) bits_ &= ~(std::uint64_t{1} << i);
    }
    constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr bool subset_of(IndexSet other) const { return (bits_ & ~other.bits_) == 0; }
    constexpr bool intersects(IndexSet other) const { return (bits_ & other.bits_) != 0; }
    /// Smallest element; set must be nonempty.
    std::size_t front() const { return *begin(); }

    iterator begin() const { return iterator(bits_); }
    iterator end() const { return iterator(0); }

    std::vector<std::size_t> to_vector() const { return {begin(), end()}; }

    friend constexpr IndexSet operator|(IndexSet a, IndexSet b) { return from_bits(a.bits_ | b.bits_); }
    friend constexpr IndexSet operator&(IndexSet a, IndexSet b) { return from_bits(a.bits_ & b.bits_); }
    friend constexpr IndexSet operator-(IndexSet a, IndexSet b) { return from_bits(a.bits_ & ~b.bits_); }
    IndexSet& operator|=(IndexSet o) {
        bits_ |= o.bits_;
        return *this;
    }
    IndexSet& operator&=(IndexSet o) {
        bits_ &= o.bits_;
        return *this;
    }
    IndexSet& operator-=(IndexSet o) {
        bits_ &= ~o.bits_;
        return *this;
    }
    friend constexpr bool operator==(IndexSet a, IndexSet b) = default;
    friend constexpr auto operator<=>(IndexSet a, IndexSet b) = default;

private:
    std::uint64_t bits_ = 0;
};

struct WorldTag;
struct ObsTag;
using WorldSet = IndexSet<WorldTag>;
using ObsSet = IndexSet<ObsTag>;

struct World {
    WorldId id;
    std::string name;
};

struct Observable {
    std::string label;
    WorldSet extension;
};

/// Finite set of worlds with labelled observables. Construction checks only
/// structural well-formedness (unique names and labels, extensions in range);
/// the distinguishability conditions are reported by validate_space.
class EpistemicSpace {
public:
    EpistemicSpace(std::vector<std::string> world_names, std::vector<Observable> observables)
        : observables_(std::move(observables)) {
        if (world_names.empty()) throw Error("an epistemic space needs at least one world");
        if (world_names.size() > max_worlds) throw Error("at most 64 worlds are supported");
        if (observables_.size() > max_observables) throw Error("at most 64 observables are supported");
        worlds_.reserve(world_names.size());
        for (std::size_t i = 0; i < world_names.size(); ++i) {
            if (!world_index_.emplace(world_names[i], i).second)
                throw Error("duplicate world name '" + world_names[i] + "'");
            worlds_.push_back({i, std::move(world_names[i])});
        }
        const auto all = all_worlds();
        at_.assign(worlds_.size(), ObsSet{});
        for (std::size_t o = 0; o < observables_.size(); ++o) {
            const auto& obs = observables_[o];
            if (!obs_index_.emplace(obs.label, o).second)
                throw Error("duplicate observable label '" + obs.label + "'");
            if (!obs.extension.subset_of(all))
                throw Error("observable '" + obs.label + "' mentions a world outside the space");
            for (auto w : obs.extension) at_[w].insert(o);
        }
    }

    /// Convenience builder from names: {{"p", {"u", "s"}}, ...}.
    static EpistemicSpace from_names(std::vector<std::string> world_names,
                                     const std::vector<std::pair<std::string, std::vector<std::string>>>& obs) {
        std::unordered_map<std::string, WorldId> idx;
        for (std::size_t i = 0; i < world_names.size(); ++i) idx.emplace(world_names[i], i);
        std::vector<Observable> observables;
        for (const auto& [label, members] : obs) {
            WorldSet ext;
            for (const auto& m : members) {
                auto it = idx.find(m);
                if (it == idx.end()) throw Error("observable '" + label + "' names unknown world '" + m + "'");
                ext.insert(it->second);
            }
            observables.push_back({label, ext});
        }
        return EpistemicSpace(std::move(world_names), std::move(observables));
    }

    std::size_t world_count() const { return worlds_.size(); }
    std::size_t observable_count() const { return observables_.size(); }
    const std::vector<World>& worlds() const { return worlds_; }
    const std::vector<Observable>& observables() const { return observables_; }
    WorldSet all_worlds() const { return WorldSet::first_n(worlds_.size()); }
    ObsSet all_observables() const { return ObsSet::first_n(observables_.size()); }

    const std::string& world_name(WorldId w) const { return worlds_.at(w).name; }
    const std::string& label(ObsId o) const { return observables_.at(o).label; }
    WorldSet extension(ObsId o) const {
        if (o >= observables_.size()) throw Error("unknown observable id " + std::to_string(o));
        return observables_[o].extension;
    }

    /// O_s as a set of observable ids.
    ObsSet observables_at(WorldId s) const {
        if (s >= worlds_.size()) throw Error("unknown world id " + std::to_string(s));
        return at_[s];
    }

    std::optional<WorldId> find_world(std::string_view name) const {
        auto it = world_index_.find(std::string(name));
        if (it == world_index_.end()) return std::nullopt;
        return it->second;
    }
    std::optional<ObsId> find_observable(std::string_view label) const {
        auto it = obs_index_.find(std::string(label));
        if (it == obs_index_.end()) return std::nullopt;
        return it->second;
    }
    WorldId world(std::string_view name) const {
        if (auto w = find_world(name)) return *w;
        throw Error("unknown world '" + std::string(name) + "'");
    }
    ObsId observable(std::string_view label) const {
        if (auto o = find_observable(label)) return *o;
        throw Error("unknown observable '" + std::string(label) + "'");
    }

    WorldSet worlds_named(const std::vector<std::string>& names) const {
        WorldSet out;
        for (const auto& n : names) out.insert(world(n));
        return out;
    }

    friend bool operator==(const EpistemicSpace& a, const EpistemicSpace& b) {
        if (a.worlds_.size() != b.worlds_.size() || a.observables_.size() != b.observables_.size()) return false;
        for (std::size_t i = 0; i < a.worlds_.size(); ++i)
            if (a.worlds_[i].name != b.worlds_[i].name) return false;
        for (std::size_t i = 0; i < a.observables_.size(); ++i)
            if (a.observables_[i].label != b.observables_[i].label ||
                a.observables_[i].extension != b.observables_[i].extension)
                return false;
        return true;
    }

private:
    std::vector<World> worlds_;
    std::vector<Observable> observables_;
    std::unordered_map<std::string, WorldId> world_index_;
    std::unordered_map<std::string, ObsId> obs_index_;
    std::vector<ObsSet> at_;
};

/// Labels of the observables true at s, in declaration order.
inline std::vector<std::string> observables_of(const EpistemicSpace& space, WorldId s) {
    std::vector<std::string> out;
    for (auto o : space.observables_at(s)) out.push_back(space.label(o));
    return out;
}

struct Violation {
    enum class Kind { indistinguishable_worlds, duplicate_extension };
    Kind kind;
    std::size_t first;
    std::size_t second;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    std::vector<ObsId> empty_observables;  // allowed, but flagged

    bool ok() const { return violations.empty(); }
};

inline ValidationReport validate_space(const EpistemicSpace& space) {
    ValidationReport report;
    const auto n = space.world_count();
    for (WorldId s = 0; s < n; ++s)
        for (WorldId t = s + 1; t < n; ++t)
            if (space.observables_at(s) == space.observables_at(t))
                report.violations.push_back({Violation::Kind::indistinguishable_worlds, s, t,
                                             "worlds '" + space.world_name(s) + "' and '" + space.world_name(t) +
                                                 "' satisfy exactly the same observables"});
    const auto m = space.observable_count();
    for (ObsId p = 0; p < m; ++p) {
        if (space.extension(p).empty()) report.empty_observables.push_back(p);
        for (ObsId q = p + 1; q < m; ++q)
            if (space.extension(p) == space.extension(q))
                report.violations.push_back({Violation::Kind::duplicate_extension, p, q,
                                             "observables '" + space.label(p) + "' and '" + space.label(q) +
                                                 "' have the same extension"});
    }
    return report;
}

/// No world's observables are included in another's.
inline bool is_strongly_separated(const EpistemicSpace& space) {
    const auto n = space.world_count();
    for (WorldId s = 0; s < n; ++s)
        for (WorldId t = 0; t < n; ++t)
            if (s != t && space.observables_at(s).subset_of(space.observables_at(t))) return false;
    return true;
}

/// complement[p] is the observable whose extension is S minus p's extension,
/// or nullopt when some observable has no complement in the space.
inline std::optional<std::vector<ObsId>> negation_pairing(const EpistemicSpace& space) {
    const auto all = space.all_worlds();
    std::vector<ObsId> complement(space.observable_count());
    for (ObsId p = 0; p < space.observable_count(); ++p) {
        const auto want = all - space.extension(p);
        bool found = false;
        for (ObsId q = 0; q < space.observable_count() && !found; ++q) {
            if (space.extension(q) == want) {
                complement[p] = q;
                found = true;
            }
        }
        if (!found) return std::nullopt;
    }
    return complement;
}

inline bool is_negation_closed(const EpistemicSpace& space) { return negation_pairing(space).has_value(); }

}  // namespace tracktruth
