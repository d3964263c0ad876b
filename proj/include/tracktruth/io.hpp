#pragma once

// JSON documents for spaces, orders, streams, tell-tale maps and verdicts.
// Object member order follows declaration order so output diffs are stable.

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tracktruth/core.hpp"
#include "tracktruth/preorder.hpp"
#include "tracktruth/revision.hpp"
#include "tracktruth/streams.hpp"
#include "tracktruth/telltale.hpp"
#include "tracktruth/verifier.hpp"

namespace tracktruth::io {

using Json = nlohmann::ordered_json;

class ParseError : public Error {
public:
    ParseError(std::string message, std::size_t line, std::size_t column)
        : Error(std::move(message)), line_(line), column_(column) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Parses a JSON document; syntax errors carry line and column.
inline Json parse_document(const std::string& text, const std::string& source = "<input>") {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        const auto offset = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        std::size_t line = 1, column = 1;
        for (std::size_t i = 0; i < offset; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        std::string what = e.what();
        throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what, line, column);
    }
}

inline Json load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_document(buf.str(), path);
}

namespace detail {

inline const Json& field(const Json& j, const char* name, const char* what) {
    if (!j.is_object()) throw Error(std::string(what) + " must be a JSON object");
    auto it = j.find(name);
    if (it == j.end()) throw Error(std::string(what) + " is missing field '" + name + "'");
    return *it;
}

inline std::vector<std::string> strings(const Json& j, const std::string& what) {
    if (!j.is_array()) throw Error(what + " must be an array of strings");
    std::vector<std::string> out;
    for (const auto& e : j) {
        if (!e.is_string()) throw Error(what + " must be an array of strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

inline Json names(const EpistemicSpace& space, WorldSet ws) {
    Json arr = Json::array();
    for (auto w : ws) arr.push_back(space.world_name(w));
    return arr;
}

}  // namespace detail

// --- spaces ---------------------------------------------------------------

inline Json to_json(const EpistemicSpace& space) {
    Json j;
    Json worlds = Json::array();
    for (const auto& w : space.worlds()) worlds.push_back(w.name);
    j["worlds"] = worlds;
    Json obs = Json::object();
    for (const auto& o : space.observables()) obs[o.label] = detail::names(space, o.extension);
    j["observables"] = obs;
    return j;
}

inline EpistemicSpace space_from_json(const Json& j) {
    auto worlds = detail::strings(detail::field(j, "worlds", "space"), "space.worlds");
    const auto& obs = detail::field(j, "observables", "space");
    if (!obs.is_object()) throw Error("space.observables must be an object of label -> [world names]");
    std::vector<std::pair<std::string, std::vector<std::string>>> items;
    for (auto it = obs.begin(); it != obs.end(); ++it)
        items.emplace_back(it.key(), detail::strings(it.value(), "observable '" + it.key() + "'"));
    return EpistemicSpace::from_names(std::move(worlds), items);
}

// --- orders -----------------------------------------------------------------

/// Total orders over the whole space print as layers; anything else as the
/// strict and tied pairs (closure recovers the relation) plus the domain when
/// it is not the whole space.
inline Json to_json(const EpistemicSpace& space, const Preorder& order) {
    Json j;
    if (order.domain() != space.all_worlds()) j["worlds"] = detail::names(space, order.domain());
    if (order.is_total() && !order.domain().empty()) {
        Json layers = Json::array();
        const auto ls = order.layers();
        for (auto layer : *ls) layers.push_back(detail::names(space, layer));
        j["layers"] = layers;
        return j;
    }
    Json pairs = Json::array();
    for (auto a : order.domain())
        for (auto b : order.upset(a))
            if (a != b) pairs.push_back(Json::array({space.world_name(a), space.world_name(b)}));
    j["pairs"] = pairs;
    return j;
}

inline Preorder preorder_from_json(const EpistemicSpace& space, const Json& j) {
    if (!j.is_object()) throw Error("order must be a JSON object");
    std::optional<WorldSet> domain;
    if (j.contains("worlds")) domain = space.worlds_named(detail::strings(j["worlds"], "order.worlds"));
    const auto n = space.world_count();
    if (j.contains("layers")) {
        if (!j["layers"].is_array()) throw Error("order.layers must be an array of arrays");
        std::vector<WorldSet> layers;
        for (const auto& layer : j["layers"]) layers.push_back(space.worlds_named(detail::strings(layer, "layer")));
        auto order = Preorder::from_layers(n, layers);
        if (!domain && order.domain() != space.all_worlds())
            throw Error("order.layers must mention every world exactly once");
        if (domain && order.domain() != *domain) throw Error("order.layers do not match order.worlds");
        return order;
    }
    if (j.contains("pairs")) {
        if (!j["pairs"].is_array()) throw Error("order.pairs must be an array of [a, b] pairs");
        std::vector<std::pair<WorldId, WorldId>> pairs;
        for (const auto& pr : j["pairs"]) {
            auto ab = detail::strings(pr, "order pair");
            if (ab.size() != 2) throw Error("order pair must have exactly two world names");
            pairs.emplace_back(space.world(ab[0]), space.world(ab[1]));
        }
        return Preorder::from_pairs(n, pairs, domain);
    }
    throw Error("order needs either 'layers' or 'pairs'");
}

// --- streams ----------------------------------------------------------------

inline Json to_json(const EpistemicSpace& space, std::span<const ObsId> seq) {
    Json arr = Json::array();
    for (auto o : seq) arr.push_back(space.label(o));
    return arr;
}

inline DataSequence sequence_from_json(const EpistemicSpace& space, const Json& j) {
    DataSequence out;
    for (const auto& label : detail::strings(j, "observation sequence")) out.push_back(space.observable(label));
    return out;
}

inline DataSequence sequence_from_labels(const EpistemicSpace& space, const std::vector<std::string>& labels) {
    DataSequence out;
    for (const auto& l : labels) out.push_back(space.observable(l));
    return out;
}

inline Json to_json(const EpistemicSpace& space, const StreamSpec& spec) {
    Json j;
    j["prefix"] = to_json(space, spec.prefix);
    j["cycle"] = to_json(space, spec.cycle);
    return j;
}

inline StreamSpec stream_from_json(const EpistemicSpace& space, const Json& j) {
    DataSequence prefix;
    if (j.is_object() && j.contains("prefix")) prefix = sequence_from_json(space, j["prefix"]);
    auto cycle = sequence_from_json(space, detail::field(j, "cycle", "stream"));
    return StreamSpec(std::move(prefix), std::move(cycle));
}

// --- tell-tale maps ---------------------------------------------------------

inline Json to_json(const EpistemicSpace& space, const TellTaleMap& map) {
    Json j;
    j["kind"] = std::string(to_string(map.kind));
    Json m = Json::object();
    for (WorldId w = 0; w < map.sets.size(); ++w) {
        Json labels = Json::array();
        for (auto o : map.sets[w]) labels.push_back(space.label(o));
        m[space.world_name(w)] = labels;
    }
    j["map"] = m;
    return j;
}

inline TellTaleMap telltale_from_json(const EpistemicSpace& space, const Json& j) {
    const auto kind = parse_telltale_kind(detail::field(j, "kind", "tell-tale map").get<std::string>());
    if (!kind) throw Error("unknown tell-tale kind");
    const auto& m = detail::field(j, "map", "tell-tale map");
    TellTaleMap out{*kind, std::vector<ObsSet>(space.world_count())};
    std::vector<bool> seen(space.world_count(), false);
    for (auto it = m.begin(); it != m.end(); ++it) {
        const auto w = space.world(it.key());
        seen[w] = true;
        for (const auto& label : detail::strings(it.value(), "tell-tale set")) out.sets[w].insert(space.observable(label));
    }
    for (WorldId w = 0; w < seen.size(); ++w)
        if (!seen[w]) throw Error("tell-tale map has no entry for world '" + space.world_name(w) + "'");
    return out;
}

// --- verdicts ---------------------------------------------------------------

inline Json to_json(const EpistemicSpace& space, const Verdict& v) {
    Json j;
    j["target"] = space.world_name(v.target);
    j["method"] = std::string(to_string(v.method));
    j["mode"] = std::string(to_string(v.mode));
    j["status"] = std::string(to_string(v.status));
    if (v.witness) j["witness"] = to_json(space, *v.witness);
    if (!v.corrections.empty()) {
        Json cs = Json::array();
        for (const auto& c : v.corrections)
            cs.push_back({{"position", c.position}, {"error", space.label(c.error)}, {"corrected_at", c.corrected_at}});
        j["corrections"] = cs;
    }
    j["explored"] = v.explored;
    return j;
}

inline Verdict verdict_from_json(const EpistemicSpace& space, const Json& j) {
    Verdict v;
    v.target = space.world(detail::field(j, "target", "verdict").get<std::string>());
    const auto method = parse_method(detail::field(j, "method", "verdict").get<std::string>());
    if (!method) throw Error("verdict.method must be mini, cond or lex");
    v.method = *method;
    const auto mode = detail::field(j, "mode", "verdict").get<std::string>();
    if (mode != "fair" && mode != "sound-complete") throw Error("verdict.mode must be fair or sound-complete");
    v.mode = mode == "fair" ? StreamMode::fair : StreamMode::sound_complete;
    const auto status = parse_status(detail::field(j, "status", "verdict").get<std::string>());
    if (!status) throw Error("unknown verdict.status");
    v.status = *status;
    if (j.contains("witness")) v.witness = stream_from_json(space, j["witness"]);
    if (j.contains("corrections"))
        for (const auto& c : j["corrections"])
            v.corrections.push_back({c.at("position").get<std::size_t>(), space.observable(c.at("error").get<std::string>()),
                                     c.at("corrected_at").get<std::size_t>()});
    if (j.contains("explored")) v.explored = j["explored"].get<std::size_t>();
    return v;
}

}  // namespace tracktruth::io
