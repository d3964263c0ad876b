// tracktruth: command-line front end for the belief-revision learning library.

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "tracktruth/fixtures.hpp"
#include "tracktruth/io.hpp"
#include "tracktruth/tracktruth.hpp"

namespace tt = tracktruth;
using tt::io::Json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_fail = 1;
constexpr int exit_usage = 2;

struct Options {
    std::string format = "text";
    bool explain = false;
    std::string method = "mini";
    bool fair = false;
    std::size_t horizon = 0;
    std::size_t bound = 0;
    std::size_t jobs = 1;
    bool general = false;
    bool all = false;
    std::string kind = "mini";
    std::string world;
    std::string space_path, prior_path, stream_path;
    std::vector<std::string> items;
};

bool json_out(const Options& o) { return o.format == "json"; }

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

tt::Method method_of(const Options& o) {
    auto m = tt::parse_method(o.method);
    if (!m) throw CLI::ValidationError("--method", "expected mini, cond or lex");
    return *m;
}

std::string set_text(const tt::EpistemicSpace& space, tt::WorldSet ws) {
    std::string out = "{";
    bool first = true;
    for (auto w : ws) {
        out += (first ? "" : ", ") + space.world_name(w);
        first = false;
    }
    return out + "}";
}

std::string obs_text(const tt::EpistemicSpace& space, std::span<const tt::ObsId> seq) {
    if (seq.empty()) return "ε";
    std::string out;
    for (std::size_t i = 0; i < seq.size(); ++i) out += (i ? " " : "") + space.label(seq[i]);
    return out;
}

std::string order_text(const tt::EpistemicSpace& space, const tt::Preorder& order) {
    if (order.domain().empty()) return "(no worlds)";
    if (auto layers = order.layers()) {
        std::string out;
        for (std::size_t i = 0; i < layers->size(); ++i) {
            if (i) out += " < ";
            bool first = true;
            for (auto w : (*layers)[i]) {
                out += (first ? "" : " ~ ") + space.world_name(w);
                first = false;
            }
        }
        return out;
    }
    std::string out;
    for (auto a : order.domain())
        for (auto b : order.upset(a))
            if (a != b && !order.leq(b, a)) out += (out.empty() ? "" : ", ") + space.world_name(a) + " < " + space.world_name(b);
    for (auto a : order.domain())
        for (auto b : order.upset(a))
            if (a < b && order.leq(b, a)) out += (out.empty() ? "" : ", ") + space.world_name(a) + " ~ " + space.world_name(b);
    if (out.empty()) out = "all incomparable";
    return out + " over " + set_text(space, order.domain());
}

std::string stream_text(const tt::EpistemicSpace& space, const tt::StreamSpec& spec) {
    return obs_text(space, spec.prefix) + " | (" + obs_text(space, spec.cycle) + ")^ω";
}

tt::EpistemicSpace load_space(const std::string& path) { return tt::io::space_from_json(tt::io::load_document(path)); }

tt::Preorder load_prior(const tt::EpistemicSpace& space, const std::string& path) {
    if (path.empty() || path == "flat") return tt::Preorder::flat(space.world_count());
    return tt::io::preorder_from_json(space, tt::io::load_document(path));
}

std::vector<tt::WorldId> targets(const tt::EpistemicSpace& space, const Options& o) {
    if (!o.world.empty()) return {space.world(o.world)};
    std::vector<tt::WorldId> out;
    for (tt::WorldId w = 0; w < space.world_count(); ++w) out.push_back(w);
    return out;
}

// --- validate ---------------------------------------------------------------

int cmd_validate(const Options& o) {
    const auto space = load_space(o.space_path);
    const auto report = tt::validate_space(space);
    const bool separated = tt::is_strongly_separated(space);
    const auto pairing = tt::negation_pairing(space);
    const bool finite = tt::is_finitely_identifiable(space);
    if (json_out(o)) {
        Json j;
        j["ok"] = report.ok();
        Json vs = Json::array();
        for (const auto& v : report.violations) vs.push_back(v.message);
        j["violations"] = vs;
        Json empty = Json::array();
        for (auto p : report.empty_observables) empty.push_back(space.label(p));
        j["empty_observables"] = empty;
        j["strongly_separated"] = separated;
        j["negation_closed"] = pairing.has_value();
        j["finitely_identifiable"] = finite;
        emit(j);
    } else {
        std::cout << (report.ok() ? "ok" : "invalid") << ": " << space.world_count() << " worlds, "
                  << space.observable_count() << " observables\n";
        for (const auto& v : report.violations) std::cout << "  violation: " << v.message << "\n";
        for (auto p : report.empty_observables)
            std::cout << "  note: observable '" << space.label(p) << "' has an empty extension\n";
        std::cout << "strongly separated: " << (separated ? "yes" : "no") << "\n";
        std::cout << "negation closed: " << (pairing ? "yes" : "no") << "\n";
        std::cout << "finitely identifiable: " << (finite ? "yes" : "no") << "\n";
    }
    return report.ok() ? exit_ok : exit_fail;
}

// --- revise -----------------------------------------------------------------

int cmd_revise(const Options& o) {
    const auto space = load_space(o.space_path);
    const auto prior = load_prior(space, o.prior_path);
    const auto method = method_of(o);
    const auto seq = tt::io::sequence_from_labels(space, o.items);
    const auto it = tt::iterate(method, space, prior, seq);
    const auto conj = tt::conjecture(it.state);
    if (json_out(o)) {
        Json j;
        j["method"] = std::string(tt::to_string(method));
        j["observations"] = tt::io::to_json(space, std::span<const tt::ObsId>(seq));
        j["order"] = tt::io::to_json(space, it.state.order);
        j["conjecture"] = tt::io::detail::names(space, conj);
        Json log = Json::array();
        for (const auto& r : it.log)
            log.push_back({{"observable", space.label(r.observable)},
                           {"affected", tt::io::detail::names(space, r.affected)},
                           {"empty_extension", r.empty_extension},
                           {"all_eliminated", r.all_eliminated}});
        j["log"] = log;
        emit(j);
        return exit_ok;
    }
    std::cout << "prior: " << order_text(space, prior) << "\n";
    for (std::size_t i = 0; i < it.log.size(); ++i) {
        const auto& r = it.log[i];
        std::cout << "  " << (i + 1) << ". " << space.label(r.observable) << ": ";
        switch (method) {
            case tt::Method::mini: std::cout << "promoted "; break;
            case tt::Method::cond: std::cout << "eliminated "; break;
            case tt::Method::lex: std::cout << "upgraded "; break;
        }
        std::cout << set_text(space, r.affected);
        if (r.empty_extension) std::cout << " (empty extension)";
        if (r.all_eliminated) std::cout << " (no worlds survive)";
        std::cout << "\n";
    }
    std::cout << "order: " << order_text(space, it.state.order) << "\n";
    std::cout << "conjecture: " << set_text(space, conj) << "\n";
    return exit_ok;
}

// --- trace ------------------------------------------------------------------

int cmd_trace(const Options& o) {
    const auto space = load_space(o.space_path);
    const auto prior = load_prior(space, o.prior_path);
    const auto method = method_of(o);
    const auto spec = tt::io::stream_from_json(space, tt::io::load_document(o.stream_path));
    const auto horizon = o.horizon ? o.horizon : spec.prefix.size() + 2 * spec.cycle.size();
    const auto trace = tt::run_trace(space, prior, method, spec, horizon);
    std::optional<tt::WorldId> target;
    if (!o.world.empty()) target = space.world(o.world);
    if (json_out(o)) {
        Json j;
        j["method"] = std::string(tt::to_string(method));
        j["stream"] = tt::io::to_json(space, spec);
        Json steps = Json::array();
        for (const auto& s : trace.steps)
            steps.push_back({{"position", s.position},
                             {"observable", space.label(s.observable)},
                             {"order", tt::io::to_json(space, s.state.order)},
                             {"conjecture", tt::io::detail::names(space, s.conjecture)}});
        j["steps"] = steps;
        if (trace.recurrence) j["recurrence"] = {trace.recurrence->first, trace.recurrence->second};
        if (target) {
            const auto lasso = tt::evaluate_lasso(space, prior, method, spec, *target);
            j["target"] = space.world_name(*target);
            j["identified_on_stream"] = !lasso.fails_infinitely_often;
        }
        emit(j);
        return exit_ok;
    }
    std::cout << "stream: " << stream_text(space, spec) << "\n";
    std::cout << "0.   -  " << order_text(space, prior) << "  conjecture "
              << set_text(space, tt::conjecture(tt::initial_state(prior))) << "\n";
    for (const auto& s : trace.steps)
        std::cout << s.position << ".   " << space.label(s.observable) << "  " << order_text(space, s.state.order)
                  << "  conjecture " << set_text(space, s.conjecture) << "\n";
    if (trace.recurrence)
        std::cout << "recurrence: state at " << trace.recurrence->second << " repeats " << trace.recurrence->first
                  << " (period " << trace.recurrence->second - trace.recurrence->first << ")\n";
    else
        std::cout << "recurrence: not reached within horizon " << horizon << "\n";
    if (target) {
        const auto lasso = tt::evaluate_lasso(space, prior, method, spec, *target);
        std::cout << "limit for " << space.world_name(*target) << ": "
                  << (lasso.fails_infinitely_often ? "conjecture differs from the target infinitely often"
                                                   : "conjecture settles on the target")
                  << "\n";
    }
    return exit_ok;
}

// --- decide -----------------------------------------------------------------

int cmd_decide(const Options& o) {
    const auto space = load_space(o.space_path);
    const auto prior = load_prior(space, o.prior_path);
    const auto method = method_of(o);
    const auto mode = o.fair ? tt::StreamMode::fair : tt::StreamMode::sound_complete;
    if (o.fair && !tt::is_negation_closed(space))
        throw CLI::ValidationError("--fair", "fair streams need a negation-closed space");
    const auto budget = tt::Budget::from_env();
    std::vector<tt::Verdict> verdicts;
    for (auto s : targets(space, o)) verdicts.push_back(tt::decide(space, prior, method, s, mode, budget));
    bool all_ok = true;
    for (const auto& v : verdicts) all_ok = all_ok && v.status != tt::Status::not_identified;
    if (json_out(o)) {
        Json j;
        j["appropriate"] = all_ok;
        Json vs = Json::array();
        for (const auto& v : verdicts) vs.push_back(tt::io::to_json(space, v));
        j["verdicts"] = vs;
        emit(j);
    } else {
        std::cout << tt::to_string(method) << ", " << tt::to_string(mode) << " streams, prior "
                  << order_text(space, prior) << "\n";
        for (const auto& v : verdicts) {
            std::cout << "  " << space.world_name(v.target) << ": " << tt::to_string(v.status);
            if (v.witness) std::cout << "  witness " << stream_text(space, *v.witness);
            std::cout << "  (" << v.explored << " nodes)\n";
            for (const auto& c : v.corrections)
                std::cout << "      error " << space.label(c.error) << " at " << c.position << " corrected at "
                          << c.corrected_at << "\n";
        }
        if (o.world.empty()) std::cout << (all_ok ? "appropriate" : "not appropriate") << "\n";
    }
    return all_ok ? exit_ok : exit_fail;
}

// --- telltale ---------------------------------------------------------------

int cmd_telltale(const Options& o) {
    const auto space = load_space(o.space_path);
    const auto kind = tt::parse_telltale_kind(o.kind);
    if (!kind) throw CLI::ValidationError("--kind", "expected dftt, mini or cond");
    tt::TellTaleResult result;
    switch (*kind) {
        case tt::TellTaleKind::dftt: result = tt::dftt_construct(space); break;
        case tt::TellTaleKind::mini: result = tt::mini_telltale_exists(space, load_prior(space, o.prior_path)); break;
        case tt::TellTaleKind::cond: result = tt::cond_telltale_exists(space, load_prior(space, o.prior_path)); break;
    }
    if (json_out(o)) {
        Json j;
        j["ok"] = result.ok();
        if (result.map) j["telltale"] = tt::io::to_json(space, *result.map);
        if (result.failure) j["failure"] = space.world_name(*result.failure);
        emit(j);
    } else if (result.map) {
        std::cout << tt::to_string(*kind) << " tell-tale map:\n";
        for (tt::WorldId w = 0; w < result.map->sets.size(); ++w) {
            std::cout << "  " << space.world_name(w) << ": {";
            bool first = true;
            for (auto p : result.map->sets[w]) {
                std::cout << (first ? "" : ", ") << space.label(p);
                first = false;
            }
            std::cout << "}\n";
        }
    } else {
        std::cout << "no " << tt::to_string(*kind) << " tell-tale set for world '"
                  << space.world_name(*result.failure) << "'\n";
    }
    return result.ok() ? exit_ok : exit_fail;
}

// --- sweep ------------------------------------------------------------------

int cmd_sweep(const Options& o) {
    const auto space = load_space(o.space_path);
    const auto method = method_of(o);
    const auto mode = o.fair ? tt::StreamMode::fair : tt::StreamMode::sound_complete;
    if (o.fair && !tt::is_negation_closed(space))
        throw CLI::ValidationError("--fair", "fair streams need a negation-closed space");
    tt::SweepOptions opts;
    opts.include_general = o.general;
    opts.jobs = o.jobs;
    if (o.bound) {
        opts.total_bound = o.bound;
        opts.general_bound = o.bound;
    }
    const auto report = tt::sweep_priors(space, method, mode, opts);
    if (json_out(o)) {
        Json j;
        j["method"] = std::string(tt::to_string(method));
        j["mode"] = std::string(tt::to_string(mode));
        j["examined"] = report.examined;
        j["appropriate_count"] = report.appropriate.size();
        Json ps = Json::array();
        for (const auto& p : report.appropriate) ps.push_back(tt::io::to_json(space, p));
        j["appropriate"] = ps;
        emit(j);
    } else {
        std::cout << tt::to_string(method) << ", " << tt::to_string(mode) << " streams: " << report.appropriate.size()
                  << "/" << report.examined << " priors appropriate\n";
        for (const auto& p : report.appropriate) std::cout << "  " << order_text(space, p) << "\n";
    }
    return exit_ok;
}

// --- check / lock -------------------------------------------------------------

int cmd_check(const Options& o) {
    const auto space = load_space(o.space_path);
    const auto prior = load_prior(space, o.prior_path);
    const auto r = tt::cross_check(space, prior);
    auto opt = [](const std::optional<bool>& b) -> Json { return b ? Json(*b) : Json(nullptr); };
    if (json_out(o)) {
        Json j;
        j["mini_semantic"] = opt(r.mini_semantic);
        j["mini_telltale"] = opt(r.mini_telltale);
        j["cond_semantic"] = r.cond_semantic;
        j["lex_semantic"] = r.lex_semantic;
        j["cond_telltale"] = r.cond_telltale;
        j["lex_fair_semantic"] = opt(r.lex_fair_semantic);
        j["mismatches"] = r.mismatches;
        emit(j);
    } else {
        auto yn = [](bool b) { return b ? "yes" : "no"; };
        if (r.mini_semantic) {
            std::cout << "mini appropriate: " << yn(*r.mini_semantic) << "\n";
            std::cout << "mini tell-tale map: " << yn(*r.mini_telltale) << "\n";
        }
        std::cout << "cond appropriate: " << yn(r.cond_semantic) << "\n";
        std::cout << "lex appropriate: " << yn(r.lex_semantic) << "\n";
        std::cout << "cond tell-tale map: " << yn(r.cond_telltale) << "\n";
        if (r.lex_fair_semantic) std::cout << "lex appropriate on fair streams: " << yn(*r.lex_fair_semantic) << "\n";
        for (const auto& m : r.mismatches) std::cout << "MISMATCH " << m << "\n";
    }
    return r.consistent() ? exit_ok : exit_fail;
}

int cmd_lock(const Options& o) {
    const auto space = load_space(o.space_path);
    const auto prior = load_prior(space, o.prior_path);
    const auto method = method_of(o);
    if (o.world.empty()) throw CLI::ValidationError("--world", "locking search needs a target world");
    const auto s = space.world(o.world);
    const auto bound = o.bound ? o.bound : tt::reachable_state_count(space, prior, method, s);
    const auto sigma = tt::locking_sequence_search(space, prior, method, s, bound);
    if (json_out(o)) {
        Json j;
        j["world"] = o.world;
        j["bound"] = bound;
        j["found"] = sigma.has_value();
        if (sigma) j["sequence"] = tt::io::to_json(space, std::span<const tt::ObsId>(*sigma));
        emit(j);
    } else if (sigma) {
        std::cout << "locking sequence for " << o.world << ": " << obs_text(space, *sigma) << "\n";
    } else {
        std::cout << "no locking sequence for " << o.world << " within length " << bound << "\n";
    }
    return sigma ? exit_ok : exit_fail;
}

// --- fixtures -----------------------------------------------------------------

struct Check {
    std::string claim;
    std::string anchor;
    bool pass;
    std::string detail;
};

struct Fixture {
    std::string name;
    std::string summary;
    std::vector<Check> (*run)();
};

std::vector<Check> two_ellipse_mini_step() {
    const auto sp = tt::fixtures::two_ellipses();
    const auto prior = tt::fixtures::two_ellipses_prior(sp);
    const auto after = tt::mini_step(sp, tt::initial_state(prior), sp.observable("p")).state.order;
    const auto want = tt::Preorder::from_layers(3, {sp.worlds_named({"u"}), sp.worlds_named({"t"}), sp.worlds_named({"s"})});
    return {{"mini revision of t < u < s by p gives u < t < s",
             "minimal revision promotes only the most plausible p-world, u, leaving t before s", after == want,
             order_text(sp, after)}};
}

std::vector<Check> two_ellipse_no_mini_prior() {
    const auto sp = tt::fixtures::two_ellipses();
    const auto r = tt::sweep_priors(sp, tt::Method::mini, tt::StreamMode::sound_complete);
    const auto v = tt::decide_in_limit(sp, tt::fixtures::two_ellipses_prior(sp), tt::Method::mini, sp.world("s"));
    return {{"no total prior lets mini identify the two-ellipse space", "no observation ever makes s strictly more "
             "plausible than both u and t under minimal revision",
             r.examined == 13 && r.appropriate.empty(),
             std::to_string(r.appropriate.size()) + "/" + std::to_string(r.examined) + " appropriate"},
            {"t < u < s fails at s with a valid witness", "s is the world in both ellipses",
             v.status == tt::Status::not_identified && tt::witness_is_valid(sp, tt::fixtures::two_ellipses_prior(sp), v),
             v.witness ? stream_text(sp, *v.witness) : "no witness"}};
}

std::vector<Check> two_ellipse_cond_priors() {
    const auto sp = tt::fixtures::two_ellipses();
    const auto r = tt::sweep_priors(sp, tt::Method::cond, tt::StreamMode::sound_complete);
    const auto s = sp.world("s"), u = sp.world("u"), t = sp.world("t");
    std::size_t expected = 0;
    bool exact = true;
    for (const auto& p : tt::total_preorders(3)) {
        const bool want = p.less(u, s) && p.less(t, s);
        expected += want;
        const bool got = std::find(r.appropriate.begin(), r.appropriate.end(), p) != r.appropriate.end();
        exact = exact && want == got;
    }
    return {{"cond identifies the space exactly under priors with u < s and t < s",
             "conditioning learns the space from any prior ranking both u and t above s", exact,
             std::to_string(r.appropriate.size()) + " appropriate, " + std::to_string(expected) + " expected"}};
}

std::vector<Check> triangle_flat_mini() {
    const auto sp = tt::fixtures::triangle();
    const auto flat = tt::Preorder::flat(3);
    const bool ok = tt::decide_appropriate(sp, flat, tt::Method::mini).appropriate();
    const auto s = sp.world("s");
    const auto trace = tt::run_trace(sp, flat, tt::Method::mini, tt::canonical_sc_stream(sp, s), 6);
    bool settled = true;
    for (std::size_t k = sp.observables_at(s).size() - 1; k < trace.steps.size(); ++k)
        settled = settled && trace.steps[k].conjecture == tt::WorldSet::single(s);
    return {{"triangle space is strongly separated and not negation closed",
             "strongly separated spaces need not be negation closed",
             tt::is_strongly_separated(sp) && !tt::is_negation_closed(sp), ""},
            {"flat prior with mini is appropriate", "mini with the flat prior learns every finitely identifiable space",
             ok, ""},
            {"canonical stream for s yields {s} after one pass of O_s", "flat prior, mini, canonical stream", settled,
             ""}};
}

std::vector<Check> square_flat_mini() {
    const auto sp = tt::fixtures::square();
    const bool ok = tt::decide_appropriate(sp, tt::Preorder::flat(4), tt::Method::mini).appropriate();
    return {{"square space is strongly separated and negation closed",
             "negation-closed spaces with p and its complement for each p",
             tt::is_strongly_separated(sp) && tt::is_negation_closed(sp), ""},
            {"flat prior with mini is appropriate on sound and complete streams",
             "mini is universal on finite strongly separated spaces", ok, ""}};
}

std::vector<Check> square_fair_failure() {
    const auto sp = tt::fixtures::square();
    const auto flat = tt::Preorder::flat(4);
    const auto s = sp.world("s"), w = sp.world("w");
    const tt::StreamSpec fair({sp.observable("q"), sp.observable("pbar"), sp.observable("p")}, {sp.observable("qbar")});
    const auto trace = tt::run_trace(sp, flat, tt::Method::mini, fair, 12);
    bool never_s = tt::conjecture(tt::initial_state(flat)) != tt::WorldSet::single(s);
    bool w_with_s = true;
    for (const auto& st : trace.steps) {
        never_s = never_s && st.conjecture != tt::WorldSet::single(s);
        if (st.position >= fair.prefix.size() + 1) w_with_s = w_with_s && st.conjecture.contains(w) && st.conjecture.contains(s);
    }
    const auto v = tt::decide_fair(sp, flat, tt::Method::mini, s);
    const auto r = tt::sweep_priors(sp, tt::Method::mini, tt::StreamMode::fair);
    return {{"q pbar p | (qbar)^ω is fair for s", "one error on each axis, each corrected", tt::is_fair(sp, fair, s),
             stream_text(sp, fair)},
            {"mini from the flat prior never conjectures {s} on it", "this fair stream keeps mini from identifying s",
             never_s, ""},
            {"w is minimal together with s once the errors are corrected",
             "w stays a minimal element alongside s forever", w_with_s, ""},
            {"fair decision for s fails with a valid fair witness", "mini fails on fair streams from the flat prior",
             v.status == tt::Status::not_identified && tt::witness_is_valid(sp, flat, v),
             v.witness ? stream_text(sp, *v.witness) : "no witness"},
            {"no total prior makes mini appropriate on fair streams", "mini is not universal on fair streams",
             r.examined == 75 && r.appropriate.empty(),
             std::to_string(r.appropriate.size()) + "/" + std::to_string(r.examined) + " appropriate"}};
}

std::vector<Check> ladder_linear_prior() {
    std::vector<Check> out;
    for (std::size_t n : {2, 3, 4, 5}) {
        const auto sp = tt::fixtures::ladder(n);
        const bool ok = tt::decide_appropriate(sp, tt::fixtures::ladder_prior(n), tt::Method::mini).appropriate();
        out.push_back({"ladder truncated to " + std::to_string(n) + " worlds: linear prior is appropriate for mini",
                       "ranking s_i before s_j whenever i <= j learns the ladder", ok, ""});
    }
    return out;
}

std::vector<Check> triangle_bad_prior_checks() {
    const auto sp = tt::fixtures::triangle();
    const auto prior = tt::fixtures::triangle_bad_prior(sp);
    const auto s = sp.world("s"), u = sp.world("u");
    const auto tell = tt::mini_telltale_exists(sp, prior);
    const auto rep = tt::decide_appropriate(sp, prior, tt::Method::mini);
    const auto v = rep.verdicts[s];
    bool ties = false;
    if (v.witness) {
        const auto trace = tt::run_trace(sp, prior, tt::Method::mini, *v.witness, v.witness->prefix.size() + 3 * v.witness->cycle.size() + 2);
        ties = trace.steps.size() >= 2;
        for (std::size_t k = 1; k < trace.steps.size(); ++k) ties = ties && trace.steps[k].state.order.equiv(u, s);
    }
    const tt::StreamSpec fixed({sp.observable("q")}, {sp.observable("p")});
    const auto ft = tt::run_trace(sp, prior, tt::Method::mini, fixed, 6);
    bool fixed_ok = true;
    for (const auto& st : ft.steps) {
        fixed_ok = fixed_ok && st.conjecture != tt::WorldSet::single(s);
        if (st.position >= 2) fixed_ok = fixed_ok && st.state.order.equiv(u, s);
    }
    return {{"no mini tell-tale map exists, failing at s", "the prior t < s ~ u has no mini tell-tale set for s",
             !tell.ok() && tell.failure == s, tell.failure ? sp.world_name(*tell.failure) : "map found"},
            {"mini is not appropriate, failing at s", "t < s ~ u is not appropriate for mini",
             !rep.appropriate() && rep.first_failure() == s, v.witness ? stream_text(sp, *v.witness) : ""},
            {"the witness keeps u ~ s from step 2 on", "u stays equally plausible to s forever", ties, ""},
            {"q | (p)^ω keeps u ~ s from step 2 and never conjectures {s}", "u stays equally plausible to s forever",
             fixed_ok, ""}};
}

std::vector<Check> nested_not_finite() {
    const auto sp = tt::fixtures::nested_pair();
    return {{"O_t inside O_s: not strongly separated and not finitely identifiable",
             "a world whose observables are contained in another's cannot be finitely identified",
             !tt::is_strongly_separated(sp) && !tt::is_finitely_identifiable(sp), ""}};
}

const std::vector<Fixture>& fixture_table() {
    static const std::vector<Fixture> table{
        {"two-ellipse-mini-step", "one minimal revision step on the two-ellipse space", two_ellipse_mini_step},
        {"two-ellipse-no-mini-prior", "minimal revision cannot learn the two-ellipse space", two_ellipse_no_mini_prior},
        {"two-ellipse-cond-priors", "conditioning learns the two-ellipse space from the right priors", two_ellipse_cond_priors},
        {"triangle-flat-mini", "triangle space, flat prior, minimal revision", triangle_flat_mini},
        {"square-flat-mini", "square space, flat prior, minimal revision", square_flat_mini},
        {"square-fair-failure", "minimal revision fails on fair streams over the square space", square_fair_failure},
        {"ladder-linear-prior", "finite truncations of the ladder space", ladder_linear_prior},
        {"triangle-bad-prior", "an inappropriate prior for minimal revision on the triangle space", triangle_bad_prior_checks},
        {"nested-not-finite", "nested observables defeat finite identification", nested_not_finite},
    };
    return table;
}

int cmd_fixtures(const Options& o) {
    std::vector<const Fixture*> chosen;
    if (o.all || o.items.empty()) {
        for (const auto& f : fixture_table()) chosen.push_back(&f);
        if (!o.all && o.items.empty()) {
            for (const auto& f : fixture_table()) std::cout << f.name << "  " << f.summary << "\n";
            return exit_ok;
        }
    } else {
        for (const auto& name : o.items) {
            auto it = std::find_if(fixture_table().begin(), fixture_table().end(),
                                   [&](const Fixture& f) { return f.name == name; });
            if (it == fixture_table().end()) throw CLI::ValidationError("fixture", "unknown fixture '" + name + "'");
            chosen.push_back(&*it);
        }
    }
    bool all_pass = true;
    Json out = Json::array();
    for (const auto* f : chosen) {
        const auto checks = f->run();
        bool pass = true;
        for (const auto& c : checks) pass = pass && c.pass;
        all_pass = all_pass && pass;
        if (json_out(o)) {
            Json j;
            j["fixture"] = f->name;
            j["pass"] = pass;
            Json cs = Json::array();
            for (const auto& c : checks) {
                Json cj{{"claim", c.claim}, {"pass", c.pass}};
                if (o.explain) cj["anchor"] = c.anchor;
                if (!c.detail.empty()) cj["detail"] = c.detail;
                cs.push_back(cj);
            }
            j["checks"] = cs;
            out.push_back(j);
            continue;
        }
        std::cout << (pass ? "PASS " : "FAIL ") << f->name << "  " << f->summary << "\n";
        for (const auto& c : checks) {
            std::cout << "  " << (c.pass ? "ok   " : "FAIL ") << c.claim;
            if (!c.detail.empty()) std::cout << "  [" << c.detail << "]";
            std::cout << "\n";
            if (o.explain) std::cout << "       because: " << c.anchor << "\n";
        }
    }
    if (json_out(o)) emit(out);
    return all_pass ? exit_ok : exit_fail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tracktruth: belief revision as a learning method on finite epistemic spaces"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));

    auto method_opt = [&](CLI::App* c) {
        c->add_option("-m,--method", o.method, "revision method")->check(CLI::IsMember({"mini", "cond", "lex"}));
    };

    auto* validate = app.add_subcommand("validate", "check a space file");
    validate->add_option("space", o.space_path)->required();

    auto* revise = app.add_subcommand("revise", "apply observations to a prior and print the revised order");
    revise->add_option("space", o.space_path)->required();
    revise->add_option("prior", o.prior_path, "order file, or 'flat'")->required();
    revise->add_option("observations", o.items);
    method_opt(revise);

    auto* trace = app.add_subcommand("trace", "run the learner along an eventually periodic stream");
    trace->add_option("space", o.space_path)->required();
    trace->add_option("prior", o.prior_path)->required();
    trace->add_option("stream", o.stream_path)->required();
    trace->add_option("--horizon", o.horizon, "number of observations to run");
    trace->add_option("--world", o.world, "report the limit verdict for this world");
    method_opt(trace);

    auto* decide = app.add_subcommand("decide", "decide identification in the limit for every world");
    decide->add_option("space", o.space_path)->required();
    decide->add_option("prior", o.prior_path)->required();
    decide->add_flag("--fair", o.fair, "quantify over fair streams instead");
    decide->add_option("--world", o.world, "decide a single world");
    method_opt(decide);

    auto* telltale = app.add_subcommand("telltale", "construct a tell-tale map");
    telltale->add_option("space", o.space_path)->required();
    telltale->add_option("prior", o.prior_path, "order file, or 'flat' (mini and cond kinds)");
    telltale->add_option("--kind", o.kind)->check(CLI::IsMember({"dftt", "mini", "cond"}));

    auto* sweep = app.add_subcommand("sweep", "decide appropriateness for every prior");
    sweep->add_option("space", o.space_path)->required();
    sweep->add_flag("--fair", o.fair);
    sweep->add_flag("--general", o.general, "include non-total preorders (cond, lex)");
    sweep->add_option("--bound", o.bound, "largest space to enumerate orders over");
    sweep->add_option("--jobs", o.jobs)->check(CLI::PositiveNumber);
    method_opt(sweep);

    auto* check = app.add_subcommand("check", "compare semantic decisions with tell-tale characterisations");
    check->add_option("space", o.space_path)->required();
    check->add_option("prior", o.prior_path)->required();

    auto* lock = app.add_subcommand("lock", "search for a locking sequence");
    lock->add_option("space", o.space_path)->required();
    lock->add_option("prior", o.prior_path)->required();
    lock->add_option("--world", o.world)->required();
    lock->add_option("--bound", o.bound, "longest sequence to consider (default: reachable states)");
    method_opt(lock);

    auto* fixtures_cmd = app.add_subcommand("fixtures", "run the built-in self-checking fixtures");
    fixtures_cmd->add_option("fixtures", o.items);
    fixtures_cmd->add_flag("--all", o.all);
    fixtures_cmd->add_flag("--explain", o.explain, "print the claim behind each check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*validate) return cmd_validate(o);
        if (*revise) return cmd_revise(o);
        if (*trace) return cmd_trace(o);
        if (*decide) return cmd_decide(o);
        if (*telltale) return cmd_telltale(o);
        if (*sweep) return cmd_sweep(o);
        if (*check) return cmd_check(o);
        if (*lock) return cmd_lock(o);
        if (*fixtures_cmd) return cmd_fixtures(o);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const tt::io::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return exit_usage;
    } catch (const tt::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
