// Walks through the two-ellipse space: one revision step, then which priors
// let each method learn the space.

#include <iostream>

#include "tracktruth/fixtures.hpp"
#include "tracktruth/tracktruth.hpp"

using namespace tracktruth;

namespace {

void print_order(const EpistemicSpace& space, const Preorder& order) {
    const auto layers = *order.layers();
    for (std::size_t i = 0; i < layers.size(); ++i) {
        if (i) std::cout << " < ";
        for (auto w : layers[i]) std::cout << space.world_name(w);
    }
    std::cout << "\n";
}

}  // namespace

int main() {
    const auto space = fixtures::two_ellipses();
    const auto prior = fixtures::two_ellipses_prior(space);

    std::cout << "prior:        ";
    print_order(space, prior);
    const auto seq = DataSequence{space.observable("p"), space.observable("q")};
    auto state = initial_state(prior);
    for (auto p : seq) {
        state = revise(Method::mini, space, state, p).state;
        std::cout << "mini after " << space.label(p) << ": ";
        print_order(space, state.order);
    }

    const auto s = space.world("s");
    const auto v = decide_in_limit(space, prior, Method::mini, s);
    std::cout << "s under mini: " << to_string(v.status) << "\n";

    for (auto m : all_methods) {
        const auto r = sweep_priors(space, m, StreamMode::sound_complete);
        std::cout << to_string(m) << ": " << r.appropriate.size() << "/" << r.examined << " total priors appropriate\n";
    }
}
