#include <doctest.h>

#include <random>

#include "cpn/oracle.hpp"
#include "cpn/unfold.hpp"
#include "support.hpp"

using namespace cpn;

namespace {

Lts make_lts(std::size_t states, std::vector<std::string> actions,
             std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> edges) {
    Lts l;
    for (std::size_t i = 0; i < states; ++i) l.state_keys.push_back("s" + std::to_string(i));
    l.actions = std::move(actions);
    l.edges = std::move(edges);
    return l;
}

Lts random_lts(std::mt19937& rng) {
    std::size_t n = 1 + rng() % 8;
    std::size_t nact = 1 + rng() % 2;
    Lts l = make_lts(n, nact == 1 ? std::vector<std::string>{"a"}
                                  : std::vector<std::string>{"a", "b"},
                     {});
    std::size_t edges = rng() % (2 * n);
    for (std::size_t i = 0; i < edges; ++i)
        l.edges.emplace_back(rng() % n, rng() % nact, rng() % n);
    std::sort(l.edges.begin(), l.edges.end());
    l.edges.erase(std::unique(l.edges.begin(), l.edges.end()), l.edges.end());
    return l;
}

}  // namespace

TEST_CASE("bisimilarity basics") {
    Lts a = make_lts(2, {"a"}, {{0, 0, 1}});
    Lts none = make_lts(1, {"a"}, {});
    CHECK(!bisimilar(a, none, 0, 0));
    CHECK(bisimilar(a, a, 0, 0));
    CHECK(bisimilar(a, a, 1, 1));
    CHECK(!bisimilar(a, a, 0, 1));
    // Symmetry.
    CHECK(bisimilar(none, a, 0, 1));
    CHECK(bisimilar(a, none, 1, 0));
}

TEST_CASE("unfolded inhibitor example is bisimilar to its colored source") {
    ColoredNet net = test::load_fixture("fig1.net");
    ColoredStateSpace colored = explore(net, net.initial);
    PtStateSpace unfolded = explore_pt(unfold(net));
    CHECK(bisimilar(colored.lts, unfolded.lts, colored.lts.initial, unfolded.lts.initial));
}

TEST_CASE("refinement agrees with the naive greatest fixpoint") {
    std::mt19937 rng(31);
    for (int iter = 0; iter < 120; ++iter) {
        Lts a = random_lts(rng);
        Lts b = random_lts(rng);
        for (int probe = 0; probe < 4; ++probe) {
            std::size_t sa = rng() % a.state_keys.size();
            std::size_t sb = rng() % b.state_keys.size();
            CHECK(bisimilar(a, b, sa, sb) == bisimilar_naive(a, b, sa, sb));
        }
        // Reflexivity on the same LTS.
        std::size_t s = rng() % a.state_keys.size();
        CHECK(bisimilar(a, a, s, s));
    }
}

TEST_CASE("reachable isomorphism modes") {
    Lts a = make_lts(2, {"a"}, {{0, 0, 1}});
    a.initial = 0;
    Lts same = a;
    CHECK(reachable_isomorphic(a, same));

    // A relabeled copy: distinct keys, same shape.
    Lts renamed = a;
    renamed.state_keys = {"x0", "x1"};
    CHECK(!reachable_isomorphic(a, renamed, IsoMode::StateKeys));
    CHECK(reachable_isomorphic(a, renamed, IsoMode::General));

    Lts bigger = make_lts(3, {"a"}, {{0, 0, 1}, {1, 0, 2}});
    CHECK(!reachable_isomorphic(a, bigger, IsoMode::StateKeys));
    CHECK(!reachable_isomorphic(a, bigger, IsoMode::General));
}
