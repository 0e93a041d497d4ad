#include <doctest.h>

#include "cpn/semantics.hpp"
#include "support.hpp"

using namespace cpn;

TEST_CASE("enabledness and firing on the inhibitor example") {
    ColoredNet net = test::load_fixture("fig1.net");
    std::size_t t = net.transition_index("t");
    Binding y5{{"x", 0}, {"y", 5}};
    Binding y4{{"x", 0}, {"y", 4}};

    CHECK(is_enabled(net, net.initial, t, y5));
    // p2 holds only color 5, so the y=4 demand is not covered.
    CHECK(!is_enabled(net, net.initial, t, y4));

    Marking after = fire(net, net.initial, t, y5);
    CHECK(after.by_place[0].to_string() == "1'(0)+3'(2)");
    CHECK(after.by_place[1].to_string() == "1'(5)");
    CHECK(after.by_place[2].to_string() == "1'((2,5))");

    // One token in p3 meets the inhibitor threshold of 1.
    CHECK(!is_enabled(net, after, t, y5));
    CHECK_THROWS_AS(fire(net, after, t, y5), StructuralError);
}

TEST_CASE("firing with no arcs or a self-loop leaves the marking unchanged") {
    ColoredNet net;
    net.places.push_back({"p", ColorSet::from_tuple(RangeTuple{{1, 2}})});
    net.initial.by_place.resize(1);
    net.initial.by_place[0].add(Color{1}, 1);
    Transition noop;
    noop.id = "noop";
    net.transitions.push_back(noop);
    Transition loop;
    loop.id = "loop";
    loop.variables = {{"x", {1, 2}}};
    net.transitions.push_back(loop);
    net.input_arcs[{0, 1}] = arc_number_of(1, {SimpleExpr::variable("x")});
    net.output_arcs[{0, 1}] = arc_number_of(1, {SimpleExpr::variable("x")});

    CHECK(fire(net, net.initial, 0, {}) == net.initial);
    CHECK(fire(net, net.initial, 1, {{"x", 1}}) == net.initial);
}

TEST_CASE("state space of the inhibitor example") {
    // Hand simulation: only <x=0,y=5> is ever enabled (p2 holds two tokens of
    // color 5 and none of color 4); the produced p3 token then inhibits t.
    ColoredNet net = test::load_fixture("fig1.net");
    ColoredStateSpace space = explore(net, net.initial);
    CHECK(space.lts.state_keys.size() == 2);
    CHECK(space.lts.edges.size() == 1);
    CHECK(!space.lts.truncated);

    // Reachable markings stay within the place domains.
    for (const Marking& m : space.markings)
        for (std::size_t p = 0; p < net.places.size(); ++p)
            for (const Color& c : m.by_place[p].support())
                CHECK(net.places[p].domain.contains(c));
}

TEST_CASE("exploration respects the state limit and reports truncation") {
    ColoredNet net = test::load_fixture("fig3a.net");
    ColoredStateSpace full = explore(net, net.initial);
    CHECK(full.lts.state_keys.size() > 4);
    ExploreOptions limited;
    limited.state_limit = 3;
    ColoredStateSpace partial = explore(net, net.initial, limited);
    CHECK(partial.lts.truncated);
    CHECK(partial.lts.state_keys.size() <= 3);
}

TEST_CASE("maximum arc size bounds") {
    CHECK(max_arc_size(test::load_fixture("fig1.net")) == 1);
    CHECK(max_arc_size(test::load_fixture("fig4.net")) == 2);
    ColoredNet empty;
    CHECK(max_arc_size(empty) == 0);
}

TEST_CASE("bounded marking enumeration") {
    ColoredNet net;
    net.places.push_back({"p", ColorSet::from_tuple(RangeTuple{{1, 2}})});
    net.initial.by_place.resize(1);
    Transition t;
    t.id = "t";
    t.variables = {{"x", {1, 2}}};
    net.transitions.push_back(t);
    net.input_arcs[{0, 0}] = arc_number_of(1, {SimpleExpr::variable("x")});

    // max = 1: empty, 1'(1), 1'(2).
    CHECK(bounded_markings(net).size() == 3);

    // max = 0 on an arcless net: only the empty marking.
    ColoredNet bare;
    bare.places.push_back({"p", ColorSet::from_tuple(RangeTuple{{1, 2}})});
    bare.initial.by_place.resize(1);
    CHECK(bounded_markings(bare).size() == 1);

    // max = 2: all count vectors (a,b) with a+b <= 2; brute-force check.
    net.input_arcs[{0, 0}] = arc_number_of(2, {SimpleExpr::variable("x")});
    auto all = bounded_markings(net);
    CHECK(all.size() == 6);
    std::set<std::string> keys;
    for (const Marking& m : all) keys.insert(m.key());
    CHECK(keys.size() == 6);

    CHECK_THROWS_AS(bounded_markings(net, 3), SizeLimitError);
}

TEST_CASE("P/T semantics: weights and inhibitors") {
    PtNet pt;
    pt.places = {{"a", 2}, {"b", 0}};
    pt.transitions = {{"t", "t"}};
    pt.input_arcs[{0, 0}] = 2;
    pt.output_arcs[{1, 0}] = 1;
    pt.inhibitors[{1, 0}] = 1;

    PtStateSpace space = explore_pt(pt);
    // 2 tokens in a: t fires once (consuming both), then b inhibits.
    CHECK(space.lts.state_keys.size() == 2);
    CHECK(space.lts.edges.size() == 1);
}
