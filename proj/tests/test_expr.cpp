#include <doctest.h>

#include <random>

#include "cpn/expr.hpp"
#include "support.hpp"

using namespace cpn;

namespace {

const VarRanges kRange13 = {{"x", {1, 3}}, {"y", {1, 3}}, {"z", {1, 3}}};

}  // namespace

TEST_CASE("simple expressions evaluate cyclically") {
    // Predecessor of 0 in a [0,2] range wraps to 2.
    VarRanges r{{"x", {0, 2}}};
    CHECK(eval_simple(SimpleExpr::shifted("x", -1), {{"x", 0}}, r) == 2);
    // 3+1 wraps to 1 in [1,3].
    CHECK(eval_simple(SimpleExpr::shifted("y", 1), {{"y", 3}}, kRange13) == 1);
    CHECK(eval_simple(SimpleExpr::variable("x"), {{"x", 5}}, {}) == 5);
    CHECK_THROWS_AS(eval_simple(SimpleExpr::variable("q"), {{"x", 1}}, {}), EvalError);
}

TEST_CASE("arc expression over three shifted variables") {
    // 1'(x-1) + 1'(y+1) + 1'(z) over range [1,3].
    ArcExprPtr e = arc_add(arc_add(arc_number_of(1, {SimpleExpr::shifted("x", -1)}),
                                   arc_number_of(1, {SimpleExpr::shifted("y", 1)})),
                           arc_number_of(1, {SimpleExpr::variable("z")}));
    Multiset m1 = eval_arc(*e, {{"x", 3}, {"y", 3}, {"z", 1}}, kRange13);
    CHECK(m1 == Multiset::of(Color{2}).set_union(Multiset::of(Color{1}, 2)));
    Multiset m2 = eval_arc(*e, {{"x", 1}, {"y", 2}, {"z", 2}}, kRange13);
    CHECK(m2 == Multiset::of(Color{3}, 2).set_union(Multiset::of(Color{2})));
}

TEST_CASE("tuple arcs pair shifted coordinates") {
    VarRanges r{{"x", {0, 2}}, {"y", {4, 5}}};
    ArcExprPtr e = arc_number_of(1, {SimpleExpr::shifted("x", -1), SimpleExpr::variable("y")});
    CHECK(eval_arc(*e, {{"x", 0}, {"y", 5}}, r) == Multiset::of(Color{2, 5}));
}

TEST_CASE("guard over conjunction, disjunction and shifted comparison") {
    // (x > 2 && y == 2) || z+2 == 3 over range [1,3].
    GuardExprPtr g = guard_or(
        guard_and(guard_cmp(CmpOp::Gt, SimpleExpr::variable("x"), SimpleExpr::constant(2)),
                  guard_cmp(CmpOp::Eq, SimpleExpr::variable("y"), SimpleExpr::constant(2))),
        guard_cmp(CmpOp::Eq, SimpleExpr::shifted("z", 2), SimpleExpr::constant(3)));
    CHECK(eval_guard(*g, {{"x", 3}, {"y", 3}, {"z", 1}}, kRange13));
    CHECK(!eval_guard(*g, {{"x", 1}, {"y", 2}, {"z", 2}}, kRange13));
    CHECK(eval_guard(*guard_const(true), {}, {}));
}

TEST_CASE("binding enumeration is guard-filtered and lexicographic") {
    ColoredNet fig1 = test::load_fixture("fig1.net");
    std::size_t t = fig1.transition_index("t");
    auto bindings = enumerate_bindings(fig1, t);
    REQUIRE(bindings.size() == 2);
    CHECK(bindings[0] == Binding{{"x", 0}, {"y", 4}});
    CHECK(bindings[1] == Binding{{"x", 0}, {"y", 5}});

    ColoredNet net;
    net.places.push_back({"p", ColorSet::from_tuple(RangeTuple{{1, 2}})});
    net.initial.by_place.resize(1);
    Transition tr;
    tr.id = "t";
    tr.variables = {{"v", {1, 3}}};
    tr.guard = guard_const(false);
    net.transitions.push_back(tr);
    CHECK(enumerate_bindings(net, 0).empty());

    net.transitions[0].guard = guard_const(true);
    net.transitions[0].variables.clear();
    auto none = enumerate_bindings(net, 0);
    REQUIRE(none.size() == 1);
    CHECK(none[0].empty());
}

TEST_CASE("cardinality bounds are structural") {
    CHECK(arc_cardinality_bound(*arc_number_of(1, {SimpleExpr::variable("x")})) == 1);
    CHECK(arc_cardinality_bound(*arc_number_of(2, {SimpleExpr::variable("x")})) == 2);
    ArcExprPtr mixed = arc_sub(arc_add(arc_number_of(1, {SimpleExpr::variable("x")}),
                                       arc_number_of(1, {SimpleExpr::variable("y")})),
                               arc_number_of(1, {SimpleExpr::variable("z")}));
    CHECK(arc_cardinality_bound(*mixed) == 2);
    // Brute force over all bindings on [1,3]: the bound dominates.
    for (color_val_t x = 1; x <= 3; ++x)
        for (color_val_t y = 1; y <= 3; ++y)
            for (color_val_t z = 1; z <= 3; ++z) {
                Multiset m = eval_arc(*mixed, {{"x", x}, {"y", y}, {"z", z}}, kRange13);
                CHECK(m.cardinality() <= 2);
            }
}

TEST_CASE("random expressions respect bounds and range closure") {
    std::mt19937 rng(23);
    for (int iter = 0; iter < 150; ++iter) {
        test::GenOptions opt;
        ColoredNet net = test::random_net(rng, opt);
        for (std::size_t t = 0; t < net.transitions.size(); ++t) {
            VarRanges ranges = net.var_ranges(t);
            for (const Binding& b : enumerate_bindings(net, t)) {
                // Cyclic evaluation lands inside the base range.
                for (const auto& [name, range] : ranges) {
                    color_val_t v = eval_simple(SimpleExpr::shifted(name, 1), b, ranges);
                    CHECK(range.contains(v));
                    v = eval_simple(SimpleExpr::shifted(name, -1), b, ranges);
                    CHECK(range.contains(v));
                }
                for (const auto& [key, e] : net.input_arcs)
                    if (key.second == t)
                        CHECK(eval_arc(*e, b, ranges).cardinality() <=
                              arc_cardinality_bound(*e));
                for (const auto& [key, e] : net.output_arcs)
                    if (key.second == t)
                        CHECK(eval_arc(*e, b, ranges).cardinality() <=
                              arc_cardinality_bound(*e));
            }
        }
    }
}

TEST_CASE("enumeration equals brute-force filtering of the full product") {
    std::mt19937 rng(29);
    for (int iter = 0; iter < 120; ++iter) {
        ColoredNet net = test::random_net(rng);
        for (std::size_t t = 0; t < net.transitions.size(); ++t) {
            const Transition& tr = net.transitions[t];
            VarRanges ranges = net.var_ranges(t);

            // Independent oracle: walk the full Cartesian product (sorted by
            // variable name) and filter by guard plus arc-domain legality.
            std::vector<std::string> names;
            for (const auto& [name, r] : ranges) names.push_back(name);
            std::vector<Binding> expected;
            std::function<void(std::size_t, Binding&)> walk = [&](std::size_t i, Binding& b) {
                if (i == names.size()) {
                    if (tr.guard && !eval_guard(*tr.guard, b, ranges)) return;
                    for (const auto& [key, e] : net.input_arcs) {
                        if (key.second != t) continue;
                        for (const Color& c : eval_arc(*e, b, ranges).support())
                            if (!net.places[key.first].domain.contains(c)) return;
                    }
                    for (const auto& [key, e] : net.output_arcs) {
                        if (key.second != t) continue;
                        for (const Color& c : eval_arc(*e, b, ranges).support())
                            if (!net.places[key.first].domain.contains(c)) return;
                    }
                    expected.push_back(b);
                    return;
                }
                const Interval& r = ranges[names[i]];
                for (color_val_t v = r.lo; v <= r.hi; ++v) {
                    b[names[i]] = v;
                    walk(i + 1, b);
                }
                b.erase(names[i]);
            };
            Binding scratch;
            walk(0, scratch);
            CHECK(enumerate_bindings(net, t) == expected);
        }
    }
}
