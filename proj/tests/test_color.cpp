#include <doctest.h>

#include <random>

#include "cpn/color.hpp"

using namespace cpn;

namespace {

ColorSet boxes(std::vector<RangeTuple> ts) {
    std::size_t arity = ts.front().arity();
    return ColorSet(arity, std::move(ts));
}

}  // namespace

TEST_CASE("interval set normalization and algebra") {
    CHECK(normalize_intervals({{3, 4}, {1, 2}}) == IntervalSet{{1, 4}});
    CHECK(normalize_intervals({{1, 2}, {4, 5}}) == IntervalSet{{1, 2}, {4, 5}});
    CHECK(intervals_intersect({{1, 3}}, {{2, 5}}) == IntervalSet{{2, 3}});
    CHECK(intervals_complement_within({{2, 2}}, {1, 4}) == IntervalSet{{1, 1}, {3, 4}});
    CHECK(intervals_size({{1, 2}, {5, 5}}) == 3);
}

TEST_CASE("cyclic shifts stay inside the base range") {
    Interval base{0, 2};
    CHECK(cyclic_shift_value(0, -1, base) == 2);
    CHECK(cyclic_shift_value(2, 1, base) == 0);
    CHECK(cyclic_shift_value(1, 0, base) == 1);
    // Wrapping image splits in two.
    CHECK(cyclic_shift({1, 2}, 1, base) == IntervalSet{{0, 0}, {2, 2}});
    CHECK(cyclic_shift({0, 2}, 1, base) == IntervalSet{{0, 2}});
}

TEST_CASE("range tuple enumeration matches the worked product example") {
    ColorSet s = ColorSet::from_tuple(RangeTuple{{1, 2}, {6, 7}});
    auto colors = s.enumerate();
    REQUIRE(colors.size() == 4);
    CHECK(colors[0] == Color{1, 6});
    CHECK(colors[1] == Color{1, 7});
    CHECK(colors[2] == Color{2, 6});
    CHECK(colors[3] == Color{2, 7});
}

TEST_CASE("adjacent tuples coalesce") {
    ColorSet s = boxes({RangeTuple{{1, 2}}, RangeTuple{{3, 4}}});
    CHECK(s.tuples().size() == 1);
    CHECK(s.tuples()[0] == RangeTuple{{1, 4}});
}

TEST_CASE("interval intersection") {
    ColorSet a = ColorSet::from_tuple(RangeTuple{{1, 3}});
    ColorSet b = ColorSet::from_tuple(RangeTuple{{2, 5}});
    ColorSet c = a.set_intersect(b);
    CHECK(c.tuples().size() == 1);
    CHECK(c.tuples()[0] == RangeTuple{{2, 3}});
}

TEST_CASE("non-coalescible tuples stay separate") {
    ColorSet s = boxes({RangeTuple{{1, 1}, {1, 1}}, RangeTuple{{1, 1}, {3, 4}}});
    CHECK(s.tuples().size() == 2);
    CHECK(s.size() == 3);
}

TEST_CASE("canonical form does not depend on construction order") {
    // The same L-shaped set assembled two ways.
    ColorSet a = boxes({RangeTuple{{1, 1}, {1, 2}}, RangeTuple{{2, 2}, {1, 1}}});
    ColorSet b = boxes({RangeTuple{{1, 2}, {1, 1}}, RangeTuple{{1, 1}, {2, 2}}});
    CHECK(a == b);
    CHECK(a.size() == 3);
}

TEST_CASE("canonicalization is idempotent and volume equals enumeration count") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> small(0, 5);
    for (int iter = 0; iter < 200; ++iter) {
        std::size_t arity = 1 + (rng() % 2);
        std::vector<RangeTuple> ts;
        int n = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < n; ++i) {
            RangeTuple rt;
            for (std::size_t j = 0; j < arity; ++j) {
                color_val_t lo = small(rng);
                rt.ranges.push_back({lo, lo + small(rng) % 3});
            }
            ts.push_back(std::move(rt));
        }
        ColorSet s(arity, ts);
        ColorSet again(arity, s.tuples());
        CHECK(s == again);
        CHECK(s.size() == s.enumerate().size());
        for (const Color& c : s.enumerate()) {
            bool in_original = false;
            for (const RangeTuple& rt : ts) in_original |= rt.contains(c);
            CHECK(in_original);
        }
    }
}

TEST_CASE("union and subset behave like sets") {
    ColorSet a = ColorSet::from_tuple(RangeTuple{{1, 3}});
    ColorSet b = ColorSet::from_tuple(RangeTuple{{3, 6}});
    ColorSet u = a.set_union(b);
    CHECK(u.size() == 6);
    CHECK(a.is_subset_of(u));
    CHECK(b.is_subset_of(u));
    CHECK(!u.is_subset_of(a));
    CHECK(ColorSet(1).is_subset_of(a));
}

TEST_CASE("arity mismatches are rejected") {
    ColorSet a = ColorSet::from_tuple(RangeTuple{{1, 3}});
    ColorSet b = ColorSet::from_tuple(RangeTuple{{1, 1}, {2, 2}});
    CHECK_THROWS_AS(a.set_union(b), StructuralError);
    CHECK_THROWS_AS(a.set_intersect(b), StructuralError);
    CHECK_THROWS_AS(boxes({RangeTuple{{1, 0}}}), StructuralError);
}

TEST_CASE("min color is lexicographic") {
    ColorSet s = boxes({RangeTuple{{2, 3}, {0, 1}}, RangeTuple{{1, 1}, {5, 5}}});
    CHECK(s.min_color() == Color{1, 5});
}
