#include <doctest.h>

#include <random>

#include "cpn/multiset.hpp"

using namespace cpn;

namespace {

Multiset ms(std::initializer_list<std::pair<color_val_t, std::uint64_t>> entries) {
    Multiset m;
    for (const auto& [c, n] : entries) m.add(Color{c}, n);
    return m;
}

Multiset random_ms(std::mt19937& rng) {
    Multiset m;
    int n = static_cast<int>(rng() % 4);
    for (int i = 0; i < n; ++i) m.add(Color{static_cast<color_val_t>(rng() % 5)}, 1 + rng() % 3);
    return m;
}

}  // namespace

TEST_CASE("union sums counts pointwise") {
    CHECK(ms({{0, 2}, {2, 3}}).set_union(ms({{0, 1}})) == ms({{0, 3}, {2, 3}}));
    CHECK(Multiset{}.set_union(ms({{5, 2}})) == ms({{5, 2}}));
    CHECK(ms({{0, 1}, {2, 3}}).set_union(ms({{0, 1}})) == ms({{0, 2}, {2, 3}}));
}

TEST_CASE("subtraction truncates at zero and drops empty entries") {
    CHECK(ms({{0, 2}, {2, 3}}).subtract(ms({{0, 1}})) == ms({{0, 1}, {2, 3}}));
    CHECK(ms({{5, 2}}).subtract(ms({{5, 2}})) == Multiset{});
    CHECK(ms({{1, 1}}).subtract(ms({{1, 3}})) == Multiset{});
}

TEST_CASE("inclusion compares counts") {
    CHECK(ms({{0, 2}, {2, 3}}).includes(ms({{0, 1}})));
    CHECK(ms({{5, 1}}).includes(Multiset{}));
    CHECK(!ms({{4, 2}}).includes(ms({{5, 1}})));
}

TEST_CASE("support is the key set") {
    auto sup = ms({{0, 2}, {2, 3}}).support();
    CHECK(sup == std::set<Color>{Color{0}, Color{2}});
    CHECK(Multiset{}.support().empty());
    Multiset pair = Multiset::of(Color{2, 5});
    CHECK(pair.support() == std::set<Color>{Color{2, 5}});
}

TEST_CASE("mixed arity entries are rejected") {
    Multiset m = Multiset::of(Color{1});
    CHECK_THROWS_AS(m.add(Color{1, 2}), StructuralError);
}

TEST_CASE("algebra properties on random multisets") {
    std::mt19937 rng(11);
    for (int i = 0; i < 300; ++i) {
        Multiset a = random_ms(rng);
        Multiset b = random_ms(rng);
        CHECK(a.set_union(b).subtract(b) == a);
        CHECK(a.set_union(b).cardinality() == a.cardinality() + b.cardinality());
        CHECK(a.set_union(b).includes(a));
        // Scaling multiplies the cardinality.
        CHECK(a.scale(3).cardinality() == 3 * a.cardinality());
    }
}

TEST_CASE("formal sum rendering") {
    CHECK(ms({{0, 2}, {2, 3}}).to_string() == "2'(0)+3'(2)");
    CHECK(Multiset{}.to_string() == "0");
}

TEST_CASE("marking keys identify markings") {
    Marking m1, m2;
    m1.by_place = {ms({{0, 2}}), Multiset{}};
    m2.by_place = {ms({{0, 2}}), Multiset{}};
    CHECK(m1.key() == m2.key());
    m2.by_place[1].add(Color{4}, 1);
    CHECK(m1.key() != m2.key());
}
