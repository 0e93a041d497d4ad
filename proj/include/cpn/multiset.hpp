#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cpn/color.hpp"

namespace cpn {

/// Finite multiset of colors. No zero-count entries are stored and all
/// members share one arity.
class Multiset {
  public:
    using counts_t = std::map<Color, std::uint64_t>;

    Multiset() = default;

    static Multiset of(const Color& c, std::uint64_t n = 1);

    void add(const Color& c, std::uint64_t n = 1);

    bool empty() const { return counts_.empty(); }
    std::uint64_t count(const Color& c) const;
    std::uint64_t cardinality() const;
    const counts_t& counts() const { return counts_; }

    /// Pointwise sum.
    Multiset set_union(const Multiset& other) const;

    /// Pointwise max(0, a-b). Truncates at zero; callers that need exact
    /// removal must establish inclusion first.
    Multiset subtract(const Multiset& other) const;

    /// Pointwise n-fold copy.
    Multiset scale(std::uint64_t n) const;

    /// True iff other(c) <= this(c) for every color.
    bool includes(const Multiset& other) const;

    std::set<Color> support() const;

    bool operator==(const Multiset& other) const { return counts_ == other.counts_; }
    bool operator!=(const Multiset& other) const { return !(*this == other); }
    bool operator<(const Multiset& other) const { return counts_ < other.counts_; }

    /// Formal-sum notation, e.g. "2'(0)+3'(2)". Empty multiset prints "0".
    std::string to_string() const;

  private:
    counts_t counts_;

    void check_arity(const Color& c) const;
};

/// Marking: one multiset per place, indexed like the owning net's place list.
struct Marking {
    std::vector<Multiset> by_place;

    bool operator==(const Marking& other) const { return by_place == other.by_place; }
    bool operator<(const Marking& other) const { return by_place < other.by_place; }

    /// Canonical serialization used as a state key.
    std::string key() const;
};

}  // namespace cpn
