#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cpn {

using color_val_t = std::int64_t;

/// A color is an ordered tuple of nonnegative integers. Scalar colors are
/// 1-tuples; the dot color is (1).
struct Color {
    std::vector<color_val_t> components;

    Color() = default;
    explicit Color(std::vector<color_val_t> comps) : components(std::move(comps)) {}
    Color(std::initializer_list<color_val_t> comps) : components(comps) {}

    std::size_t arity() const { return components.size(); }

    bool operator==(const Color& other) const { return components == other.components; }
    bool operator!=(const Color& other) const { return !(*this == other); }
    bool operator<(const Color& other) const;

    std::string to_string() const;
};

/// Closed integer interval [lo, hi], lo <= hi.
struct Interval {
    color_val_t lo = 0;
    color_val_t hi = 0;

    Interval() = default;
    Interval(color_val_t l, color_val_t h) : lo(l), hi(h) {}

    std::uint64_t width() const { return static_cast<std::uint64_t>(hi - lo) + 1; }
    bool contains(color_val_t v) const { return lo <= v && v <= hi; }

    bool operator==(const Interval& other) const { return lo == other.lo && hi == other.hi; }
    bool operator<(const Interval& other) const {
        return lo != other.lo ? lo < other.lo : hi < other.hi;
    }

    std::string to_string() const;
};

/// Sorted, disjoint, coalesced list of intervals. The empty set is an empty
/// vector.
using IntervalSet = std::vector<Interval>;

IntervalSet normalize_intervals(IntervalSet intervals);
IntervalSet intervals_union(const IntervalSet& a, const IntervalSet& b);
IntervalSet intervals_intersect(const IntervalSet& a, const IntervalSet& b);
IntervalSet intervals_complement_within(const IntervalSet& a, const Interval& universe);
bool intervals_contain(const IntervalSet& a, color_val_t v);
std::uint64_t intervals_size(const IntervalSet& a);

/// Image of `piece` under the cyclic shift v -> base.lo + (v - base.lo + shift mod w)
/// where w is the width of `base`. `piece` must lie within `base`. The image is
/// one interval, or two when it wraps.
IntervalSet cyclic_shift(const Interval& piece, std::int64_t shift, const Interval& base);
IntervalSet cyclic_shift_set(const IntervalSet& pieces, std::int64_t shift, const Interval& base);
color_val_t cyclic_shift_value(color_val_t v, std::int64_t shift, const Interval& base);

/// Product of closed intervals denoting the color set
/// {(c_1,...,c_k) | lo_i <= c_i <= hi_i}. Never empty: emptiness is absence.
struct RangeTuple {
    std::vector<Interval> ranges;

    RangeTuple() = default;
    explicit RangeTuple(std::vector<Interval> rs) : ranges(std::move(rs)) {}
    RangeTuple(std::initializer_list<Interval> rs) : ranges(rs) {}

    std::size_t arity() const { return ranges.size(); }
    std::uint64_t volume() const;
    bool contains(const Color& c) const;
    Color min_color() const;

    bool operator==(const RangeTuple& other) const { return ranges == other.ranges; }
    bool operator<(const RangeTuple& other) const;

    std::string to_string() const;
};

/// Finite set of colors of one arity, stored as pairwise disjoint range
/// tuples in a canonical form (grid decomposition followed by per-coordinate
/// coalescing sweeps, sorted). Two equal sets always canonicalize to the same
/// representation.
class ColorSet {
  public:
    ColorSet() = default;
    explicit ColorSet(std::size_t arity) : arity_(arity) {}
    ColorSet(std::size_t arity, std::vector<RangeTuple> tuples);

    static ColorSet from_tuple(RangeTuple t);
    static ColorSet from_color(const Color& c);
    static ColorSet product(const std::vector<ColorSet>& factors);

    std::size_t arity() const { return arity_; }
    bool empty() const { return tuples_.empty(); }
    const std::vector<RangeTuple>& tuples() const { return tuples_; }

    std::uint64_t size() const;
    bool contains(const Color& c) const;
    bool is_subset_of(const ColorSet& other) const;

    ColorSet set_union(const ColorSet& other) const;
    ColorSet set_intersect(const ColorSet& other) const;

    /// Projection of the set onto one coordinate.
    IntervalSet project(std::size_t coord) const;

    /// All member colors in lexicographic order.
    std::vector<Color> enumerate() const;

    /// Lexicographically smallest member. Set must be nonempty.
    Color min_color() const;

    bool operator==(const ColorSet& other) const {
        return arity_ == other.arity_ && tuples_ == other.tuples_;
    }
    bool operator!=(const ColorSet& other) const { return !(*this == other); }
    bool operator<(const ColorSet& other) const {
        return tuples_ != other.tuples_ ? tuples_ < other.tuples_ : arity_ < other.arity_;
    }

    std::string to_string() const;
    /// Fixture-grammar form: boxes joined by " | ", 1-dim boxes unwrapped.
    std::string to_literal() const;

  private:
    std::size_t arity_ = 0;
    std::vector<RangeTuple> tuples_;

    void canonicalize();
};

struct StructuralError : std::runtime_error {
    explicit StructuralError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SizeLimitError : std::runtime_error {
    explicit SizeLimitError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace cpn
