#include "cpn/color.hpp"

#include <algorithm>
#include <sstream>

namespace cpn {

namespace {

constexpr std::uint64_t kCanonicalizeCellCap = 1ull << 22;

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

bool Color::operator<(const Color& other) const {
    if (components.size() != other.components.size())
        return components.size() < other.components.size();
    return components < other.components;
}

std::string Color::to_string() const {
    std::ostringstream os;
    if (components.size() == 1) {
        os << components[0];
        return os.str();
    }
    os << '(';
    for (std::size_t i = 0; i < components.size(); ++i) {
        if (i) os << ',';
        os << components[i];
    }
    os << ')';
    return os.str();
}

std::string Interval::to_string() const {
    std::ostringstream os;
    os << '[' << lo;
    if (hi != lo) os << ',' << hi;
    os << ']';
    return os.str();
}

IntervalSet normalize_intervals(IntervalSet intervals) {
    std::erase_if(intervals, [](const Interval& i) { return i.hi < i.lo; });
    std::sort(intervals.begin(), intervals.end());
    IntervalSet out;
    for (const Interval& i : intervals) {
        if (!out.empty() && i.lo <= out.back().hi + 1)
            out.back().hi = std::max(out.back().hi, i.hi);
        else
            out.push_back(i);
    }
    return out;
}

IntervalSet intervals_union(const IntervalSet& a, const IntervalSet& b) {
    IntervalSet all = a;
    all.insert(all.end(), b.begin(), b.end());
    return normalize_intervals(std::move(all));
}

IntervalSet intervals_intersect(const IntervalSet& a, const IntervalSet& b) {
    IntervalSet out;
    for (const Interval& x : a)
        for (const Interval& y : b) {
            color_val_t lo = std::max(x.lo, y.lo);
            color_val_t hi = std::min(x.hi, y.hi);
            if (lo <= hi) out.push_back({lo, hi});
        }
    return normalize_intervals(std::move(out));
}

IntervalSet intervals_complement_within(const IntervalSet& a, const Interval& universe) {
    IntervalSet out;
    color_val_t cursor = universe.lo;
    for (const Interval& i : normalize_intervals(a)) {
        if (i.lo > cursor) out.push_back({cursor, std::min(i.lo - 1, universe.hi)});
        cursor = std::max(cursor, i.hi + 1);
        if (cursor > universe.hi) break;
    }
    if (cursor <= universe.hi) out.push_back({cursor, universe.hi});
    return normalize_intervals(std::move(out));
}

bool intervals_contain(const IntervalSet& a, color_val_t v) {
    for (const Interval& i : a)
        if (i.contains(v)) return true;
    return false;
}

std::uint64_t intervals_size(const IntervalSet& a) {
    std::uint64_t n = 0;
    for (const Interval& i : a) n += i.width();
    return n;
}

color_val_t cyclic_shift_value(color_val_t v, std::int64_t shift, const Interval& base) {
    std::int64_t w = static_cast<std::int64_t>(base.width());
    return base.lo + floor_mod(v - base.lo + shift, w);
}

IntervalSet cyclic_shift(const Interval& piece, std::int64_t shift, const Interval& base) {
    std::int64_t w = static_cast<std::int64_t>(base.width());
    if (static_cast<std::int64_t>(piece.width()) >= w) return {base};
    color_val_t lo = cyclic_shift_value(piece.lo, shift, base);
    color_val_t hi = cyclic_shift_value(piece.hi, shift, base);
    if (lo <= hi) return {{lo, hi}};
    return normalize_intervals({{base.lo, hi}, {lo, base.hi}});
}

IntervalSet cyclic_shift_set(const IntervalSet& pieces, std::int64_t shift, const Interval& base) {
    IntervalSet out;
    for (const Interval& p : pieces) {
        IntervalSet img = cyclic_shift(p, shift, base);
        out.insert(out.end(), img.begin(), img.end());
    }
    return normalize_intervals(std::move(out));
}

std::uint64_t RangeTuple::volume() const {
    std::uint64_t v = 1;
    for (const Interval& r : ranges) v *= r.width();
    return v;
}

bool RangeTuple::contains(const Color& c) const {
    if (c.arity() != arity()) return false;
    for (std::size_t i = 0; i < ranges.size(); ++i)
        if (!ranges[i].contains(c.components[i])) return false;
    return true;
}

Color RangeTuple::min_color() const {
    std::vector<color_val_t> comps;
    comps.reserve(ranges.size());
    for (const Interval& r : ranges) comps.push_back(r.lo);
    return Color(std::move(comps));
}

bool RangeTuple::operator<(const RangeTuple& other) const {
    return ranges < other.ranges;
}

std::string RangeTuple::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < ranges.size(); ++i) {
        if (i) os << ',';
        os << ranges[i].to_string();
    }
    os << ')';
    return os.str();
}

ColorSet::ColorSet(std::size_t arity, std::vector<RangeTuple> tuples)
    : arity_(arity), tuples_(std::move(tuples)) {
    for (const RangeTuple& t : tuples_) {
        if (t.arity() != arity_)
            throw StructuralError("range tuple arity mismatch in color set");
        for (const Interval& r : t.ranges)
            if (r.hi < r.lo) throw StructuralError("empty interval in range tuple");
    }
    canonicalize();
}

ColorSet ColorSet::from_tuple(RangeTuple t) {
    std::size_t a = t.arity();
    return ColorSet(a, {std::move(t)});
}

ColorSet ColorSet::from_color(const Color& c) {
    std::vector<Interval> rs;
    rs.reserve(c.arity());
    for (color_val_t v : c.components) rs.emplace_back(v, v);
    return from_tuple(RangeTuple(std::move(rs)));
}

ColorSet ColorSet::product(const std::vector<ColorSet>& factors) {
    std::size_t arity = 0;
    for (const ColorSet& f : factors) arity += f.arity();
    std::vector<RangeTuple> acc{RangeTuple{}};
    for (const ColorSet& f : factors) {
        std::vector<RangeTuple> next;
        for (const RangeTuple& prefix : acc)
            for (const RangeTuple& t : f.tuples()) {
                RangeTuple combined = prefix;
                combined.ranges.insert(combined.ranges.end(), t.ranges.begin(), t.ranges.end());
                next.push_back(std::move(combined));
            }
        acc = std::move(next);
        if (acc.empty()) break;
    }
    return ColorSet(arity, std::move(acc));
}

void ColorSet::canonicalize() {
    if (tuples_.empty()) return;
    std::size_t k = arity_;

    // Elementary grid induced by all interval endpoints; a grid cell is either
    // fully inside or fully outside every input tuple.
    std::vector<std::vector<color_val_t>> breaks(k);
    for (const RangeTuple& t : tuples_)
        for (std::size_t j = 0; j < k; ++j) {
            breaks[j].push_back(t.ranges[j].lo);
            breaks[j].push_back(t.ranges[j].hi + 1);
        }
    std::vector<std::vector<Interval>> cells(k);
    std::uint64_t cell_count = 1;
    for (std::size_t j = 0; j < k; ++j) {
        std::sort(breaks[j].begin(), breaks[j].end());
        breaks[j].erase(std::unique(breaks[j].begin(), breaks[j].end()), breaks[j].end());
        for (std::size_t i = 0; i + 1 < breaks[j].size(); ++i)
            cells[j].push_back({breaks[j][i], breaks[j][i + 1] - 1});
        cell_count *= cells[j].size();
        if (cell_count > kCanonicalizeCellCap)
            throw SizeLimitError("color set canonicalization grid too large");
    }

    std::vector<RangeTuple> covered;
    std::vector<std::size_t> idx(k, 0);
    while (true) {
        RangeTuple cell;
        cell.ranges.reserve(k);
        for (std::size_t j = 0; j < k; ++j) cell.ranges.push_back(cells[j][idx[j]]);
        Color probe = cell.min_color();
        for (const RangeTuple& t : tuples_)
            if (t.contains(probe)) {
                covered.push_back(cell);
                break;
            }
        std::size_t j = k;
        while (j > 0) {
            --j;
            if (++idx[j] < cells[j].size()) break;
            idx[j] = 0;
            if (j == 0) {
                j = k + 1;
                break;
            }
        }
        if (j == k + 1) break;
        if (k == 0) break;
    }

    // Coalescing sweeps: merge tuples identical everywhere but one coordinate
    // where they are adjacent. Repeat until stable.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t j_plus = arity_; j_plus > 0; --j_plus) {
            std::size_t j = j_plus - 1;
            auto key_less = [j](const RangeTuple& a, const RangeTuple& b) {
                for (std::size_t i = 0; i < a.ranges.size(); ++i) {
                    if (i == j) continue;
                    if (!(a.ranges[i] == b.ranges[i])) return a.ranges[i] < b.ranges[i];
                }
                return a.ranges[j] < b.ranges[j];
            };
            std::sort(covered.begin(), covered.end(), key_less);
            std::vector<RangeTuple> merged;
            for (RangeTuple& t : covered) {
                if (!merged.empty()) {
                    RangeTuple& prev = merged.back();
                    bool same = true;
                    for (std::size_t i = 0; i < arity_; ++i)
                        if (i != j && !(prev.ranges[i] == t.ranges[i])) {
                            same = false;
                            break;
                        }
                    if (same && t.ranges[j].lo <= prev.ranges[j].hi + 1) {
                        prev.ranges[j].hi = std::max(prev.ranges[j].hi, t.ranges[j].hi);
                        changed = true;
                        continue;
                    }
                }
                merged.push_back(std::move(t));
            }
            covered = std::move(merged);
        }
    }

    std::sort(covered.begin(), covered.end());
    tuples_ = std::move(covered);
}

std::uint64_t ColorSet::size() const {
    std::uint64_t n = 0;
    for (const RangeTuple& t : tuples_) n += t.volume();
    return n;
}

bool ColorSet::contains(const Color& c) const {
    for (const RangeTuple& t : tuples_)
        if (t.contains(c)) return true;
    return false;
}

bool ColorSet::is_subset_of(const ColorSet& other) const {
    if (empty()) return true;
    if (arity_ != other.arity_) return false;
    return set_intersect(other) == *this;
}

ColorSet ColorSet::set_union(const ColorSet& other) const {
    if (empty()) return other;
    if (other.empty()) return *this;
    if (arity_ != other.arity_) throw StructuralError("color set arity mismatch in union");
    std::vector<RangeTuple> all = tuples_;
    all.insert(all.end(), other.tuples_.begin(), other.tuples_.end());
    return ColorSet(arity_, std::move(all));
}

ColorSet ColorSet::set_intersect(const ColorSet& other) const {
    if (empty() || other.empty()) return ColorSet(arity_ ? arity_ : other.arity_);
    if (arity_ != other.arity_) throw StructuralError("color set arity mismatch in intersection");
    std::vector<RangeTuple> out;
    for (const RangeTuple& a : tuples_)
        for (const RangeTuple& b : other.tuples_) {
            RangeTuple r;
            r.ranges.reserve(arity_);
            bool nonempty = true;
            for (std::size_t j = 0; j < arity_; ++j) {
                color_val_t lo = std::max(a.ranges[j].lo, b.ranges[j].lo);
                color_val_t hi = std::min(a.ranges[j].hi, b.ranges[j].hi);
                if (lo > hi) {
                    nonempty = false;
                    break;
                }
                r.ranges.push_back({lo, hi});
            }
            if (nonempty) out.push_back(std::move(r));
        }
    return ColorSet(arity_, std::move(out));
}

IntervalSet ColorSet::project(std::size_t coord) const {
    IntervalSet out;
    for (const RangeTuple& t : tuples_) out.push_back(t.ranges[coord]);
    return normalize_intervals(std::move(out));
}

std::vector<Color> ColorSet::enumerate() const {
    std::vector<Color> out;
    out.reserve(size());
    for (const RangeTuple& t : tuples_) {
        std::vector<color_val_t> cur;
        cur.reserve(arity_);
        for (const Interval& r : t.ranges) cur.push_back(r.lo);
        while (true) {
            out.emplace_back(cur);
            std::size_t j = arity_;
            while (j > 0) {
                --j;
                if (++cur[j] <= t.ranges[j].hi) break;
                cur[j] = t.ranges[j].lo;
                if (j == 0) {
                    j = arity_ + 1;
                    break;
                }
            }
            if (j == arity_ + 1 || arity_ == 0) break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Color ColorSet::min_color() const {
    if (empty()) throw StructuralError("min_color of empty color set");
    Color best = tuples_.front().min_color();
    for (const RangeTuple& t : tuples_) {
        Color c = t.min_color();
        if (c < best) best = c;
    }
    return best;
}

std::string ColorSet::to_string() const {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < tuples_.size(); ++i) {
        if (i) os << ',';
        os << tuples_[i].to_string();
    }
    os << '}';
    return os.str();
}

std::string ColorSet::to_literal() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < tuples_.size(); ++i) {
        if (i) os << " | ";
        if (arity_ == 1)
            os << tuples_[i].ranges[0].to_string();
        else
            os << tuples_[i].to_string();
    }
    return os.str();
}

}  // namespace cpn
