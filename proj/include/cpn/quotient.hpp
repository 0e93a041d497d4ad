#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "cpn/net.hpp"

namespace cpn {

/// Per-place partition of the color domain into equivalence classes.
/// Classes are nonempty, pairwise disjoint, and cover the domain; they are
/// kept sorted by their minimal color.
struct Partition {
    std::vector<std::vector<ColorSet>> classes;  // indexed like the net's places

    /// One class per place covering the whole domain (empty domains get no
    /// classes).
    static Partition coarsest(const ColoredNet& net);
    /// Singleton classes.
    static Partition finest(const ColoredNet& net, std::uint64_t class_cap = 1 << 20);

    std::size_t class_count(std::size_t place) const { return classes[place].size(); }

    /// Index of the class containing c, or SIZE_MAX.
    std::size_t class_of(std::size_t place, const Color& c) const;

    bool operator==(const Partition& other) const { return classes == other.classes; }
};

/// Per-place per-class token sums; equal signatures mean delta-equivalent
/// markings.
std::vector<std::vector<std::uint64_t>> marking_signature(const Partition& delta,
                                                          const Marking& m);

bool markings_equivalent(const Partition& delta, const Marking& a, const Marking& b);

/// True iff every class of `finer` is contained in some class of `coarser`.
bool refines(const Partition& coarser, const Partition& finer);

/// Smallest partition refined by both: per place, connected components of
/// the class-overlap relation, unioned.
Partition partition_union(const Partition& a, const Partition& b);

struct StabilizeOptions {
    std::int64_t budget_ms = 5000;
    std::uint64_t class_cap = 1 << 20;
};

/// Static two-phase stable-partition computation. Phase 1 splits input-place
/// coordinates at guard-constraint boundaries (plus constant and base-range
/// isolation cuts); phase 2 back-propagates class boundaries from output
/// places onto the input places of each writing transition until a fixpoint.
/// Transitions whose guard or arcs defeat the interval analysis collapse
/// their input places to singletons. On budget exhaustion returns the finest
/// partition, which is trivially stable.
Partition stabilize(const ColoredNet& net, const StabilizeOptions& options = {});

/// Exhaustive stability check over the bounded-marking set: no delta-
/// equivalent pair may disagree on enabledness or fail matched-successor
/// equivalence, for any transition. Throws SizeLimitError above the cap.
bool is_stable_oracle(const ColoredNet& net, const Partition& delta,
                      std::uint64_t marking_cap = 50000);

struct QuotientResult {
    ColoredNet net;
    /// representative color (per place) -> original class
    std::vector<std::map<Color, ColorSet>> representative_classes;
};

/// Quotiented net over representative colors: domains become representative
/// sets, transitions become tabulated binding-class rows with summed class
/// multiplicities, inhibitors are copied, and the initial marking sums per
/// class. `check_stability` runs the oracle first and throws
/// StructuralError when delta is unstable.
QuotientResult quotient(const ColoredNet& net, const Partition& delta,
                        bool check_stability = false);

}  // namespace cpn
