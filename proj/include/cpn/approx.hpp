#pragma once

#include <cstdint>
#include <vector>

#include "cpn/net.hpp"

namespace cpn {

/// Per-place overapproximation of the colors that can occur in any reachable
/// marking. Always a subset of the place domain.
struct Approximation {
    std::vector<ColorSet> possible;  // indexed like the net's places

    bool operator==(const Approximation& other) const { return possible == other.possible; }
    bool operator!=(const Approximation& other) const { return !(*this == other); }
};

/// Support of the initial marking.
Approximation initial_approx(const ColoredNet& net);

struct ExpandOptions {
    int threads = 1;  // 1 = serial reference
    /// Above this many input-tuple combinations per transition the analysis
    /// decouples variables (still sound, loses correlation).
    std::uint64_t scenario_cap = 4096;
};

/// One application of the color expansion: every transition whose full input
/// demand lies inside `a` contributes its produced color supports to the
/// output places. Monotone; result is canonicalized. The parallel path
/// computes per-transition contributions concurrently and merges them in
/// transition order, which is bit-identical to the serial reference.
Approximation expand(const ColoredNet& net, const Approximation& a,
                     const ExpandOptions& options = {});

struct FixedPointOptions {
    std::int64_t budget_ms = 10000;
    ExpandOptions expand;
};

/// Least fixed point of expand above initial_approx. On budget exhaustion
/// falls back to the full domains, which is trivially sound.
Approximation fixed_point(const ColoredNet& net, const FixedPointOptions& options = {});

/// True iff set(M(p)) is contained in a.possible[p] for every place.
bool subsumes(const Approximation& a, const Marking& m);

/// The same net with place domains shrunk to the approximation. Binding
/// enumeration then prunes bindings whose arc images leave the shrunken
/// domains. Requires subsumes(a, initial marking).
ColoredNet restrict_net(const ColoredNet& net, const Approximation& a);

}  // namespace cpn
