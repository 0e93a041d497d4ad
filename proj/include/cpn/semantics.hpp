#pragma once

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "cpn/net.hpp"

namespace cpn {

/// Labeled transition system. Edges carry indices into `actions`.
struct Lts {
    std::vector<std::string> state_keys;
    std::vector<std::string> actions;
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> edges;  // src, action, dst
    std::size_t initial = 0;
    bool truncated = false;
};

struct ExploreOptions {
    std::size_t state_limit = 100000;
    int threads = 1;  // 1 = serial reference
};

struct ColoredStateSpace {
    Lts lts;
    std::vector<Marking> markings;  // aligned with lts.state_keys
};

struct PtMarkingVec {
    std::vector<std::uint64_t> counts;  // aligned with net places
};

struct PtStateSpace {
    Lts lts;
    std::vector<PtMarkingVec> markings;
};

bool is_enabled(const ColoredNet& net, const Marking& m, std::size_t t, const Binding& b);
Marking fire(const ColoredNet& net, const Marking& m, std::size_t t, const Binding& b);

/// BFS over all legal (t, mode) successors, labels being transition ids.
/// Deterministic: canonical state keys and frontier order; the parallel path
/// (threads > 1) produces bit-identical output to the serial reference.
ColoredStateSpace explore(const ColoredNet& net, const Marking& initial,
                          const ExploreOptions& options = {});

PtStateSpace explore_pt(const PtNet& net, const ExploreOptions& options = {});

/// Safe upper bound on the maximum arc multiset cardinality over all arcs
/// and bindings.
std::uint64_t max_arc_size(const ColoredNet& net);

/// All markings with per-place cardinality <= max_arc_size(net). Throws
/// SizeLimitError with the count estimate when the enumeration would exceed
/// `cap` markings.
std::vector<Marking> bounded_markings(const ColoredNet& net, std::uint64_t cap = 50000);

}  // namespace cpn
