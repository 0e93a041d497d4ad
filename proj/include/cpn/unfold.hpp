#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "cpn/net.hpp"

namespace cpn {

struct UnfoldOptions {
    /// Refuse (with a size estimate) instead of materializing more unfolded
    /// places or transitions than this.
    std::uint64_t size_cap = 1u << 20;
    /// Drop unfolded places with zero tokens and no connected arcs.
    bool prune_orphans = false;
    int threads = 1;  // 1 = serial reference
};

/// Unfolded P/T net: one place per (place, domain color), one summation
/// place per place inhibiting some transition, one transition per legal
/// binding; arc weights are the per-color multiplicities, summation arcs the
/// multiset cardinalities. Transition labels record the originating colored
/// transition. Deterministic: identical input gives identical output,
/// independent of thread count.
PtNet unfold(const ColoredNet& net, const UnfoldOptions& options = {});

struct NetStats {
    std::uint64_t places = 0;
    std::uint64_t transitions = 0;
    std::uint64_t arcs = 0;  // weighted arcs plus inhibitor arcs
    // Colored nets only:
    std::map<std::string, std::uint64_t> domain_sizes;
    std::uint64_t binding_estimate = 0;  // product of base-range widths, summed
};

NetStats net_stats(const ColoredNet& net);
NetStats net_stats(const PtNet& net);

std::string mangle_place(const std::string& place, const Color& c);
std::string mangle_sum_place(const std::string& place);
std::string mangle_transition(const std::string& transition, const std::string& binding_suffix);
std::string binding_suffix(const Binding& b);

}  // namespace cpn
