#pragma once

#include <string>

#include "cpn/net.hpp"

namespace cpn {

struct PnmlError : std::runtime_error {
    explicit PnmlError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Model Checking Contest symmetric-net subset: finite int ranges, cyclic
/// enumerations, dot, product sorts, variables; numberof/tuple/add/subtract/
/// scalarproduct/all arc annotations with successor/predecessor as cyclic
/// shifts; boolean guards with (in)equality and order comparisons; inhibitor
/// arcs with a weight (unlabelled inhibitors weigh 1). Unsupported
/// constructs raise PnmlError naming the element and its location path.
ColoredNet parse_colored_pnml(const std::string& xml);

/// Standard P/T PNML with deterministic element ordering. Inhibitor arcs
/// carry the conventional <type value="inhibitor"/> annotation; transition
/// labels are stored as the transition name.
std::string write_pt_pnml(const PtNet& net, const std::string& net_id = "unfolded");

ColoredNet parse_any(const std::string& content, const std::string& filename_hint);

/// Reader for the P/T subset this project writes (used by tests and the
/// verify pipeline).
PtNet parse_pt_pnml(const std::string& xml);

}  // namespace cpn
