#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cpn/approx.hpp"
#include "cpn/net.hpp"
#include "cpn/quotient.hpp"
#include "cpn/unfold.hpp"

namespace cpn {

struct PipelineOptions {
    bool enable_quotient = true;
    bool enable_approx = true;
    bool prune_orphans = false;
    std::int64_t quotient_budget_ms = 5000;
    std::int64_t approx_budget_ms = 10000;
    std::uint64_t unfold_cap = 1u << 20;
    int threads = 1;
};

struct PipelineResult {
    PtNet pt;
    /// Stats JSON text (ordered keys; all wall-clock readings live under the
    /// single "timing_ms" object so consumers can diff the rest).
    std::string stats_json;
};

/// parse -> quotient (A) -> approximate (B) -> unfold. Quotienting first so
/// the approximation prunes the already-shrunken domains.
PipelineResult run_pipeline(const ColoredNet& input, const PipelineOptions& options = {});

/// Reads CPNUNFOLD_THREADS (a positive integer) and the machine's core
/// count; 1 means the serial reference paths.
int default_thread_count();

}  // namespace cpn
