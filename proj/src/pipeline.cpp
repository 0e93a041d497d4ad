#include "cpn/pipeline.hpp"

#include <chrono>
#include <cstdlib>

#include <json.hpp>

#ifdef CPN_HAVE_OPENMP
#include <omp.h>
#endif

namespace cpn {

namespace {

using json = nlohmann::ordered_json;

double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

json stats_of(const NetStats& s, bool colored) {
    json j;
    j["places"] = s.places;
    j["transitions"] = s.transitions;
    j["arcs"] = s.arcs;
    if (colored) {
        json domains = json::object();
        for (const auto& [id, size] : s.domain_sizes) domains[id] = size;
        j["domain_sizes"] = std::move(domains);
        j["binding_estimate"] = s.binding_estimate;
    }
    return j;
}

}  // namespace

int default_thread_count() {
    int threads = 1;
#ifdef CPN_HAVE_OPENMP
    threads = omp_get_max_threads();
#endif
    if (const char* env = std::getenv("CPNUNFOLD_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1) threads = std::min(threads, cap);
    }
    return threads;
}

PipelineResult run_pipeline(const ColoredNet& input, const PipelineOptions& options) {
    json stats;
    json timing = json::object();
    auto total_start = std::chrono::steady_clock::now();

    stats["input"] = stats_of(net_stats(input), true);

    ColoredNet current = input;

    json quotient_stats = json::object();
    quotient_stats["enabled"] = options.enable_quotient;
    if (options.enable_quotient) {
        auto start = std::chrono::steady_clock::now();
        bool skipped = false;
        Partition delta;
        try {
            delta = stabilize(current, {options.quotient_budget_ms});
        } catch (const SizeLimitError&) {
            skipped = true;  // collapse too large to materialize; identity quotient
        }
        if (!skipped) {
            QuotientResult q = quotient(current, delta);
            json classes = json::object();
            json partition = json::object();
            for (std::size_t p = 0; p < current.places.size(); ++p) {
                classes[current.places[p].id] = delta.classes[p].size();
                json list = json::array();
                for (const ColorSet& cls : delta.classes[p]) {
                    json tuples = json::array();
                    for (const RangeTuple& rt : cls.tuples()) tuples.push_back(rt.to_string());
                    list.push_back(std::move(tuples));
                }
                partition[current.places[p].id] = std::move(list);
            }
            quotient_stats["classes"] = std::move(classes);
            quotient_stats["partition"] = std::move(partition);
            current = std::move(q.net);
        }
        quotient_stats["skipped_size_limit"] = skipped;
        timing["quotient"] = ms_since(start);
    }
    stats["quotient"] = std::move(quotient_stats);

    json approx_stats = json::object();
    approx_stats["enabled"] = options.enable_approx;
    if (options.enable_approx) {
        auto start = std::chrono::steady_clock::now();
        FixedPointOptions fp;
        fp.budget_ms = options.approx_budget_ms;
        fp.expand.threads = options.threads;
        Approximation a = fixed_point(current, fp);
        json sizes = json::object();
        json sets = json::object();
        for (std::size_t p = 0; p < current.places.size(); ++p) {
            sizes[current.places[p].id] = a.possible[p].size();
            json tuples = json::array();
            for (const RangeTuple& rt : a.possible[p].tuples()) tuples.push_back(rt.to_string());
            sets[current.places[p].id] = std::move(tuples);
        }
        approx_stats["domain_sizes"] = std::move(sizes);
        approx_stats["sets"] = std::move(sets);
        current = restrict_net(current, a);
        timing["approx"] = ms_since(start);
    }
    stats["approx"] = std::move(approx_stats);

    auto unfold_start = std::chrono::steady_clock::now();
    UnfoldOptions uo;
    uo.size_cap = options.unfold_cap;
    uo.prune_orphans = options.prune_orphans;
    uo.threads = options.threads;
    PtNet pt = unfold(current, uo);
    timing["unfold"] = ms_since(unfold_start);

    stats["unfolded"] = stats_of(net_stats(pt), false);
    timing["total"] = ms_since(total_start);
    stats["timing_ms"] = std::move(timing);

    PipelineResult result;
    result.pt = std::move(pt);
    result.stats_json = stats.dump(2) + "\n";
    return result;
}

}  // namespace cpn
