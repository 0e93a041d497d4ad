// Compares the serial reference kernels against the OpenMP paths on a
// synthetic workload. Wall-clock only; correctness of the pairing is covered
// by the test suite.

#include <chrono>
#include <iostream>

#include "cpn/approx.hpp"
#include "cpn/pipeline.hpp"
#include "cpn/semantics.hpp"
#include "cpn/unfold.hpp"

namespace {

/// Chain of transitions shuffling a two-coordinate domain; large enough
/// binding counts to give the kernels real work.
cpn::ColoredNet make_workload(int domain, int chain) {
    using namespace cpn;
    ColoredNet net;
    ColorSet base = ColorSet::from_tuple(RangeTuple{{1, domain}});
    ColorSet pair = ColorSet::product({base, base});
    for (int i = 0; i <= chain; ++i)
        net.places.push_back({"p" + std::to_string(i), pair});
    net.initial.by_place.resize(net.places.size());
    for (int v = 1; v <= domain; ++v)
        net.initial.by_place[0].add(Color{1, static_cast<color_val_t>(v)}, 1);

    for (int i = 0; i < chain; ++i) {
        Transition t;
        t.id = "t" + std::to_string(i);
        t.variables = {{"a", {1, static_cast<color_val_t>(domain)}},
                       {"b", {1, static_cast<color_val_t>(domain)}}};
        t.guard = guard_cmp(CmpOp::Le, SimpleExpr::variable("a"), SimpleExpr::variable("b"));
        net.transitions.push_back(std::move(t));
        std::size_t ti = net.transitions.size() - 1;
        net.input_arcs[{static_cast<std::size_t>(i), ti}] =
            arc_number_of(1, {SimpleExpr::variable("a"), SimpleExpr::variable("b")});
        net.output_arcs[{static_cast<std::size_t>(i) + 1, ti}] =
            arc_number_of(1, {SimpleExpr::shifted("a", 1), SimpleExpr::variable("b")});
    }
    return net;
}

template <typename F>
double time_ms(F&& f) {
    auto start = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

}  // namespace

int main() {
    using namespace cpn;
    int threads = default_thread_count();
    std::cout << "threads for parallel runs: " << threads << "\n";

    ColoredNet net = make_workload(12, 6);

    ExploreOptions serial_explore{200000, 1};
    ExploreOptions parallel_explore{200000, threads};
    double explore_serial = time_ms([&] { explore(net, net.initial, serial_explore); });
    double explore_parallel = time_ms([&] { explore(net, net.initial, parallel_explore); });
    std::cout << "explore      serial " << explore_serial << " ms,  parallel "
              << explore_parallel << " ms\n";

    UnfoldOptions unfold_serial{1u << 22, false, 1};
    UnfoldOptions unfold_parallel{1u << 22, false, threads};
    double uf_serial = time_ms([&] { unfold(net, unfold_serial); });
    double uf_parallel = time_ms([&] { unfold(net, unfold_parallel); });
    std::cout << "unfold       serial " << uf_serial << " ms,  parallel " << uf_parallel
              << " ms\n";

    FixedPointOptions fp_serial;
    fp_serial.expand.threads = 1;
    FixedPointOptions fp_parallel;
    fp_parallel.expand.threads = threads;
    double ex_serial = time_ms([&] { fixed_point(net, fp_serial); });
    double ex_parallel = time_ms([&] { fixed_point(net, fp_parallel); });
    std::cout << "expand (lfp) serial " << ex_serial << " ms,  parallel " << ex_parallel
              << " ms\n";
    return 0;
}
