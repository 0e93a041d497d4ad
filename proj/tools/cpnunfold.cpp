#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cpn/oracle.hpp"
#include "cpn/pipeline.hpp"
#include "cpn/pnml.hpp"
#include "cpn/semantics.hpp"
#include "cpn/textual.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitRefused = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

int run_unfold(const std::string& input, const std::string& output, const std::string& format,
               const std::string& stats_path, const cpn::PipelineOptions& options) {
    cpn::ColoredNet net = cpn::parse_any(read_file(input), input);
    cpn::PipelineResult result = cpn::run_pipeline(net, options);
    std::string bytes = format == "net" ? cpn::write_pt_textual(result.pt)
                                        : cpn::write_pt_pnml(result.pt);
    write_file(output, bytes);
    if (!stats_path.empty()) write_file(stats_path, result.stats_json);
    return kExitOk;
}

int run_stats(const std::string& input) {
    cpn::ColoredNet net = cpn::parse_any(read_file(input), input);
    cpn::NetStats s = cpn::net_stats(net);
    std::cout << "places " << s.places << "\ntransitions " << s.transitions << "\narcs "
              << s.arcs << "\n";
    for (const auto& [id, size] : s.domain_sizes)
        std::cout << "domain " << id << " " << size << "\n";
    std::cout << "binding_estimate " << s.binding_estimate << "\n";
    return kExitOk;
}

int run_verify(const std::string& input, std::size_t state_limit) {
    cpn::ColoredNet net = cpn::parse_any(read_file(input), input);
    cpn::ExploreOptions eo;
    eo.state_limit = state_limit;

    cpn::ColoredStateSpace colored = cpn::explore(net, net.initial, eo);
    if (colored.lts.truncated) {
        std::cerr << "error[budget]: state space exceeds the state limit of " << state_limit
                  << "\n";
        return kExitRefused;
    }

    bool all_ok = true;
    auto report = [&](const std::string& name, bool ok) {
        std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
        all_ok &= ok;
    };

    cpn::PtNet pt = cpn::unfold(net);
    cpn::PtStateSpace unfolded = cpn::explore_pt(pt, eo);
    report("unfold-bisimilarity",
           !unfolded.lts.truncated && cpn::bisimilar(colored.lts, unfolded.lts,
                                                     colored.lts.initial, unfolded.lts.initial));

    cpn::Partition delta = cpn::stabilize(net);
    cpn::QuotientResult q = cpn::quotient(net, delta);
    cpn::ColoredStateSpace quotiented = cpn::explore(q.net, q.net.initial, eo);
    report("quotient-bisimilarity",
           !quotiented.lts.truncated && cpn::bisimilar(colored.lts, quotiented.lts,
                                                       colored.lts.initial,
                                                       quotiented.lts.initial));

    cpn::Approximation alpha = cpn::fixed_point(net);
    bool sound = true;
    for (const cpn::Marking& m : colored.markings) sound &= cpn::subsumes(alpha, m);
    cpn::ColoredStateSpace restricted =
        cpn::explore(cpn::restrict_net(net, alpha), net.initial, eo);
    sound &= cpn::reachable_isomorphic(colored.lts, restricted.lts);
    report("approximation-soundness", sound);

    return all_ok ? kExitOk : kExitInputError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Colored Petri net reducer and unfolder"};
    app.require_subcommand(1);

    std::string input, output, format = "pnml", stats_path;
    cpn::PipelineOptions options;
    options.threads = cpn::default_thread_count();
    bool no_quotient = false, no_approx = false;
    std::int64_t budget_ms = -1;
    std::size_t state_limit = 100000;

    CLI::App* unfold_cmd = app.add_subcommand("unfold", "Reduce and unfold to a P/T net");
    unfold_cmd->add_option("input", input)->required();
    unfold_cmd->add_option("-o,--output", output)->required();
    unfold_cmd->add_flag("--no-quotient", no_quotient, "disable the quotienting analysis");
    unfold_cmd->add_flag("--no-approx", no_approx, "disable the color approximation");
    unfold_cmd->add_flag("--prune-orphans", options.prune_orphans,
                         "drop unmarked, unconnected unfolded places");
    unfold_cmd->add_option("--budget-ms", budget_ms, "analysis budget for both phases");
    unfold_cmd->add_option("--stats", stats_path, "write a stats JSON report");
    unfold_cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"pnml", "net"}));
    unfold_cmd->add_option("--size-cap", options.unfold_cap,
                           "maximum unfolded places/transitions");

    CLI::App* stats_cmd = app.add_subcommand("stats", "Print sizes of a colored net");
    stats_cmd->add_option("input", input)->required();

    CLI::App* verify_cmd = app.add_subcommand("verify", "Run the correctness oracles on a net");
    verify_cmd->add_option("input", input)->required();
    verify_cmd->add_option("--state-limit", state_limit);

    CLI11_PARSE(app, argc, argv);

    try {
        if (unfold_cmd->parsed()) {
            options.enable_quotient = !no_quotient;
            options.enable_approx = !no_approx;
            if (budget_ms >= 0) {
                options.quotient_budget_ms = budget_ms;
                options.approx_budget_ms = budget_ms;
            }
            return run_unfold(input, output, format, stats_path, options);
        }
        if (stats_cmd->parsed()) return run_stats(input);
        if (verify_cmd->parsed()) return run_verify(input, state_limit);
    } catch (const cpn::SizeLimitError& e) {
        std::cerr << "error[size]: " << e.what() << "\n";
        return kExitRefused;
    } catch (const cpn::ParseError& e) {
        std::cerr << "error[parse]: " << e.what() << "\n";
        return kExitInputError;
    } catch (const cpn::PnmlError& e) {
        std::cerr << "error[parse]: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error[input]: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
