#include "cpn/unfold.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#ifdef CPN_HAVE_OPENMP
#include <omp.h>
#endif

namespace cpn {

std::string mangle_place(const std::string& place, const Color& c) {
    std::ostringstream os;
    os << place << "__";
    for (std::size_t i = 0; i < c.components.size(); ++i) {
        if (i) os << '_';
        os << c.components[i];
    }
    return os.str();
}

std::string mangle_sum_place(const std::string& place) { return place + "__SUM"; }

std::string mangle_transition(const std::string& transition, const std::string& suffix) {
    if (suffix.empty()) return transition;
    return transition + "__" + suffix;
}

std::string binding_suffix(const Binding& b) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [name, value] : b) {
        if (!first) os << '_';
        first = false;
        os << name << value;
    }
    return os.str();
}

namespace {

struct UnfoldedTransition {
    std::string id;
    std::string label;
    // Arcs in place-index-and-color form, resolved to P/T indices later.
    std::vector<std::pair<std::string, std::uint64_t>> in, out, inhibit;
};

}  // namespace

PtNet unfold(const ColoredNet& net, const UnfoldOptions& options) {
    // Size estimate before materializing anything.
    std::uint64_t place_estimate = 0;
    for (const Place& p : net.places) place_estimate += p.domain.size();
    std::vector<std::size_t> sum_places = net.inhibiting_places();
    place_estimate += sum_places.size();
    if (place_estimate > options.size_cap) {
        std::ostringstream os;
        os << "unfolding would create " << place_estimate << " places (cap " << options.size_cap
           << ")";
        throw SizeLimitError(os.str());
    }

    PtNet pt;
    std::map<std::string, std::size_t> place_index;
    auto add_place = [&](const std::string& id, std::uint64_t initial) {
        place_index.emplace(id, pt.places.size());
        pt.places.push_back({id, initial});
    };

    std::vector<bool> has_sum(net.places.size(), false);
    for (std::size_t p : sum_places) has_sum[p] = true;

    for (std::size_t p = 0; p < net.places.size(); ++p) {
        for (const Color& c : net.places[p].domain.enumerate())
            add_place(mangle_place(net.places[p].id, c), net.initial.by_place[p].count(c));
        if (has_sum[p])
            add_place(mangle_sum_place(net.places[p].id),
                      net.initial.by_place[p].cardinality());
    }

    // Per-transition expansion; slot per colored transition keeps the merge
    // deterministic under the parallel schedule.
    std::vector<std::vector<UnfoldedTransition>> slots(net.transitions.size());
    std::vector<std::string> errors(net.transitions.size());

    auto expand_transition = [&](std::size_t t) {
        std::vector<UnfoldedTransition> out;
        std::vector<std::pair<std::size_t, std::uint64_t>> inhib;
        for (const auto& [key, w] : net.inhibitors)
            if (key.second == t) inhib.emplace_back(key.first, w);
        for (const FiringMode& m : firing_modes(net, t)) {
            UnfoldedTransition ut;
            ut.label = net.transitions[t].id;
            ut.id = mangle_transition(net.transitions[t].id,
                                      m.row ? m.row->binding_id : binding_suffix(m.binding));
            for (std::size_t p = 0; p < net.places.size(); ++p) {
                Multiset consume = mode_consume(net, p, t, m);
                Multiset produce = mode_produce(net, p, t, m);
                for (const auto& [c, n] : consume.counts())
                    ut.in.emplace_back(mangle_place(net.places[p].id, c), n);
                for (const auto& [c, n] : produce.counts())
                    ut.out.emplace_back(mangle_place(net.places[p].id, c), n);
                if (has_sum[p]) {
                    if (std::uint64_t n = consume.cardinality())
                        ut.in.emplace_back(mangle_sum_place(net.places[p].id), n);
                    if (std::uint64_t n = produce.cardinality())
                        ut.out.emplace_back(mangle_sum_place(net.places[p].id), n);
                }
            }
            for (const auto& [p, w] : inhib)
                ut.inhibit.emplace_back(mangle_sum_place(net.places[p].id), w);
            out.push_back(std::move(ut));
        }
        return out;
    };

#ifdef CPN_HAVE_OPENMP
    if (options.threads > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(options.threads)
        for (std::size_t t = 0; t < net.transitions.size(); ++t) {
            try {
                slots[t] = expand_transition(t);
            } catch (const std::exception& e) {
                errors[t] = e.what();
            }
        }
    } else
#endif
    {
        for (std::size_t t = 0; t < net.transitions.size(); ++t) {
            try {
                slots[t] = expand_transition(t);
            } catch (const std::exception& e) {
                errors[t] = e.what();
            }
        }
    }
    for (const std::string& e : errors)
        if (!e.empty()) throw StructuralError("unfold: " + e);

    std::uint64_t transition_estimate = 0;
    for (const auto& slot : slots) transition_estimate += slot.size();
    if (transition_estimate > options.size_cap) {
        std::ostringstream os;
        os << "unfolding would create " << transition_estimate << " transitions (cap "
           << options.size_cap << ")";
        throw SizeLimitError(os.str());
    }

    for (auto& slot : slots)
        for (UnfoldedTransition& ut : slot) {
            std::size_t ti = pt.transitions.size();
            pt.transitions.push_back({ut.id, ut.label});
            for (const auto& [pid, w] : ut.in) {
                auto key = std::make_pair(place_index.at(pid), ti);
                pt.input_arcs[key] += w;
            }
            for (const auto& [pid, w] : ut.out) {
                auto key = std::make_pair(place_index.at(pid), ti);
                pt.output_arcs[key] += w;
            }
            for (const auto& [pid, w] : ut.inhibit)
                pt.inhibitors[{place_index.at(pid), ti}] = w;
        }

    if (options.prune_orphans) {
        std::vector<bool> connected(pt.places.size(), false);
        for (const auto& [key, w] : pt.input_arcs) connected[key.first] = true;
        for (const auto& [key, w] : pt.output_arcs) connected[key.first] = true;
        for (const auto& [key, w] : pt.inhibitors) connected[key.first] = true;
        std::vector<std::size_t> remap(pt.places.size(), SIZE_MAX);
        PtNet pruned;
        for (std::size_t p = 0; p < pt.places.size(); ++p) {
            if (!connected[p] && pt.places[p].initial == 0) continue;
            remap[p] = pruned.places.size();
            pruned.places.push_back(pt.places[p]);
        }
        pruned.transitions = pt.transitions;
        for (const auto& [key, w] : pt.input_arcs)
            pruned.input_arcs[{remap[key.first], key.second}] = w;
        for (const auto& [key, w] : pt.output_arcs)
            pruned.output_arcs[{remap[key.first], key.second}] = w;
        for (const auto& [key, w] : pt.inhibitors)
            pruned.inhibitors[{remap[key.first], key.second}] = w;
        return pruned;
    }
    return pt;
}

NetStats net_stats(const ColoredNet& net) {
    NetStats s;
    s.places = net.places.size();
    s.transitions = net.transitions.size();
    s.arcs = net.input_arcs.size() + net.output_arcs.size() + net.inhibitors.size();
    for (const Place& p : net.places) s.domain_sizes[p.id] = p.domain.size();
    for (std::size_t t = 0; t < net.transitions.size(); ++t) {
        const Transition& tr = net.transitions[t];
        if (tr.tabulated()) {
            s.binding_estimate += tr.table->size();
            // Arc counts for tabulated transitions: distinct nonzero rows.
            std::set<std::size_t> ins, outs;
            for (const BindingRow& row : *tr.table)
                for (std::size_t p = 0; p < net.places.size(); ++p) {
                    if (!row.consume[p].empty()) ins.insert(p);
                    if (!row.produce[p].empty()) outs.insert(p);
                }
            s.arcs += ins.size() + outs.size();
        } else {
            std::uint64_t product = 1;
            for (const VariableDecl& v : tr.variables) product *= v.range.width();
            s.binding_estimate += product;
        }
    }
    return s;
}

NetStats net_stats(const PtNet& net) {
    NetStats s;
    s.places = net.places.size();
    s.transitions = net.transitions.size();
    s.arcs = net.input_arcs.size() + net.output_arcs.size() + net.inhibitors.size();
    return s;
}

}  // namespace cpn
