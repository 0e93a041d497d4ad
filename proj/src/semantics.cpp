#include "cpn/semantics.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>

#ifdef CPN_HAVE_OPENMP
#include <omp.h>
#endif

namespace cpn {

namespace {

/// Marking-independent firing data of one mode: sparse consume/produce plus
/// the inhibitor thresholds of the owning transition.
struct CompiledMode {
    std::vector<std::pair<std::size_t, Multiset>> consume;
    std::vector<std::pair<std::size_t, Multiset>> produce;
};

struct CompiledTransition {
    std::size_t index = 0;
    std::vector<CompiledMode> modes;
    std::vector<std::pair<std::size_t, std::uint64_t>> inhibitors;
};

std::vector<CompiledTransition> compile_transitions(const ColoredNet& net) {
    std::vector<CompiledTransition> out;
    for (std::size_t t = 0; t < net.transitions.size(); ++t) {
        CompiledTransition ct;
        ct.index = t;
        for (const auto& [key, w] : net.inhibitors)
            if (key.second == t) ct.inhibitors.emplace_back(key.first, w);
        for (const FiringMode& m : firing_modes(net, t)) {
            CompiledMode cm;
            for (std::size_t p = 0; p < net.places.size(); ++p) {
                Multiset c = mode_consume(net, p, t, m);
                if (!c.empty()) cm.consume.emplace_back(p, std::move(c));
                Multiset pr = mode_produce(net, p, t, m);
                if (!pr.empty()) cm.produce.emplace_back(p, std::move(pr));
            }
            ct.modes.push_back(std::move(cm));
        }
        out.push_back(std::move(ct));
    }
    return out;
}

bool mode_enabled(const Marking& m, const CompiledTransition& ct, const CompiledMode& cm) {
    for (const auto& [p, w] : ct.inhibitors)
        if (m.by_place[p].cardinality() >= w) return false;
    for (const auto& [p, need] : cm.consume)
        if (!m.by_place[p].includes(need)) return false;
    return true;
}

Marking mode_fire(const Marking& m, const CompiledMode& cm) {
    Marking out = m;
    for (const auto& [p, need] : cm.consume)
        out.by_place[p] = out.by_place[p].subtract(need);
    for (const auto& [p, add] : cm.produce)
        out.by_place[p] = out.by_place[p].set_union(add);
    return out;
}

using Successor = std::pair<std::size_t, Marking>;  // action index, successor marking

std::vector<Successor> successors_of(const Marking& m,
                                     const std::vector<CompiledTransition>& compiled) {
    std::vector<Successor> out;
    for (const CompiledTransition& ct : compiled)
        for (const CompiledMode& cm : ct.modes)
            if (mode_enabled(m, ct, cm)) out.emplace_back(ct.index, mode_fire(m, cm));
    return out;
}

}  // namespace

bool is_enabled(const ColoredNet& net, const Marking& m, std::size_t t, const Binding& b) {
    for (std::size_t p = 0; p < net.places.size(); ++p) {
        if (auto w = net.inhibitor_weight(p, t))
            if (m.by_place[p].cardinality() >= *w) return false;
        if (!m.by_place[p].includes(arc_consume(net, p, t, b))) return false;
    }
    return true;
}

Marking fire(const ColoredNet& net, const Marking& m, std::size_t t, const Binding& b) {
    if (!is_enabled(net, m, t, b))
        throw StructuralError("fire: transition " + net.transitions[t].id + " not enabled");
    Marking out = m;
    for (std::size_t p = 0; p < net.places.size(); ++p) {
        Multiset in = arc_consume(net, p, t, b);
        Multiset prod = arc_produce(net, p, t, b);
        out.by_place[p] = m.by_place[p].subtract(in).set_union(prod);
    }
    return out;
}

ColoredStateSpace explore(const ColoredNet& net, const Marking& initial,
                          const ExploreOptions& options) {
    std::vector<CompiledTransition> compiled = compile_transitions(net);

    ColoredStateSpace space;
    Lts& lts = space.lts;
    for (const Transition& t : net.transitions) lts.actions.push_back(t.id);

    std::map<std::string, std::size_t> index_of;
    auto intern = [&](Marking&& m) -> std::size_t {
        std::string key = m.key();
        auto it = index_of.find(key);
        if (it != index_of.end()) return it->second;
        std::size_t id = space.markings.size();
        index_of.emplace(std::move(key), id);
        space.markings.push_back(std::move(m));
        lts.state_keys.push_back(space.markings.back().key());
        return id;
    };

    Marking m0 = initial;
    lts.initial = intern(std::move(m0));

    std::vector<std::size_t> frontier{lts.initial};
    while (!frontier.empty()) {
        std::vector<std::vector<Successor>> batch(frontier.size());
#ifdef CPN_HAVE_OPENMP
        if (options.threads > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(options.threads)
            for (std::size_t i = 0; i < frontier.size(); ++i)
                batch[i] = successors_of(space.markings[frontier[i]], compiled);
        } else
#endif
        {
            for (std::size_t i = 0; i < frontier.size(); ++i)
                batch[i] = successors_of(space.markings[frontier[i]], compiled);
        }

        std::vector<std::size_t> next;
        for (std::size_t i = 0; i < frontier.size(); ++i) {
            for (Successor& s : batch[i]) {
                if (space.markings.size() >= options.state_limit &&
                    index_of.find(s.second.key()) == index_of.end()) {
                    lts.truncated = true;
                    continue;
                }
                std::size_t before = space.markings.size();
                std::size_t dst = intern(std::move(s.second));
                lts.edges.emplace_back(frontier[i], s.first, dst);
                if (dst == before) next.push_back(dst);
            }
        }
        frontier = std::move(next);
    }

    std::sort(lts.edges.begin(), lts.edges.end());
    lts.edges.erase(std::unique(lts.edges.begin(), lts.edges.end()), lts.edges.end());
    return space;
}

namespace {

std::string pt_key(const std::vector<std::uint64_t>& counts) {
    std::ostringstream os;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] == 0) continue;
        os << i << ':' << counts[i] << ';';
    }
    return os.str();
}

}  // namespace

PtStateSpace explore_pt(const PtNet& net, const ExploreOptions& options) {
    PtStateSpace space;
    Lts& lts = space.lts;

    std::map<std::string, std::size_t> label_index;
    std::vector<std::size_t> action_of_transition(net.transitions.size());
    for (std::size_t t = 0; t < net.transitions.size(); ++t) {
        const std::string& label = net.transitions[t].label;
        auto it = label_index.find(label);
        if (it == label_index.end()) {
            it = label_index.emplace(label, lts.actions.size()).first;
            lts.actions.push_back(label);
        }
        action_of_transition[t] = it->second;
    }

    struct PtArc {
        std::size_t place;
        std::uint64_t weight;
    };
    std::vector<std::vector<PtArc>> in(net.transitions.size()), out(net.transitions.size()),
        inhib(net.transitions.size());
    for (const auto& [key, w] : net.input_arcs) in[key.second].push_back({key.first, w});
    for (const auto& [key, w] : net.output_arcs) out[key.second].push_back({key.first, w});
    for (const auto& [key, w] : net.inhibitors) inhib[key.second].push_back({key.first, w});

    std::map<std::string, std::size_t> index_of;
    auto intern = [&](std::vector<std::uint64_t>&& counts) -> std::size_t {
        std::string key = pt_key(counts);
        auto it = index_of.find(key);
        if (it != index_of.end()) return it->second;
        std::size_t id = space.markings.size();
        index_of.emplace(std::move(key), id);
        space.markings.push_back({std::move(counts)});
        lts.state_keys.push_back(pt_key(space.markings.back().counts));
        return id;
    };

    std::vector<std::uint64_t> m0(net.places.size());
    for (std::size_t p = 0; p < net.places.size(); ++p) m0[p] = net.places[p].initial;
    lts.initial = intern(std::move(m0));

    auto successors = [&](const std::vector<std::uint64_t>& m) {
        std::vector<std::pair<std::size_t, std::vector<std::uint64_t>>> succ;
        for (std::size_t t = 0; t < net.transitions.size(); ++t) {
            bool ok = true;
            for (const PtArc& a : inhib[t])
                if (m[a.place] >= a.weight) {
                    ok = false;
                    break;
                }
            if (ok)
                for (const PtArc& a : in[t])
                    if (m[a.place] < a.weight) {
                        ok = false;
                        break;
                    }
            if (!ok) continue;
            std::vector<std::uint64_t> next = m;
            for (const PtArc& a : in[t]) next[a.place] -= a.weight;
            for (const PtArc& a : out[t]) next[a.place] += a.weight;
            succ.emplace_back(action_of_transition[t], std::move(next));
        }
        return succ;
    };

    std::vector<std::size_t> frontier{lts.initial};
    while (!frontier.empty()) {
        std::vector<std::vector<std::pair<std::size_t, std::vector<std::uint64_t>>>> batch(
            frontier.size());
#ifdef CPN_HAVE_OPENMP
        if (options.threads > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(options.threads)
            for (std::size_t i = 0; i < frontier.size(); ++i)
                batch[i] = successors(space.markings[frontier[i]].counts);
        } else
#endif
        {
            for (std::size_t i = 0; i < frontier.size(); ++i)
                batch[i] = successors(space.markings[frontier[i]].counts);
        }
        std::vector<std::size_t> next;
        for (std::size_t i = 0; i < frontier.size(); ++i) {
            for (auto& [action, counts] : batch[i]) {
                if (space.markings.size() >= options.state_limit &&
                    index_of.find(pt_key(counts)) == index_of.end()) {
                    lts.truncated = true;
                    continue;
                }
                std::size_t before = space.markings.size();
                std::size_t dst = intern(std::move(counts));
                lts.edges.emplace_back(frontier[i], action, dst);
                if (dst == before) next.push_back(dst);
            }
        }
        frontier = std::move(next);
    }

    std::sort(lts.edges.begin(), lts.edges.end());
    lts.edges.erase(std::unique(lts.edges.begin(), lts.edges.end()), lts.edges.end());
    return space;
}

std::uint64_t max_arc_size(const ColoredNet& net) {
    std::uint64_t best = 0;
    for (const auto& [key, e] : net.input_arcs)
        if (!net.transitions[key.second].tabulated())
            best = std::max(best, arc_cardinality_bound(*e));
    for (const auto& [key, e] : net.output_arcs)
        if (!net.transitions[key.second].tabulated())
            best = std::max(best, arc_cardinality_bound(*e));
    for (const Transition& t : net.transitions)
        if (t.tabulated())
            for (const BindingRow& row : *t.table) {
                for (const Multiset& m : row.consume) best = std::max(best, m.cardinality());
                for (const Multiset& m : row.produce) best = std::max(best, m.cardinality());
            }
    return best;
}

namespace {

void multisets_up_to(const std::vector<Color>& colors, std::size_t i, std::uint64_t budget,
                     Multiset& current, std::vector<Multiset>& out) {
    if (i == colors.size()) {
        out.push_back(current);
        return;
    }
    for (std::uint64_t k = 0; k <= budget; ++k) {
        if (k > 0) current.add(colors[i], 1);
        multisets_up_to(colors, i + 1, budget - k, current, out);
    }
    Multiset trimmed;
    for (const auto& [c, k] : current.counts())
        if (!(c == colors[i])) trimmed.add(c, k);
    current = std::move(trimmed);
}

std::uint64_t multiset_count(std::uint64_t n_colors, std::uint64_t max_card,
                             std::uint64_t cap) {
    // Number of multisets of size <= max_card over n_colors colors:
    // C(n_colors + max_card, max_card), capped to avoid overflow.
    std::uint64_t num = 1;
    for (std::uint64_t i = 1; i <= max_card; ++i) {
        num = num * (n_colors + i) / i;
        if (num > cap) return cap + 1;
    }
    return num;
}

}  // namespace

std::vector<Marking> bounded_markings(const ColoredNet& net, std::uint64_t cap) {
    std::uint64_t max = max_arc_size(net);
    std::uint64_t estimate = 1;
    for (const Place& p : net.places) {
        std::uint64_t per = multiset_count(p.domain.size(), max, cap);
        estimate = (per > 0 && estimate > cap / per) ? cap + 1 : estimate * per;
        if (estimate > cap) {
            std::ostringstream os;
            os << "bounded marking enumeration exceeds cap of " << cap
               << " markings (estimate > " << cap << ")";
            throw SizeLimitError(os.str());
        }
    }

    std::vector<std::vector<Multiset>> per_place;
    for (const Place& p : net.places) {
        std::vector<Multiset> sets;
        Multiset scratch;
        multisets_up_to(p.domain.enumerate(), 0, max, scratch, sets);
        std::sort(sets.begin(), sets.end());
        sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
        per_place.push_back(std::move(sets));
    }

    std::vector<Marking> out;
    Marking current;
    current.by_place.resize(net.places.size());
    std::vector<std::size_t> idx(net.places.size(), 0);
    while (true) {
        for (std::size_t p = 0; p < net.places.size(); ++p)
            current.by_place[p] = per_place[p][idx[p]];
        out.push_back(current);
        std::size_t j = net.places.size();
        while (j > 0) {
            --j;
            if (++idx[j] < per_place[j].size()) break;
            idx[j] = 0;
            if (j == 0) {
                j = net.places.size() + 1;
                break;
            }
        }
        if (j == net.places.size() + 1 || net.places.empty()) break;
    }
    return out;
}

}  // namespace cpn
