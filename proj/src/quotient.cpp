#include "cpn/quotient.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "cpn/semantics.hpp"

namespace cpn {

Partition Partition::coarsest(const ColoredNet& net) {
    Partition out;
    out.classes.resize(net.places.size());
    for (std::size_t p = 0; p < net.places.size(); ++p)
        if (!net.places[p].domain.empty()) out.classes[p].push_back(net.places[p].domain);
    return out;
}

Partition Partition::finest(const ColoredNet& net, std::uint64_t class_cap) {
    Partition out;
    out.classes.resize(net.places.size());
    std::uint64_t total = 0;
    for (std::size_t p = 0; p < net.places.size(); ++p) {
        total += net.places[p].domain.size();
        if (total > class_cap)
            throw SizeLimitError("finest partition would exceed class cap");
        for (const Color& c : net.places[p].domain.enumerate())
            out.classes[p].push_back(ColorSet::from_color(c));
        std::sort(out.classes[p].begin(), out.classes[p].end());
    }
    return out;
}

std::size_t Partition::class_of(std::size_t place, const Color& c) const {
    for (std::size_t k = 0; k < classes[place].size(); ++k)
        if (classes[place][k].contains(c)) return k;
    return SIZE_MAX;
}

std::vector<std::vector<std::uint64_t>> marking_signature(const Partition& delta,
                                                          const Marking& m) {
    std::vector<std::vector<std::uint64_t>> sig(delta.classes.size());
    for (std::size_t p = 0; p < delta.classes.size(); ++p) {
        sig[p].assign(delta.classes[p].size(), 0);
        for (const auto& [c, k] : m.by_place[p].counts()) {
            std::size_t cls = delta.class_of(p, c);
            if (cls == SIZE_MAX) throw StructuralError("color outside partition classes");
            sig[p][cls] += k;
        }
    }
    return sig;
}

bool markings_equivalent(const Partition& delta, const Marking& a, const Marking& b) {
    return marking_signature(delta, a) == marking_signature(delta, b);
}

bool refines(const Partition& coarser, const Partition& finer) {
    if (coarser.classes.size() != finer.classes.size()) return false;
    for (std::size_t p = 0; p < coarser.classes.size(); ++p)
        for (const ColorSet& small : finer.classes[p]) {
            bool found = false;
            for (const ColorSet& big : coarser.classes[p])
                if (small.is_subset_of(big)) {
                    found = true;
                    break;
                }
            if (!found) return false;
        }
    return true;
}

Partition partition_union(const Partition& a, const Partition& b) {
    if (a.classes.size() != b.classes.size())
        throw StructuralError("partition union over different nets");
    Partition out;
    out.classes.resize(a.classes.size());
    for (std::size_t p = 0; p < a.classes.size(); ++p) {
        std::vector<ColorSet> all = a.classes[p];
        all.insert(all.end(), b.classes[p].begin(), b.classes[p].end());

        std::vector<std::size_t> parent(all.size());
        std::iota(parent.begin(), parent.end(), 0);
        std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (std::size_t i = 0; i < all.size(); ++i)
            for (std::size_t j = i + 1; j < all.size(); ++j)
                if (!all[i].set_intersect(all[j]).empty()) parent[find(i)] = find(j);

        std::map<std::size_t, ColorSet> merged;
        for (std::size_t i = 0; i < all.size(); ++i) {
            std::size_t root = find(i);
            auto it = merged.find(root);
            if (it == merged.end())
                merged.emplace(root, all[i]);
            else
                it->second = it->second.set_union(all[i]);
        }
        for (auto& [root, cls] : merged) out.classes[p].push_back(std::move(cls));
        std::sort(out.classes[p].begin(), out.classes[p].end());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Static stabilization
// ---------------------------------------------------------------------------

namespace {

struct VarOcc {
    std::size_t place = 0;
    std::size_t coord = 0;
    std::int64_t shift = 0;
};

struct TransAnalysis {
    bool unanalyzable = false;
    std::map<std::string, std::vector<IntervalSet>> guard_atom_sets;
    std::map<std::string, std::vector<VarOcc>> input_occ;
    std::map<std::string, std::vector<VarOcc>> output_occ;
    std::vector<std::tuple<std::size_t, std::size_t, color_val_t>> input_consts;
    std::vector<std::size_t> input_all_places;
};

/// Solution set of cyc(x + shift) op c within the variable's base range.
IntervalSet solve_atom(CmpOp op, std::int64_t shift, color_val_t c, const Interval& range) {
    IntervalSet shifted_solutions;
    switch (op) {
        case CmpOp::Lt:
            if (c > range.lo) shifted_solutions = {{range.lo, std::min(c - 1, range.hi)}};
            break;
        case CmpOp::Le:
            if (c >= range.lo) shifted_solutions = {{range.lo, std::min(c, range.hi)}};
            break;
        case CmpOp::Gt:
            if (c < range.hi) shifted_solutions = {{std::max(c + 1, range.lo), range.hi}};
            break;
        case CmpOp::Ge:
            if (c <= range.hi) shifted_solutions = {{std::max(c, range.lo), range.hi}};
            break;
        case CmpOp::Eq:
            if (range.contains(c)) shifted_solutions = {{c, c}};
            break;
        case CmpOp::Neq:
            shifted_solutions = intervals_complement_within({{c, c}}, range);
            break;
    }
    return cyclic_shift_set(shifted_solutions, -shift, range);
}

bool analyze_guard(const GuardExpr& g, const VarRanges& ranges, TransAnalysis& out) {
    if (std::get_if<GuardConst>(&g.node)) return true;
    if (auto* n = std::get_if<GuardNot>(&g.node)) return analyze_guard(*n->inner, ranges, out);
    if (auto* a = std::get_if<GuardAnd>(&g.node))
        return analyze_guard(*a->lhs, ranges, out) && analyze_guard(*a->rhs, ranges, out);
    if (auto* o = std::get_if<GuardOr>(&g.node))
        return analyze_guard(*o->lhs, ranges, out) && analyze_guard(*o->rhs, ranges, out);
    if (auto* cmp = std::get_if<GuardCmp>(&g.node)) {
        bool lv = cmp->lhs.mentions_var();
        bool rv = cmp->rhs.mentions_var();
        if (lv && rv) return false;
        if (!lv && !rv) return true;  // constant atom
        const SimpleExpr& vs = lv ? cmp->lhs : cmp->rhs;
        color_val_t c = lv ? cmp->rhs.value : cmp->lhs.value;
        CmpOp op = cmp->op;
        if (rv) {
            // c op u  <=>  u op' c with the comparison mirrored
            switch (op) {
                case CmpOp::Lt: op = CmpOp::Gt; break;
                case CmpOp::Le: op = CmpOp::Ge; break;
                case CmpOp::Gt: op = CmpOp::Lt; break;
                case CmpOp::Ge: op = CmpOp::Le; break;
                default: break;
            }
        }
        auto it = ranges.find(vs.var);
        if (it == ranges.end()) return false;
        out.guard_atom_sets[vs.var].push_back(solve_atom(op, vs.shift, c, it->second));
        return true;
    }
    if (auto* ms = std::get_if<GuardMsCmp>(&g.node)) {
        std::set<std::string> vars;
        collect_arc_vars(*ms->lhs, vars);
        collect_arc_vars(*ms->rhs, vars);
        return vars.empty();  // ground multiset comparisons are constant
    }
    return false;
}

TransAnalysis analyze_transition(const ColoredNet& net, std::size_t t) {
    TransAnalysis out;
    const Transition& tr = net.transitions[t];
    if (tr.tabulated()) {
        out.unanalyzable = true;
        return out;
    }
    VarRanges ranges = net.var_ranges(t);
    if (tr.guard && !analyze_guard(*tr.guard, ranges, out)) {
        out.unanalyzable = true;
        return out;
    }

    std::map<std::string, std::uint64_t> input_mult;
    auto scan_arc = [&](std::size_t p, const ArcExpr& e, bool input) {
        ArcSummands flat = flatten_arc(e);
        if (flat.has_sub) {
            out.unanalyzable = true;
            return;
        }
        for (const auto& s : flat.summands) {
            if (s.all) {
                if (input) out.input_all_places.push_back(p);
                continue;
            }
            std::set<std::string> seen;
            for (std::size_t j = 0; j < s.number_of->tuple.size(); ++j) {
                const SimpleExpr& se = s.number_of->tuple[j];
                if (!se.mentions_var()) {
                    if (input) out.input_consts.emplace_back(p, j, se.value);
                    continue;
                }
                if (!seen.insert(se.var).second) {
                    out.unanalyzable = true;  // repeated variable in one tuple
                    return;
                }
                VarOcc occ{p, j, se.kind == SimpleExpr::Kind::VarShift ? se.shift : 0};
                if (input) {
                    out.input_occ[se.var].push_back(occ);
                    input_mult[se.var] += s.multiplicity;
                } else {
                    out.output_occ[se.var].push_back(occ);
                }
            }
        }
    };

    for (const auto& [key, e] : net.input_arcs)
        if (key.second == t && !out.unanalyzable) scan_arc(key.first, *e, true);
    for (const auto& [key, e] : net.output_arcs)
        if (key.second == t && !out.unanalyzable) scan_arc(key.first, *e, false);

    // A variable demanded more than once cannot be matched through class
    // sums alone (two class-mates need not be one color twice).
    for (const auto& [var, mult] : input_mult)
        if (mult >= 2) out.unanalyzable = true;

    return out;
}

/// Per-place per-coordinate interval partition of the domain projection.
/// Every piece is itself an interval set (the projection may have holes).
struct CoordParts {
    std::vector<std::vector<std::vector<IntervalSet>>> parts;  // [place][coord] -> pieces

    explicit CoordParts(const ColoredNet& net) {
        parts.resize(net.places.size());
        for (std::size_t p = 0; p < net.places.size(); ++p) {
            std::size_t arity = net.places[p].domain.arity();
            parts[p].resize(arity);
            for (std::size_t j = 0; j < arity; ++j) {
                for (const Interval& piece : net.places[p].domain.project(j))
                    parts[p][j].push_back({piece});
                std::sort(parts[p][j].begin(), parts[p][j].end());
            }
        }
    }

    /// Split pieces of (p, j) at the given boundary points. Returns true when
    /// anything changed.
    bool split_at(std::size_t p, std::size_t j, const std::set<color_val_t>& points) {
        bool changed = false;
        std::vector<IntervalSet> next;
        for (const IntervalSet& piece : parts[p][j]) {
            // A piece may itself be a set of intervals (holes in the domain
            // projection); split every member interval.
            IntervalSet flat;
            for (const Interval& iv : piece) {
                color_val_t lo = iv.lo;
                auto it = points.upper_bound(lo);
                while (lo <= iv.hi) {
                    color_val_t hi = iv.hi;
                    if (it != points.end() && *it <= iv.hi) hi = *it - 1;
                    flat.push_back({lo, hi});
                    lo = hi + 1;
                    if (it != points.end() && *it == lo) ++it;
                }
            }
            if (flat.size() == piece.size()) {
                next.push_back(piece);
                continue;
            }
            changed = true;
            for (const Interval& iv : flat) next.push_back({iv});
        }
        if (changed) {
            std::sort(next.begin(), next.end());
            parts[p][j] = std::move(next);
        }
        return changed;
    }

    bool collapse(std::size_t p) {
        bool changed = false;
        for (std::size_t j = 0; j < parts[p].size(); ++j) {
            std::set<color_val_t> points;
            for (const IntervalSet& piece : parts[p][j])
                for (const Interval& iv : piece)
                    for (color_val_t v = iv.lo; v <= iv.hi; ++v) points.insert(v + 1);
            changed |= split_at(p, j, points);
        }
        return changed;
    }

    std::uint64_t class_estimate(std::size_t p) const {
        std::uint64_t n = 1;
        for (const auto& pieces : parts[p]) {
            n *= pieces.size();
            if (n > (1ull << 40)) return n;
        }
        return n;
    }
};

std::set<color_val_t> boundary_points(const IntervalSet& regions) {
    std::set<color_val_t> points;
    for (const Interval& iv : regions) {
        points.insert(iv.lo);
        points.insert(iv.hi + 1);
    }
    return points;
}

}  // namespace

Partition stabilize(const ColoredNet& net, const StabilizeOptions& options) {
    auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(options.budget_ms);
    auto out_of_budget = [&] { return std::chrono::steady_clock::now() > deadline; };

    std::vector<TransAnalysis> analysis;
    analysis.reserve(net.transitions.size());
    for (std::size_t t = 0; t < net.transitions.size(); ++t)
        analysis.push_back(analyze_transition(net, t));

    CoordParts parts(net);

    auto guard_big_collapse = [&](std::size_t p) {
        // Collapsing huge domains to singletons would not terminate in any
        // useful time; give up and let the caller fall back.
        if (net.places[p].domain.size() > options.class_cap)
            throw SizeLimitError("singleton collapse would exceed class cap for place " +
                                 net.places[p].id);
    };

    // Phase 1: guard and arc shape restrictions on input places.
    for (std::size_t t = 0; t < net.transitions.size(); ++t) {
        const TransAnalysis& a = analysis[t];
        VarRanges ranges = net.var_ranges(t);
        if (a.unanalyzable) {
            for (std::size_t p : net.preset_places(t)) {
                guard_big_collapse(p);
                parts.collapse(p);
            }
            continue;
        }
        for (const auto& [p, j, c] : a.input_consts) parts.split_at(p, j, {c, c + 1});
        for (std::size_t p : a.input_all_places) {
            guard_big_collapse(p);
            parts.collapse(p);
        }
        for (const auto& [var, occs] : a.input_occ) {
            const Interval& range = ranges.at(var);
            for (const VarOcc& occ : occs) {
                parts.split_at(occ.place, occ.coord, boundary_points({range}));
                auto sets = a.guard_atom_sets.find(var);
                if (sets == a.guard_atom_sets.end()) continue;
                for (const IntervalSet& sat : sets->second)
                    for (const Interval& region : sat)
                        parts.split_at(occ.place, occ.coord,
                                       boundary_points(cyclic_shift(region, occ.shift, range)));
            }
        }
    }

    // Phase 2: back-propagate output-place class boundaries onto the input
    // places of every writing transition, to a fixpoint.
    std::deque<std::size_t> queue;
    std::vector<bool> queued(net.places.size(), true);
    for (std::size_t p = 0; p < net.places.size(); ++p) queue.push_back(p);

    std::vector<std::vector<std::size_t>> writers(net.places.size());
    for (std::size_t p = 0; p < net.places.size(); ++p) writers[p] = net.preset_transitions(p);

    while (!queue.empty()) {
        if (out_of_budget()) return Partition::finest(net, options.class_cap);
        std::size_t p = queue.front();
        queue.pop_front();
        queued[p] = false;

        for (std::size_t t : writers[p]) {
            const TransAnalysis& a = analysis[t];
            if (a.unanalyzable) continue;
            VarRanges ranges = net.var_ranges(t);
            for (const auto& [var, occs] : a.output_occ) {
                const Interval& range = ranges.at(var);
                for (const VarOcc& occ : occs) {
                    if (occ.place != p) continue;
                    // Pull the coordinate pieces back onto the variable.
                    std::vector<IntervalSet> var_regions;
                    for (const IntervalSet& piece : parts.parts[p][occ.coord]) {
                        IntervalSet within = intervals_intersect(piece, {range});
                        if (within.empty()) continue;
                        var_regions.push_back(cyclic_shift_set(within, -occ.shift, range));
                    }
                    // Push onto every input occurrence of the variable.
                    auto inputs = a.input_occ.find(var);
                    if (inputs == a.input_occ.end()) continue;
                    for (const VarOcc& in : inputs->second) {
                        bool changed = false;
                        for (const IntervalSet& region : var_regions)
                            for (const Interval& iv : region)
                                changed |= parts.split_at(
                                    in.place, in.coord,
                                    boundary_points(cyclic_shift(iv, in.shift, range)));
                        if (changed && !queued[in.place]) {
                            queued[in.place] = true;
                            queue.push_back(in.place);
                        }
                    }
                }
            }
        }
    }

    // Materialize classes: products of coordinate pieces clipped to the
    // domain.
    Partition out;
    out.classes.resize(net.places.size());
    for (std::size_t p = 0; p < net.places.size(); ++p) {
        if (net.places[p].domain.empty()) continue;
        if (parts.class_estimate(p) > options.class_cap)
            throw SizeLimitError("partition for place " + net.places[p].id +
                                 " exceeds class cap");
        std::size_t arity = net.places[p].domain.arity();
        std::vector<std::size_t> idx(arity, 0);
        while (true) {
            std::vector<RangeTuple> boxes{RangeTuple{}};
            for (std::size_t j = 0; j < arity; ++j) {
                std::vector<RangeTuple> next;
                for (const RangeTuple& prefix : boxes)
                    for (const Interval& iv : parts.parts[p][j][idx[j]]) {
                        RangeTuple ext = prefix;
                        ext.ranges.push_back(iv);
                        next.push_back(std::move(ext));
                    }
                boxes = std::move(next);
            }
            ColorSet cls =
                ColorSet(arity, std::move(boxes)).set_intersect(net.places[p].domain);
            if (!cls.empty()) out.classes[p].push_back(std::move(cls));

            std::size_t j = arity;
            while (j > 0) {
                --j;
                if (++idx[j] < parts.parts[p][j].size()) break;
                idx[j] = 0;
                if (j == 0) {
                    j = arity + 1;
                    break;
                }
            }
            if (j == arity + 1 || arity == 0) break;
        }
        std::sort(out.classes[p].begin(), out.classes[p].end());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Stability oracle
// ---------------------------------------------------------------------------

bool is_stable_oracle(const ColoredNet& net, const Partition& delta,
                      std::uint64_t marking_cap) {
    std::vector<Marking> all = bounded_markings(net, marking_cap);

    struct ModeIO {
        std::vector<std::pair<std::size_t, Multiset>> consume, produce;
    };
    std::vector<std::vector<ModeIO>> modes(net.transitions.size());
    std::vector<std::vector<std::pair<std::size_t, std::uint64_t>>> inhib(net.transitions.size());
    for (std::size_t t = 0; t < net.transitions.size(); ++t) {
        for (const auto& [key, w] : net.inhibitors)
            if (key.second == t) inhib[t].emplace_back(key.first, w);
        for (const FiringMode& m : firing_modes(net, t)) {
            ModeIO io;
            for (std::size_t p = 0; p < net.places.size(); ++p) {
                Multiset c = mode_consume(net, p, t, m);
                if (!c.empty()) io.consume.emplace_back(p, std::move(c));
                Multiset pr = mode_produce(net, p, t, m);
                if (!pr.empty()) io.produce.emplace_back(p, std::move(pr));
            }
            modes[t].push_back(std::move(io));
        }
    }

    auto sig_key = [&](const Marking& m) {
        std::ostringstream os;
        for (const auto& row : marking_signature(delta, m)) {
            for (std::uint64_t v : row) os << v << ',';
            os << '|';
        }
        return os.str();
    };

    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < all.size(); ++i) groups[sig_key(all[i])].push_back(i);

    std::uint64_t pair_work = 0;
    for (const auto& [key, members] : groups)
        pair_work += static_cast<std::uint64_t>(members.size()) * members.size();
    if (pair_work * std::max<std::size_t>(net.transitions.size(), 1) > 50'000'000ull)
        throw SizeLimitError("stability oracle work bound exceeded");

    auto enabled_mode = [&](const Marking& m, std::size_t t, const ModeIO& io) {
        for (const auto& [p, w] : inhib[t])
            if (m.by_place[p].cardinality() >= w) return false;
        for (const auto& [p, need] : io.consume)
            if (!m.by_place[p].includes(need)) return false;
        return true;
    };
    auto successors = [&](const Marking& m, std::size_t t) {
        std::vector<std::string> out;
        for (const ModeIO& io : modes[t]) {
            if (!enabled_mode(m, t, io)) continue;
            Marking next = m;
            for (const auto& [p, need] : io.consume)
                next.by_place[p] = next.by_place[p].subtract(need);
            for (const auto& [p, add] : io.produce)
                next.by_place[p] = next.by_place[p].set_union(add);
            out.push_back(sig_key(next));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };

    for (const auto& [key, members] : groups) {
        if (members.size() < 2) continue;
        for (std::size_t t = 0; t < net.transitions.size(); ++t) {
            // Cache per-member enabledness and successor signatures.
            std::vector<bool> en(members.size());
            std::vector<std::vector<std::string>> succ(members.size());
            for (std::size_t i = 0; i < members.size(); ++i) {
                succ[i] = successors(all[members[i]], t);
                bool e = false;
                for (const ModeIO& io : modes[t])
                    if (enabled_mode(all[members[i]], t, io)) {
                        e = true;
                        break;
                    }
                en[i] = e;
            }
            for (std::size_t i = 0; i < members.size(); ++i)
                for (std::size_t j = i + 1; j < members.size(); ++j) {
                    if (en[i] != en[j]) return false;
                    // Matched successors: every successor class of one side
                    // must appear on the other.
                    if (succ[i] != succ[j]) return false;
                }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Quotient construction
// ---------------------------------------------------------------------------

namespace {

std::string mangle_value_suffix(const Binding& b) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [name, value] : b) {
        if (!first) os << '_';
        first = false;
        os << name << value;
    }
    return os.str();
}

}  // namespace

QuotientResult quotient(const ColoredNet& net, const Partition& delta, bool check_stability) {
    if (check_stability && !is_stable_oracle(net, delta))
        throw StructuralError("quotient: partition is not stable");
    if (delta.classes.size() != net.places.size())
        throw StructuralError("quotient: partition does not match net");

    QuotientResult result;
    result.representative_classes.resize(net.places.size());

    ColoredNet& q = result.net;
    std::vector<std::vector<Color>> reps(net.places.size());
    for (std::size_t p = 0; p < net.places.size(); ++p) {
        ColorSet domain(net.places[p].domain.arity());
        for (const ColorSet& cls : delta.classes[p]) {
            Color rep = cls.min_color();
            domain = domain.set_union(ColorSet::from_color(rep));
            reps[p].push_back(rep);
            result.representative_classes[p].emplace(rep, cls);
        }
        q.places.push_back({net.places[p].id, std::move(domain)});
    }

    q.initial.by_place.resize(net.places.size());
    std::vector<std::vector<std::uint64_t>> init_sig = marking_signature(delta, net.initial);
    for (std::size_t p = 0; p < net.places.size(); ++p)
        for (std::size_t k = 0; k < delta.classes[p].size(); ++k)
            if (init_sig[p][k] > 0) q.initial.by_place[p].add(reps[p][k], init_sig[p][k]);

    for (std::size_t t = 0; t < net.transitions.size(); ++t) {
        Transition qt;
        qt.id = net.transitions[t].id;
        std::vector<BindingRow> rows;
        // Signature of a firing mode: per place, per class, consumed and
        // produced token sums. Modes with equal signatures are one binding
        // class; the first (lexicographically smallest) mode is canonical.
        std::map<std::string, std::size_t> row_of_sig;
        for (const FiringMode& m : firing_modes(net, t)) {
            std::ostringstream sig;
            BindingRow row;
            row.consume.resize(net.places.size());
            row.produce.resize(net.places.size());
            for (std::size_t p = 0; p < net.places.size(); ++p) {
                Multiset in = mode_consume(net, p, t, m);
                Multiset out = mode_produce(net, p, t, m);
                for (std::size_t k = 0; k < delta.classes[p].size(); ++k) {
                    std::uint64_t cin = 0, cout = 0;
                    for (const auto& [c, n] : in.counts())
                        if (delta.classes[p][k].contains(c)) cin += n;
                    for (const auto& [c, n] : out.counts())
                        if (delta.classes[p][k].contains(c)) cout += n;
                    sig << cin << ':' << cout << ',';
                    if (cin) row.consume[p].add(reps[p][k], cin);
                    if (cout) row.produce[p].add(reps[p][k], cout);
                }
                sig << '|';
            }
            if (row_of_sig.emplace(sig.str(), rows.size()).second) {
                row.binding_id = m.row ? m.row->binding_id : mangle_value_suffix(m.binding);
                rows.push_back(std::move(row));
            }
        }
        qt.table = std::move(rows);
        q.transitions.push_back(std::move(qt));
    }

    q.inhibitors = net.inhibitors;
    return result;
}

}  // namespace cpn
