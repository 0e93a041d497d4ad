#include "cpn/approx.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>

#ifdef CPN_HAVE_OPENMP
#include <omp.h>
#endif

namespace cpn {

namespace {

using VarSets = std::map<std::string, IntervalSet>;

VarSets full_sets(const VarRanges& ranges) {
    VarSets out;
    for (const auto& [name, r] : ranges) out[name] = {r};
    return out;
}

VarSets empty_sets(const VarRanges& ranges) {
    VarSets out;
    for (const auto& [name, r] : ranges) out[name] = {};
    return out;
}

VarSets sets_intersect(const VarSets& a, const VarSets& b) {
    VarSets out;
    for (const auto& [name, s] : a) out[name] = intervals_intersect(s, b.at(name));
    return out;
}

VarSets sets_union(const VarSets& a, const VarSets& b) {
    VarSets out;
    for (const auto& [name, s] : a) out[name] = intervals_union(s, b.at(name));
    return out;
}

bool arc_expr_ground(const ArcExpr& e) {
    std::set<std::string> vars;
    collect_arc_vars(e, vars);
    return vars.empty();
}

/// Per-variable overapproximation of the guard's satisfying bindings,
/// computed in negation normal form. Unanalyzable atoms contribute the full
/// range.
VarSets guard_feasible(const GuardExpr& g, const VarRanges& ranges, bool negated) {
    if (auto* c = std::get_if<GuardConst>(&g.node))
        return (c->value != negated) ? full_sets(ranges) : empty_sets(ranges);
    if (auto* n = std::get_if<GuardNot>(&g.node))
        return guard_feasible(*n->inner, ranges, !negated);
    if (auto* a = std::get_if<GuardAnd>(&g.node)) {
        VarSets l = guard_feasible(*a->lhs, ranges, negated);
        VarSets r = guard_feasible(*a->rhs, ranges, negated);
        return negated ? sets_union(l, r) : sets_intersect(l, r);
    }
    if (auto* o = std::get_if<GuardOr>(&g.node)) {
        VarSets l = guard_feasible(*o->lhs, ranges, negated);
        VarSets r = guard_feasible(*o->rhs, ranges, negated);
        return negated ? sets_intersect(l, r) : sets_union(l, r);
    }
    if (auto* cmp = std::get_if<GuardCmp>(&g.node)) {
        CmpOp op = negated ? cmp_negate(cmp->op) : cmp->op;
        bool lv = cmp->lhs.mentions_var();
        bool rv = cmp->rhs.mentions_var();
        if (!lv && !rv)
            return cmp_apply(op, cmp->lhs.value, cmp->rhs.value) ? full_sets(ranges)
                                                                 : empty_sets(ranges);
        if (lv && rv) return full_sets(ranges);  // coupling not tracked
        const SimpleExpr& vs = lv ? cmp->lhs : cmp->rhs;
        color_val_t c = lv ? cmp->rhs.value : cmp->lhs.value;
        if (rv) {
            switch (op) {
                case CmpOp::Lt: op = CmpOp::Gt; break;
                case CmpOp::Le: op = CmpOp::Ge; break;
                case CmpOp::Gt: op = CmpOp::Lt; break;
                case CmpOp::Ge: op = CmpOp::Le; break;
                default: break;
            }
        }
        const Interval& range = ranges.at(vs.var);
        IntervalSet shifted;
        switch (op) {
            case CmpOp::Lt:
                if (c > range.lo) shifted = {{range.lo, std::min(c - 1, range.hi)}};
                break;
            case CmpOp::Le:
                if (c >= range.lo) shifted = {{range.lo, std::min(c, range.hi)}};
                break;
            case CmpOp::Gt:
                if (c < range.hi) shifted = {{std::max(c + 1, range.lo), range.hi}};
                break;
            case CmpOp::Ge:
                if (c <= range.hi) shifted = {{std::max(c, range.lo), range.hi}};
                break;
            case CmpOp::Eq:
                if (range.contains(c)) shifted = {{c, c}};
                break;
            case CmpOp::Neq:
                shifted = intervals_complement_within({{c, c}}, range);
                break;
        }
        VarSets out = full_sets(ranges);
        out[vs.var] = cyclic_shift_set(shifted, -vs.shift, range);
        return out;
    }
    if (auto* ms = std::get_if<GuardMsCmp>(&g.node)) {
        if (arc_expr_ground(*ms->lhs) && arc_expr_ground(*ms->rhs)) {
            bool eq = eval_arc(*ms->lhs, {}, ranges) == eval_arc(*ms->rhs, {}, ranges);
            bool truth = ms->equal ? eq : !eq;
            return (truth != negated) ? full_sets(ranges) : empty_sets(ranges);
        }
        return full_sets(ranges);
    }
    return full_sets(ranges);
}

/// One demanded tuple summand on an input arc, with the owning place.
struct InputSummand {
    std::size_t place = 0;
    const ArcNumberOf* tuple = nullptr;
};

struct TransitionShape {
    bool never_feasible = false;        // structurally dead (e.g. guard false)
    std::vector<InputSummand> demands;  // constrained input summands
    std::vector<std::pair<std::size_t, ColorSet>> all_domains;  // .all input demands
    std::vector<std::pair<std::size_t, ArcExprPtr>> outputs;  // (place, expression)
    VarSets guard_sets;
    VarRanges ranges;
};

TransitionShape shape_of(const ColoredNet& net, std::size_t t) {
    TransitionShape s;
    s.ranges = net.var_ranges(t);
    const Transition& tr = net.transitions[t];
    s.guard_sets = tr.guard ? guard_feasible(*tr.guard, s.ranges, false) : full_sets(s.ranges);
    for (const auto& [name, set] : s.guard_sets)
        if (set.empty()) s.never_feasible = true;
    if (tr.guard && s.ranges.empty()) {
        // No variables: the guard is ground.
        if (!eval_guard(*tr.guard, {}, s.ranges)) s.never_feasible = true;
    }

    for (const auto& [key, e] : net.input_arcs) {
        if (key.second != t) continue;
        ArcSummands flat = flatten_arc(*e);
        if (flat.has_sub) continue;  // demand treated as absent
        for (const auto& sm : flat.summands) {
            if (sm.all)
                s.all_domains.emplace_back(key.first, sm.all->domain);
            else
                s.demands.push_back({key.first, sm.number_of});
        }
    }
    for (const auto& [key, e] : net.output_arcs)
        if (key.second == t) s.outputs.emplace_back(key.first, e);
    return s;
}

/// Constraints a demanded tuple places on the variables when the demanded
/// color must fall into one range tuple of the approximation.
bool summand_constraints(const InputSummand& d, const RangeTuple& rt, const VarRanges& ranges,
                         VarSets& into) {
    for (std::size_t j = 0; j < d.tuple->tuple.size(); ++j) {
        const SimpleExpr& se = d.tuple->tuple[j];
        if (!se.mentions_var()) {
            if (!rt.ranges[j].contains(se.value)) return false;
            continue;
        }
        const Interval& range = ranges.at(se.var);
        std::int64_t shift = se.kind == SimpleExpr::Kind::VarShift ? se.shift : 0;
        IntervalSet demanded = intervals_intersect({rt.ranges[j]}, {range});
        IntervalSet vals = cyclic_shift_set(demanded, -shift, range);
        into[se.var] = intervals_intersect(into[se.var], vals);
        if (into[se.var].empty()) return false;
    }
    return true;
}

/// Produced color boxes of an output expression for the given feasible
/// variable sets. Sub contributes its left side only; .all contributes the
/// whole domain.
void emit_output(const ArcExpr& e, const VarSets& feasible, const VarRanges& ranges,
                 std::vector<RangeTuple>& out, ColorSet& all_out) {
    if (auto* n = std::get_if<ArcNumberOf>(&e.node)) {
        std::vector<IntervalSet> per_pos;
        per_pos.reserve(n->tuple.size());
        for (const SimpleExpr& se : n->tuple) {
            if (!se.mentions_var()) {
                per_pos.push_back({{se.value, se.value}});
                continue;
            }
            const Interval& range = ranges.at(se.var);
            std::int64_t shift = se.kind == SimpleExpr::Kind::VarShift ? se.shift : 0;
            per_pos.push_back(cyclic_shift_set(feasible.at(se.var), shift, range));
        }
        for (const IntervalSet& s : per_pos)
            if (s.empty()) return;
        std::vector<RangeTuple> boxes{RangeTuple{}};
        for (const IntervalSet& s : per_pos) {
            std::vector<RangeTuple> next;
            for (const RangeTuple& prefix : boxes)
                for (const Interval& iv : s) {
                    RangeTuple ext = prefix;
                    ext.ranges.push_back(iv);
                    next.push_back(std::move(ext));
                }
            boxes = std::move(next);
        }
        out.insert(out.end(), boxes.begin(), boxes.end());
    } else if (auto* a = std::get_if<ArcAll>(&e.node)) {
        all_out = all_out.set_union(a->domain);
    } else if (auto* add = std::get_if<ArcAdd>(&e.node)) {
        emit_output(*add->lhs, feasible, ranges, out, all_out);
        emit_output(*add->rhs, feasible, ranges, out, all_out);
    } else if (auto* sub = std::get_if<ArcSub>(&e.node)) {
        emit_output(*sub->lhs, feasible, ranges, out, all_out);
    } else if (auto* sc = std::get_if<ArcScale>(&e.node)) {
        emit_output(*sc->inner, feasible, ranges, out, all_out);
    }
}

/// Contribution of one transition to E(a): union of produced color supports
/// over all feasible input-tuple combinations.
std::vector<ColorSet> transition_contribution(const ColoredNet& net, std::size_t t,
                                              const Approximation& a,
                                              const ExpandOptions& options) {
    std::vector<ColorSet> result(net.places.size());
    for (std::size_t p = 0; p < net.places.size(); ++p)
        result[p] = ColorSet(net.places[p].domain.arity());

    const Transition& tr = net.transitions[t];
    if (tr.tabulated()) {
        for (const BindingRow& row : *tr.table) {
            bool feasible = true;
            for (std::size_t p = 0; p < net.places.size() && feasible; ++p)
                for (const Color& c : row.consume[p].support())
                    if (!a.possible[p].contains(c)) {
                        feasible = false;
                        break;
                    }
            if (!feasible) continue;
            for (std::size_t p = 0; p < net.places.size(); ++p)
                for (const Color& c : row.produce[p].support())
                    if (net.places[p].domain.contains(c))
                        result[p] = result[p].set_union(ColorSet::from_color(c));
        }
        return result;
    }

    TransitionShape shape = shape_of(net, t);
    if (shape.never_feasible) return result;
    for (const auto& [p, dom] : shape.all_domains)
        if (!dom.is_subset_of(a.possible[p])) return result;

    // Scenario enumeration: one approximation tuple per demanded summand.
    std::uint64_t scenario_count = 1;
    bool decouple = false;
    for (const InputSummand& d : shape.demands) {
        if (a.possible[d.place].tuples().empty()) return result;  // demand unsatisfiable
        scenario_count *= a.possible[d.place].tuples().size();
        if (scenario_count > options.scenario_cap) {
            decouple = true;
            break;
        }
    }

    auto emit_for = [&](const VarSets& feasible) {
        for (const auto& [p, expr] : shape.outputs) {
            std::vector<RangeTuple> boxes;
            ColorSet alls(net.places[p].domain.arity());
            emit_output(*expr, feasible, shape.ranges, boxes, alls);
            ColorSet produced = ColorSet(net.places[p].domain.arity(), std::move(boxes))
                                    .set_union(alls)
                                    .set_intersect(net.places[p].domain);
            result[p] = result[p].set_union(produced);
        }
    };

    if (decouple) {
        VarSets feasible = sets_intersect(full_sets(shape.ranges), shape.guard_sets);
        for (const InputSummand& d : shape.demands) {
            VarSets any = empty_sets(shape.ranges);
            bool some = false;
            for (const RangeTuple& rt : a.possible[d.place].tuples()) {
                VarSets one = full_sets(shape.ranges);
                if (summand_constraints(d, rt, shape.ranges, one)) {
                    any = sets_union(any, one);
                    some = true;
                }
            }
            if (!some) return result;
            feasible = sets_intersect(feasible, any);
        }
        for (const auto& [name, s] : feasible)
            if (s.empty()) return result;
        emit_for(feasible);
        return result;
    }

    std::vector<std::size_t> idx(shape.demands.size(), 0);
    while (true) {
        VarSets feasible = sets_intersect(full_sets(shape.ranges), shape.guard_sets);
        bool ok = true;
        for (const auto& [name, s] : feasible)
            if (s.empty()) ok = false;
        for (std::size_t i = 0; i < shape.demands.size() && ok; ++i) {
            const InputSummand& d = shape.demands[i];
            const RangeTuple& rt = a.possible[d.place].tuples()[idx[i]];
            ok = summand_constraints(d, rt, shape.ranges, feasible);
        }
        if (ok) emit_for(feasible);

        std::size_t i = shape.demands.size();
        while (i > 0) {
            --i;
            if (++idx[i] < a.possible[shape.demands[i].place].tuples().size()) break;
            idx[i] = 0;
            if (i == 0) {
                i = shape.demands.size() + 1;
                break;
            }
        }
        if (i == shape.demands.size() + 1 || shape.demands.empty()) break;
    }
    return result;
}

}  // namespace

Approximation initial_approx(const ColoredNet& net) {
    Approximation a;
    a.possible.resize(net.places.size());
    for (std::size_t p = 0; p < net.places.size(); ++p) {
        ColorSet s(net.places[p].domain.arity());
        for (const Color& c : net.initial.by_place[p].support())
            s = s.set_union(ColorSet::from_color(c));
        a.possible[p] = std::move(s);
    }
    return a;
}

Approximation expand(const ColoredNet& net, const Approximation& a,
                     const ExpandOptions& options) {
    std::vector<std::vector<ColorSet>> contributions(net.transitions.size());
#ifdef CPN_HAVE_OPENMP
    if (options.threads > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(options.threads)
        for (std::size_t t = 0; t < net.transitions.size(); ++t)
            contributions[t] = transition_contribution(net, t, a, options);
    } else
#endif
    {
        for (std::size_t t = 0; t < net.transitions.size(); ++t)
            contributions[t] = transition_contribution(net, t, a, options);
    }

    Approximation out = a;
    for (std::size_t t = 0; t < net.transitions.size(); ++t)
        for (std::size_t p = 0; p < net.places.size(); ++p)
            if (!contributions[t][p].empty())
                out.possible[p] = out.possible[p].set_union(contributions[t][p]);
    return out;
}

Approximation fixed_point(const ColoredNet& net, const FixedPointOptions& options) {
    auto deadline =
        std::chrono::steady_clock::now() + std::chrono::milliseconds(options.budget_ms);
    Approximation a = initial_approx(net);
    while (true) {
        if (std::chrono::steady_clock::now() > deadline) {
            Approximation full;
            full.possible.resize(net.places.size());
            for (std::size_t p = 0; p < net.places.size(); ++p)
                full.possible[p] = net.places[p].domain;
            return full;
        }
        Approximation next = expand(net, a, options.expand);
        if (next == a) return a;
        a = std::move(next);
    }
}

bool subsumes(const Approximation& a, const Marking& m) {
    if (m.by_place.size() != a.possible.size()) return false;
    for (std::size_t p = 0; p < a.possible.size(); ++p)
        for (const Color& c : m.by_place[p].support())
            if (!a.possible[p].contains(c)) return false;
    return true;
}

ColoredNet restrict_net(const ColoredNet& net, const Approximation& a) {
    if (!subsumes(a, net.initial))
        throw StructuralError("restrict: approximation does not cover the initial marking");
    ColoredNet out = net;
    for (std::size_t p = 0; p < net.places.size(); ++p)
        out.places[p].domain = net.places[p].domain.set_intersect(a.possible[p]);
    return out;
}

}  // namespace cpn
