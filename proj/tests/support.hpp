#pragma once

#include <algorithm>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "cpn/net.hpp"
#include "cpn/textual.hpp"

namespace cpn::test {

inline std::string fixture_path(const std::string& name) {
    return std::string(CPN_FIXTURES_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline ColoredNet load_fixture(const std::string& name) {
    return parse_textual(read_file(fixture_path(name)));
}

inline std::string guard_str(const GuardExprPtr& g) { return g ? g->to_string() : "true"; }

/// Structural equality up to expression rendering.
inline bool nets_equal(const ColoredNet& a, const ColoredNet& b) {
    if (a.places.size() != b.places.size() || a.transitions.size() != b.transitions.size())
        return false;
    for (std::size_t p = 0; p < a.places.size(); ++p)
        if (a.places[p].id != b.places[p].id || a.places[p].domain != b.places[p].domain)
            return false;
    for (std::size_t t = 0; t < a.transitions.size(); ++t) {
        const Transition& x = a.transitions[t];
        const Transition& y = b.transitions[t];
        if (x.id != y.id || guard_str(x.guard) != guard_str(y.guard)) return false;
        if (x.variables.size() != y.variables.size()) return false;
        for (std::size_t v = 0; v < x.variables.size(); ++v)
            if (x.variables[v].name != y.variables[v].name ||
                !(x.variables[v].range == y.variables[v].range))
                return false;
    }
    auto arcs_equal = [](const std::map<ArcKey, ArcExprPtr>& m1,
                         const std::map<ArcKey, ArcExprPtr>& m2) {
        if (m1.size() != m2.size()) return false;
        auto it2 = m2.begin();
        for (const auto& [key, e] : m1) {
            if (key != it2->first || e->to_string() != it2->second->to_string()) return false;
            ++it2;
        }
        return true;
    };
    if (!arcs_equal(a.input_arcs, b.input_arcs)) return false;
    if (!arcs_equal(a.output_arcs, b.output_arcs)) return false;
    if (a.inhibitors != b.inhibitors) return false;
    return a.initial == b.initial;
}

struct GenOptions {
    int max_places = 4;
    int max_transitions = 3;
    int max_domain_size = 5;
    int max_vars = 2;
    int max_initial_tokens = 3;
};

/// Random integer CPN over the full arc/guard grammar (Sub only on output
/// arcs) with inhibitors. Transitions never produce more tokens than they
/// consume, so token counts never grow and the state space is finite.
inline ColoredNet random_net(std::mt19937& rng, const GenOptions& opt = {}) {
    auto pick = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    auto chance = [&](double p) {
        return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
    };

    ColoredNet net;
    int nplaces = pick(1, opt.max_places);
    for (int p = 0; p < nplaces; ++p) {
        bool pair_domain = opt.max_domain_size >= 4 && chance(0.3);
        ColorSet domain;
        if (pair_domain) {
            color_val_t lo1 = pick(0, 2), lo2 = pick(0, 2);
            color_val_t w1 = pick(1, 2), w2 = pick(1, 2);
            domain = ColorSet::from_tuple(RangeTuple{{lo1, lo1 + w1 - 1}, {lo2, lo2 + w2 - 1}});
        } else {
            color_val_t lo = pick(0, 3);
            color_val_t w = pick(1, opt.max_domain_size);
            domain = ColorSet::from_tuple(RangeTuple{{lo, lo + w - 1}});
        }
        net.places.push_back({"p" + std::to_string(p), std::move(domain)});
    }

    net.initial.by_place.resize(nplaces);
    int tokens = pick(0, opt.max_initial_tokens);
    for (int i = 0; i < tokens; ++i) {
        int p = pick(0, nplaces - 1);
        auto colors = net.places[p].domain.enumerate();
        net.initial.by_place[p].add(colors[pick(0, static_cast<int>(colors.size()) - 1)], 1);
    }

    int ntrans = pick(1, opt.max_transitions);
    for (int ti = 0; ti < ntrans; ++ti) {
        Transition t;
        t.id = "t" + std::to_string(ti);
        int nvars = pick(0, opt.max_vars);
        for (int v = 0; v < nvars; ++v) {
            color_val_t lo = pick(0, 3);
            color_val_t w = pick(1, 3);
            t.variables.push_back({"v" + std::to_string(v), {lo, lo + w - 1}});
        }

        auto rand_simple = [&](std::size_t coord_hint, const ColorSet& domain) -> SimpleExpr {
            IntervalSet proj = domain.project(coord_hint);
            if (nvars == 0 || chance(0.25)) {
                const Interval& r = proj[pick(0, static_cast<int>(proj.size()) - 1)];
                return SimpleExpr::constant(
                    pick(static_cast<int>(r.lo), static_cast<int>(r.hi)));
            }
            std::string var = "v" + std::to_string(pick(0, nvars - 1));
            if (chance(0.4)) return SimpleExpr::shifted(var, chance(0.5) ? 1 : -1);
            return SimpleExpr::variable(var);
        };

        // Guard over the full grammar; variable-variable atoms included.
        std::function<GuardExprPtr(int)> rand_guard = [&](int depth) -> GuardExprPtr {
            if (depth == 0 || chance(0.4)) {
                if (nvars == 0 || chance(0.15)) return guard_const(chance(0.8));
                std::string var = "v" + std::to_string(pick(0, nvars - 1));
                SimpleExpr lhs = chance(0.3) ? SimpleExpr::shifted(var, chance(0.5) ? 1 : -1)
                                             : SimpleExpr::variable(var);
                CmpOp ops[] = {CmpOp::Lt, CmpOp::Le, CmpOp::Gt,
                               CmpOp::Ge, CmpOp::Eq, CmpOp::Neq};
                CmpOp op = ops[pick(0, 5)];
                if (nvars >= 2 && chance(0.25)) {
                    std::string other = "v" + std::to_string(pick(0, nvars - 1));
                    return guard_cmp(op, lhs, SimpleExpr::variable(other));
                }
                return guard_cmp(op, lhs, SimpleExpr::constant(pick(0, 5)));
            }
            if (chance(0.2)) return guard_not(rand_guard(depth - 1));
            if (chance(0.5)) return guard_and(rand_guard(depth - 1), rand_guard(depth - 1));
            return guard_or(rand_guard(depth - 1), rand_guard(depth - 1));
        };
        if (chance(0.7)) t.guard = rand_guard(2);

        net.transitions.push_back(std::move(t));
        std::size_t tidx = net.transitions.size() - 1;

        // Input arcs: constant cardinality per binding (no Sub), which bounds
        // the output budget.
        std::uint64_t budget = 0;
        int nin = pick(0, std::min(2, nplaces));
        std::vector<int> in_places;
        for (int i = 0; i < nin; ++i) {
            int p = pick(0, nplaces - 1);
            if (std::find(in_places.begin(), in_places.end(), p) != in_places.end()) continue;
            in_places.push_back(p);
            const ColorSet& domain = net.places[p].domain;
            ArcExprPtr expr;
            int summands = pick(1, 2);
            for (int s = 0; s < summands; ++s) {
                ArcExprPtr piece;
                if (chance(0.1)) {
                    piece = arc_all(domain);
                    budget += domain.size();
                } else {
                    std::uint64_t n = chance(0.2) ? 2 : 1;
                    std::vector<SimpleExpr> tuple;
                    for (std::size_t j = 0; j < domain.arity(); ++j)
                        tuple.push_back(rand_simple(j, domain));
                    piece = arc_number_of(n, std::move(tuple));
                    budget += n;
                }
                expr = expr ? arc_add(std::move(expr), std::move(piece)) : std::move(piece);
            }
            if (chance(0.15)) {
                expr = arc_scale(2, std::move(expr));
                budget *= 2;
            }
            net.input_arcs[{static_cast<std::size_t>(p), tidx}] = std::move(expr);
        }

        int nout = budget == 0 ? 0 : pick(0, std::min(2, nplaces));
        std::vector<int> out_places;
        for (int i = 0; i < nout && budget > 0; ++i) {
            int p = pick(0, nplaces - 1);
            if (std::find(out_places.begin(), out_places.end(), p) != out_places.end()) continue;
            out_places.push_back(p);
            const ColorSet& domain = net.places[p].domain;
            ArcExprPtr expr;
            if (chance(0.1) && domain.size() <= budget) {
                expr = arc_all(domain);
                budget -= domain.size();
            } else {
                std::uint64_t n = (budget >= 2 && chance(0.2)) ? 2 : 1;
                std::vector<SimpleExpr> tuple;
                for (std::size_t j = 0; j < domain.arity(); ++j)
                    tuple.push_back(rand_simple(j, domain));
                expr = arc_number_of(n, std::move(tuple));
                budget -= n;
            }
            if (chance(0.15)) {
                // Sub keeps the upper bound of its left side.
                std::vector<SimpleExpr> tuple;
                for (std::size_t j = 0; j < domain.arity(); ++j)
                    tuple.push_back(rand_simple(j, domain));
                expr = arc_sub(std::move(expr), arc_number_of(1, std::move(tuple)));
            }
            net.output_arcs[{static_cast<std::size_t>(p), tidx}] = std::move(expr);
        }

        if (chance(0.3)) {
            int p = pick(0, nplaces - 1);
            net.inhibitors[{static_cast<std::size_t>(p), tidx}] = pick(1, 2);
        }
    }
    return net;
}

}  // namespace cpn::test
