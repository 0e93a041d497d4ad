#include "cpn/expr.hpp"

#include <sstream>

namespace cpn {

SimpleExpr SimpleExpr::constant(color_val_t v) {
    SimpleExpr e;
    e.kind = Kind::Const;
    e.value = v;
    return e;
}

SimpleExpr SimpleExpr::variable(std::string name) {
    SimpleExpr e;
    e.kind = Kind::Var;
    e.var = std::move(name);
    return e;
}

SimpleExpr SimpleExpr::shifted(std::string name, std::int64_t delta) {
    if (delta == 0) return variable(std::move(name));
    SimpleExpr e;
    e.kind = Kind::VarShift;
    e.var = std::move(name);
    e.shift = delta;
    return e;
}

std::string SimpleExpr::to_string() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Const: os << value; break;
        case Kind::Var: os << var; break;
        case Kind::VarShift:
            os << var << (shift >= 0 ? "+" : "-") << (shift >= 0 ? shift : -shift);
            break;
    }
    return os.str();
}

ArcExprPtr arc_number_of(std::uint64_t n, std::vector<SimpleExpr> tuple) {
    return std::make_shared<ArcExpr>(ArcExpr{ArcNumberOf{n, std::move(tuple)}});
}
ArcExprPtr arc_all(ColorSet domain) {
    return std::make_shared<ArcExpr>(ArcExpr{ArcAll{std::move(domain)}});
}
ArcExprPtr arc_add(ArcExprPtr l, ArcExprPtr r) {
    return std::make_shared<ArcExpr>(ArcExpr{ArcAdd{std::move(l), std::move(r)}});
}
ArcExprPtr arc_sub(ArcExprPtr l, ArcExprPtr r) {
    return std::make_shared<ArcExpr>(ArcExpr{ArcSub{std::move(l), std::move(r)}});
}
ArcExprPtr arc_scale(std::uint64_t n, ArcExprPtr inner) {
    return std::make_shared<ArcExpr>(ArcExpr{ArcScale{n, std::move(inner)}});
}

std::string ArcExpr::to_string() const {
    std::ostringstream os;
    if (auto* n = std::get_if<ArcNumberOf>(&node)) {
        os << n->count << "'(";
        for (std::size_t i = 0; i < n->tuple.size(); ++i) {
            if (i) os << ',';
            os << n->tuple[i].to_string();
        }
        os << ')';
    } else if (auto* a = std::get_if<ArcAll>(&node)) {
        os << a->domain.to_literal() << ".all";
    } else if (auto* add = std::get_if<ArcAdd>(&node)) {
        os << add->lhs->to_string() << " + " << add->rhs->to_string();
    } else if (auto* sub = std::get_if<ArcSub>(&node)) {
        os << sub->lhs->to_string() << " - (" << sub->rhs->to_string() << ')';
    } else if (auto* s = std::get_if<ArcScale>(&node)) {
        os << s->factor << " * (" << s->inner->to_string() << ')';
    }
    return os.str();
}

std::string cmp_op_symbol(CmpOp op) {
    switch (op) {
        case CmpOp::Lt: return "<";
        case CmpOp::Le: return "<=";
        case CmpOp::Gt: return ">";
        case CmpOp::Ge: return ">=";
        case CmpOp::Eq: return "==";
        case CmpOp::Neq: return "!=";
    }
    return "?";
}

bool cmp_apply(CmpOp op, color_val_t a, color_val_t b) {
    switch (op) {
        case CmpOp::Lt: return a < b;
        case CmpOp::Le: return a <= b;
        case CmpOp::Gt: return a > b;
        case CmpOp::Ge: return a >= b;
        case CmpOp::Eq: return a == b;
        case CmpOp::Neq: return a != b;
    }
    return false;
}

CmpOp cmp_negate(CmpOp op) {
    switch (op) {
        case CmpOp::Lt: return CmpOp::Ge;
        case CmpOp::Le: return CmpOp::Gt;
        case CmpOp::Gt: return CmpOp::Le;
        case CmpOp::Ge: return CmpOp::Lt;
        case CmpOp::Eq: return CmpOp::Neq;
        case CmpOp::Neq: return CmpOp::Eq;
    }
    return op;
}

GuardExprPtr guard_const(bool v) {
    return std::make_shared<GuardExpr>(GuardExpr{GuardConst{v}});
}
GuardExprPtr guard_not(GuardExprPtr g) {
    return std::make_shared<GuardExpr>(GuardExpr{GuardNot{std::move(g)}});
}
GuardExprPtr guard_and(GuardExprPtr l, GuardExprPtr r) {
    return std::make_shared<GuardExpr>(GuardExpr{GuardAnd{std::move(l), std::move(r)}});
}
GuardExprPtr guard_or(GuardExprPtr l, GuardExprPtr r) {
    return std::make_shared<GuardExpr>(GuardExpr{GuardOr{std::move(l), std::move(r)}});
}
GuardExprPtr guard_cmp(CmpOp op, SimpleExpr l, SimpleExpr r) {
    return std::make_shared<GuardExpr>(GuardExpr{GuardCmp{op, std::move(l), std::move(r)}});
}
GuardExprPtr guard_ms_cmp(bool equal, ArcExprPtr l, ArcExprPtr r) {
    return std::make_shared<GuardExpr>(GuardExpr{GuardMsCmp{equal, std::move(l), std::move(r)}});
}

std::string GuardExpr::to_string() const {
    std::ostringstream os;
    if (auto* c = std::get_if<GuardConst>(&node)) {
        os << (c->value ? "true" : "false");
    } else if (auto* n = std::get_if<GuardNot>(&node)) {
        os << "!(" << n->inner->to_string() << ')';
    } else if (auto* a = std::get_if<GuardAnd>(&node)) {
        os << '(' << a->lhs->to_string() << " && " << a->rhs->to_string() << ')';
    } else if (auto* o = std::get_if<GuardOr>(&node)) {
        os << '(' << o->lhs->to_string() << " || " << o->rhs->to_string() << ')';
    } else if (auto* cmp = std::get_if<GuardCmp>(&node)) {
        os << cmp->lhs.to_string() << ' ' << cmp_op_symbol(cmp->op) << ' '
           << cmp->rhs.to_string();
    } else if (auto* ms = std::get_if<GuardMsCmp>(&node)) {
        os << ms->lhs->to_string() << (ms->equal ? " == " : " != ") << ms->rhs->to_string();
    }
    return os.str();
}

std::string binding_to_string(const Binding& b) {
    std::ostringstream os;
    os << '<';
    bool first = true;
    for (const auto& [name, value] : b) {
        if (!first) os << ',';
        first = false;
        os << name << '=' << value;
    }
    os << '>';
    return os.str();
}

color_val_t eval_simple(const SimpleExpr& e, const Binding& b, const VarRanges& ranges) {
    switch (e.kind) {
        case SimpleExpr::Kind::Const: return e.value;
        case SimpleExpr::Kind::Var: {
            auto it = b.find(e.var);
            if (it == b.end()) throw EvalError("unbound variable " + e.var);
            return it->second;
        }
        case SimpleExpr::Kind::VarShift: {
            auto it = b.find(e.var);
            if (it == b.end()) throw EvalError("unbound variable " + e.var);
            auto rit = ranges.find(e.var);
            if (rit == ranges.end()) throw EvalError("no base range for variable " + e.var);
            return cyclic_shift_value(it->second, e.shift, rit->second);
        }
    }
    throw EvalError("bad simple expression");
}

Multiset eval_arc(const ArcExpr& e, const Binding& b, const VarRanges& ranges) {
    if (auto* n = std::get_if<ArcNumberOf>(&e.node)) {
        std::vector<color_val_t> comps;
        comps.reserve(n->tuple.size());
        for (const SimpleExpr& s : n->tuple) comps.push_back(eval_simple(s, b, ranges));
        return Multiset::of(Color(std::move(comps)), n->count);
    }
    if (auto* a = std::get_if<ArcAll>(&e.node)) {
        Multiset m;
        for (const Color& c : a->domain.enumerate()) m.add(c, 1);
        return m;
    }
    if (auto* add = std::get_if<ArcAdd>(&e.node))
        return eval_arc(*add->lhs, b, ranges).set_union(eval_arc(*add->rhs, b, ranges));
    if (auto* sub = std::get_if<ArcSub>(&e.node))
        return eval_arc(*sub->lhs, b, ranges).subtract(eval_arc(*sub->rhs, b, ranges));
    if (auto* s = std::get_if<ArcScale>(&e.node))
        return eval_arc(*s->inner, b, ranges).scale(s->factor);
    throw EvalError("bad arc expression");
}

bool eval_guard(const GuardExpr& g, const Binding& b, const VarRanges& ranges) {
    if (auto* c = std::get_if<GuardConst>(&g.node)) return c->value;
    if (auto* n = std::get_if<GuardNot>(&g.node)) return !eval_guard(*n->inner, b, ranges);
    if (auto* a = std::get_if<GuardAnd>(&g.node))
        return eval_guard(*a->lhs, b, ranges) && eval_guard(*a->rhs, b, ranges);
    if (auto* o = std::get_if<GuardOr>(&g.node))
        return eval_guard(*o->lhs, b, ranges) || eval_guard(*o->rhs, b, ranges);
    if (auto* cmp = std::get_if<GuardCmp>(&g.node))
        return cmp_apply(cmp->op, eval_simple(cmp->lhs, b, ranges),
                         eval_simple(cmp->rhs, b, ranges));
    if (auto* ms = std::get_if<GuardMsCmp>(&g.node)) {
        bool eq = eval_arc(*ms->lhs, b, ranges) == eval_arc(*ms->rhs, b, ranges);
        return ms->equal ? eq : !eq;
    }
    throw EvalError("bad guard expression");
}

std::uint64_t arc_cardinality_bound(const ArcExpr& e) {
    if (auto* n = std::get_if<ArcNumberOf>(&e.node)) return n->count;
    if (auto* a = std::get_if<ArcAll>(&e.node)) return a->domain.size();
    if (auto* add = std::get_if<ArcAdd>(&e.node))
        return arc_cardinality_bound(*add->lhs) + arc_cardinality_bound(*add->rhs);
    if (auto* sub = std::get_if<ArcSub>(&e.node)) return arc_cardinality_bound(*sub->lhs);
    if (auto* s = std::get_if<ArcScale>(&e.node))
        return s->factor * arc_cardinality_bound(*s->inner);
    return 0;
}

namespace {

void flatten_into(const ArcExpr& e, std::uint64_t mult, ArcSummands& out) {
    if (auto* n = std::get_if<ArcNumberOf>(&e.node)) {
        out.summands.push_back({mult * n->count, n, nullptr});
    } else if (auto* a = std::get_if<ArcAll>(&e.node)) {
        out.summands.push_back({mult, nullptr, a});
    } else if (auto* add = std::get_if<ArcAdd>(&e.node)) {
        flatten_into(*add->lhs, mult, out);
        flatten_into(*add->rhs, mult, out);
    } else if (auto* sub = std::get_if<ArcSub>(&e.node)) {
        out.has_sub = true;
        flatten_into(*sub->lhs, mult, out);
        flatten_into(*sub->rhs, mult, out);
    } else if (auto* s = std::get_if<ArcScale>(&e.node)) {
        flatten_into(*s->inner, mult * s->factor, out);
    }
}

}  // namespace

ArcSummands flatten_arc(const ArcExpr& e) {
    ArcSummands out;
    flatten_into(e, 1, out);
    return out;
}

void collect_arc_vars(const ArcExpr& e, std::set<std::string>& out) {
    for (const auto& s : flatten_arc(e).summands)
        if (s.number_of)
            for (const SimpleExpr& t : s.number_of->tuple)
                if (t.mentions_var()) out.insert(t.var);
}

void collect_guard_vars(const GuardExpr& g, std::set<std::string>& out) {
    if (auto* n = std::get_if<GuardNot>(&g.node)) {
        collect_guard_vars(*n->inner, out);
    } else if (auto* a = std::get_if<GuardAnd>(&g.node)) {
        collect_guard_vars(*a->lhs, out);
        collect_guard_vars(*a->rhs, out);
    } else if (auto* o = std::get_if<GuardOr>(&g.node)) {
        collect_guard_vars(*o->lhs, out);
        collect_guard_vars(*o->rhs, out);
    } else if (auto* cmp = std::get_if<GuardCmp>(&g.node)) {
        if (cmp->lhs.mentions_var()) out.insert(cmp->lhs.var);
        if (cmp->rhs.mentions_var()) out.insert(cmp->rhs.var);
    } else if (auto* ms = std::get_if<GuardMsCmp>(&g.node)) {
        collect_arc_vars(*ms->lhs, out);
        collect_arc_vars(*ms->rhs, out);
    }
}

}  // namespace cpn
