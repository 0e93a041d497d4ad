#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cpn/color.hpp"
#include "cpn/multiset.hpp"

namespace cpn {

struct EvalError : std::runtime_error {
    explicit EvalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// tau ::= c | x | x +- s. The shift is nonzero for the shifted form and
/// evaluates cyclically within the variable's base range.
struct SimpleExpr {
    enum class Kind { Const, Var, VarShift };
    Kind kind = Kind::Const;
    color_val_t value = 0;   // Const
    std::string var;         // Var, VarShift
    std::int64_t shift = 0;  // VarShift, nonzero

    static SimpleExpr constant(color_val_t v);
    static SimpleExpr variable(std::string name);
    static SimpleExpr shifted(std::string name, std::int64_t delta);

    bool mentions_var() const { return kind != Kind::Const; }

    bool operator==(const SimpleExpr&) const = default;

    std::string to_string() const;
};

struct ArcExpr;
using ArcExprPtr = std::shared_ptr<const ArcExpr>;

struct ArcNumberOf {
    std::uint64_t count = 1;
    std::vector<SimpleExpr> tuple;
};

/// One token of each color in the domain.
struct ArcAll {
    ColorSet domain;
};

struct ArcAdd {
    ArcExprPtr lhs, rhs;
};

struct ArcSub {
    ArcExprPtr lhs, rhs;
};

struct ArcScale {
    std::uint64_t factor = 1;
    ArcExprPtr inner;
};

struct ArcExpr {
    std::variant<ArcNumberOf, ArcAll, ArcAdd, ArcSub, ArcScale> node;

    std::string to_string() const;
};

ArcExprPtr arc_number_of(std::uint64_t n, std::vector<SimpleExpr> tuple);
ArcExprPtr arc_all(ColorSet domain);
ArcExprPtr arc_add(ArcExprPtr l, ArcExprPtr r);
ArcExprPtr arc_sub(ArcExprPtr l, ArcExprPtr r);
ArcExprPtr arc_scale(std::uint64_t n, ArcExprPtr inner);

enum class CmpOp { Lt, Le, Gt, Ge, Eq, Neq };

std::string cmp_op_symbol(CmpOp op);
bool cmp_apply(CmpOp op, color_val_t a, color_val_t b);
CmpOp cmp_negate(CmpOp op);

struct GuardExpr;
using GuardExprPtr = std::shared_ptr<const GuardExpr>;

struct GuardConst {
    bool value = true;
};
struct GuardNot {
    GuardExprPtr inner;
};
struct GuardAnd {
    GuardExprPtr lhs, rhs;
};
struct GuardOr {
    GuardExprPtr lhs, rhs;
};
struct GuardCmp {
    CmpOp op = CmpOp::Eq;
    SimpleExpr lhs, rhs;
};
/// Multiset (in)equality over arc expressions.
struct GuardMsCmp {
    bool equal = true;
    ArcExprPtr lhs, rhs;
};

struct GuardExpr {
    std::variant<GuardConst, GuardNot, GuardAnd, GuardOr, GuardCmp, GuardMsCmp> node;

    std::string to_string() const;
};

GuardExprPtr guard_const(bool v);
GuardExprPtr guard_not(GuardExprPtr g);
GuardExprPtr guard_and(GuardExprPtr l, GuardExprPtr r);
GuardExprPtr guard_or(GuardExprPtr l, GuardExprPtr r);
GuardExprPtr guard_cmp(CmpOp op, SimpleExpr l, SimpleExpr r);
GuardExprPtr guard_ms_cmp(bool equal, ArcExprPtr l, ArcExprPtr r);

/// Assignment of integer values to variable names, total on the owning
/// transition's variable list.
using Binding = std::map<std::string, color_val_t>;

std::string binding_to_string(const Binding& b);

/// Variable name -> 1-dimensional base range.
using VarRanges = std::map<std::string, Interval>;

color_val_t eval_simple(const SimpleExpr& e, const Binding& b, const VarRanges& ranges);
Multiset eval_arc(const ArcExpr& e, const Binding& b, const VarRanges& ranges);
bool eval_guard(const GuardExpr& g, const Binding& b, const VarRanges& ranges);

/// Structural upper bound on |eval_arc(e, b)| over all bindings.
std::uint64_t arc_cardinality_bound(const ArcExpr& e);

/// Flattened multiset-sum view of an arc expression: the NumberOf and All
/// summands reachable through Add/Scale with accumulated multiplicity, plus a
/// flag for Sub nodes (whose demand static analyses cannot see through).
struct ArcSummands {
    struct Summand {
        std::uint64_t multiplicity = 1;
        const ArcNumberOf* number_of = nullptr;  // exactly one of these two set
        const ArcAll* all = nullptr;
    };
    std::vector<Summand> summands;
    bool has_sub = false;
};

ArcSummands flatten_arc(const ArcExpr& e);

void collect_arc_vars(const ArcExpr& e, std::set<std::string>& out);
void collect_guard_vars(const GuardExpr& g, std::set<std::string>& out);

}  // namespace cpn
