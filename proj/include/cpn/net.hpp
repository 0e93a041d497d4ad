#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cpn/color.hpp"
#include "cpn/expr.hpp"
#include "cpn/multiset.hpp"

namespace cpn {

struct Place {
    std::string id;
    ColorSet domain;
};

struct VariableDecl {
    std::string name;
    Interval range;  // 1-dimensional base range
};

/// Explicit binding-class row of a tabulated transition: per-place consume
/// and produce multisets (indexed like the net's place list). Quotienting
/// produces these because the arc grammar cannot express summed class
/// weights symbolically.
struct BindingRow {
    std::string binding_id;
    std::vector<Multiset> consume;
    std::vector<Multiset> produce;
};

struct Transition {
    std::string id;
    std::vector<VariableDecl> variables;  // sorted by name
    GuardExprPtr guard;                   // null means true

    /// When set, the transition's bindings are exactly these rows and the
    /// symbolic guard/variables/arcs are ignored.
    std::optional<std::vector<BindingRow>> table;

    bool tabulated() const { return table.has_value(); }
};

using ArcKey = std::pair<std::size_t, std::size_t>;

struct ColoredNet {
    std::vector<Place> places;
    std::vector<Transition> transitions;
    std::map<ArcKey, ArcExprPtr> input_arcs;   // (place, transition)
    std::map<ArcKey, ArcExprPtr> output_arcs;  // (place, transition)
    std::map<ArcKey, std::uint64_t> inhibitors;  // absent entry = infinity
    Marking initial;

    std::size_t place_index(const std::string& id) const;
    std::size_t transition_index(const std::string& id) const;

    const ArcExprPtr* input_arc(std::size_t p, std::size_t t) const;
    const ArcExprPtr* output_arc(std::size_t p, std::size_t t) const;
    std::optional<std::uint64_t> inhibitor_weight(std::size_t p, std::size_t t) const;

    VarRanges var_ranges(std::size_t t) const;

    std::vector<std::size_t> preset_places(std::size_t t) const;   // places with input arc to t
    std::vector<std::size_t> postset_places(std::size_t t) const;  // places with output arc from t
    std::vector<std::size_t> preset_transitions(std::size_t p) const;  // transitions writing into p

    /// Places that inhibit some transition (the inhibitor preset, unioned
    /// over transitions).
    std::vector<std::size_t> inhibiting_places() const;
};

/// Checks identifier rules, arity coherence, variable declarations, base
/// ranges, and that the initial marking lies within the place domains.
/// Throws StructuralError with a description of the first violation.
void validate(const ColoredNet& net);

/// All legal bindings of transition t in lexicographic order by
/// (variable name, value). A binding is legal when the guard holds and every
/// arc image stays within the connected place's domain. Tabulated
/// transitions yield one empty-binding entry per row (row order).
std::vector<Binding> enumerate_bindings(const ColoredNet& net, std::size_t t);

/// Consumed multiset of (p, t) under binding b (empty when no arc).
Multiset arc_consume(const ColoredNet& net, std::size_t p, std::size_t t, const Binding& b);
/// Produced multiset of (t, p) under binding b (empty when no arc).
Multiset arc_produce(const ColoredNet& net, std::size_t p, std::size_t t, const Binding& b);

/// Consume/produce for a tabulated row.
struct RowView {
    const BindingRow* row = nullptr;
};

/// Uniform iteration over a transition's firing modes: either legal symbolic
/// bindings or table rows. Mode index is stable and deterministic.
struct FiringMode {
    Binding binding;            // symbolic transitions
    const BindingRow* row = nullptr;  // tabulated transitions
    std::string label() const;
};

std::vector<FiringMode> firing_modes(const ColoredNet& net, std::size_t t);

Multiset mode_consume(const ColoredNet& net, std::size_t p, std::size_t t, const FiringMode& m);
Multiset mode_produce(const ColoredNet& net, std::size_t p, std::size_t t, const FiringMode& m);

/// P/T net. The single-color single-binding case; transition labels record
/// the originating colored transition.
struct PtPlace {
    std::string id;
    std::uint64_t initial = 0;
};

struct PtTransition {
    std::string id;
    std::string label;
};

struct PtNet {
    std::vector<PtPlace> places;
    std::vector<PtTransition> transitions;
    std::map<ArcKey, std::uint64_t> input_arcs;   // (place, transition)
    std::map<ArcKey, std::uint64_t> output_arcs;  // (place, transition)
    std::map<ArcKey, std::uint64_t> inhibitors;   // (place, transition)

    std::size_t place_index(const std::string& id) const;
};

/// Identifier rule shared by places, transitions and variables: nonempty,
/// [A-Za-z0-9_.-], no "__" (reserved for unfolded-name mangling), no leading
/// digit.
bool valid_id(const std::string& id);

}  // namespace cpn
