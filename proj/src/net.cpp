#include "cpn/net.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace cpn {

std::size_t ColoredNet::place_index(const std::string& id) const {
    for (std::size_t i = 0; i < places.size(); ++i)
        if (places[i].id == id) return i;
    throw StructuralError("unknown place: " + id);
}

std::size_t ColoredNet::transition_index(const std::string& id) const {
    for (std::size_t i = 0; i < transitions.size(); ++i)
        if (transitions[i].id == id) return i;
    throw StructuralError("unknown transition: " + id);
}

const ArcExprPtr* ColoredNet::input_arc(std::size_t p, std::size_t t) const {
    auto it = input_arcs.find({p, t});
    return it == input_arcs.end() ? nullptr : &it->second;
}

const ArcExprPtr* ColoredNet::output_arc(std::size_t p, std::size_t t) const {
    auto it = output_arcs.find({p, t});
    return it == output_arcs.end() ? nullptr : &it->second;
}

std::optional<std::uint64_t> ColoredNet::inhibitor_weight(std::size_t p, std::size_t t) const {
    auto it = inhibitors.find({p, t});
    if (it == inhibitors.end()) return std::nullopt;
    return it->second;
}

VarRanges ColoredNet::var_ranges(std::size_t t) const {
    VarRanges out;
    for (const VariableDecl& v : transitions[t].variables) out[v.name] = v.range;
    return out;
}

std::vector<std::size_t> ColoredNet::preset_places(std::size_t t) const {
    std::vector<std::size_t> out;
    if (transitions[t].tabulated()) {
        for (const BindingRow& row : *transitions[t].table)
            for (std::size_t p = 0; p < places.size(); ++p)
                if (!row.consume[p].empty()) out.push_back(p);
    } else {
        for (const auto& [key, expr] : input_arcs)
            if (key.second == t) out.push_back(key.first);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::size_t> ColoredNet::postset_places(std::size_t t) const {
    std::vector<std::size_t> out;
    if (transitions[t].tabulated()) {
        for (const BindingRow& row : *transitions[t].table)
            for (std::size_t p = 0; p < places.size(); ++p)
                if (!row.produce[p].empty()) out.push_back(p);
    } else {
        for (const auto& [key, expr] : output_arcs)
            if (key.second == t) out.push_back(key.first);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::size_t> ColoredNet::preset_transitions(std::size_t p) const {
    std::vector<std::size_t> out;
    for (std::size_t t = 0; t < transitions.size(); ++t) {
        auto post = postset_places(t);
        if (std::binary_search(post.begin(), post.end(), p)) out.push_back(t);
    }
    return out;
}

std::vector<std::size_t> ColoredNet::inhibiting_places() const {
    std::vector<std::size_t> out;
    for (const auto& [key, w] : inhibitors) out.push_back(key.first);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool valid_id(const std::string& id) {
    if (id.empty()) return false;
    if (std::isdigit(static_cast<unsigned char>(id[0]))) return false;
    for (char c : id)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '.' && c != '-')
            return false;
    return id.find("__") == std::string::npos;
}

namespace {

void validate_simple(const SimpleExpr& s, const Transition& t, const std::string& where) {
    if (!s.mentions_var()) return;
    for (const VariableDecl& v : t.variables)
        if (v.name == s.var) return;
    throw StructuralError("variable " + s.var + " not declared on transition " + t.id + " (" +
                          where + ")");
}

void validate_arc_expr(const ArcExpr& e, const Transition& t, std::size_t want_arity,
                       const std::string& where) {
    ArcSummands flat = flatten_arc(e);
    for (const auto& s : flat.summands) {
        if (s.number_of) {
            if (s.number_of->tuple.size() != want_arity)
                throw StructuralError("arc tuple arity mismatch (" + where + ")");
            if (s.number_of->count == 0)
                throw StructuralError("zero multiplicity in arc expression (" + where + ")");
            for (const SimpleExpr& se : s.number_of->tuple) validate_simple(se, t, where);
        } else if (s.all) {
            if (s.all->domain.arity() != want_arity)
                throw StructuralError("'.all' arity mismatch (" + where + ")");
        }
    }
}

void validate_guard(const GuardExpr& g, const Transition& t) {
    std::set<std::string> vars;
    collect_guard_vars(g, vars);
    for (const std::string& v : vars) {
        bool found = false;
        for (const VariableDecl& d : t.variables)
            if (d.name == v) found = true;
        if (!found)
            throw StructuralError("guard variable " + v + " not declared on transition " + t.id);
    }
}

}  // namespace

void validate(const ColoredNet& net) {
    std::set<std::string> ids;
    for (const Place& p : net.places) {
        if (!valid_id(p.id)) throw StructuralError("bad place id: " + p.id);
        if (!ids.insert(p.id).second) throw StructuralError("duplicate id: " + p.id);
    }
    for (const Transition& t : net.transitions) {
        if (!valid_id(t.id)) throw StructuralError("bad transition id: " + t.id);
        if (!ids.insert(t.id).second) throw StructuralError("duplicate id: " + t.id);
        std::set<std::string> vnames;
        for (const VariableDecl& v : t.variables) {
            if (!valid_id(v.name)) throw StructuralError("bad variable name: " + v.name);
            if (v.range.hi < v.range.lo)
                throw StructuralError("empty base range for variable " + v.name);
            if (v.range.lo < 0)
                throw StructuralError("negative base range for variable " + v.name);
            if (!vnames.insert(v.name).second)
                throw StructuralError("duplicate variable " + v.name + " on " + t.id);
        }
        if (t.guard && !t.tabulated()) validate_guard(*t.guard, t);
        if (t.tabulated()) {
            for (const BindingRow& row : *t.table)
                if (row.consume.size() != net.places.size() ||
                    row.produce.size() != net.places.size())
                    throw StructuralError("tabulated row size mismatch on " + t.id);
        }
    }
    if (net.initial.by_place.size() != net.places.size())
        throw StructuralError("initial marking does not cover all places");
    for (std::size_t p = 0; p < net.places.size(); ++p) {
        for (const Color& c : net.initial.by_place[p].support())
            if (!net.places[p].domain.contains(c))
                throw StructuralError("initial token " + c.to_string() + " outside domain of " +
                                      net.places[p].id);
    }
    for (const auto& [key, expr] : net.input_arcs) {
        const auto& [p, t] = key;
        if (p >= net.places.size() || t >= net.transitions.size())
            throw StructuralError("arc endpoint out of range");
        if (!net.transitions[t].tabulated())
            validate_arc_expr(*expr, net.transitions[t], net.places[p].domain.arity(),
                              net.places[p].id + " -> " + net.transitions[t].id);
    }
    for (const auto& [key, expr] : net.output_arcs) {
        const auto& [p, t] = key;
        if (p >= net.places.size() || t >= net.transitions.size())
            throw StructuralError("arc endpoint out of range");
        if (!net.transitions[t].tabulated())
            validate_arc_expr(*expr, net.transitions[t], net.places[p].domain.arity(),
                              net.transitions[t].id + " -> " + net.places[p].id);
    }
    for (const auto& [key, w] : net.inhibitors) {
        if (key.first >= net.places.size() || key.second >= net.transitions.size())
            throw StructuralError("inhibitor endpoint out of range");
        if (w == 0) throw StructuralError("inhibitor weight must be positive");
    }
}

Multiset arc_consume(const ColoredNet& net, std::size_t p, std::size_t t, const Binding& b) {
    const ArcExprPtr* e = net.input_arc(p, t);
    if (!e) return {};
    return eval_arc(**e, b, net.var_ranges(t));
}

Multiset arc_produce(const ColoredNet& net, std::size_t p, std::size_t t, const Binding& b) {
    const ArcExprPtr* e = net.output_arc(p, t);
    if (!e) return {};
    return eval_arc(**e, b, net.var_ranges(t));
}

std::vector<Binding> enumerate_bindings(const ColoredNet& net, std::size_t t) {
    const Transition& tr = net.transitions[t];
    if (tr.tabulated()) {
        std::vector<Binding> out(tr.table->size());
        return out;
    }
    VarRanges ranges = net.var_ranges(t);

    std::vector<std::size_t> in_places = net.preset_places(t);
    std::vector<std::size_t> out_places = net.postset_places(t);

    auto legal = [&](const Binding& b) {
        if (tr.guard && !eval_guard(*tr.guard, b, ranges)) return false;
        for (std::size_t p : in_places)
            for (const Color& c : arc_consume(net, p, t, b).support())
                if (!net.places[p].domain.contains(c)) return false;
        for (std::size_t p : out_places)
            for (const Color& c : arc_produce(net, p, t, b).support())
                if (!net.places[p].domain.contains(c)) return false;
        return true;
    };

    std::vector<Binding> out;
    std::vector<const VariableDecl*> vars;
    for (const VariableDecl& v : tr.variables) vars.push_back(&v);
    std::sort(vars.begin(), vars.end(),
              [](const VariableDecl* a, const VariableDecl* b) { return a->name < b->name; });

    Binding current;
    for (const VariableDecl* v : vars) current[v->name] = v->range.lo;
    while (true) {
        if (legal(current)) out.push_back(current);
        std::size_t j = vars.size();
        while (j > 0) {
            --j;
            auto& val = current[vars[j]->name];
            if (++val <= vars[j]->range.hi) break;
            val = vars[j]->range.lo;
            if (j == 0) {
                j = vars.size() + 1;
                break;
            }
        }
        if (j == vars.size() + 1 || vars.empty()) break;
    }
    return out;
}

std::string FiringMode::label() const {
    if (row) return row->binding_id;
    return binding_to_string(binding);
}

std::vector<FiringMode> firing_modes(const ColoredNet& net, std::size_t t) {
    std::vector<FiringMode> out;
    const Transition& tr = net.transitions[t];
    if (tr.tabulated()) {
        for (const BindingRow& row : *tr.table) {
            FiringMode m;
            m.row = &row;
            out.push_back(std::move(m));
        }
        return out;
    }
    for (Binding& b : enumerate_bindings(net, t)) {
        FiringMode m;
        m.binding = std::move(b);
        out.push_back(std::move(m));
    }
    return out;
}

Multiset mode_consume(const ColoredNet& net, std::size_t p, std::size_t t, const FiringMode& m) {
    if (m.row) return m.row->consume[p];
    return arc_consume(net, p, t, m.binding);
}

Multiset mode_produce(const ColoredNet& net, std::size_t p, std::size_t t, const FiringMode& m) {
    if (m.row) return m.row->produce[p];
    return arc_produce(net, p, t, m.binding);
}

std::size_t PtNet::place_index(const std::string& id) const {
    for (std::size_t i = 0; i < places.size(); ++i)
        if (places[i].id == id) return i;
    throw StructuralError("unknown P/T place: " + id);
}

}  // namespace cpn
