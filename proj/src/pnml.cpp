#include "cpn/pnml.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <algorithm>
#include <map>
#include <sstream>

#include "cpn/textual.hpp"

namespace cpn {

namespace {

using boost::property_tree::ptree;

constexpr std::uint64_t kMaxDomainSize = 1ull << 32;

[[noreturn]] void unsupported(const std::string& element, const std::string& where) {
    throw PnmlError("unsupported construct <" + element + "> at " + where);
}

std::string attr(const ptree& node, const std::string& name, const std::string& where) {
    auto a = node.get_optional<std::string>("<xmlattr>." + name);
    if (!a) throw PnmlError("missing attribute '" + name + "' at " + where);
    return *a;
}

std::optional<std::string> opt_attr(const ptree& node, const std::string& name) {
    auto a = node.get_optional<std::string>("<xmlattr>." + name);
    if (!a) return std::nullopt;
    return *a;
}

/// Skips <subterm> and <structure> wrappers down to the first meaningful
/// child.
std::pair<std::string, const ptree*> unwrap(const ptree& node, const std::string& where) {
    for (const auto& [name, child] : node) {
        if (name == "<xmlattr>" || name == "text" || name == "graphics") continue;
        if (name == "subterm" || name == "structure") return unwrap(child, where);
        return {name, &child};
    }
    throw PnmlError("empty term at " + where);
}

std::vector<std::pair<std::string, const ptree*>> children_of(const ptree& node) {
    std::vector<std::pair<std::string, const ptree*>> out;
    for (const auto& [name, child] : node) {
        if (name == "<xmlattr>" || name == "text" || name == "graphics") continue;
        out.emplace_back(name, &child);
    }
    return out;
}

struct SortTable {
    std::map<std::string, ColorSet> sorts;
    // enumeration literal id -> (sort id, 1-based index)
    std::map<std::string, std::pair<std::string, color_val_t>> literals;

    const ColorSet& sort(const std::string& id, const std::string& where) const {
        auto it = sorts.find(id);
        if (it == sorts.end()) throw PnmlError("unknown sort '" + id + "' at " + where);
        return it->second;
    }
};

class Parser {
  public:
    explicit Parser(const ptree& root) : root_(root) {}

    ColoredNet run() {
        collect(root_, "declarations", declaration_nodes_);
        for (const ptree* d : declaration_nodes_) parse_declarations(*d);
        collect(root_, "place", place_nodes_);
        collect(root_, "transition", transition_nodes_);
        collect(root_, "arc", arc_nodes_);
        collect(root_, "inhibitorArc", inhibitor_arc_nodes_);

        for (const ptree* p : place_nodes_) parse_place(*p);
        for (const ptree* t : transition_nodes_) parse_transition(*t);
        net_.initial.by_place = std::move(initial_);
        for (const ptree* a : arc_nodes_) parse_arc(*a, false);
        for (const ptree* a : inhibitor_arc_nodes_) parse_arc(*a, true);
        infer_variables();
        validate(net_);
        return std::move(net_);
    }

  private:
    const ptree& root_;
    std::vector<const ptree*> declaration_nodes_, place_nodes_, transition_nodes_, arc_nodes_,
        inhibitor_arc_nodes_;
    SortTable sorts_;
    std::map<std::string, Interval> variables_;       // id -> base range
    std::map<std::string, std::string> var_names_;    // id -> display name (unused for now)
    ColoredNet net_;
    std::vector<Multiset> initial_;
    std::map<std::string, std::size_t> place_ids_, transition_ids_;

    void collect(const ptree& node, const std::string& name,
                 std::vector<const ptree*>& out) const {
        for (const auto& [child_name, child] : node) {
            if (child_name == "<xmlattr>") continue;
            if (child_name == name) out.push_back(&child);
            collect(child, name, out);
        }
    }

    void parse_declarations(const ptree& node) {
        for (const auto& [name, child] : node) {
            if (name == "namedsort") {
                parse_named_sort(child);
            } else if (name == "variabledecl") {
                std::string id = attr(child, "id", "variabledecl");
                auto [kind, sort_node] = unwrap(child, "variabledecl " + id);
                if (kind != "usersort") unsupported(kind, "variabledecl " + id);
                const ColorSet& sort =
                    sorts_.sort(attr(*sort_node, "declaration", id), "variabledecl " + id);
                if (sort.arity() != 1 || sort.tuples().size() != 1)
                    throw PnmlError("variable '" + id + "' needs a 1-dimensional interval sort");
                variables_[id] = sort.tuples().front().ranges.front();
            }
        }
    }

    void parse_named_sort(const ptree& node) {
        std::string id = attr(node, "id", "namedsort");
        std::string where = "namedsort " + id;
        auto [kind, body] = unwrap(node, where);
        ColorSet set;
        if (kind == "dot") {
            set = ColorSet::from_tuple(RangeTuple{{1, 1}});
        } else if (kind == "cyclicenumeration" || kind == "finiteenumeration" ||
                   kind == "enumeration") {
            color_val_t index = 0;
            for (const auto& [cname, cnode] : *body) {
                if (cname != "feconstant") continue;
                ++index;
                sorts_.literals[attr(cnode, "id", where)] = {id, index};
            }
            if (index == 0) throw PnmlError("empty enumeration at " + where);
            set = ColorSet::from_tuple(RangeTuple{{1, index}});
        } else if (kind == "finiteintrange") {
            color_val_t lo = std::stoll(attr(*body, "start", where));
            color_val_t hi = std::stoll(attr(*body, "end", where));
            if (hi < lo) throw PnmlError("empty finiteintrange at " + where);
            set = ColorSet::from_tuple(RangeTuple{{lo, hi}});
        } else if (kind == "productsort") {
            std::vector<ColorSet> factors;
            for (const auto& [cname, cnode] : *body) {
                if (cname != "usersort") continue;
                factors.push_back(sorts_.sort(attr(cnode, "declaration", where), where));
            }
            if (factors.empty()) throw PnmlError("empty productsort at " + where);
            set = ColorSet::product(factors);
        } else {
            unsupported(kind, where);
        }
        std::uint64_t size = 1;
        for (const Interval& r : set.tuples().front().ranges) {
            if (size > kMaxDomainSize / std::max<std::uint64_t>(r.width(), 1))
                throw PnmlError("sort '" + id + "' exceeds the supported color count");
            size *= r.width();
        }
        sorts_.sorts[id] = std::move(set);
    }

    SimpleExpr parse_simple(const std::string& kind, const ptree& node, const std::string& where,
                            std::int64_t shift = 0) {
        if (kind == "variable") {
            std::string id = attr(node, "refvariable", where);
            if (!variables_.count(id)) throw PnmlError("unknown variable '" + id + "' at " + where);
            return SimpleExpr::shifted(id, shift);
        }
        if (kind == "successor" || kind == "predecessor") {
            auto [ckind, cnode] = unwrap(node, where);
            return parse_simple(ckind, *cnode, where, shift + (kind == "successor" ? 1 : -1));
        }
        if (shift != 0) unsupported(kind, where + " (shift of a constant)");
        if (kind == "dotconstant") return SimpleExpr::constant(1);
        if (kind == "finiteintrangeconstant")
            return SimpleExpr::constant(std::stoll(attr(node, "value", where)));
        if (kind == "useroperator") {
            std::string id = attr(node, "declaration", where);
            auto it = sorts_.literals.find(id);
            if (it == sorts_.literals.end())
                throw PnmlError("unknown constant '" + id + "' at " + where);
            return SimpleExpr::constant(it->second.second);
        }
        unsupported(kind, where);
    }

    ArcExprPtr parse_color_term(const std::string& kind, const ptree& node,
                                const std::string& where, std::uint64_t count) {
        if (kind == "tuple") {
            std::vector<SimpleExpr> tuple;
            for (const auto& [cname, cnode] : children_of(node)) {
                auto [k, n] = cname == "subterm" ? unwrap(*cnode, where)
                                                 : std::make_pair(cname, cnode);
                tuple.push_back(parse_simple(k, *n, where));
            }
            return arc_number_of(count, std::move(tuple));
        }
        if (kind == "all") {
            auto [k, n] = unwrap(node, where);
            if (k != "usersort") unsupported(k, where);
            ColorSet domain = sorts_.sort(attr(*n, "declaration", where), where);
            if (count != 1) return arc_scale(count, arc_all(std::move(domain)));
            return arc_all(std::move(domain));
        }
        return arc_number_of(count, {parse_simple(kind, node, where)});
    }

    ArcExprPtr parse_arc_expr(const std::string& kind, const ptree& node,
                              const std::string& where) {
        if (kind == "numberof") {
            auto kids = children_of(node);
            std::uint64_t count = 1;
            std::size_t start = 0;
            if (!kids.empty()) {
                auto [k0, n0] = unwrap(*kids[0].second, where);
                if (k0 == "numberconstant") {
                    count = std::stoull(attr(*n0, "value", where));
                    start = 1;
                }
            }
            if (start >= kids.size()) throw PnmlError("numberof without operand at " + where);
            ArcExprPtr expr;
            for (std::size_t i = start; i < kids.size(); ++i) {
                auto [k, n] = unwrap(*kids[i].second, where);
                ArcExprPtr piece = parse_color_term(k, *n, where, count);
                expr = expr ? arc_add(std::move(expr), std::move(piece)) : std::move(piece);
            }
            return expr;
        }
        if (kind == "add" || kind == "subtract") {
            auto kids = children_of(node);
            if (kids.empty()) throw PnmlError("empty <" + kind + "> at " + where);
            ArcExprPtr expr;
            for (const auto& [cname, cnode] : kids) {
                auto [k, n] = unwrap(*cnode, where);
                ArcExprPtr piece = parse_arc_expr(k, *n, where);
                if (!expr)
                    expr = std::move(piece);
                else if (kind == "add")
                    expr = arc_add(std::move(expr), std::move(piece));
                else
                    expr = arc_sub(std::move(expr), std::move(piece));
            }
            return expr;
        }
        if (kind == "scalarproduct") {
            auto kids = children_of(node);
            if (kids.size() != 2) throw PnmlError("scalarproduct needs two operands at " + where);
            auto [k0, n0] = unwrap(*kids[0].second, where);
            if (k0 != "numberconstant") unsupported(k0, where);
            std::uint64_t factor = std::stoull(attr(*n0, "value", where));
            auto [k1, n1] = unwrap(*kids[1].second, where);
            return arc_scale(factor, parse_arc_expr(k1, *n1, where));
        }
        return parse_color_term(kind, node, where, 1);
    }

    GuardExprPtr parse_guard(const std::string& kind, const ptree& node,
                             const std::string& where) {
        if (kind == "and" || kind == "or") {
            auto kids = children_of(node);
            GuardExprPtr expr;
            for (const auto& [cname, cnode] : kids) {
                auto [k, n] = unwrap(*cnode, where);
                GuardExprPtr piece = parse_guard(k, *n, where);
                if (!expr)
                    expr = std::move(piece);
                else
                    expr = kind == "and" ? guard_and(std::move(expr), std::move(piece))
                                         : guard_or(std::move(expr), std::move(piece));
            }
            if (!expr) throw PnmlError("empty <" + kind + "> at " + where);
            return expr;
        }
        if (kind == "not") {
            auto [k, n] = unwrap(node, where);
            return guard_not(parse_guard(k, *n, where));
        }
        if (kind == "imply") {
            auto kids = children_of(node);
            if (kids.size() != 2) throw PnmlError("imply needs two operands at " + where);
            auto [k0, n0] = unwrap(*kids[0].second, where);
            auto [k1, n1] = unwrap(*kids[1].second, where);
            return guard_or(guard_not(parse_guard(k0, *n0, where)), parse_guard(k1, *n1, where));
        }
        static const std::map<std::string, CmpOp> ops = {
            {"equality", CmpOp::Eq},           {"inequality", CmpOp::Neq},
            {"lessthan", CmpOp::Lt},           {"lessthanorequal", CmpOp::Le},
            {"greaterthan", CmpOp::Gt},        {"greaterthanorequal", CmpOp::Ge},
        };
        auto op = ops.find(kind);
        if (op == ops.end()) unsupported(kind, where);
        auto kids = children_of(node);
        if (kids.size() != 2) throw PnmlError("comparison needs two operands at " + where);
        auto [k0, n0] = unwrap(*kids[0].second, where);
        auto [k1, n1] = unwrap(*kids[1].second, where);
        // Tuple or multiset operands become multiset comparisons.
        bool ms = k0 == "tuple" || k1 == "tuple" || k0 == "numberof" || k1 == "numberof" ||
                  k0 == "add" || k1 == "add";
        if (ms) {
            if (op->second != CmpOp::Eq && op->second != CmpOp::Neq)
                unsupported(kind, where + " (ordered tuple comparison)");
            return guard_ms_cmp(op->second == CmpOp::Eq, parse_arc_expr(k0, *n0, where),
                                parse_arc_expr(k1, *n1, where));
        }
        return guard_cmp(op->second, parse_simple(k0, *n0, where),
                         parse_simple(k1, *n1, where));
    }

    void parse_place(const ptree& node) {
        std::string id = attr(node, "id", "place");
        std::string where = "place " + id;
        auto type = node.get_child_optional("type");
        if (!type) throw PnmlError("place '" + id + "' is missing its color type");
        auto [tk, tn] = unwrap(*type, where);
        if (tk != "usersort") unsupported(tk, where);
        ColorSet domain = sorts_.sort(attr(*tn, "declaration", where), where);

        Multiset init;
        if (auto marking = node.get_child_optional("hlinitialMarking")) {
            auto [mk, mn] = unwrap(*marking, where);
            ArcExprPtr expr = parse_arc_expr(mk, *mn, where);
            init = eval_arc(*expr, {}, {});
        }
        place_ids_.emplace(id, net_.places.size());
        net_.places.push_back({id, std::move(domain)});
        initial_.push_back(std::move(init));
    }

    void parse_transition(const ptree& node) {
        std::string id = attr(node, "id", "transition");
        Transition t;
        t.id = id;
        if (auto cond = node.get_child_optional("condition")) {
            auto [k, n] = unwrap(*cond, "transition " + id);
            t.guard = parse_guard(k, *n, "transition " + id);
        }
        transition_ids_.emplace(id, net_.transitions.size());
        net_.transitions.push_back(std::move(t));
    }

    void parse_arc(const ptree& node, bool inhibitor_tag) {
        std::string id = opt_attr(node, "id").value_or("arc");
        std::string where = "arc " + id;
        std::string source = attr(node, "source", where);
        std::string target = attr(node, "target", where);
        bool inhibitor = inhibitor_tag;
        if (auto type = opt_attr(node, "type"))
            if (*type == "inhibitor") inhibitor = true;
        if (auto type = node.get_child_optional("type"))
            if (opt_attr(*type, "value").value_or("") == "inhibitor") inhibitor = true;

        if (inhibitor) {
            std::uint64_t weight = 1;
            if (auto w = opt_attr(node, "weight")) weight = std::stoull(*w);
            if (auto insc = node.get_child_optional("inscription"))
                if (auto text = insc->get_optional<std::string>("text"))
                    weight = std::stoull(*text);
            auto p = place_ids_.find(source);
            auto t = transition_ids_.find(target);
            if (p == place_ids_.end() || t == transition_ids_.end())
                throw PnmlError("inhibitor arc must go from place to transition at " + where);
            net_.inhibitors[{p->second, t->second}] = weight;
            return;
        }

        auto insc = node.get_child_optional("hlinscription");
        if (!insc) throw PnmlError("arc without hlinscription at " + where);
        auto [k, n] = unwrap(*insc, where);
        ArcExprPtr expr = parse_arc_expr(k, *n, where);

        if (place_ids_.count(source) && transition_ids_.count(target)) {
            net_.input_arcs[{place_ids_[source], transition_ids_[target]}] = std::move(expr);
        } else if (transition_ids_.count(source) && place_ids_.count(target)) {
            net_.output_arcs[{place_ids_[target], transition_ids_[source]}] = std::move(expr);
        } else {
            throw PnmlError("arc endpoints '" + source + "' -> '" + target +
                            "' do not name a place and a transition at " + where);
        }
    }

    /// Attach to each transition the variables its arcs and guard mention.
    void infer_variables() {
        for (std::size_t t = 0; t < net_.transitions.size(); ++t) {
            std::set<std::string> used;
            for (const auto& [key, e] : net_.input_arcs)
                if (key.second == t) collect_arc_vars(*e, used);
            for (const auto& [key, e] : net_.output_arcs)
                if (key.second == t) collect_arc_vars(*e, used);
            if (net_.transitions[t].guard) collect_guard_vars(*net_.transitions[t].guard, used);
            for (const std::string& v : used) {
                auto it = variables_.find(v);
                if (it == variables_.end())
                    throw PnmlError("variable '" + v + "' has no declaration");
                net_.transitions[t].variables.push_back({v, it->second});
            }
        }
    }
};

}  // namespace

ColoredNet parse_colored_pnml(const std::string& xml) {
    ptree doc;
    std::istringstream in(xml);
    try {
        boost::property_tree::read_xml(in, doc,
                                       boost::property_tree::xml_parser::trim_whitespace);
    } catch (const boost::property_tree::xml_parser_error& e) {
        throw PnmlError(std::string("malformed XML: ") + e.what());
    }
    auto pnml = doc.get_child_optional("pnml");
    if (!pnml) throw PnmlError("missing <pnml> root element");
    return Parser(*pnml).run();
}

std::string write_pt_pnml(const PtNet& net, const std::string& net_id) {
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<pnml xmlns=\"http://www.pnml.org/version-2009/grammar/pnml\">\n";
    os << "  <net id=\"" << net_id
       << "\" type=\"http://www.pnml.org/version-2009/grammar/ptnet\">\n";
    os << "    <page id=\"page0\">\n";
    for (const PtPlace& p : net.places) {
        os << "      <place id=\"" << p.id << "\">\n";
        os << "        <name><text>" << p.id << "</text></name>\n";
        if (p.initial > 0)
            os << "        <initialMarking><text>" << p.initial
               << "</text></initialMarking>\n";
        os << "      </place>\n";
    }
    for (const PtTransition& t : net.transitions) {
        os << "      <transition id=\"" << t.id << "\">\n";
        os << "        <name><text>" << t.label << "</text></name>\n";
        os << "      </transition>\n";
    }
    std::size_t arc_id = 0;
    for (const auto& [key, w] : net.input_arcs) {
        os << "      <arc id=\"a" << arc_id++ << "\" source=\"" << net.places[key.first].id
           << "\" target=\"" << net.transitions[key.second].id << "\">\n";
        os << "        <inscription><text>" << w << "</text></inscription>\n";
        os << "      </arc>\n";
    }
    for (const auto& [key, w] : net.output_arcs) {
        os << "      <arc id=\"a" << arc_id++ << "\" source=\""
           << net.transitions[key.second].id << "\" target=\"" << net.places[key.first].id
           << "\">\n";
        os << "        <inscription><text>" << w << "</text></inscription>\n";
        os << "      </arc>\n";
    }
    for (const auto& [key, w] : net.inhibitors) {
        os << "      <arc id=\"a" << arc_id++ << "\" source=\"" << net.places[key.first].id
           << "\" target=\"" << net.transitions[key.second].id << "\">\n";
        os << "        <type value=\"inhibitor\"/>\n";
        os << "        <inscription><text>" << w << "</text></inscription>\n";
        os << "      </arc>\n";
    }
    os << "    </page>\n  </net>\n</pnml>\n";
    return os.str();
}

PtNet parse_pt_pnml(const std::string& xml) {
    ptree doc;
    std::istringstream in(xml);
    try {
        boost::property_tree::read_xml(in, doc,
                                       boost::property_tree::xml_parser::trim_whitespace);
    } catch (const boost::property_tree::xml_parser_error& e) {
        throw PnmlError(std::string("malformed XML: ") + e.what());
    }

    PtNet net;
    std::map<std::string, std::size_t> places, transitions;
    std::function<void(const ptree&)> walk = [&](const ptree& node) {
        for (const auto& [name, child] : node) {
            if (name == "<xmlattr>") continue;
            if (name == "place") {
                std::string id = attr(child, "id", "place");
                std::uint64_t init = 0;
                if (auto m = child.get_optional<std::string>("initialMarking.text"))
                    init = std::stoull(*m);
                places.emplace(id, net.places.size());
                net.places.push_back({id, init});
            } else if (name == "transition") {
                std::string id = attr(child, "id", "transition");
                std::string label = child.get_optional<std::string>("name.text").value_or(id);
                transitions.emplace(id, net.transitions.size());
                net.transitions.push_back({id, label});
            } else if (name == "arc") {
                std::string source = attr(child, "source", "arc");
                std::string target = attr(child, "target", "arc");
                std::uint64_t w = 1;
                if (auto t = child.get_optional<std::string>("inscription.text"))
                    w = std::stoull(*t);
                bool inhib = false;
                if (auto type = child.get_child_optional("type"))
                    if (opt_attr(*type, "value").value_or("") == "inhibitor") inhib = true;
                if (inhib)
                    net.inhibitors[{places.at(source), transitions.at(target)}] = w;
                else if (places.count(source))
                    net.input_arcs[{places.at(source), transitions.at(target)}] = w;
                else
                    net.output_arcs[{places.at(target), transitions.at(source)}] = w;
            } else {
                walk(child);
            }
        }
    };
    walk(doc);
    return net;
}

ColoredNet parse_any(const std::string& content, const std::string& filename_hint) {
    bool xml = filename_hint.ends_with(".pnml") || filename_hint.ends_with(".xml") ||
               content.find("<pnml") != std::string::npos;
    if (xml) return parse_colored_pnml(content);
    return parse_textual(content);
}

}  // namespace cpn
