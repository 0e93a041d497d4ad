#include "cpn/textual.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace cpn {

namespace {

struct Token {
    enum class Kind { Ident, Number, Symbol, End };
    Kind kind = Kind::End;
    std::string text;
    std::int64_t number = 0;
    int line = 1, column = 1;
};

class Lexer {
  public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, current_.line, current_.column);
    }

  private:
    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1, column_ = 1;
    Token current_;

    char at(std::size_t i) const { return i < text_.size() ? text_[i] : '\0'; }

    void bump() {
        if (at(pos_) == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void advance() {
        while (pos_ < text_.size()) {
            char c = at(pos_);
            if (c == '#') {
                while (pos_ < text_.size() && at(pos_) != '\n') bump();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                bump();
            } else {
                break;
            }
        }
        current_ = Token{};
        current_.line = line_;
        current_.column = column_;
        if (pos_ >= text_.size()) {
            current_.kind = Token::Kind::End;
            return;
        }
        char c = at(pos_);
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num;
            while (std::isdigit(static_cast<unsigned char>(at(pos_)))) {
                num += at(pos_);
                bump();
            }
            current_.kind = Token::Kind::Number;
            current_.text = num;
            current_.number = std::stoll(num);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string id;
            while (std::isalnum(static_cast<unsigned char>(at(pos_))) || at(pos_) == '_' ||
                   at(pos_) == '.' || at(pos_) == '-') {
                // '.' is part of identifiers only for the ".all" suffix and
                // dotted names; '-' only when not followed by a digit start of
                // an expression. Keep it simple: identifiers here never
                // contain '-' or '.', those are symbols.
                if (at(pos_) == '.' || at(pos_) == '-') break;
                id += at(pos_);
                bump();
            }
            current_.kind = Token::Kind::Ident;
            current_.text = id;
            return;
        }
        // multi-char symbols
        static const char* two_char[] = {"->", "<=", ">=", "==", "!=", "&&", "||"};
        for (const char* s : two_char) {
            if (at(pos_) == s[0] && at(pos_ + 1) == s[1]) {
                current_.kind = Token::Kind::Symbol;
                current_.text = s;
                bump();
                bump();
                return;
            }
        }
        current_.kind = Token::Kind::Symbol;
        current_.text = std::string(1, c);
        bump();
    }
};

class NetParser {
  public:
    explicit NetParser(const std::string& text) : lex_(text) {}

    ColoredNet parse() {
        while (lex_.peek().kind != Token::Kind::End) {
            Token t = lex_.peek();
            if (t.kind != Token::Kind::Ident) lex_.fail("expected declaration keyword");
            if (t.text == "domain")
                parse_domain();
            else if (t.text == "place")
                parse_place();
            else if (t.text == "transition")
                parse_transition();
            else if (t.text == "arc")
                parse_arc();
            else if (t.text == "inhibitor")
                parse_inhibitor();
            else
                lex_.fail("unknown declaration '" + t.text + "'");
        }
        finish();
        return std::move(net_);
    }

  private:
    Lexer lex_;
    ColoredNet net_;
    std::map<std::string, ColorSet> domains_;
    std::map<std::string, std::size_t> place_ids_, transition_ids_;
    std::vector<Multiset> initial_;

    void expect_symbol(const std::string& s) {
        Token t = lex_.take();
        if (t.kind != Token::Kind::Symbol || t.text != s)
            throw ParseError("expected '" + s + "'", t.line, t.column);
    }

    std::string expect_ident() {
        Token t = lex_.take();
        if (t.kind != Token::Kind::Ident)
            throw ParseError("expected identifier", t.line, t.column);
        return t.text;
    }

    std::int64_t expect_number() {
        Token t = lex_.take();
        if (t.kind != Token::Kind::Number)
            throw ParseError("expected number", t.line, t.column);
        return t.number;
    }

    bool at_symbol(const std::string& s) {
        return lex_.peek().kind == Token::Kind::Symbol && lex_.peek().text == s;
    }

    Interval parse_range() {
        expect_symbol("[");
        std::int64_t lo = expect_number();
        std::int64_t hi = lo;
        if (at_symbol(",")) {
            lex_.take();
            hi = expect_number();
        }
        expect_symbol("]");
        if (hi < lo) lex_.fail("empty range");
        return {lo, hi};
    }

    RangeTuple parse_box() {
        RangeTuple rt;
        if (at_symbol("(")) {
            lex_.take();
            rt.ranges.push_back(parse_range());
            while (at_symbol(",")) {
                lex_.take();
                rt.ranges.push_back(parse_range());
            }
            expect_symbol(")");
        } else {
            rt.ranges.push_back(parse_range());
        }
        return rt;
    }

    ColorSet parse_colorset() {
        std::vector<RangeTuple> boxes;
        boxes.push_back(parse_box());
        while (at_symbol("|")) {
            lex_.take();
            boxes.push_back(parse_box());
        }
        std::size_t arity = boxes.front().arity();
        for (const RangeTuple& b : boxes)
            if (b.arity() != arity) lex_.fail("mixed arity in color set");
        return ColorSet(arity, std::move(boxes));
    }

    /// Named domain, product of named domains (A x B), or inline literal.
    ColorSet parse_domain_ref() {
        if (lex_.peek().kind == Token::Kind::Ident) {
            std::vector<ColorSet> factors;
            factors.push_back(lookup_domain(expect_ident()));
            while (lex_.peek().kind == Token::Kind::Ident && lex_.peek().text == "x") {
                lex_.take();
                factors.push_back(lookup_domain(expect_ident()));
            }
            if (factors.size() == 1) return factors.front();
            return ColorSet::product(factors);
        }
        return parse_colorset();
    }

    ColorSet lookup_domain(const std::string& name) {
        auto it = domains_.find(name);
        if (it == domains_.end()) lex_.fail("unknown domain '" + name + "'");
        return it->second;
    }

    void parse_domain() {
        lex_.take();  // 'domain'
        std::string name = expect_ident();
        expect_symbol("=");
        ColorSet set = parse_domain_ref();
        if (!domains_.emplace(name, std::move(set)).second)
            lex_.fail("duplicate domain '" + name + "'");
    }

    Color parse_color(std::size_t arity) {
        expect_symbol("(");
        std::vector<color_val_t> comps;
        comps.push_back(expect_number());
        while (at_symbol(",")) {
            lex_.take();
            comps.push_back(expect_number());
        }
        expect_symbol(")");
        if (comps.size() != arity) lex_.fail("color arity mismatch");
        return Color(std::move(comps));
    }

    Multiset parse_ground_multiset(std::size_t arity) {
        Multiset m;
        while (true) {
            std::int64_t n = expect_number();
            expect_symbol("'");
            m.add(parse_color(arity), static_cast<std::uint64_t>(n));
            if (!at_symbol("+")) break;
            lex_.take();
        }
        return m;
    }

    void parse_place() {
        lex_.take();  // 'place'
        std::string id = expect_ident();
        expect_symbol(":");
        ColorSet domain = parse_domain_ref();
        Multiset init;
        if (at_symbol("=")) {
            lex_.take();
            init = parse_ground_multiset(domain.arity());
        }
        if (!place_ids_.emplace(id, net_.places.size()).second)
            lex_.fail("duplicate place '" + id + "'");
        net_.places.push_back({id, std::move(domain)});
        initial_.push_back(std::move(init));
    }

    void parse_transition() {
        lex_.take();  // 'transition'
        std::string id = expect_ident();
        Transition tr;
        tr.id = id;
        expect_symbol("{");
        while (!at_symbol("}")) {
            std::string kw = expect_ident();
            if (kw == "var") {
                std::string name = expect_ident();
                expect_symbol(":");
                Interval range;
                if (lex_.peek().kind == Token::Kind::Ident) {
                    ColorSet d = lookup_domain(expect_ident());
                    if (d.arity() != 1 || d.tuples().size() != 1)
                        lex_.fail("variable range must be one 1-dimensional interval");
                    range = d.tuples().front().ranges.front();
                } else {
                    range = parse_range();
                }
                tr.variables.push_back({name, range});
            } else if (kw == "guard") {
                tr.guard = parse_guard();
            } else {
                lex_.fail("expected 'var' or 'guard'");
            }
            expect_symbol(";");
        }
        lex_.take();  // '}'
        std::sort(tr.variables.begin(), tr.variables.end(),
                  [](const VariableDecl& a, const VariableDecl& b) { return a.name < b.name; });
        if (!transition_ids_.emplace(id, net_.transitions.size()).second)
            lex_.fail("duplicate transition '" + id + "'");
        net_.transitions.push_back(std::move(tr));
    }

    SimpleExpr parse_simple() {
        if (lex_.peek().kind == Token::Kind::Number)
            return SimpleExpr::constant(expect_number());
        std::string var = expect_ident();
        if (at_symbol("+") || at_symbol("-")) {
            std::string op = lex_.take().text;
            std::int64_t s = expect_number();
            return SimpleExpr::shifted(var, op == "+" ? s : -s);
        }
        return SimpleExpr::variable(var);
    }

    /// arcterm: n'(tuple) | n * ( expr ) | NAME.all | literal-colorset .all |
    /// ( expr )
    ArcExprPtr parse_arc_term() {
        if (at_symbol("(")) {
            lex_.take();
            if (at_symbol("[")) {
                // '(' '[' opens a box literal, e.g. ([1,2],[4,5]).all
                RangeTuple rt;
                rt.ranges.push_back(parse_range());
                while (at_symbol(",")) {
                    lex_.take();
                    rt.ranges.push_back(parse_range());
                }
                expect_symbol(")");
                std::vector<RangeTuple> boxes{std::move(rt)};
                while (at_symbol("|")) {
                    lex_.take();
                    boxes.push_back(parse_box());
                }
                std::size_t arity = boxes.front().arity();
                ColorSet domain(arity, std::move(boxes));
                expect_symbol(".");
                if (expect_ident() != "all") lex_.fail("expected 'all'");
                return arc_all(std::move(domain));
            }
            ArcExprPtr e = parse_arc_expr();
            expect_symbol(")");
            return e;
        }
        if (lex_.peek().kind == Token::Kind::Number) {
            std::int64_t n = expect_number();
            if (n <= 0) lex_.fail("multiplicity must be positive");
            if (at_symbol("'")) {
                lex_.take();
                expect_symbol("(");
                std::vector<SimpleExpr> tuple;
                tuple.push_back(parse_simple());
                while (at_symbol(",")) {
                    lex_.take();
                    tuple.push_back(parse_simple());
                }
                expect_symbol(")");
                return arc_number_of(static_cast<std::uint64_t>(n), std::move(tuple));
            }
            if (at_symbol("*")) {
                lex_.take();
                return arc_scale(static_cast<std::uint64_t>(n), parse_arc_term());
            }
            lex_.fail("expected \"'\" or '*' after multiplicity");
        }
        // domain.all
        ColorSet domain = parse_domain_ref();
        expect_symbol(".");
        std::string kw = expect_ident();
        if (kw != "all") lex_.fail("expected 'all'");
        return arc_all(std::move(domain));
    }

    ArcExprPtr parse_arc_expr() {
        ArcExprPtr e = parse_arc_term();
        while (at_symbol("+") || at_symbol("-")) {
            std::string op = lex_.take().text;
            ArcExprPtr rhs = parse_arc_term();
            e = op == "+" ? arc_add(std::move(e), std::move(rhs))
                          : arc_sub(std::move(e), std::move(rhs));
        }
        return e;
    }

    GuardExprPtr parse_guard() { return parse_guard_or(); }

    GuardExprPtr parse_guard_or() {
        GuardExprPtr e = parse_guard_and();
        while (at_symbol("||")) {
            lex_.take();
            e = guard_or(std::move(e), parse_guard_and());
        }
        return e;
    }

    GuardExprPtr parse_guard_and() {
        GuardExprPtr e = parse_guard_atom();
        while (at_symbol("&&")) {
            lex_.take();
            e = guard_and(std::move(e), parse_guard_atom());
        }
        return e;
    }

    CmpOp parse_cmp_op() {
        Token t = lex_.take();
        if (t.kind != Token::Kind::Symbol) throw ParseError("expected comparison", t.line, t.column);
        if (t.text == "<") return CmpOp::Lt;
        if (t.text == "<=") return CmpOp::Le;
        if (t.text == ">") return CmpOp::Gt;
        if (t.text == ">=") return CmpOp::Ge;
        if (t.text == "==" || t.text == "=") return CmpOp::Eq;
        if (t.text == "!=") return CmpOp::Neq;
        throw ParseError("expected comparison operator, got '" + t.text + "'", t.line, t.column);
    }

    GuardExprPtr parse_guard_atom() {
        if (at_symbol("!")) {
            lex_.take();
            return guard_not(parse_guard_atom());
        }
        if (at_symbol("(")) {
            lex_.take();
            GuardExprPtr inner = parse_guard();
            expect_symbol(")");
            return inner;
        }
        if (lex_.peek().kind == Token::Kind::Ident && lex_.peek().text == "true") {
            lex_.take();
            return guard_const(true);
        }
        if (lex_.peek().kind == Token::Kind::Ident && lex_.peek().text == "false") {
            lex_.take();
            return guard_const(false);
        }
        // Comparison. A side beginning with n' (or a domain reference
        // followed by .all) is a multiset expression; otherwise simple.
        if (lex_.peek().kind == Token::Kind::Number) {
            // Could be "n'(...)" multiset or plain number.
            Token num = lex_.take();
            if (at_symbol("'")) {
                lex_.take();
                expect_symbol("(");
                std::vector<SimpleExpr> tuple;
                tuple.push_back(parse_simple());
                while (at_symbol(",")) {
                    lex_.take();
                    tuple.push_back(parse_simple());
                }
                expect_symbol(")");
                ArcExprPtr lhs =
                    arc_number_of(static_cast<std::uint64_t>(num.number), std::move(tuple));
                while (at_symbol("+") || at_symbol("-")) {
                    std::string op = lex_.take().text;
                    ArcExprPtr rhs = parse_arc_term();
                    lhs = op == "+" ? arc_add(std::move(lhs), std::move(rhs))
                                    : arc_sub(std::move(lhs), std::move(rhs));
                }
                CmpOp op = parse_cmp_op();
                if (op != CmpOp::Eq && op != CmpOp::Neq)
                    lex_.fail("multisets support only == and !=");
                ArcExprPtr rhs = parse_arc_expr();
                return guard_ms_cmp(op == CmpOp::Eq, std::move(lhs), std::move(rhs));
            }
            SimpleExpr lhs = SimpleExpr::constant(num.number);
            CmpOp op = parse_cmp_op();
            SimpleExpr rhs = parse_simple();
            return guard_cmp(op, std::move(lhs), std::move(rhs));
        }
        SimpleExpr lhs = parse_simple();
        CmpOp op = parse_cmp_op();
        SimpleExpr rhs = parse_simple();
        return guard_cmp(op, std::move(lhs), std::move(rhs));
    }

    std::pair<std::size_t, std::size_t> parse_endpoints(bool& place_to_transition) {
        std::string from = expect_ident();
        expect_symbol("->");
        std::string to = expect_ident();
        auto pf = place_ids_.find(from);
        auto tf = transition_ids_.find(to);
        if (pf != place_ids_.end() && tf != transition_ids_.end()) {
            place_to_transition = true;
            return {pf->second, tf->second};
        }
        auto tf2 = transition_ids_.find(from);
        auto pf2 = place_ids_.find(to);
        if (tf2 != transition_ids_.end() && pf2 != place_ids_.end()) {
            place_to_transition = false;
            return {pf2->second, tf2->second};
        }
        lex_.fail("arc endpoints must be one place and one transition");
        return {};
    }

    void parse_arc() {
        lex_.take();  // 'arc'
        bool p_to_t = false;
        auto [p, t] = parse_endpoints(p_to_t);
        expect_symbol(":");
        ArcExprPtr e = parse_arc_expr();
        auto& map = p_to_t ? net_.input_arcs : net_.output_arcs;
        if (!map.emplace(ArcKey{p, t}, std::move(e)).second) lex_.fail("duplicate arc");
    }

    void parse_inhibitor() {
        lex_.take();  // 'inhibitor'
        bool p_to_t = false;
        auto [p, t] = parse_endpoints(p_to_t);
        if (!p_to_t) lex_.fail("inhibitor arcs go from place to transition");
        std::uint64_t w = 1;
        if (at_symbol(":")) {
            lex_.take();
            std::int64_t n = expect_number();
            if (n <= 0) lex_.fail("inhibitor weight must be positive");
            w = static_cast<std::uint64_t>(n);
        }
        if (!net_.inhibitors.emplace(ArcKey{p, t}, w).second) lex_.fail("duplicate inhibitor");
    }

    void finish() {
        net_.initial.by_place = std::move(initial_);
        validate(net_);
    }
};

}  // namespace

ColoredNet parse_textual(const std::string& text) { return NetParser(text).parse(); }

namespace {

std::string colorset_literal(const ColorSet& set) {
    if (set.empty()) throw StructuralError("cannot write an empty domain");
    return set.to_literal();
}

std::string multiset_literal(const Multiset& m) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [c, n] : m.counts()) {
        if (!first) os << " + ";
        first = false;
        os << n << "'(";
        for (std::size_t i = 0; i < c.components.size(); ++i) {
            if (i) os << ',';
            os << c.components[i];
        }
        os << ')';
    }
    return os.str();
}

}  // namespace

std::string write_textual(const ColoredNet& net) {
    std::ostringstream os;
    for (std::size_t p = 0; p < net.places.size(); ++p) {
        os << "place " << net.places[p].id << " : " << colorset_literal(net.places[p].domain);
        if (!net.initial.by_place[p].empty())
            os << " = " << multiset_literal(net.initial.by_place[p]);
        os << '\n';
    }
    for (const Transition& t : net.transitions) {
        if (t.tabulated())
            throw StructuralError("textual format cannot express tabulated transitions");
        os << "transition " << t.id << " {";
        bool any = false;
        for (const VariableDecl& v : t.variables) {
            os << " var " << v.name << " : " << v.range.to_string() << ';';
            any = true;
        }
        if (t.guard) {
            os << " guard " << t.guard->to_string() << ';';
            any = true;
        }
        os << (any ? " }" : " }") << '\n';
    }
    for (const auto& [key, e] : net.input_arcs)
        os << "arc " << net.places[key.first].id << " -> " << net.transitions[key.second].id
           << " : " << e->to_string() << '\n';
    for (const auto& [key, e] : net.output_arcs)
        os << "arc " << net.transitions[key.second].id << " -> " << net.places[key.first].id
           << " : " << e->to_string() << '\n';
    for (const auto& [key, w] : net.inhibitors)
        os << "inhibitor " << net.places[key.first].id << " -> "
           << net.transitions[key.second].id << " : " << w << '\n';
    return os.str();
}

PtNet parse_pt_textual(const std::string& text) {
    Lexer lex(text);
    PtNet net;
    std::map<std::string, std::size_t> places, transitions;

    auto expect_ident = [&]() {
        Token t = lex.take();
        if (t.kind != Token::Kind::Ident)
            throw ParseError("expected identifier", t.line, t.column);
        return t.text;
    };
    auto expect_number = [&]() {
        Token t = lex.take();
        if (t.kind != Token::Kind::Number) throw ParseError("expected number", t.line, t.column);
        return t.number;
    };
    auto expect_symbol = [&](const std::string& s) {
        Token t = lex.take();
        if (t.kind != Token::Kind::Symbol || t.text != s)
            throw ParseError("expected '" + s + "'", t.line, t.column);
    };

    std::string header = expect_ident();
    if (header != "ptnet") throw ParseError("expected 'ptnet' header", 1, 1);

    while (lex.peek().kind != Token::Kind::End) {
        std::string kw = expect_ident();
        if (kw == "ptplace") {
            std::string id = expect_ident();
            expect_symbol("=");
            std::int64_t n = expect_number();
            places.emplace(id, net.places.size());
            net.places.push_back({id, static_cast<std::uint64_t>(n)});
        } else if (kw == "pttransition") {
            std::string id = expect_ident();
            std::string label = id;
            if (lex.peek().kind == Token::Kind::Symbol && lex.peek().text == ":") {
                lex.take();
                label = expect_ident();
            }
            transitions.emplace(id, net.transitions.size());
            net.transitions.push_back({id, label});
        } else if (kw == "ptarc" || kw == "ptinhibitor") {
            std::string from = expect_ident();
            expect_symbol("->");
            std::string to = expect_ident();
            expect_symbol(":");
            std::int64_t w = expect_number();
            if (kw == "ptinhibitor") {
                net.inhibitors[{places.at(from), transitions.at(to)}] =
                    static_cast<std::uint64_t>(w);
            } else if (places.count(from)) {
                net.input_arcs[{places.at(from), transitions.at(to)}] =
                    static_cast<std::uint64_t>(w);
            } else {
                net.output_arcs[{places.at(to), transitions.at(from)}] =
                    static_cast<std::uint64_t>(w);
            }
        } else {
            lex.fail("unknown declaration '" + kw + "'");
        }
    }
    return net;
}

std::string write_pt_textual(const PtNet& net) {
    std::ostringstream os;
    os << "ptnet\n";
    for (const PtPlace& p : net.places) os << "ptplace " << p.id << " = " << p.initial << '\n';
    for (const PtTransition& t : net.transitions) {
        os << "pttransition " << t.id;
        if (t.label != t.id) os << " : " << t.label;
        os << '\n';
    }
    for (const auto& [key, w] : net.input_arcs)
        os << "ptarc " << net.places[key.first].id << " -> " << net.transitions[key.second].id
           << " : " << w << '\n';
    for (const auto& [key, w] : net.output_arcs)
        os << "ptarc " << net.transitions[key.second].id << " -> " << net.places[key.first].id
           << " : " << w << '\n';
    for (const auto& [key, w] : net.inhibitors)
        os << "ptinhibitor " << net.places[key.first].id << " -> "
           << net.transitions[key.second].id << " : " << w << '\n';
    return os.str();
}

}  // namespace cpn
