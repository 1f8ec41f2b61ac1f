#include "lspn/expr.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_set>
#include <utility>

namespace lspn {

LogicExpr LogicExpr::atom(std::string name) {
    return LogicExpr(std::make_shared<Node>(Node{Kind::Atom, std::move(name), nullptr, nullptr}));
}

LogicExpr LogicExpr::negate(LogicExpr e) {
    return LogicExpr(std::make_shared<Node>(Node{Kind::Not, {}, std::move(e.node_), nullptr}));
}

LogicExpr LogicExpr::conj(LogicExpr lhs, LogicExpr rhs) {
    return LogicExpr(
        std::make_shared<Node>(Node{Kind::And, {}, std::move(lhs.node_), std::move(rhs.node_)}));
}

LogicExpr LogicExpr::disj(LogicExpr lhs, LogicExpr rhs) {
    return LogicExpr(
        std::make_shared<Node>(Node{Kind::Or, {}, std::move(lhs.node_), std::move(rhs.node_)}));
}

const std::string& LogicExpr::atom_name() const {
    if (node_->kind != Kind::Atom) throw std::logic_error("atom_name on non-atom");
    return node_->name;
}

LogicExpr LogicExpr::operand() const {
    if (node_->kind != Kind::Not) throw std::logic_error("operand on non-negation");
    return LogicExpr(node_->a);
}

LogicExpr LogicExpr::lhs() const {
    if (node_->kind != Kind::And && node_->kind != Kind::Or)
        throw std::logic_error("lhs on leaf node");
    return LogicExpr(node_->a);
}

LogicExpr LogicExpr::rhs() const {
    if (node_->kind != Kind::And && node_->kind != Kind::Or)
        throw std::logic_error("rhs on leaf node");
    return LogicExpr(node_->b);
}

bool operator==(const LogicExpr& a, const LogicExpr& b) {
    if (a.node_ == b.node_) return true;
    if (a.node_->kind != b.node_->kind) return false;
    switch (a.node_->kind) {
        case LogicExpr::Kind::Atom:
            return a.node_->name == b.node_->name;
        case LogicExpr::Kind::Not:
            return LogicExpr(a.node_->a) == LogicExpr(b.node_->a);
        default:
            return LogicExpr(a.node_->a) == LogicExpr(b.node_->a) &&
                   LogicExpr(a.node_->b) == LogicExpr(b.node_->b);
    }
}

ParseError::ParseError(std::size_t offset, const std::string& what)
    : std::runtime_error("syntax error at offset " + std::to_string(offset) + ": " + what),
      offset_(offset) {}

namespace {

struct Parser {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool peek_is(char c) {
        skip_ws();
        return pos < text.size() && text[pos] == c;
    }

    bool eat(char c) {
        if (peek_is(c)) {
            ++pos;
            return true;
        }
        return false;
    }

    static bool ident_start(char c) {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }
    static bool ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    LogicExpr parse_or() {
        LogicExpr e = parse_and();
        while (eat('|')) e = LogicExpr::disj(std::move(e), parse_and());
        return e;
    }

    LogicExpr parse_and() {
        LogicExpr e = parse_unary();
        while (eat('&')) e = LogicExpr::conj(std::move(e), parse_unary());
        return e;
    }

    LogicExpr parse_unary() {
        skip_ws();
        if (pos >= text.size()) throw ParseError(pos, "expected operand");
        char c = text[pos];
        if (c == '!') {
            ++pos;
            return LogicExpr::negate(parse_unary());
        }
        if (c == '(') {
            ++pos;
            LogicExpr e = parse_or();
            skip_ws();
            if (!eat(')')) throw ParseError(pos, "expected ')'");
            return e;
        }
        if (ident_start(c)) {
            std::size_t start = pos;
            while (pos < text.size() && ident_char(text[pos])) ++pos;
            return LogicExpr::atom(std::string(text.substr(start, pos - start)));
        }
        throw ParseError(pos, std::string("unexpected character '") + c + "'");
    }
};

}  // namespace

LogicExpr parse_expr(std::string_view text) {
    Parser p{text};
    LogicExpr e = p.parse_or();
    p.skip_ws();
    if (p.pos != text.size())
        throw ParseError(p.pos, std::string("unexpected character '") + text[p.pos] + "'");
    return e;
}

namespace {

// Precedence: Or < And < Not < Atom. Parenthesize a child whose level is
// below the context level.
void render(const LogicExpr& e, int context, std::string& out) {
    switch (e.kind()) {
        case LogicExpr::Kind::Atom:
            out += e.atom_name();
            return;
        case LogicExpr::Kind::Not:
            out += '!';
            render(e.operand(), 2, out);
            return;
        case LogicExpr::Kind::And: {
            bool wrap = context > 1;
            if (wrap) out += '(';
            render(e.lhs(), 1, out);
            out += " & ";
            render(e.rhs(), 1, out);
            if (wrap) out += ')';
            return;
        }
        case LogicExpr::Kind::Or: {
            bool wrap = context > 0;
            if (wrap) out += '(';
            render(e.lhs(), 0, out);
            out += " | ";
            render(e.rhs(), 0, out);
            if (wrap) out += ')';
            return;
        }
    }
}

}  // namespace

std::string to_string(const LogicExpr& e) {
    std::string out;
    render(e, 0, out);
    return out;
}

bool eval_expr(const LogicExpr& e, const std::function<bool(const std::string&)>& truth) {
    switch (e.kind()) {
        case LogicExpr::Kind::Atom:
            return truth(e.atom_name());
        case LogicExpr::Kind::Not:
            return !eval_expr(e.operand(), truth);
        case LogicExpr::Kind::And:
            return eval_expr(e.lhs(), truth) && eval_expr(e.rhs(), truth);
        case LogicExpr::Kind::Or:
            return eval_expr(e.lhs(), truth) || eval_expr(e.rhs(), truth);
    }
    throw std::logic_error("unreachable");
}

bool eval_expr(const LogicExpr& e, const std::unordered_map<std::string, bool>& assignment) {
    return eval_expr(e, [&](const std::string& name) {
        auto it = assignment.find(name);
        if (it == assignment.end()) throw EvalError("unbound atom '" + name + "'");
        return it->second;
    });
}

namespace {

void collect_atoms(const LogicExpr& e, std::vector<std::string>& out,
                   std::unordered_set<std::string>& seen) {
    switch (e.kind()) {
        case LogicExpr::Kind::Atom:
            if (seen.insert(e.atom_name()).second) out.push_back(e.atom_name());
            return;
        case LogicExpr::Kind::Not:
            collect_atoms(e.operand(), out, seen);
            return;
        default:
            collect_atoms(e.lhs(), out, seen);
            collect_atoms(e.rhs(), out, seen);
            return;
    }
}

}  // namespace

std::vector<std::string> atoms(const LogicExpr& e) {
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    collect_atoms(e, out, seen);
    return out;
}

std::string to_string(const Dnf& d) {
    if (d.terms.empty()) return "false";
    std::string out;
    bool wrap_terms = d.terms.size() > 1;
    for (std::size_t i = 0; i < d.terms.size(); ++i) {
        if (i) out += " | ";
        const Term& t = d.terms[i];
        bool wrap = wrap_terms && t.size() > 1;
        if (wrap) out += '(';
        for (std::size_t j = 0; j < t.size(); ++j) {
            if (j) out += " & ";
            if (t[j].negated) out += '!';
            out += t[j].place;
        }
        if (wrap) out += ')';
    }
    return out;
}

LogicExpr to_expr(const Dnf& d) {
    if (d.terms.empty()) throw std::invalid_argument("constant-false DNF has no expression form");
    std::optional<LogicExpr> acc;
    for (const Term& t : d.terms) {
        std::optional<LogicExpr> term;
        for (const Literal& l : t) {
            LogicExpr lit = LogicExpr::atom(l.place);
            if (l.negated) lit = LogicExpr::negate(std::move(lit));
            term = term ? LogicExpr::conj(std::move(*term), std::move(lit)) : std::move(lit);
        }
        if (!term) term = LogicExpr::atom("");  // unreachable: terms are non-empty
        acc = acc ? LogicExpr::disj(std::move(*acc), std::move(*term)) : std::move(*term);
    }
    return *acc;
}

namespace {

using IdxLit = std::pair<std::size_t, bool>;  // (order index, negated)
using IdxTerm = std::vector<IdxLit>;          // sorted, deduplicated

// Merge sorted literal lists; nullopt when a literal meets its negation.
std::optional<IdxTerm> merge_terms(const IdxTerm& a, const IdxTerm& b) {
    IdxTerm out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        IdxLit next;
        if (j == b.size() || (i < a.size() && a[i] <= b[j]))
            next = a[i++];
        else
            next = b[j++];
        if (!out.empty() && out.back().first == next.first) {
            if (out.back().second != next.second) return std::nullopt;
            continue;
        }
        out.push_back(next);
    }
    return out;
}

std::vector<IdxTerm> dnf_pos(const LogicExpr& e,
                             const std::unordered_map<std::string, std::size_t>& idx);

std::vector<IdxTerm> dnf_neg(const LogicExpr& e,
                             const std::unordered_map<std::string, std::size_t>& idx) {
    switch (e.kind()) {
        case LogicExpr::Kind::Atom:
            return {{{idx.at(e.atom_name()), true}}};
        case LogicExpr::Kind::Not:
            return dnf_pos(e.operand(), idx);
        case LogicExpr::Kind::And: {
            auto l = dnf_neg(e.lhs(), idx);
            auto r = dnf_neg(e.rhs(), idx);
            l.insert(l.end(), r.begin(), r.end());
            return l;
        }
        case LogicExpr::Kind::Or: {
            auto l = dnf_neg(e.lhs(), idx);
            auto r = dnf_neg(e.rhs(), idx);
            std::vector<IdxTerm> out;
            for (const auto& a : l)
                for (const auto& b : r)
                    if (auto m = merge_terms(a, b)) out.push_back(std::move(*m));
            return out;
        }
    }
    throw std::logic_error("unreachable");
}

std::vector<IdxTerm> dnf_pos(const LogicExpr& e,
                             const std::unordered_map<std::string, std::size_t>& idx) {
    switch (e.kind()) {
        case LogicExpr::Kind::Atom:
            return {{{idx.at(e.atom_name()), false}}};
        case LogicExpr::Kind::Not:
            return dnf_neg(e.operand(), idx);
        case LogicExpr::Kind::And: {
            auto l = dnf_pos(e.lhs(), idx);
            auto r = dnf_pos(e.rhs(), idx);
            std::vector<IdxTerm> out;
            for (const auto& a : l)
                for (const auto& b : r)
                    if (auto m = merge_terms(a, b)) out.push_back(std::move(*m));
            return out;
        }
        case LogicExpr::Kind::Or: {
            auto l = dnf_pos(e.lhs(), idx);
            auto r = dnf_pos(e.rhs(), idx);
            l.insert(l.end(), r.begin(), r.end());
            return l;
        }
    }
    throw std::logic_error("unreachable");
}

Dnf canonicalize(std::vector<IdxTerm> raw, std::span<const std::string> order) {
    std::sort(raw.begin(), raw.end());
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    Dnf d;
    d.terms.reserve(raw.size());
    for (const IdxTerm& t : raw) {
        Term term;
        term.reserve(t.size());
        for (const IdxLit& l : t) term.push_back({order[l.first], l.second});
        d.terms.push_back(std::move(term));
    }
    return d;
}

std::unordered_map<std::string, std::size_t> order_index(const LogicExpr& e,
                                                         std::span<const std::string> order) {
    std::unordered_map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < order.size(); ++i) idx.emplace(order[i], i);
    for (const std::string& a : atoms(e))
        if (!idx.count(a)) throw std::invalid_argument("atom '" + a + "' missing from order");
    return idx;
}

}  // namespace

Dnf to_dnf(const LogicExpr& e) {
    std::vector<std::string> order = atoms(e);
    return to_dnf(e, order);
}

Dnf to_dnf(const LogicExpr& e, std::span<const std::string> order) {
    auto idx = order_index(e, order);
    return canonicalize(dnf_pos(e, idx), order);
}

std::string to_string(Polarity p) {
    switch (p) {
        case Polarity::PosOnly: return "pos";
        case Polarity::NegOnly: return "neg";
        case Polarity::Both: return "both";
        case Polarity::Absent: return "absent";
    }
    return "?";
}

std::vector<Polarity> polarity_profile(const Dnf& d, std::span<const std::string> places) {
    std::unordered_map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < places.size(); ++i) idx.emplace(places[i], i);
    std::vector<bool> pos(places.size(), false), neg(places.size(), false);
    for (const Term& t : d.terms) {
        for (const Literal& l : t) {
            auto it = idx.find(l.place);
            if (it == idx.end()) continue;
            (l.negated ? neg : pos)[it->second] = true;
        }
    }
    std::vector<Polarity> out(places.size(), Polarity::Absent);
    for (std::size_t i = 0; i < places.size(); ++i) {
        if (pos[i] && neg[i])
            out[i] = Polarity::Both;
        else if (pos[i])
            out[i] = Polarity::PosOnly;
        else if (neg[i])
            out[i] = Polarity::NegOnly;
    }
    return out;
}

namespace {

constexpr std::size_t kMaxTruthTableVars = 20;

// Atoms outside idx read as false; callers only omit atoms that cannot
// change the value.
bool eval_mask(const LogicExpr& e, const std::unordered_map<std::string, std::size_t>& idx,
               std::uint64_t mask) {
    return eval_expr(e, [&](const std::string& name) {
        auto it = idx.find(name);
        return it != idx.end() && ((mask >> it->second) & 1u) != 0;
    });
}

}  // namespace

std::vector<std::string> support(const LogicExpr& e) {
    std::vector<std::string> vars = atoms(e);
    if (vars.size() > kMaxTruthTableVars)
        throw std::invalid_argument("expression has too many atoms for truth-table analysis");
    std::unordered_map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < vars.size(); ++i) idx.emplace(vars[i], i);
    std::vector<std::string> out;
    std::uint64_t total = std::uint64_t{1} << vars.size();
    for (std::size_t i = 0; i < vars.size(); ++i) {
        for (std::uint64_t mask = 0; mask < total; ++mask) {
            if (mask & (std::uint64_t{1} << i)) continue;
            if (eval_mask(e, idx, mask) != eval_mask(e, idx, mask | (std::uint64_t{1} << i))) {
                out.push_back(vars[i]);
                break;
            }
        }
    }
    return out;
}

Dnf minterm_expansion(const LogicExpr& e, std::span<const std::string> order) {
    if (order.size() > kMaxTruthTableVars)
        throw std::invalid_argument("too many variables for minterm expansion");
    std::unordered_map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < order.size(); ++i) idx.emplace(order[i], i);
    for (const std::string& a : support(e))
        if (!idx.count(a)) throw std::invalid_argument("atom '" + a + "' missing from order");
    std::vector<IdxTerm> raw;
    std::uint64_t total = std::uint64_t{1} << order.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        if (!eval_mask(e, idx, mask)) continue;
        IdxTerm t;
        t.reserve(order.size());
        for (std::size_t i = 0; i < order.size(); ++i)
            t.push_back({i, ((mask >> i) & 1u) == 0});
        raw.push_back(std::move(t));
    }
    return canonicalize(std::move(raw), order);
}

std::optional<AndOrForm> and_or_form(const LogicExpr& e, std::span<const std::string> places) {
    std::unordered_map<std::string, std::size_t> place_pos;
    for (std::size_t i = 0; i < places.size(); ++i) place_pos.emplace(places[i], i);
    for (const std::string& a : atoms(e))
        if (!place_pos.count(a)) throw std::invalid_argument("atom '" + a + "' not a known place");

    std::vector<std::string> sup = support(e);
    std::unordered_map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < sup.size(); ++i) idx.emplace(sup[i], i);

    std::uint64_t total = std::uint64_t{1} << sup.size();
    std::uint64_t forced_bits = total - 1;  // AND over satisfying assignments
    bool any_sat = false;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        if (!eval_mask(e, idx, mask)) continue;
        any_sat = true;
        forced_bits &= mask;
    }
    if (!any_sat) return std::nullopt;  // constant false

    std::uint64_t choice_bits = (total - 1) & ~forced_bits;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        bool expected = ((mask & forced_bits) == forced_bits) &&
                        (choice_bits == 0 || (mask & choice_bits) != 0);
        if (eval_mask(e, idx, mask) != expected) return std::nullopt;
    }

    AndOrForm form;
    for (std::size_t i = 0; i < sup.size(); ++i) {
        if (forced_bits & (std::uint64_t{1} << i))
            form.forced.push_back(sup[i]);
        else
            form.choice.push_back(sup[i]);
    }
    auto by_place_order = [&](const std::string& a, const std::string& b) {
        return place_pos.at(a) < place_pos.at(b);
    };
    std::sort(form.forced.begin(), form.forced.end(), by_place_order);
    std::sort(form.choice.begin(), form.choice.end(), by_place_order);
    return form;
}

}  // namespace lspn
