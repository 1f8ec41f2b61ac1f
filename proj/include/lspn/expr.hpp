#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lspn {

// Boolean expression over place identifiers.
// Grammar: expr := or ; or := and ('|' and)* ; and := unary ('&' unary)* ;
// unary := '!' unary | place | '(' expr ')' ; whitespace is insignificant.
class LogicExpr {
public:
    enum class Kind { Atom, Not, And, Or };

    static LogicExpr atom(std::string name);
    static LogicExpr negate(LogicExpr e);
    static LogicExpr conj(LogicExpr lhs, LogicExpr rhs);
    static LogicExpr disj(LogicExpr lhs, LogicExpr rhs);

    Kind kind() const { return node_->kind; }
    const std::string& atom_name() const;
    LogicExpr operand() const;  // Not
    LogicExpr lhs() const;      // And, Or
    LogicExpr rhs() const;      // And, Or

    friend bool operator==(const LogicExpr& a, const LogicExpr& b);
    friend bool operator!=(const LogicExpr& a, const LogicExpr& b) { return !(a == b); }

private:
    struct Node {
        Kind kind;
        std::string name;                  // Atom
        std::shared_ptr<const Node> a, b;  // Not uses a; And/Or use a and b
    };
    explicit LogicExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, const std::string& what);
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

LogicExpr parse_expr(std::string_view text);
std::string to_string(const LogicExpr& e);

bool eval_expr(const LogicExpr& e, const std::function<bool(const std::string&)>& truth);
// Throws EvalError if an atom is missing from the assignment.
bool eval_expr(const LogicExpr& e, const std::unordered_map<std::string, bool>& assignment);

// Atom names in first-occurrence order, deduplicated.
std::vector<std::string> atoms(const LogicExpr& e);

struct Literal {
    std::string place;
    bool negated = false;
    friend bool operator==(const Literal&, const Literal&) = default;
};
using Term = std::vector<Literal>;

// Disjunction of conjunctions of literals. No terms means constant false.
struct Dnf {
    std::vector<Term> terms;
    bool degenerate() const { return terms.empty(); }
    friend bool operator==(const Dnf&, const Dnf&) = default;
};

std::string to_string(const Dnf& d);
LogicExpr to_expr(const Dnf& d);  // requires at least one term

// Canonical disjunctive normal form: negations pushed to atoms, conjunction
// distributed over disjunction, duplicate literals and contradictory terms
// dropped, literals sorted by position in `order`, terms sorted
// lexicographically and deduplicated.
Dnf to_dnf(const LogicExpr& e);  // order = atoms(e)
Dnf to_dnf(const LogicExpr& e, std::span<const std::string> order);

enum class Polarity { PosOnly, NegOnly, Both, Absent };
std::string to_string(Polarity p);

// Per-place occurrence polarity across all terms of d, parallel to `places`.
std::vector<Polarity> polarity_profile(const Dnf& d, std::span<const std::string> places);

// Atoms whose value can change the result, in first-occurrence order.
std::vector<std::string> support(const LogicExpr& e);

// Complete DNF over the given variables: one full-width term per satisfying
// assignment, canonically sorted. `order` must cover the support of e;
// mentioned atoms outside it are read as constant false.
Dnf minterm_expansion(const LogicExpr& e, std::span<const std::string> order);

// Decomposition e == (AND of forced) & (OR of choice), when one exists.
struct AndOrForm {
    std::vector<std::string> forced;
    std::vector<std::string> choice;
};
std::optional<AndOrForm> and_or_form(const LogicExpr& e, std::span<const std::string> places);

}  // namespace lspn
