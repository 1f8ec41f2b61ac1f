#pragma once

#include "lspn/expr.hpp"

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lspn {

enum class NetClass { PN, SPN, LPN, LSPN };
enum class Capacity { Unbounded, CapOne };
enum class TransitionKind { Traditional, LogicInput, LogicOutput };
enum class ArcSign { Plus, Minus };

std::string to_string(NetClass c);
std::string to_string(Capacity c);
std::string to_string(TransitionKind k);
char to_char(ArcSign s);

struct Arc {
    bool place_to_transition = true;
    std::size_t place = 0;
    std::size_t transition = 0;
    ArcSign sign = ArcSign::Plus;
    int weight = 1;
    friend bool operator==(const Arc&, const Arc&) = default;
};

inline Arc in_arc(std::size_t place, std::size_t transition, ArcSign sign = ArcSign::Plus,
                  int weight = 1) {
    return Arc{true, place, transition, sign, weight};
}
inline Arc out_arc(std::size_t transition, std::size_t place, ArcSign sign = ArcSign::Plus,
                   int weight = 1) {
    return Arc{false, place, transition, sign, weight};
}

struct Transition {
    std::string id;
    TransitionKind kind = TransitionKind::Traditional;
    std::optional<LogicExpr> guard;
    std::string guard_text;

    friend bool operator==(const Transition& a, const Transition& b) {
        return a.id == b.id && a.kind == b.kind && a.guard == b.guard;
    }
};

Transition traditional(std::string id);
// Guard given as text is parsed; guard given as an expression is rendered and
// re-parsed so that stored text and stored tree always agree.
Transition logic_input(std::string id, std::string guard_text);
Transition logic_input(std::string id, const LogicExpr& guard);
Transition logic_output(std::string id, std::string guard_text);
Transition logic_output(std::string id, const LogicExpr& guard);

using Marking = std::vector<int>;

struct DualMarking {
    Marking pos, neg;
    friend bool operator==(const DualMarking&, const DualMarking&) = default;
};

struct DualMarkingHash {
    std::size_t operator()(const DualMarking& m) const noexcept;
};

Marking positive_projection(const DualMarking& m);
DualMarking embed_plain(Marking m);
std::string to_string(const Marking& m);
std::string to_string(const DualMarking& m);

class Net {
public:
    Net(NetClass cls, Capacity cap, std::vector<std::string> places,
        std::vector<Transition> transitions, std::vector<Arc> arcs);

    NetClass net_class() const { return class_; }
    Capacity capacity() const { return capacity_; }
    std::size_t place_count() const { return places_.size(); }
    std::size_t transition_count() const { return transitions_.size(); }
    const std::vector<std::string>& places() const { return places_; }
    const std::vector<Transition>& transitions() const { return transitions_; }
    const std::vector<Arc>& arcs() const { return arcs_; }

    const std::string& place_id(std::size_t p) const { return places_.at(p); }
    const Transition& transition(std::size_t t) const { return transitions_.at(t); }
    std::optional<std::size_t> place_index(std::string_view id) const;
    std::optional<std::size_t> transition_index(std::string_view id) const;

    // Arc indexes grouped per transition, in arc declaration order.
    const std::vector<std::size_t>& input_arcs(std::size_t t) const { return inputs_.at(t); }
    const std::vector<std::size_t>& output_arcs(std::size_t t) const { return outputs_.at(t); }
    // Distinct adjacent places in ascending place order.
    const std::vector<std::size_t>& preset(std::size_t t) const { return presets_.at(t); }
    const std::vector<std::size_t>& postset(std::size_t t) const { return postsets_.at(t); }
    std::size_t place_degree(std::size_t p) const { return place_degree_.at(p); }
    // True when some transition is joined to p by a positive and a negative
    // arc on the same side.
    bool place_has_double_arc(std::size_t p) const { return double_arc_.at(p); }

    friend bool operator==(const Net& a, const Net& b);

private:
    NetClass class_;
    Capacity capacity_;
    std::vector<std::string> places_;
    std::vector<Transition> transitions_;
    std::vector<Arc> arcs_;
    std::unordered_map<std::string, std::size_t> place_index_;
    std::unordered_map<std::string, std::size_t> transition_index_;
    std::vector<std::vector<std::size_t>> inputs_, outputs_;
    std::vector<std::vector<std::size_t>> presets_, postsets_;
    std::vector<std::size_t> place_degree_;
    std::vector<bool> double_arc_;
};

struct Violation {
    std::string code;
    std::string element;
    std::string message;
    friend bool operator==(const Violation&, const Violation&) = default;
};

std::vector<Violation> validate_net(const Net& net);

struct ArcKey {
    std::string from, to;
    ArcSign sign = ArcSign::Plus;
    auto operator<=>(const ArcKey&) const = default;
};
std::string to_string(const ArcKey& k);

// The arcs with nonzero incidence as (endpoint pair, sign), sorted.
std::vector<ArcKey> arc_set(const Net& net);

struct FiringStep {
    std::size_t transition = 0;
    std::size_t outcome = 0;
    friend bool operator==(const FiringStep&, const FiringStep&) = default;
};

struct FiringSequence {
    DualMarking start;
    std::vector<FiringStep> steps;
};

// Reason the marking cannot be used with this net, if any: wrong width,
// negative counts, capacity overflow, or negative tokens in an unsigned net.
std::optional<std::string> marking_problem(const Net& net, const DualMarking& m);

bool is_identifier(std::string_view s);

}  // namespace lspn
