#include "lspn/net.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>
#include <tuple>

namespace lspn {

std::string to_string(NetClass c) {
    switch (c) {
        case NetClass::PN: return "pn";
        case NetClass::SPN: return "spn";
        case NetClass::LPN: return "lpn";
        case NetClass::LSPN: return "lspn";
    }
    return "?";
}

std::string to_string(Capacity c) {
    return c == Capacity::CapOne ? "cap-1" : "unbounded";
}

std::string to_string(TransitionKind k) {
    switch (k) {
        case TransitionKind::Traditional: return "traditional";
        case TransitionKind::LogicInput: return "logic-input";
        case TransitionKind::LogicOutput: return "logic-output";
    }
    return "?";
}

char to_char(ArcSign s) { return s == ArcSign::Plus ? '+' : '-'; }

Transition traditional(std::string id) {
    return Transition{std::move(id), TransitionKind::Traditional, std::nullopt, {}};
}

namespace {

Transition guarded(std::string id, TransitionKind kind, std::string text) {
    Transition t;
    t.id = std::move(id);
    t.kind = kind;
    t.guard_text = std::move(text);
    t.guard = parse_expr(t.guard_text);
    return t;
}

}  // namespace

Transition logic_input(std::string id, std::string guard_text) {
    return guarded(std::move(id), TransitionKind::LogicInput, std::move(guard_text));
}

Transition logic_input(std::string id, const LogicExpr& guard) {
    return guarded(std::move(id), TransitionKind::LogicInput, to_string(guard));
}

Transition logic_output(std::string id, std::string guard_text) {
    return guarded(std::move(id), TransitionKind::LogicOutput, std::move(guard_text));
}

Transition logic_output(std::string id, const LogicExpr& guard) {
    return guarded(std::move(id), TransitionKind::LogicOutput, to_string(guard));
}

std::size_t DualMarkingHash::operator()(const DualMarking& m) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](std::size_t v) {
        h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    for (int v : m.pos) mix(static_cast<std::size_t>(v));
    mix(0xabcdefull);
    for (int v : m.neg) mix(static_cast<std::size_t>(v));
    return h;
}

Marking positive_projection(const DualMarking& m) { return m.pos; }

DualMarking embed_plain(Marking m) {
    DualMarking d;
    d.neg.assign(m.size(), 0);
    d.pos = std::move(m);
    return d;
}

std::string to_string(const Marking& m) {
    std::string out = "(";
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(m[i]);
    }
    out += ')';
    return out;
}

std::string to_string(const DualMarking& m) {
    return "(" + to_string(m.pos) + "," + to_string(m.neg) + ")";
}

Net::Net(NetClass cls, Capacity cap, std::vector<std::string> places,
         std::vector<Transition> transitions, std::vector<Arc> arcs)
    : class_(cls),
      capacity_(cap),
      places_(std::move(places)),
      transitions_(std::move(transitions)),
      arcs_(std::move(arcs)) {
    for (std::size_t i = 0; i < places_.size(); ++i) place_index_.emplace(places_[i], i);
    for (std::size_t i = 0; i < transitions_.size(); ++i)
        transition_index_.emplace(transitions_[i].id, i);

    inputs_.resize(transitions_.size());
    outputs_.resize(transitions_.size());
    presets_.resize(transitions_.size());
    postsets_.resize(transitions_.size());
    place_degree_.assign(places_.size(), 0);
    double_arc_.assign(places_.size(), false);

    for (std::size_t i = 0; i < arcs_.size(); ++i) {
        const Arc& a = arcs_[i];
        if (a.place >= places_.size() || a.transition >= transitions_.size())
            throw std::out_of_range("arc references an unknown place or transition index");
        (a.place_to_transition ? inputs_ : outputs_)[a.transition].push_back(i);
        ++place_degree_[a.place];
    }
    for (std::size_t t = 0; t < transitions_.size(); ++t) {
        auto collect = [&](const std::vector<std::size_t>& arc_idx,
                           std::vector<std::size_t>& out) {
            std::set<std::size_t> seen;
            for (std::size_t i : arc_idx) seen.insert(arcs_[i].place);
            out.assign(seen.begin(), seen.end());
        };
        collect(inputs_[t], presets_[t]);
        collect(outputs_[t], postsets_[t]);
        auto mark_double = [&](const std::vector<std::size_t>& arc_idx) {
            std::set<std::size_t> plus, minus;
            for (std::size_t i : arc_idx)
                (arcs_[i].sign == ArcSign::Plus ? plus : minus).insert(arcs_[i].place);
            for (std::size_t p : plus)
                if (minus.count(p)) double_arc_[p] = true;
        };
        mark_double(inputs_[t]);
        mark_double(outputs_[t]);
    }
}

std::optional<std::size_t> Net::place_index(std::string_view id) const {
    auto it = place_index_.find(std::string(id));
    return it == place_index_.end() ? std::nullopt : std::optional(it->second);
}

std::optional<std::size_t> Net::transition_index(std::string_view id) const {
    auto it = transition_index_.find(std::string(id));
    return it == transition_index_.end() ? std::nullopt : std::optional(it->second);
}

bool operator==(const Net& a, const Net& b) {
    return a.class_ == b.class_ && a.capacity_ == b.capacity_ && a.places_ == b.places_ &&
           a.transitions_ == b.transitions_ && a.arcs_ == b.arcs_;
}

bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    auto start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
    auto rest = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
    if (!start(s[0])) return false;
    for (char c : s.substr(1))
        if (!rest(c)) return false;
    return true;
}

namespace {

bool is_logic(TransitionKind k) { return k != TransitionKind::Traditional; }

}  // namespace

std::vector<Violation> validate_net(const Net& net) {
    std::vector<Violation> out;
    auto add = [&out](std::string code, std::string element, std::string message) {
        out.push_back({std::move(code), std::move(element), std::move(message)});
    };

    if (net.places().empty()) add("empty-places", "", "net declares no places");
    if (net.transitions().empty()) add("empty-transitions", "", "net declares no transitions");

    std::unordered_map<std::string, int> uses;
    for (const std::string& p : net.places()) {
        if (!is_identifier(p)) add("bad-id", p, "place id '" + p + "' is not an identifier");
        ++uses[p];
    }
    for (const Transition& t : net.transitions()) {
        if (!is_identifier(t.id)) add("bad-id", t.id, "transition id '" + t.id + "' is not an identifier");
        ++uses[t.id];
    }
    std::vector<std::string> dup_ids;
    for (const auto& [id, n] : uses)
        if (n > 1) dup_ids.push_back(id);
    std::sort(dup_ids.begin(), dup_ids.end());
    for (const std::string& id : dup_ids)
        add("duplicate-id", id,
            "id '" + id + "' is declared " + std::to_string(uses[id]) + " times");

    for (std::size_t p = 0; p < net.place_count(); ++p)
        if (net.place_degree(p) == 0)
            add("isolated-place", net.place_id(p),
                "place '" + net.place_id(p) + "' has no incident arc");

    bool unsigned_net = net.net_class() == NetClass::PN || net.net_class() == NetClass::LPN;
    bool plain_net = net.net_class() == NetClass::PN || net.net_class() == NetClass::SPN;
    bool logic_weight_one = net.net_class() == NetClass::LPN || net.net_class() == NetClass::LSPN;

    std::set<std::tuple<bool, std::size_t, std::size_t, ArcSign>> seen_arcs;
    for (const Arc& a : net.arcs()) {
        std::string from = a.place_to_transition ? net.place_id(a.place)
                                                 : net.transition(a.transition).id;
        std::string to = a.place_to_transition ? net.transition(a.transition).id
                                               : net.place_id(a.place);
        std::string label = from + "->" + to;
        if (a.weight < 1) add("bad-weight", label, "arc " + label + " has weight < 1");
        if (logic_weight_one && a.weight != 1)
            add("weight-not-one", label,
                "arc " + label + " has weight " + std::to_string(a.weight) +
                    " but logic nets use weight 1");
        if (unsigned_net && a.sign == ArcSign::Minus)
            add("signed-arc-in-unsigned-net", label,
                "arc " + label + " is negative but class " + to_string(net.net_class()) +
                    " has unsigned arcs");
        if (!seen_arcs.insert({a.place_to_transition, a.place, a.transition, a.sign}).second)
            add("duplicate-arc", label,
                "arc " + label + " with sign " + to_char(a.sign) + " is declared twice");
    }

    for (std::size_t t = 0; t < net.transition_count(); ++t) {
        const Transition& tr = net.transition(t);
        const std::string& id = tr.id;

        if (net.input_arcs(t).empty() && net.output_arcs(t).empty())
            add("isolated-transition", id, "transition '" + id + "' has no incident arc");

        if (plain_net && is_logic(tr.kind))
            add("logic-kind-in-plain-net", id,
                "transition '" + id + "' has kind " + to_string(tr.kind) + " in a " +
                    to_string(net.net_class()) + " net");

        if (is_logic(tr.kind)) {
            for (std::size_t p : net.preset(t)) {
                const auto& post = net.postset(t);
                if (std::binary_search(post.begin(), post.end(), p))
                    add("logic-self-loop", id,
                        "logic transition '" + id + "' both consumes and produces '" +
                            net.place_id(p) + "'");
            }
        }

        bool wants_guard = net.net_class() == NetClass::LPN && is_logic(tr.kind);
        if (wants_guard && !tr.guard)
            add("guard-missing", id, "logic transition '" + id + "' has no expression");
        if (!wants_guard && tr.guard)
            add("guard-unexpected", id,
                "transition '" + id + "' carries an expression but must not");

        if (wants_guard && tr.guard) {
            const auto& connected =
                tr.kind == TransitionKind::LogicInput ? net.preset(t) : net.postset(t);
            const char* side = tr.kind == TransitionKind::LogicInput ? "input" : "output";
            bool atoms_ok = true;
            for (const std::string& a : atoms(*tr.guard)) {
                auto pi = net.place_index(a);
                if (!pi) {
                    add("guard-unknown-place", id,
                        "expression of '" + id + "' names unknown place '" + a + "'");
                    atoms_ok = false;
                } else if (!std::binary_search(connected.begin(), connected.end(), *pi)) {
                    add("guard-atom-not-connected", id,
                        "expression of '" + id + "' names '" + a + "' which is not an " + side +
                            " place of '" + id + "'");
                }
            }
            if (atoms_ok && support(*tr.guard).empty())
                add("guard-constant", id, "expression of '" + id + "' is constant");
        }

        if (net.net_class() == NetClass::LSPN && is_logic(tr.kind)) {
            // Single-sign side must be all positive; the other side allows a
            // place to carry either a positive arc or a positive+negative pair.
            bool input_is_double_side = tr.kind == TransitionKind::LogicInput;
            auto check_double_side = [&](const std::vector<std::size_t>& arc_idx,
                                         const char* side) {
                std::set<std::size_t> plus, minus;
                for (std::size_t i : arc_idx) {
                    const Arc& a = net.arcs()[i];
                    (a.sign == ArcSign::Plus ? plus : minus).insert(a.place);
                }
                for (std::size_t p : minus)
                    if (!plus.count(p))
                        add("lone-negative-arc", id,
                            "logic transition '" + id + "' joins " + side + " place '" +
                                net.place_id(p) + "' by a negative arc without a positive one");
            };
            auto check_positive_side = [&](const std::vector<std::size_t>& arc_idx,
                                           const char* side) {
                for (std::size_t i : arc_idx) {
                    const Arc& a = net.arcs()[i];
                    if (a.sign == ArcSign::Minus)
                        add("negative-arc-on-positive-side", id,
                            "logic transition '" + id + "' has a negative " + side +
                                " arc at '" + net.place_id(a.place) + "' where only positive arcs are allowed");
                }
            };
            if (input_is_double_side) {
                check_double_side(net.input_arcs(t), "input");
                check_positive_side(net.output_arcs(t), "output");
            } else {
                check_positive_side(net.input_arcs(t), "input");
                check_double_side(net.output_arcs(t), "output");
            }
        }
    }

    return out;
}

std::string to_string(const ArcKey& k) {
    return k.from + "->" + k.to + ":" + to_char(k.sign);
}

std::vector<ArcKey> arc_set(const Net& net) {
    std::vector<ArcKey> out;
    out.reserve(net.arcs().size());
    for (const Arc& a : net.arcs()) {
        if (a.place_to_transition)
            out.push_back({net.place_id(a.place), net.transition(a.transition).id, a.sign});
        else
            out.push_back({net.transition(a.transition).id, net.place_id(a.place), a.sign});
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<std::string> marking_problem(const Net& net, const DualMarking& m) {
    if (m.pos.size() != net.place_count() || m.neg.size() != net.place_count())
        return "marking width does not match the net's " + std::to_string(net.place_count()) +
               " places";
    bool unsigned_net = net.net_class() == NetClass::PN || net.net_class() == NetClass::LPN;
    for (std::size_t p = 0; p < net.place_count(); ++p) {
        if (m.pos[p] < 0 || m.neg[p] < 0)
            return "negative token count at place '" + net.place_id(p) + "'";
        if (unsigned_net && m.neg[p] != 0)
            return "negative tokens at place '" + net.place_id(p) + "' in a " +
                   to_string(net.net_class()) + " net";
        if (net.capacity() == Capacity::CapOne && (m.pos[p] > 1 || m.neg[p] > 1))
            return "capacity exceeded at place '" + net.place_id(p) + "'";
    }
    return std::nullopt;
}

}  // namespace lspn
