#include "lspn/firing.hpp"

#include <algorithm>
#include <cstdint>
#include <iterator>

namespace lspn {

namespace {

std::size_t resolve_transition(const Net& net, std::string_view id) {
    auto t = net.transition_index(id);
    if (!t) throw FiringError("unknown transition '" + std::string(id) + "'");
    return *t;
}

bool within_capacity(const Net& net, const DualMarking& m) {
    if (net.capacity() != Capacity::CapOne) return true;
    for (std::size_t p = 0; p < net.place_count(); ++p)
        if (m.pos[p] > 1 || m.neg[p] > 1) return false;
    return true;
}

bool eval_guard(const Net& net, const LogicExpr& g, const Marking& m) {
    return eval_expr(g, [&](const std::string& name) {
        auto p = net.place_index(name);
        if (!p) throw FiringError("expression names unknown place '" + name + "'");
        return m[*p] == 1;
    });
}

// Plain place/transition rule: no signs, no side conditions.
std::optional<Marking> pn_outcome(const Net& net, std::size_t t, const Marking& m) {
    for (std::size_t i : net.input_arcs(t)) {
        const Arc& a = net.arcs()[i];
        if (m[a.place] < a.weight) return std::nullopt;
    }
    Marking r = m;
    for (std::size_t i : net.input_arcs(t)) r[net.arcs()[i].place] -= net.arcs()[i].weight;
    for (std::size_t i : net.output_arcs(t)) r[net.arcs()[i].place] += net.arcs()[i].weight;
    if (net.capacity() == Capacity::CapOne)
        for (int v : r)
            if (v > 1) return std::nullopt;
    return r;
}

// A transition whose input arcs are all positive must feed some positive
// output arc; all-negative inputs must feed a negative one; mixed (or absent)
// inputs accept either sign.
bool spn_output_sign_ok(const Net& net, std::size_t t) {
    bool has_pos = false, has_neg = false;
    for (std::size_t i : net.input_arcs(t))
        (net.arcs()[i].sign == ArcSign::Plus ? has_pos : has_neg) = true;
    bool want_pos = has_pos || !has_neg;
    bool want_neg = has_neg || !has_pos;
    for (std::size_t i : net.output_arcs(t)) {
        ArcSign s = net.arcs()[i].sign;
        if (want_pos && s == ArcSign::Plus) return true;
        if (want_neg && s == ArcSign::Minus) return true;
    }
    return false;
}

DualMarking spn_apply(const Net& net, std::size_t t, const DualMarking& m) {
    DualMarking r = m;
    for (std::size_t i : net.input_arcs(t)) {
        const Arc& a = net.arcs()[i];
        (a.sign == ArcSign::Plus ? r.pos : r.neg)[a.place] -= a.weight;
    }
    for (std::size_t i : net.output_arcs(t)) {
        const Arc& a = net.arcs()[i];
        (a.sign == ArcSign::Plus ? r.pos : r.neg)[a.place] += a.weight;
    }
    return r;
}

std::optional<DualMarking> spn_outcome(const Net& net, std::size_t t, const DualMarking& m) {
    if (!spn_enabled(net, t, m)) return std::nullopt;
    if (!spn_output_sign_ok(net, t)) return std::nullopt;
    DualMarking r = spn_apply(net, t, m);
    if (!within_capacity(net, r)) return std::nullopt;
    return r;
}

}  // namespace

EnablingSets enabling_sets(const Net& net, std::size_t t) {
    const auto& arc_idx = net.transition(t).kind == TransitionKind::LogicOutput
                              ? net.output_arcs(t)
                              : net.input_arcs(t);
    std::vector<std::size_t> places =
        net.transition(t).kind == TransitionKind::LogicOutput ? net.postset(t) : net.preset(t);
    std::vector<bool> has_minus(net.place_count(), false);
    for (std::size_t i : arc_idx)
        if (net.arcs()[i].sign == ArcSign::Minus) has_minus[net.arcs()[i].place] = true;
    EnablingSets s;
    for (std::size_t p : places) (has_minus[p] ? s.optional_dual : s.mandatory).push_back(p);
    return s;
}

bool spn_enabled(const Net& net, std::size_t t, const DualMarking& m) {
    for (std::size_t i : net.input_arcs(t)) {
        const Arc& a = net.arcs()[i];
        int avail = a.sign == ArcSign::Plus ? m.pos[a.place] : m.neg[a.place];
        if (avail < a.weight) return false;
    }
    return true;
}

bool spn_enabled(const Net& net, std::string_view t, const DualMarking& m) {
    return spn_enabled(net, resolve_transition(net, t), m);
}

DualMarking spn_fire(const Net& net, std::size_t t, const DualMarking& m) {
    const std::string& id = net.transition(t).id;
    if (!spn_enabled(net, t, m))
        throw FiringError("transition '" + id + "' is not enabled at " + to_string(m));
    if (!spn_output_sign_ok(net, t))
        throw FiringError("transition '" + id + "' has no output arc of the required sign");
    DualMarking r = spn_apply(net, t, m);
    if (!within_capacity(net, r))
        throw FiringError("firing '" + id + "' exceeds the capacity of the net");
    return r;
}

DualMarking spn_fire(const Net& net, std::string_view t, const DualMarking& m) {
    return spn_fire(net, resolve_transition(net, t), m);
}

std::vector<Outcome> lpn_outcomes(const Net& net, std::size_t t, const Marking& m) {
    std::vector<Outcome> out;
    const Transition& tr = net.transition(t);
    switch (tr.kind) {
        case TransitionKind::Traditional: {
            if (auto r = pn_outcome(net, t, m))
                out.push_back({t, 0, embed_plain(std::move(*r)), {}});
            break;
        }
        case TransitionKind::LogicInput: {
            if (!tr.guard || !eval_guard(net, *tr.guard, m)) break;
            Marking r = m;
            for (std::size_t p : net.preset(t))
                if (r[p] == 1) r[p] = 0;
            for (std::size_t p : net.postset(t)) r[p] += 1;
            if (net.capacity() == Capacity::CapOne &&
                std::any_of(r.begin(), r.end(), [](int v) { return v > 1; }))
                break;
            out.push_back({t, 0, embed_plain(std::move(r)), {}});
            break;
        }
        case TransitionKind::LogicOutput: {
            bool enabled = true;
            for (std::size_t p : net.preset(t)) enabled = enabled && m[p] == 1;
            if (!enabled || !tr.guard) break;
            Marking base = m;
            for (std::size_t p : net.preset(t)) base[p] -= 1;
            const auto& outs = net.postset(t);
            std::size_t index = 0;
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << outs.size()); ++mask) {
                Marking r = base;
                std::vector<std::size_t> chosen;
                for (std::size_t i = 0; i < outs.size(); ++i) {
                    if ((mask >> i) & 1u) {
                        r[outs[i]] += 1;
                        chosen.push_back(outs[i]);
                    }
                }
                if (net.capacity() == Capacity::CapOne &&
                    std::any_of(r.begin(), r.end(), [](int v) { return v > 1; }))
                    continue;
                if (!eval_guard(net, *tr.guard, r)) continue;
                out.push_back({t, index++, embed_plain(std::move(r)), std::move(chosen)});
            }
            break;
        }
    }
    return out;
}

std::vector<Outcome> lpn_outcomes(const Net& net, std::string_view t, const Marking& m) {
    return lpn_outcomes(net, resolve_transition(net, t), m);
}

std::vector<Outcome> lspn_outcomes(const Net& net, std::size_t t, const DualMarking& m) {
    std::vector<Outcome> out;
    const Transition& tr = net.transition(t);
    switch (tr.kind) {
        case TransitionKind::Traditional: {
            if (auto r = spn_outcome(net, t, m)) out.push_back({t, 0, std::move(*r), {}});
            break;
        }
        case TransitionKind::LogicInput: {
            EnablingSets s = enabling_sets(net, t);
            for (std::size_t p : s.mandatory)
                if (m.pos[p] != 1) return out;
            if (!s.optional_dual.empty()) {
                bool some_pos = false, all_held = true;
                for (std::size_t p : s.optional_dual) {
                    some_pos = some_pos || m.pos[p] == 1;
                    all_held = all_held && (m.pos[p] == 1 || m.neg[p] == 1);
                }
                if (!some_pos || !all_held) return out;
            }
            DualMarking r = m;
            for (std::size_t p : s.mandatory) r.pos[p] -= 1;
            // A dual-arc place gives up whichever token it holds; when it
            // holds one of each sign the positive token is the one consumed.
            for (std::size_t p : s.optional_dual) {
                if (r.pos[p] == 1)
                    r.pos[p] -= 1;
                else
                    r.neg[p] -= 1;
            }
            for (std::size_t p : net.postset(t)) r.pos[p] += 1;
            if (!within_capacity(net, r)) return out;
            out.push_back({t, 0, std::move(r), {}});
            break;
        }
        case TransitionKind::LogicOutput: {
            for (std::size_t p : net.preset(t))
                if (m.pos[p] != 1) return out;
            DualMarking base = m;
            for (std::size_t p : net.preset(t)) base.pos[p] -= 1;
            EnablingSets s = enabling_sets(net, t);
            // Firing leaves every output holding exactly the assigned token:
            // single-arc outputs always end positive, dual-arc outputs end
            // positive or negative with at least one of them positive.
            std::uint64_t total = std::uint64_t{1} << s.optional_dual.size();
            std::size_t index = 0;
            for (std::uint64_t mask = s.optional_dual.empty() ? 0 : 1; mask < total; ++mask) {
                DualMarking r = base;
                std::vector<std::size_t> chosen;
                for (std::size_t p : s.mandatory) {
                    r.pos[p] = 1;
                }
                for (std::size_t i = 0; i < s.optional_dual.size(); ++i) {
                    std::size_t p = s.optional_dual[i];
                    if ((mask >> i) & 1u) {
                        r.pos[p] = 1;
                        r.neg[p] = 0;
                        chosen.push_back(p);
                    } else {
                        r.pos[p] = 0;
                        r.neg[p] = 1;
                    }
                }
                if (!within_capacity(net, r)) continue;
                out.push_back({t, index++, std::move(r), std::move(chosen)});
            }
            break;
        }
    }
    return out;
}

std::vector<Outcome> lspn_outcomes(const Net& net, std::string_view t, const DualMarking& m) {
    return lspn_outcomes(net, resolve_transition(net, t), m);
}

std::vector<Outcome> transition_outcomes(const Net& net, std::size_t t, const DualMarking& m) {
    switch (net.net_class()) {
        case NetClass::PN: {
            std::vector<Outcome> out;
            if (auto r = pn_outcome(net, t, m.pos))
                out.push_back({t, 0, embed_plain(std::move(*r)), {}});
            return out;
        }
        case NetClass::SPN: {
            std::vector<Outcome> out;
            if (auto r = spn_outcome(net, t, m)) out.push_back({t, 0, std::move(*r), {}});
            return out;
        }
        case NetClass::LPN:
            return lpn_outcomes(net, t, m.pos);
        case NetClass::LSPN:
            return lspn_outcomes(net, t, m);
    }
    return {};
}

std::vector<Outcome> successors(const Net& net, const DualMarking& m) {
    if (auto problem = marking_problem(net, m))
        throw std::invalid_argument("marking " + to_string(m) + ": " + *problem);
    std::vector<Outcome> out;
    for (std::size_t t = 0; t < net.transition_count(); ++t) {
        std::vector<Outcome> one = transition_outcomes(net, t, m);
        out.insert(out.end(), std::make_move_iterator(one.begin()),
                   std::make_move_iterator(one.end()));
    }
    return out;
}

DualMarking replay(const Net& net, const FiringSequence& seq) {
    DualMarking m = seq.start;
    for (const FiringStep& step : seq.steps) {
        if (step.transition >= net.transition_count())
            throw FiringError("replay step names transition index " +
                              std::to_string(step.transition) + " outside the net");
        std::vector<Outcome> outs = transition_outcomes(net, step.transition, m);
        auto it = std::find_if(outs.begin(), outs.end(), [&](const Outcome& o) {
            return o.index == step.outcome;
        });
        if (it == outs.end())
            throw FiringError("replay step '" + net.transition(step.transition).id + "'/" +
                              std::to_string(step.outcome) + " is not available at " +
                              to_string(m));
        m = it->marking;
    }
    return m;
}

}  // namespace lspn
