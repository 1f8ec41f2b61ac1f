#include "lspn/statespace.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>
#include <tuple>

namespace lspn {

Lts explore(const Net& net, const DualMarking& m0, std::size_t max_states) {
    if (max_states == 0) throw std::invalid_argument("max_states must be at least 1");
    if (auto problem = marking_problem(net, m0))
        throw std::invalid_argument("initial marking " + to_string(m0) + ": " + *problem);

    Lts lts;
    lts.dual = net.net_class() == NetClass::SPN || net.net_class() == NetClass::LSPN;
    lts.states.push_back(m0);
    lts.index.emplace(m0, 0);

    std::deque<std::size_t> frontier{0};
    while (!frontier.empty()) {
        std::size_t s = frontier.front();
        frontier.pop_front();
        DualMarking current = lts.states[s];
        for (const Outcome& o : successors(net, current)) {
            auto it = lts.index.find(o.marking);
            std::size_t dst;
            if (it != lts.index.end()) {
                dst = it->second;
            } else if (lts.states.size() < max_states) {
                dst = lts.states.size();
                lts.states.push_back(o.marking);
                lts.index.emplace(o.marking, dst);
                frontier.push_back(dst);
            } else {
                lts.complete = false;
                continue;
            }
            lts.edges.push_back({s, o.transition, o.index, dst});
        }
    }
    return lts;
}

ReachTree reach_tree(const Lts& lts) {
    if (!lts.complete)
        throw std::invalid_argument("reachability tree requires a complete exploration");

    std::vector<std::vector<std::size_t>> edges_by_src(lts.states.size());
    for (std::size_t i = 0; i < lts.edges.size(); ++i)
        edges_by_src[lts.edges[i].src].push_back(i);

    ReachTree tree;
    tree.dual = lts.dual;
    std::vector<bool> seen(lts.states.size(), false);
    tree.nodes.push_back({lts.initial, std::nullopt, {}, false, false});
    seen[lts.initial] = true;

    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
        std::size_t n = queue.front();
        queue.pop_front();
        std::size_t state = tree.nodes[n].state;
        if (edges_by_src[state].empty()) {
            tree.nodes[n].dead_end = true;
            continue;
        }
        for (std::size_t ei : edges_by_src[state]) {
            const LtsEdge& e = lts.edges[ei];
            ReachTreeNode child;
            child.state = e.dst;
            child.via = e;
            if (seen[e.dst]) {
                child.old = true;
            } else {
                seen[e.dst] = true;
            }
            std::size_t child_id = tree.nodes.size();
            tree.nodes[n].children.push_back(child_id);
            bool expand = !child.old;
            tree.nodes.push_back(std::move(child));
            if (expand) queue.push_back(child_id);
        }
    }
    return tree;
}

PositiveLts positive_lts(const Lts& lts) {
    PositiveLts out;
    out.lts.dual = false;
    out.lts.complete = lts.complete;

    std::vector<std::size_t> proj_id(lts.states.size());
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t s = 0; s < lts.states.size(); ++s) {
        DualMarking proj = embed_plain(positive_projection(lts.states[s]));
        auto it = out.lts.index.find(proj);
        if (it == out.lts.index.end()) {
            std::size_t id = out.lts.states.size();
            out.lts.index.emplace(proj, id);
            out.lts.states.push_back(std::move(proj));
            groups.push_back({s});
            proj_id[s] = id;
        } else {
            groups[it->second].push_back(s);
            proj_id[s] = it->second;
        }
    }
    for (std::size_t g = 0; g < groups.size(); ++g)
        if (groups[g].size() > 1)
            out.collisions.push_back({out.lts.states[g].pos, groups[g]});

    out.lts.initial = proj_id[lts.initial];
    std::set<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>> seen;
    for (const LtsEdge& e : lts.edges) {
        LtsEdge p{proj_id[e.src], e.transition, e.outcome, proj_id[e.dst]};
        if (seen.insert({p.src, p.transition, p.outcome, p.dst}).second)
            out.lts.edges.push_back(p);
    }
    return out;
}

namespace {

std::string edge_text(const Marking& src, const std::string& transition, const Marking& dst) {
    return to_string(src) + " -" + transition + "-> " + to_string(dst);
}

}  // namespace

EquivalenceVerdict check_equivalence(const Net& lpn, const Marking& m0, const Net& lspn,
                                     const DualMarking& m0_dual, std::size_t max_states) {
    EquivalenceVerdict v;
    Lts plain = explore(lpn, embed_plain(m0), max_states);
    Lts dual = explore(lspn, m0_dual, max_states);
    v.lpn_states = plain.states.size();
    v.lspn_states = dual.states.size();
    if (!plain.complete || !dual.complete) {
        v.result = EquivalenceVerdict::Result::Unknown;
        return v;
    }

    PositiveLts proj = positive_lts(dual);

    if (!proj.collisions.empty()) {
        const ProjectionCollision& c = proj.collisions.front();
        v.result = EquivalenceVerdict::Result::NotEquivalent;
        std::string detail = "distinct signed markings share the projection " +
                             to_string(c.projected) + ":";
        for (std::size_t s : c.states) detail += " " + to_string(dual.states[s]);
        v.counterexample = Counterexample{"projection-collision", std::move(detail), {}, {}, {}};
        return v;
    }

    // Without collisions each projected state corresponds to exactly one
    // signed state.
    std::vector<std::size_t> dual_of(proj.lts.states.size());
    for (std::size_t s = 0; s < dual.states.size(); ++s) {
        auto id = proj.lts.state_index(embed_plain(positive_projection(dual.states[s])));
        dual_of[*id] = s;
    }

    for (std::size_t s = 0; s < plain.states.size(); ++s) {
        if (proj.lts.state_index(plain.states[s])) continue;
        v.result = EquivalenceVerdict::Result::NotEquivalent;
        Marking missing = plain.states[s].pos;
        Counterexample ce;
        ce.kind = "missing-state";
        ce.detail = "marking " + to_string(missing) +
                    " is reachable in the plain net but no signed marking projects onto it";
        for (const LtsEdge& e : plain.edges) {
            if (e.dst != s) continue;
            ce.src = to_string(plain.states[e.src].pos);
            ce.transition = lpn.transition(e.transition).id;
            ce.dst = to_string(missing);
            ce.detail += "; reached by " + edge_text(plain.states[e.src].pos,
                                                     *ce.transition, missing);
            break;
        }
        v.counterexample = std::move(ce);
        return v;
    }

    for (std::size_t s = 0; s < proj.lts.states.size(); ++s) {
        if (plain.state_index(proj.lts.states[s])) continue;
        v.result = EquivalenceVerdict::Result::NotEquivalent;
        Marking extra = proj.lts.states[s].pos;
        Counterexample ce;
        ce.kind = "extra-state";
        ce.detail = "signed marking " + to_string(dual.states[dual_of[s]]) + " projects onto " +
                    to_string(extra) + " which the plain net never reaches";
        for (const LtsEdge& e : proj.lts.edges) {
            if (e.dst != s) continue;
            ce.src = to_string(proj.lts.states[e.src].pos);
            ce.transition = lspn.transition(e.transition).id;
            ce.dst = to_string(extra);
            ce.detail += "; reached by " + edge_text(proj.lts.states[e.src].pos,
                                                     *ce.transition, extra);
            break;
        }
        v.counterexample = std::move(ce);
        return v;
    }

    // State sets now agree; compare one-step reachability on projections.
    std::set<std::pair<std::size_t, std::size_t>> dual_pairs;
    for (const LtsEdge& e : proj.lts.edges) dual_pairs.insert({e.src, e.dst});

    for (const LtsEdge& e : plain.edges) {
        std::size_t a = *proj.lts.state_index(plain.states[e.src]);
        std::size_t b = *proj.lts.state_index(plain.states[e.dst]);
        if (dual_pairs.count({a, b})) continue;
        v.result = EquivalenceVerdict::Result::NotEquivalent;
        Counterexample ce;
        ce.kind = "missing-edge";
        ce.src = to_string(plain.states[e.src].pos);
        ce.transition = lpn.transition(e.transition).id;
        ce.dst = to_string(plain.states[e.dst].pos);
        ce.detail = "plain edge " +
                    edge_text(plain.states[e.src].pos, *ce.transition, plain.states[e.dst].pos) +
                    " has no signed counterpart";
        v.counterexample = std::move(ce);
        return v;
    }

    std::set<std::pair<std::size_t, std::size_t>> plain_pairs;
    for (const LtsEdge& e : plain.edges)
        plain_pairs.insert({*proj.lts.state_index(plain.states[e.src]),
                            *proj.lts.state_index(plain.states[e.dst])});
    v.reverse_holds = true;
    for (const LtsEdge& e : proj.lts.edges)
        if (!plain_pairs.count({e.src, e.dst})) {
            v.reverse_holds = false;
            break;
        }

    v.result = EquivalenceVerdict::Result::Equivalent;
    for (std::size_t s = 0; s < plain.states.size(); ++s) {
        std::size_t id = *proj.lts.state_index(plain.states[s]);
        v.witness.emplace_back(plain.states[s].pos, dual.states[dual_of[id]]);
    }
    return v;
}

}  // namespace lspn
