#pragma once

#include "lspn/firing.hpp"

#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lspn {

inline constexpr std::size_t kDefaultMaxStates = 65536;

struct LtsEdge {
    std::size_t src = 0;
    std::size_t transition = 0;
    std::size_t outcome = 0;
    std::size_t dst = 0;
    friend bool operator==(const LtsEdge&, const LtsEdge&) = default;
};

struct Lts {
    std::vector<DualMarking> states;  // discovery order, states[initial] first
    std::vector<LtsEdge> edges;       // breadth-first order
    std::size_t initial = 0;
    bool complete = true;
    bool dual = true;  // whether state labels print as dual pairs
    std::unordered_map<DualMarking, std::size_t, DualMarkingHash> index;

    std::optional<std::size_t> state_index(const DualMarking& m) const {
        auto it = index.find(m);
        return it == index.end() ? std::nullopt : std::optional(it->second);
    }
};

// Breadth-first closure from m0. New states stop being recorded once
// max_states is reached; `complete` reports whether anything was dropped.
Lts explore(const Net& net, const DualMarking& m0, std::size_t max_states = kDefaultMaxStates);

struct ReachTreeNode {
    std::size_t state = 0;
    std::optional<LtsEdge> via;  // edge from the parent node's state
    std::vector<std::size_t> children;
    bool old = false;       // marking already expanded elsewhere in the tree
    bool dead_end = false;  // marking with no outgoing edges
};

struct ReachTree {
    std::vector<ReachTreeNode> nodes;  // nodes[0] is the root
    bool dual = true;
};

// Breadth-first unfolding of a complete lts; repeated markings become leaves.
ReachTree reach_tree(const Lts& lts);

struct ProjectionCollision {
    Marking projected;
    std::vector<std::size_t> states;  // distinct dual states sharing the projection
};

struct PositiveLts {
    Lts lts;  // states are projections (negative side zero), edges deduplicated
    std::vector<ProjectionCollision> collisions;
};

PositiveLts positive_lts(const Lts& lts);

struct Counterexample {
    std::string kind;  // projection-collision | missing-state | extra-state | missing-edge
    std::string detail;
    std::optional<std::string> src, transition, dst;  // edge pieces when applicable
};

struct EquivalenceVerdict {
    enum class Result { Equivalent, NotEquivalent, Unknown };
    Result result = Result::Unknown;
    bool reverse_holds = false;  // every signed edge also exists in the plain net
    // Pairs (plain-net marking, signed-net marking) in plain-net discovery
    // order; the signed marking always projects onto its partner.
    std::vector<std::pair<Marking, DualMarking>> witness;
    std::optional<Counterexample> counterexample;
    std::size_t lpn_states = 0;
    std::size_t lspn_states = 0;
};

// Decides whether the reachability behavior of an LPN and an LSPN coincide
// under the positive projection: the projection restricted to the signed
// net's reachable states must biject onto the plain net's reachable states
// and every plain edge must have a signed counterpart. Reverse edge
// preservation is checked and reported but not required for the verdict.
EquivalenceVerdict check_equivalence(const Net& lpn, const Marking& m0, const Net& lspn,
                                     const DualMarking& m0_dual,
                                     std::size_t max_states = kDefaultMaxStates);

}  // namespace lspn
