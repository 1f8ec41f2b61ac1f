#pragma once

#include "lspn/net.hpp"

#include <stdexcept>
#include <vector>

namespace lspn {

// One way a transition can fire from a given marking. For logic-output
// transitions `chosen` lists the outputs picked to carry a positive token:
// the chosen subset of t's outputs in a plain logic net, the dual-arc
// outputs set positive in a signed one (single-arc outputs always end
// positive there). Empty for every other kind.
struct Outcome {
    std::size_t transition = 0;
    std::size_t index = 0;
    DualMarking marking;
    std::vector<std::size_t> chosen;
    friend bool operator==(const Outcome&, const Outcome&) = default;
};

class FiringError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input places of a logic transition split by arc shape: `mandatory` places
// are joined by a single positive arc, `optional_dual` places by a
// positive+negative pair. For logic-output transitions the split applies to
// the output side instead.
struct EnablingSets {
    std::vector<std::size_t> mandatory;
    std::vector<std::size_t> optional_dual;
};
EnablingSets enabling_sets(const Net& net, std::size_t t);

bool spn_enabled(const Net& net, std::size_t t, const DualMarking& m);
bool spn_enabled(const Net& net, std::string_view t, const DualMarking& m);

// Fires a traditional signed transition. Throws FiringError when the
// transition is not enabled, when no output arc carries the sign required by
// the input arcs, or when the result violates the capacity policy.
DualMarking spn_fire(const Net& net, std::size_t t, const DualMarking& m);
DualMarking spn_fire(const Net& net, std::string_view t, const DualMarking& m);

std::vector<Outcome> lpn_outcomes(const Net& net, std::size_t t, const Marking& m);
std::vector<Outcome> lpn_outcomes(const Net& net, std::string_view t, const Marking& m);

std::vector<Outcome> lspn_outcomes(const Net& net, std::size_t t, const DualMarking& m);
std::vector<Outcome> lspn_outcomes(const Net& net, std::string_view t, const DualMarking& m);

// Outcomes of one transition under the net's own semantics.
std::vector<Outcome> transition_outcomes(const Net& net, std::size_t t, const DualMarking& m);

// All outcomes of all transitions, in transition declaration order, each
// transition's outcomes in canonical order. Throws std::invalid_argument if
// the marking does not conform to the net.
std::vector<Outcome> successors(const Net& net, const DualMarking& m);

// Runs the recorded steps from seq.start, resolving each step by transition
// and canonical outcome index. Throws FiringError if a step is unavailable.
DualMarking replay(const Net& net, const FiringSequence& seq);

}  // namespace lspn
