#pragma once

#include "lspn/net.hpp"

// Hand-built nets shared across the suite.

namespace lspn::fixtures {

// Unbounded SPN. t1 consumes a positive token from p1 and emits p2(+), p3(-);
// t2 consumes a negative token from p1 and emits p2(-), p3(+), p4(-).
inline Net signed_net_a() {
    return Net(NetClass::SPN, Capacity::Unbounded, {"p1", "p2", "p3", "p4"},
               {traditional("t1"), traditional("t2")},
               {
                   in_arc(0, 0, ArcSign::Plus),
                   out_arc(0, 1, ArcSign::Plus),
                   out_arc(0, 2, ArcSign::Minus),
                   in_arc(0, 1, ArcSign::Minus),
                   out_arc(1, 1, ArcSign::Minus),
                   out_arc(1, 2, ArcSign::Plus),
                   out_arc(1, 3, ArcSign::Minus),
               });
}

inline DualMarking signed_net_a_m0() { return {{1, 0, 1, 0}, {1, 0, 0, 0}}; }

// Unbounded SPN. t1 consumes a positive token from p1 and emits p3(+), p4(-);
// t2 wants a negative token from p1 and emits p2(-).
inline Net signed_net_b() {
    return Net(NetClass::SPN, Capacity::Unbounded, {"p1", "p2", "p3", "p4"},
               {traditional("t1"), traditional("t2")},
               {
                   in_arc(0, 0, ArcSign::Plus),
                   out_arc(0, 2, ArcSign::Plus),
                   out_arc(0, 3, ArcSign::Minus),
                   in_arc(0, 1, ArcSign::Minus),
                   out_arc(1, 1, ArcSign::Minus),
               });
}

inline DualMarking signed_net_b_m0() { return {{1, 0, 0, 0}, {0, 0, 0, 0}}; }

// LSPN with one logic input transition: optional inputs p1, p2 (double arcs),
// mandatory input p3, output p4.
inline Net logic_input_lspn() {
    Transition t;
    t.id = "t";
    t.kind = TransitionKind::LogicInput;
    return Net(NetClass::LSPN, Capacity::CapOne, {"p1", "p2", "p3", "p4"}, {std::move(t)},
               {
                   in_arc(0, 0, ArcSign::Plus),
                   in_arc(0, 0, ArcSign::Minus),
                   in_arc(1, 0, ArcSign::Plus),
                   in_arc(1, 0, ArcSign::Minus),
                   in_arc(2, 0, ArcSign::Plus),
                   out_arc(0, 3, ArcSign::Plus),
               });
}

inline DualMarking logic_input_lspn_m0() { return {{1, 0, 1, 0}, {0, 1, 0, 0}}; }

// LSPN with one logic output transition: input p4, mandatory output p1,
// optional outputs p2, p3 (double arcs).
inline Net logic_output_lspn() {
    Transition t;
    t.id = "t";
    t.kind = TransitionKind::LogicOutput;
    return Net(NetClass::LSPN, Capacity::CapOne, {"p1", "p2", "p3", "p4"}, {std::move(t)},
               {
                   in_arc(3, 0, ArcSign::Plus),
                   out_arc(0, 0, ArcSign::Plus),
                   out_arc(0, 1, ArcSign::Plus),
                   out_arc(0, 1, ArcSign::Minus),
                   out_arc(0, 2, ArcSign::Plus),
                   out_arc(0, 2, ArcSign::Minus),
               });
}

inline DualMarking logic_output_lspn_m0() { return {{0, 0, 0, 1}, {0, 0, 0, 0}}; }

// Plain counterpart of logic_input_lspn.
inline Net logic_input_lpn() {
    return Net(NetClass::LPN, Capacity::CapOne, {"p1", "p2", "p3", "p4"},
               {logic_input("t", "p3 & (p1 | p2)")},
               {in_arc(0, 0), in_arc(1, 0), in_arc(2, 0), out_arc(0, 3)});
}

inline Marking logic_input_lpn_m0() { return {1, 0, 1, 0}; }

// Plain counterpart of logic_output_lspn.
inline Net logic_output_lpn() {
    return Net(NetClass::LPN, Capacity::CapOne, {"p1", "p2", "p3", "p4"},
               {logic_output("t", "p1 & (p2 | p3)")},
               {in_arc(3, 0), out_arc(0, 0), out_arc(0, 1), out_arc(0, 2)});
}

inline Marking logic_output_lpn_m0() { return {0, 0, 0, 1}; }

// LPN whose guard has no all-of/any-of shape; its structural translation is
// not equivalent from (1,0,0,0).
inline Net mixed_guard_lpn() {
    return Net(NetClass::LPN, Capacity::CapOne, {"p1", "p2", "p3", "p4"},
               {logic_input("t", "(p1 & p2) | (p3 & !p2)")},
               {in_arc(0, 0), in_arc(1, 0), in_arc(2, 0), out_arc(0, 3)});
}

inline Marking mixed_guard_lpn_m0() { return {1, 0, 0, 0}; }

// LPN with a cycle that refills a guard place: t drains {p1,p2} into p3 when
// p1|p2 holds, t2 moves p3 back to p1. The translation loses the negative
// token on p2 after one round, so projections collide.
inline Net drain_refill_lpn() {
    return Net(NetClass::LPN, Capacity::CapOne, {"p1", "p2", "p3"},
               {logic_input("t", "p1 | p2"), traditional("t2")},
               {in_arc(0, 0), in_arc(1, 0), out_arc(0, 2), in_arc(2, 1), out_arc(1, 0)});
}

inline Marking drain_refill_lpn_m0() { return {1, 0, 0}; }

}  // namespace lspn::fixtures
