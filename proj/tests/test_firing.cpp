#include <doctest.h>

#include <string>
#include <vector>

#include "fixtures.hpp"
#include "gen.hpp"
#include "lspn/firing.hpp"

using namespace lspn;

TEST_CASE("enabling sets split places by arc shape") {
    Net in = fixtures::logic_input_lspn();
    EnablingSets s = enabling_sets(in, 0);
    CHECK(s.mandatory == std::vector<std::size_t>{2});
    CHECK(s.optional_dual == std::vector<std::size_t>{0, 1});

    Net out = fixtures::logic_output_lspn();
    s = enabling_sets(out, 0);
    CHECK(s.mandatory == std::vector<std::size_t>{0});
    CHECK(s.optional_dual == std::vector<std::size_t>{1, 2});

    Net spn = fixtures::signed_net_a();
    CHECK(enabling_sets(spn, 0).mandatory == std::vector<std::size_t>{0});
    CHECK(enabling_sets(spn, 1).optional_dual == std::vector<std::size_t>{0});
}

TEST_CASE("signed enabling reads the side named by the arc sign") {
    Net b = fixtures::signed_net_b();
    DualMarking m0 = fixtures::signed_net_b_m0();
    CHECK(spn_enabled(b, "t1", m0));
    CHECK_FALSE(spn_enabled(b, "t2", m0));  // wants a negative token p1 lacks

    Net a = fixtures::signed_net_a();
    CHECK(spn_enabled(a, "t1", fixtures::signed_net_a_m0()));
    CHECK(spn_enabled(a, "t2", fixtures::signed_net_a_m0()));
    DualMarking zero{{0, 0, 0, 0}, {0, 0, 0, 0}};
    CHECK_FALSE(spn_enabled(a, "t1", zero));
    CHECK_FALSE(spn_enabled(a, "t2", zero));
}

TEST_CASE("signed firing moves tokens along matching-sign arcs") {
    Net a = fixtures::signed_net_a();
    DualMarking m0 = fixtures::signed_net_a_m0();
    CHECK(spn_fire(a, "t1", m0) == DualMarking{{0, 1, 1, 0}, {1, 0, 1, 0}});
    CHECK(spn_fire(a, "t2", m0) == DualMarking{{1, 0, 2, 0}, {0, 1, 0, 1}});
    CHECK(spn_fire(a, std::size_t{0}, m0) == spn_fire(a, "t1", m0));

    Net b = fixtures::signed_net_b();
    CHECK(spn_fire(b, "t1", fixtures::signed_net_b_m0()) ==
          DualMarking{{0, 0, 1, 0}, {0, 0, 0, 1}});
    CHECK_THROWS_WITH_AS(spn_fire(b, "t2", fixtures::signed_net_b_m0()),
                         "transition 't2' is not enabled at ((1,0,0,0),(0,0,0,0))", FiringError);
    CHECK_THROWS_WITH_AS(spn_fire(b, "t9", fixtures::signed_net_b_m0()),
                         "unknown transition 't9'", FiringError);
}

TEST_CASE("a transition must offer an output arc of the sign its inputs demand") {
    // all-positive inputs with only negative outputs never fire
    Net blocked(NetClass::SPN, Capacity::Unbounded, {"p1", "p2"}, {traditional("t")},
                {in_arc(0, 0, ArcSign::Plus), out_arc(0, 1, ArcSign::Minus)});
    DualMarking m{{1, 0}, {0, 0}};
    CHECK(spn_enabled(blocked, "t", m));
    CHECK_THROWS_WITH_AS(spn_fire(blocked, "t", m),
                         "transition 't' has no output arc of the required sign", FiringError);
    CHECK(transition_outcomes(blocked, 0, m).empty());

    Net blocked_neg(NetClass::SPN, Capacity::Unbounded, {"p1", "p2"}, {traditional("t")},
                    {in_arc(0, 0, ArcSign::Minus), out_arc(0, 1, ArcSign::Plus)});
    CHECK_THROWS_AS(spn_fire(blocked_neg, "t", DualMarking{{0, 0}, {1, 0}}), FiringError);

    // mixed-sign inputs accept either output sign
    Net mixed(NetClass::SPN, Capacity::Unbounded, {"p1", "p2", "p3"}, {traditional("t")},
              {in_arc(0, 0, ArcSign::Plus), in_arc(1, 0, ArcSign::Minus),
               out_arc(0, 2, ArcSign::Minus)});
    CHECK(spn_fire(mixed, "t", DualMarking{{1, 0, 0}, {0, 1, 0}}) ==
          DualMarking{{0, 0, 0}, {0, 0, 1}});

    // a source transition has no inputs and accepts either sign too
    Net source(NetClass::SPN, Capacity::Unbounded, {"p1"}, {traditional("t")},
               {out_arc(0, 0, ArcSign::Minus)});
    CHECK(spn_fire(source, "t", DualMarking{{0}, {0}}) == DualMarking{{0}, {1}});
}

TEST_CASE("cap-1 signed firing rejects overflows") {
    Net n(NetClass::SPN, Capacity::CapOne, {"p1", "p2"}, {traditional("t")},
          {in_arc(0, 0), out_arc(0, 1)});
    DualMarking full{{1, 1}, {0, 0}};
    CHECK_THROWS_WITH_AS(spn_fire(n, "t", full), "firing 't' exceeds the capacity of the net",
                         FiringError);
    CHECK(transition_outcomes(n, 0, full).empty());
    CHECK(spn_fire(n, "t", DualMarking{{1, 0}, {0, 0}}) == DualMarking{{0, 1}, {0, 0}});
}

TEST_CASE("plain nets use weighted arcs") {
    Net n(NetClass::PN, Capacity::Unbounded, {"p1", "p2"}, {traditional("t")},
          {in_arc(0, 0, ArcSign::Plus, 2), out_arc(0, 1, ArcSign::Plus, 3)});
    CHECK(transition_outcomes(n, 0, embed_plain({1, 0})).empty());
    auto outs = transition_outcomes(n, 0, embed_plain({2, 1}));
    REQUIRE(outs.size() == 1);
    CHECK(outs[0].marking == embed_plain({0, 4}));
}

TEST_CASE("logic input firing drains marked inputs when the expression holds") {
    Net n = fixtures::logic_input_lpn();
    auto outs = lpn_outcomes(n, "t", {1, 0, 1, 0});
    REQUIRE(outs.size() == 1);
    CHECK(outs[0].marking == embed_plain({0, 0, 0, 1}));
    CHECK(outs[0].chosen.empty());

    CHECK(lpn_outcomes(n, "t", {1, 0, 0, 0}).empty());  // p3 unmarked, expression false
    CHECK(lpn_outcomes(n, "t", {0, 0, 1, 0}).empty());

    // every marked input is drained, marked or not in the expression's terms
    outs = lpn_outcomes(n, "t", {1, 1, 1, 0});
    REQUIRE(outs.size() == 1);
    CHECK(outs[0].marking == embed_plain({0, 0, 0, 1}));
}

TEST_CASE("cap-1 logic input firing is dropped when an output would overflow") {
    Net n = fixtures::logic_input_lpn();
    CHECK(lpn_outcomes(n, "t", {1, 0, 1, 1}).empty());

    Net loose(NetClass::LPN, Capacity::Unbounded, {"p1", "p2"}, {logic_input("t", "p1")},
              {in_arc(0, 0), out_arc(0, 1)});
    auto outs = lpn_outcomes(loose, "t", {1, 1});
    REQUIRE(outs.size() == 1);
    CHECK(outs[0].marking == embed_plain({0, 2}));

    // an atom is true only at count exactly one
    CHECK(lpn_outcomes(loose, "t", {2, 0}).empty());
}

TEST_CASE("logic output firing enumerates the subsets the expression accepts") {
    Net n = fixtures::logic_output_lpn();
    auto outs = lpn_outcomes(n, "t", {0, 0, 0, 1});
    REQUIRE(outs.size() == 3);
    CHECK(outs[0].marking == embed_plain({1, 1, 0, 0}));
    CHECK(outs[0].chosen == std::vector<std::size_t>{0, 1});
    CHECK(outs[1].marking == embed_plain({1, 0, 1, 0}));
    CHECK(outs[1].chosen == std::vector<std::size_t>{0, 2});
    CHECK(outs[2].marking == embed_plain({1, 1, 1, 0}));
    CHECK(outs[2].chosen == std::vector<std::size_t>{0, 1, 2});
    for (std::size_t i = 0; i < outs.size(); ++i) CHECK(outs[i].index == i);

    CHECK(lpn_outcomes(n, "t", {0, 0, 0, 0}).empty());  // input unmarked

    // subsets that would overflow the already marked p2 are skipped, and the
    // expression is read at the post-marking, residual tokens included
    auto partial = lpn_outcomes(n, "t", {0, 1, 0, 1});
    REQUIRE(partial.size() == 2);
    CHECK(partial[0].marking == embed_plain({1, 1, 0, 0}));
    CHECK(partial[0].chosen == std::vector<std::size_t>{0});
    CHECK(partial[0].index == 0);
    CHECK(partial[1].marking == embed_plain({1, 1, 1, 0}));
    CHECK(partial[1].chosen == std::vector<std::size_t>{0, 2});
}

TEST_CASE("traditional transitions in a logic net follow the plain rule") {
    Net n = fixtures::drain_refill_lpn();
    auto outs = lpn_outcomes(n, "t2", {0, 0, 1});
    REQUIRE(outs.size() == 1);
    CHECK(outs[0].marking == embed_plain({1, 0, 0}));
    CHECK(lpn_outcomes(n, "t2", {0, 0, 0}).empty());
}

TEST_CASE("signed logic input consumes one token per input place") {
    Net n = fixtures::logic_input_lspn();
    auto outs = lspn_outcomes(n, "t", fixtures::logic_input_lspn_m0());
    REQUIRE(outs.size() == 1);
    CHECK(outs[0].marking == DualMarking{{0, 0, 0, 1}, {0, 0, 0, 0}});

    // no positively marked dual place: not enabled
    CHECK(lspn_outcomes(n, "t", {{0, 0, 1, 0}, {1, 1, 0, 0}}).empty());
    // a dual place holding no token at all blocks the firing
    CHECK(lspn_outcomes(n, "t", {{1, 0, 1, 0}, {0, 0, 0, 0}}).empty());
    // the mandatory place must hold a positive token
    CHECK(lspn_outcomes(n, "t", {{1, 0, 0, 0}, {0, 1, 0, 0}}).empty());
    // a place holding both tokens gives up the positive one
    auto both = lspn_outcomes(n, "t", {{1, 1, 1, 0}, {0, 1, 0, 0}});
    REQUIRE(both.size() == 1);
    CHECK(both[0].marking == DualMarking{{0, 0, 0, 1}, {0, 1, 0, 0}});
    // an output already holding a positive token blocks the firing at cap-1
    CHECK(lspn_outcomes(n, "t", {{1, 0, 1, 1}, {0, 1, 0, 0}}).empty());
}

TEST_CASE("signed logic output assigns a token to every output place") {
    Net n = fixtures::logic_output_lspn();
    auto outs = lspn_outcomes(n, "t", fixtures::logic_output_lspn_m0());
    REQUIRE(outs.size() == 3);
    CHECK(outs[0].marking == DualMarking{{1, 1, 0, 0}, {0, 0, 1, 0}});
    CHECK(outs[0].chosen == std::vector<std::size_t>{1});
    CHECK(outs[1].marking == DualMarking{{1, 0, 1, 0}, {0, 1, 0, 0}});
    CHECK(outs[1].chosen == std::vector<std::size_t>{2});
    CHECK(outs[2].marking == DualMarking{{1, 1, 1, 0}, {0, 0, 0, 0}});
    CHECK(outs[2].chosen == std::vector<std::size_t>{1, 2});
    for (std::size_t i = 0; i < outs.size(); ++i) CHECK(outs[i].index == i);

    CHECK(lspn_outcomes(n, "t", {{0, 0, 0, 0}, {0, 0, 0, 1}}).empty());  // input not positive

    // without dual outputs there is exactly one outcome, and single-arc
    // outputs are set to one rather than incremented
    Net k0(NetClass::LSPN, Capacity::CapOne, {"p1", "p2"},
           {[] {
               Transition o;
               o.id = "t";
               o.kind = TransitionKind::LogicOutput;
               return o;
           }()},
           {in_arc(0, 0), out_arc(0, 1)});
    auto single = lspn_outcomes(k0, "t", {{1, 0}, {0, 0}});
    REQUIRE(single.size() == 1);
    CHECK(single[0].marking == DualMarking{{0, 1}, {0, 0}});
    CHECK(single[0].chosen.empty());
    single = lspn_outcomes(k0, "t", {{1, 1}, {0, 0}});
    REQUIRE(single.size() == 1);
    CHECK(single[0].marking == DualMarking{{0, 1}, {0, 0}});
}

TEST_CASE("signed traditional transitions keep the signed rule inside a logic net") {
    Net n(NetClass::LSPN, Capacity::CapOne, {"p1", "p2"}, {traditional("t")},
          {in_arc(0, 0), out_arc(0, 1, ArcSign::Minus)});
    CHECK(lspn_outcomes(n, "t", {{1, 0}, {0, 0}}).empty());  // sign side condition

    Net ok(NetClass::LSPN, Capacity::CapOne, {"p1", "p2"}, {traditional("t")},
           {in_arc(0, 0, ArcSign::Minus), out_arc(0, 1, ArcSign::Minus)});
    auto outs = lspn_outcomes(ok, "t", {{0, 0}, {1, 0}});
    REQUIRE(outs.size() == 1);
    CHECK(outs[0].marking == DualMarking{{0, 0}, {0, 1}});
}

TEST_CASE("successor enumeration walks transitions in declaration order") {
    Net a = fixtures::signed_net_a();
    auto outs = successors(a, fixtures::signed_net_a_m0());
    REQUIRE(outs.size() == 2);
    CHECK(outs[0].transition == 0);
    CHECK(outs[1].transition == 1);
    CHECK(outs[0].marking == DualMarking{{0, 1, 1, 0}, {1, 0, 1, 0}});
    CHECK(outs[1].marking == DualMarking{{1, 0, 2, 0}, {0, 1, 0, 1}});

    CHECK(successors(a, DualMarking{{0, 0, 0, 0}, {0, 0, 0, 0}}).empty());

    auto logic = successors(fixtures::logic_output_lspn(), fixtures::logic_output_lspn_m0());
    CHECK(logic.size() == 3);

    CHECK_THROWS_WITH_AS(successors(a, DualMarking{{1, 0}, {0, 0}}),
                         "marking ((1,0),(0,0)): marking width does not match the net's 4 places",
                         std::invalid_argument);
    Net lpn = fixtures::logic_input_lpn();
    CHECK_THROWS_AS(successors(lpn, DualMarking{{1, 0, 1, 0}, {1, 0, 0, 0}}),
                    std::invalid_argument);
}

TEST_CASE("replay follows recorded transition and outcome indexes") {
    Net a = fixtures::signed_net_a();
    FiringSequence seq{fixtures::signed_net_a_m0(), {{0, 0}, {1, 0}}};
    CHECK(replay(a, seq) == DualMarking{{0, 1, 2, 0}, {0, 1, 1, 1}});

    FiringSequence empty{fixtures::signed_net_a_m0(), {}};
    CHECK(replay(a, empty) == fixtures::signed_net_a_m0());

    FiringSequence bad_outcome{fixtures::signed_net_a_m0(), {{0, 1}}};
    CHECK_THROWS_WITH_AS(replay(a, bad_outcome),
                         "replay step 't1'/1 is not available at ((1,0,1,0),(1,0,0,0))",
                         FiringError);
    FiringSequence bad_transition{fixtures::signed_net_a_m0(), {{9, 0}}};
    CHECK_THROWS_WITH_AS(replay(a, bad_transition),
                         "replay step names transition index 9 outside the net", FiringError);
}

TEST_CASE("unknown transition names are rejected by every overload") {
    Net lpn = fixtures::logic_input_lpn();
    CHECK_THROWS_WITH_AS(lpn_outcomes(lpn, "zz", {1, 0, 1, 0}), "unknown transition 'zz'",
                         FiringError);
    Net lspn = fixtures::logic_input_lspn();
    CHECK_THROWS_AS(lspn_outcomes(lspn, "zz", fixtures::logic_input_lspn_m0()), FiringError);
    CHECK_THROWS_AS(spn_enabled(fixtures::signed_net_a(), "zz", fixtures::signed_net_a_m0()),
                    FiringError);
}

TEST_CASE("signed firing matches the arc-sum rule on random nets") {
    gen::Rng rng(821);
    for (int iter = 0; iter < 80; ++iter) {
        Net net = gen::random_cap1_net(rng, NetClass::SPN);
        for (int k = 0; k < 6; ++k) {
            DualMarking m = gen::random_cap1_marking(rng, net);
            for (std::size_t t = 0; t < net.transition_count(); ++t) {
                auto outs = transition_outcomes(net, t, m);
                if (outs.empty()) continue;
                DualMarking expect = m;
                for (const Arc& a : net.arcs()) {
                    if (a.transition != t) continue;
                    auto& side = a.sign == ArcSign::Plus ? expect.pos : expect.neg;
                    side[a.place] += a.place_to_transition ? -a.weight : a.weight;
                }
                CHECK(outs[0].marking == expect);
            }
        }
    }
}

TEST_CASE("every successor of a conforming marking conforms") {
    gen::Rng rng(822);
    for (NetClass cls : {NetClass::PN, NetClass::SPN, NetClass::LPN, NetClass::LSPN}) {
        for (int iter = 0; iter < 40; ++iter) {
            Net net = gen::random_cap1_net(rng, cls);
            for (int k = 0; k < 6; ++k) {
                DualMarking m = gen::random_cap1_marking(rng, net);
                for (const Outcome& o : successors(net, m))
                    CHECK_FALSE(marking_problem(net, o.marking).has_value());
            }
        }
    }
}

TEST_CASE("logic outcome lists are canonically indexed and guard-consistent") {
    gen::Rng rng(823);
    for (int iter = 0; iter < 60; ++iter) {
        Net net = gen::random_cap1_net(rng, NetClass::LPN);
        for (int k = 0; k < 6; ++k) {
            DualMarking m = gen::random_cap1_marking(rng, net);
            for (std::size_t t = 0; t < net.transition_count(); ++t) {
                auto outs = lpn_outcomes(net, t, m.pos);
                const Transition& tr = net.transition(t);
                for (std::size_t i = 0; i < outs.size(); ++i) {
                    CHECK(outs[i].index == i);
                    CHECK(outs[i].transition == t);
                    CHECK(outs[i].marking.neg == Marking(net.place_count(), 0));
                }
                if (tr.kind == TransitionKind::LogicInput) CHECK(outs.size() <= 1);
                if (tr.kind == TransitionKind::LogicOutput) {
                    for (const Outcome& o : outs) {
                        std::unordered_map<std::string, bool> asg;
                        for (std::size_t p = 0; p < net.place_count(); ++p)
                            asg[net.place_id(p)] = o.marking.pos[p] == 1;
                        CHECK(eval_expr(*tr.guard, asg));
                        for (std::size_t p : o.chosen) {
                            const auto& post = net.postset(t);
                            CHECK(std::binary_search(post.begin(), post.end(), p));
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("signed logic outputs produce every assignment with a positive choice") {
    gen::Rng rng(824);
    for (int iter = 0; iter < 60; ++iter) {
        Net net = gen::random_cap1_net(rng, NetClass::LSPN);
        for (int k = 0; k < 6; ++k) {
            DualMarking m = gen::random_cap1_marking(rng, net);
            for (std::size_t t = 0; t < net.transition_count(); ++t) {
                const Transition& tr = net.transition(t);
                auto outs = lspn_outcomes(net, t, m);
                if (tr.kind == TransitionKind::LogicInput) CHECK(outs.size() <= 1);
                if (tr.kind != TransitionKind::LogicOutput) continue;
                bool enabled = true;
                for (std::size_t p : net.preset(t)) enabled = enabled && m.pos[p] == 1;
                if (!enabled) {
                    CHECK(outs.empty());
                    continue;
                }
                std::size_t k_dual = enabling_sets(net, t).optional_dual.size();
                std::size_t expected = k_dual == 0 ? 1 : (std::size_t{1} << k_dual) - 1;
                CHECK(outs.size() == expected);
                for (const Outcome& o : outs) {
                    bool some_positive = k_dual == 0;
                    for (std::size_t p : enabling_sets(net, t).optional_dual) {
                        CHECK(o.marking.pos[p] + o.marking.neg[p] == 1);
                        some_positive = some_positive || o.marking.pos[p] == 1;
                    }
                    CHECK(some_positive);
                }
            }
        }
    }
}

TEST_CASE("replay reproduces any single successor step") {
    gen::Rng rng(825);
    for (NetClass cls : {NetClass::PN, NetClass::SPN, NetClass::LPN, NetClass::LSPN}) {
        for (int iter = 0; iter < 25; ++iter) {
            Net net = gen::random_cap1_net(rng, cls);
            DualMarking m = gen::random_cap1_marking(rng, net);
            for (const Outcome& o : successors(net, m)) {
                FiringSequence seq{m, {{o.transition, o.index}}};
                CHECK(replay(net, seq) == o.marking);
            }
        }
    }
}
