#include <stdexcept>

#include "doctest.h"

#include "autred/generate.hpp"
#include "autred/oracles.hpp"
#include "autred/relation.hpp"
#include "helpers.hpp"

using namespace autred;
using autred::testing::lasso;
using autred::testing::mk;

namespace {

bool preorder(const Relation& r) { return r.is_reflexive() && r.is_transitive(); }

}  // namespace

TEST_CASE("classical direct simulation on a hand example") {
    // 0 ->a 1 ->a 2(F) loop; 3 ->a 4, 4 ->a 4 no acceptance
    Automaton a = mk(Semantics::Buchi, 5, "a", {0}, {2},
                     {{0, 'a', 1}, {1, 'a', 2}, {2, 'a', 2}, {3, 'a', 4}, {4, 'a', 4}});
    Relation di = classical_simulation_naive(a, WinningCondition::Direct);
    CHECK(preorder(di));
    CHECK(di.get(3, 0));   // the acceptance-free lane is below everything
    CHECK(di.get(4, 1));
    CHECK(!di.get(0, 3));  // 0 eventually demands acceptance, 3 cannot supply it
    CHECK(!di.get(2, 1));  // 2 is accepting now, 1 is not
    CHECK(di.get(2, 2));
}

TEST_CASE("a stuck attacker ends the play but the pointwise verdict stands") {
    // 0: accepting, no moves; 1: plain, no moves; 2: accepting self-loop;
    // 3: initial feeder so nothing is trivially unreachable
    Automaton a = mk(Semantics::Buchi, 4, "a", {3}, {0, 2},
                     {{3, 'a', 0}, {3, 'a', 1}, {3, 'a', 2}, {2, 'a', 2}});
    Relation di = classical_simulation_naive(a, WinningCondition::Direct);
    Relation de = classical_simulation_naive(a, WinningCondition::Delayed);
    Relation f = classical_simulation_naive(a, WinningCondition::Fair);
    // satisfied conditions at the final position: defender wins everywhere
    CHECK(di.get(1, 0));
    CHECK(di.get(0, 2));  // the defender never has to move
    CHECK(de.get(1, 0));
    CHECK(de.get(0, 2));
    // accepting-stuck against non-accepting: the direct condition fails at the
    // last position, the delayed obligation is never discharged, but the fair
    // condition is vacuous on a finite play
    CHECK(!di.get(0, 1));
    CHECK(!de.get(0, 1));
    CHECK(f.get(0, 1));
    // a stuck defender still loses against a moving attacker
    CHECK(!di.get(2, 0));
    CHECK(!de.get(2, 0));
    CHECK(!f.get(2, 0));

    // backward: 0 accepting without predecessors, 3 plain without predecessors
    Automaton b = mk(Semantics::Buchi, 4, "a", {2}, {0}, {{2, 'a', 1}, {1, 'a', 1}});
    Relation bw = classical_simulation_naive(b, WinningCondition::BackwardDirect);
    CHECK(!bw.get(0, 1));  // acceptance mismatch at the final position
    CHECK(bw.get(3, 1));   // nothing to match: plain and non-initial
    CHECK(!bw.get(1, 3));  // backward-stuck defender loses
    Relation bwf = classical_simulation_naive(b, WinningCondition::BackwardFiniteWord);
    CHECK(bwf.get(0, 1));  // finite-word backward play ignores acceptance
}

TEST_CASE("delayed lets acceptance arrive late, fair lets it stop") {
    // p lane: accepting at position 1: 0 ->a 1(F) ->a 2 ->a 2
    // q lane: accepting at position 2: 3 ->a 4 ->a 5(F) ->a 5(F)
    Automaton a = mk(Semantics::Buchi, 6, "a", {0}, {1, 5},
                     {{0, 'a', 1},
                      {1, 'a', 2},
                      {2, 'a', 2},
                      {3, 'a', 4},
                      {4, 'a', 5},
                      {5, 'a', 5}});
    Relation di = classical_simulation_naive(a, WinningCondition::Direct);
    Relation de = classical_simulation_naive(a, WinningCondition::Delayed);
    Relation f = classical_simulation_naive(a, WinningCondition::Fair);
    CHECK(!di.get(0, 3));  // pointwise match fails at position 1
    CHECK(de.get(0, 3));   // obligation met one step later
    CHECK(f.get(0, 3));
    CHECK(di.get(1, 5));   // once both lanes accept forever the match is pointwise
    CHECK(di.get(2, 5));
    // delayed refines fair: accepting-once versus never-accepting
    Automaton b = mk(Semantics::Buchi, 3, "a", {0}, {0},
                     {{0, 'a', 1}, {1, 'a', 1}, {2, 'a', 2}});
    Relation de2 = classical_simulation_naive(b, WinningCondition::Delayed);
    Relation f2 = classical_simulation_naive(b, WinningCondition::Fair);
    CHECK(!de2.get(0, 2));  // the position-0 obligation is never met
    CHECK(f2.get(0, 2));    // only finitely many accepting positions on the left
}

TEST_CASE("delayed and fair contain direct on random automata") {
    for (uint64_t seed = 0; seed < 12; ++seed) {
        Automaton a = tabakov_vardi({9, 2, 1.6, 0.4}, seed, Semantics::Buchi);
        Relation di = classical_simulation_naive(a, WinningCondition::Direct);
        Relation de = classical_simulation_naive(a, WinningCondition::Delayed);
        Relation f = classical_simulation_naive(a, WinningCondition::Fair);
        CHECK(preorder(di));
        for (auto [p, q] : di.pairs()) {
            CAPTURE(seed);
            CHECK(de.get(p, q));
        }
        for (auto [p, q] : de.pairs()) CHECK(f.get(p, q));
    }
}

TEST_CASE("exact direct trace inclusion sees past one-step branching") {
    // left: 0 ->a 1, then 1 ->a 2 ->a 2 or 1 ->b 3 ->b 3
    // right: 4 ->a 5 ->a 7 ->a 7 and 4 ->a 6 ->b 8 ->b 8; all accepting
    Automaton a = mk(Semantics::Buchi, 9, "ab", {0}, {0, 1, 2, 3, 4, 5, 6, 7, 8},
                     {{0, 'a', 1},
                      {1, 'a', 2},
                      {2, 'a', 2},
                      {1, 'b', 3},
                      {3, 'b', 3},
                      {4, 'a', 5},
                      {5, 'a', 7},
                      {7, 'a', 7},
                      {4, 'a', 6},
                      {6, 'b', 8},
                      {8, 'b', 8}});
    Relation incl = exact_di_trace_inclusion(a);
    Relation sim = classical_simulation_naive(a, WinningCondition::Direct);
    CHECK(incl.get(0, 4));   // every infinite trace is matched word for word
    CHECK(!sim.get(0, 4));   // but one-step simulation must commit too early
    CHECK(preorder(incl));
    for (auto [p, q] : sim.pairs()) CHECK(incl.get(p, q));
}

TEST_CASE("exact backward trace inclusion tracks initial and accepting visits") {
    // two incoming lanes into 4: via 1 (from initial 0) and via 3 (from plain 2)
    Automaton a = mk(Semantics::Buchi, 5, "a", {0}, {1},
                     {{0, 'a', 1}, {1, 'a', 4}, {2, 'a', 3}, {3, 'a', 4}});
    Relation bw = exact_bw_di_trace_inclusion(a);
    CHECK(preorder(bw));
    CHECK(bw.get(3, 1));   // the trace into 3 is not initial, no obligation
    CHECK(!bw.get(1, 3));  // initial+accepting trace into 1 has no match into 3
}

TEST_CASE("classical relations are contained in the exact trace oracles") {
    for (uint64_t seed = 0; seed < 10; ++seed) {
        Automaton a = tabakov_vardi({7, 2, 1.5, 0.4}, seed, Semantics::Buchi);
        Relation sim = classical_simulation_naive(a, WinningCondition::Direct);
        Relation incl = exact_di_trace_inclusion(a);
        for (auto [p, q] : sim.pairs()) {
            CAPTURE(seed);
            CHECK(incl.get(p, q));
        }
        Relation bsim = classical_simulation_naive(a, WinningCondition::BackwardDirect);
        Relation bincl = exact_bw_di_trace_inclusion(a);
        for (auto [p, q] : bsim.pairs()) {
            CAPTURE(seed);
            CHECK(bincl.get(p, q));
        }
    }
}

TEST_CASE("bounded backward counting compares accepting visit counts") {
    // 0(I) ->a 1(F) ->a 3 and 0 ->a 2 ->a 4: the lane through 1 banks a visit
    Automaton a = mk(Semantics::Buchi, 5, "a", {0}, {1},
                     {{0, 'a', 1}, {1, 'a', 3}, {0, 'a', 2}, {2, 'a', 4}});
    Relation r = bounded_bw_counting(a, 4);
    CHECK(r.get(4, 3));   // 3's trace has at least as many accepting visits
    CHECK(!r.get(3, 4));  // 4's best count is 0, 3 demands 1
}

TEST_CASE("finite-word language difference finds a shortest separating word") {
    Automaton a = mk(Semantics::Finite, 3, "ab", {0}, {2},
                     {{0, 'a', 1}, {1, 'b', 2}, {1, 'a', 2}});
    Automaton b = mk(Semantics::Finite, 3, "ab", {0}, {2}, {{0, 'a', 1}, {1, 'b', 2}});
    std::vector<std::string> alphabet;
    auto w = nfa_language_difference(a, b, 1u << 20, &alphabet);
    REQUIRE(w.has_value());
    REQUIRE(w->size() == 2);  // "aa" is in a only
    CHECK(alphabet[(*w)[0]] == "a");
    CHECK(alphabet[(*w)[1]] == "a");
    CHECK(!nfa_language_difference(a, a).has_value());

    SUBCASE("missing symbols become separating candidates") {
        Automaton c = mk(Semantics::Finite, 2, "c", {0}, {1}, {{0, 'c', 1}});
        auto d = nfa_language_difference(a, c);
        REQUIRE(d.has_value());
    }
    SUBCASE("budget overflow refuses loudly") {
        // no difference exists, so the subset search must fill its budget
        Automaton big = tabakov_vardi({24, 2, 1.5, 0.5}, 3, Semantics::Finite);
        CHECK_THROWS_AS(nfa_language_difference(big, big, 8), std::length_error);
    }
}

TEST_CASE("lasso falsifier separates Buchi languages within bounds") {
    Automaton a = mk(Semantics::Buchi, 2, "ab", {0}, {1},
                     {{0, 'a', 1}, {1, 'b', 1}});  // a b^w
    Automaton b = mk(Semantics::Buchi, 2, "ab", {0}, {1},
                     {{0, 'a', 1}, {1, 'b', 1}, {0, 'b', 1}});  // + b b^w
    auto w = nba_lasso_falsifier(a, b, 3, 3);
    REQUIRE(w.has_value());  // b's extra word
    CHECK(!nba_lasso_falsifier(a, a, 3, 3).has_value());
    auto v = nba_lasso_falsifier(b, a, 3, 3);
    REQUIRE(v.has_value());
}

TEST_CASE("matrix lasso membership agrees with the direct check") {
    for (uint64_t seed = 0; seed < 8; ++seed) {
        Automaton a = tabakov_vardi({6, 2, 1.8, 0.4}, seed, Semantics::Buchi);
        SplitMix64 rng(seed * 811 + 17);
        for (int i = 0; i < 40; ++i) {
            LassoWord w;
            size_t ulen = rng.below(4);
            size_t vlen = 1 + rng.below(3);
            for (size_t j = 0; j < ulen; ++j)
                w.prefix.push_back(static_cast<symbol_t>(rng.below(2)));
            for (size_t j = 0; j < vlen; ++j)
                w.loop.push_back(static_cast<symbol_t>(rng.below(2)));
            CAPTURE(seed);
            CAPTURE(i);
            CHECK(lasso_member(a, w) == lasso_member_matrix(a, w));
        }
    }
}
