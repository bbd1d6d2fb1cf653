#include <stdexcept>
#include <string>
#include <vector>

#include "autred/generate.hpp"
#include "autred/oracles.hpp"
#include "autred/reduction.hpp"
#include "autred/simulation.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace autred;
using autred::testing::mk;

namespace {

// Two merge-equivalent two-lane gadgets (letter-split vs. letter-merge) plus
// two feeder states that can enter either gadget.  At lookahead 2 the forward
// closure identifies the lanes and the feeders; at lookahead 1 only one
// feeder pair collapses.
Automaton merge_ladder(Semantics sem = Semantics::Finite) {
    return mk(sem, 9, "ab", {0, 1, 4, 7, 8}, {},
              {{0, 'a', 0}, {0, 'b', 0}, {1, 'a', 2}, {1, 'b', 2},
               {1, 'a', 3}, {1, 'b', 3}, {2, 'a', 1}, {3, 'b', 1},
               {4, 'a', 5}, {4, 'b', 5}, {4, 'a', 6}, {4, 'b', 6},
               {5, 'a', 5}, {5, 'a', 6}, {6, 'b', 6}, {6, 'b', 5},
               {7, 'a', 1}, {7, 'a', 4}, {8, 'a', 4}});
}

// Accepting sink reached by a transition that looks redundant next to a
// non-accepting self-loop.  The delayed relation ranks the sink above the
// loop, the direct relation does not; pruning with delayed would cut the only
// path to acceptance.
Automaton loop_splitter() {
    return mk(Semantics::Buchi, 2, "ab", {0}, {1},
              {{0, 'a', 0}, {0, 'b', 0}, {0, 'a', 1}, {1, 'a', 1}});
}

// Two diamond paths to an accepting loop.  Each endpoint rule may remove its
// one dominated transition, but removing both candidate transitions at once
// cuts the word aac... from the language.
Automaton diamond(bool drop_upper = false, bool drop_lower = false) {
    std::vector<std::tuple<state_t, char, state_t>> ts = {
        {0, 'a', 1}, {1, 'b', 3}, {0, 'b', 2}, {2, 'a', 3}, {3, 'c', 3}};
    if (!drop_upper) ts.push_back({1, 'a', 3});
    if (!drop_lower) ts.push_back({0, 'a', 2});
    return mk(Semantics::Buchi, 4, "abc", {0}, {3}, ts);
}

// Two five-step lanes to the accepting loop, each with one transition that a
// joint prune would delete; dropping either one alone keeps a^5 e^w alive
// through the other lane.
Automaton twin_ladder(bool drop_first = false, bool drop_second = false) {
    std::vector<std::tuple<state_t, char, state_t>> ts = {
        {0, 'a', 1},  {0, 'c', 10}, {0, 'b', 3},  {2, 'a', 3},
        {3, 'a', 4},  {4, 'a', 9},  {4, 'd', 9},  {10, 'a', 11},
        {11, 'a', 3}, {0, 'a', 5},  {0, 'c', 5},  {6, 'a', 12},
        {6, 'b', 9},  {5, 'a', 6},  {6, 'a', 7},  {8, 'a', 9},
        {12, 'a', 13}, {13, 'd', 9}, {9, 'e', 9}};
    if (!drop_first) ts.push_back({1, 'a', 2});
    if (!drop_second) ts.push_back({7, 'a', 8});
    return mk(Semantics::Buchi, 14, "abcde", {0}, {9}, ts);
}

// Smaller sibling of twin_ladder with witness a^w.
Automaton twin_funnel(bool drop_first = false, bool drop_second = false) {
    std::vector<std::tuple<state_t, char, state_t>> ts = {
        {0, 'b', 8}, {0, 'c', 8}, {8, 'a', 2}, {0, 'a', 1}, {2, 'a', 3},
        {3, 'a', 7}, {0, 'a', 4}, {0, 'b', 4}, {4, 'a', 5}, {6, 'a', 7},
        {7, 'a', 7}};
    if (!drop_first) ts.push_back({1, 'a', 2});
    if (!drop_second) ts.push_back({5, 'a', 6});
    return mk(Semantics::Buchi, 9, "abc", {0}, {7}, ts);
}

// A transient step from the second initial state is the only route to the
// accepting loop; its non-transient sibling at the first initial state must
// not be allowed to dominate it.
Automaton transient_bridge(bool drop_bridge = false) {
    std::vector<std::tuple<state_t, char, state_t>> ts = {
        {0, 'a', 0}, {0, 'b', 0}, {0, 'a', 1}, {1, 'b', 2}, {2, 'a', 2}};
    if (!drop_bridge) ts.push_back({1, 'a', 2});
    return mk(Semantics::Buchi, 3, "ab", {0, 1}, {2}, ts);
}

// Saturation counterexamples: in each fixture, adding the marked transition
// by hand creates the word a^w that the original language lacks.
Automaton one_a_only(bool add_bad = false) {
    std::vector<std::tuple<state_t, char, state_t>> ts = {
        {0, 'a', 1}, {0, 'b', 0}, {0, 'c', 0}, {1, 'b', 1}, {1, 'c', 1},
        {2, 'c', 2}};
    if (add_bad) ts.push_back({2, 'a', 2});
    return mk(Semantics::Buchi, 3, "abc", {0, 2}, {0, 1, 2}, ts);
}

Automaton dead_accepting_loop(bool add_bad = false) {
    std::vector<std::tuple<state_t, char, state_t>> ts = {
        {0, 'a', 0}, {1, 'a', 1}, {2, 'a', 3}};
    if (add_bad) ts.push_back({0, 'a', 1});
    return mk(Semantics::Buchi, 4, "a", {0}, {1}, ts);
}

Automaton one_way_chain(bool add_back = false) {
    std::vector<std::tuple<state_t, char, state_t>> ts = {
        {0, 'a', 1}, {1, 'a', 1}, {1, 'a', 2}, {2, 'a', 3}, {3, 'a', 3}};
    if (add_back) ts.push_back({1, 'a', 0});
    return mk(Semantics::Buchi, 4, "a", {0}, {0, 2}, ts);
}

Automaton two_stop_chain(bool add_back = false) {
    std::vector<std::tuple<state_t, char, state_t>> ts = {
        {0, 'a', 0}, {0, 'a', 1}, {1, 'a', 2}, {2, 'a', 2}, {2, 'a', 3},
        {3, 'a', 4}, {4, 'a', 4}};
    if (add_back) ts.push_back({1, 'a', 0});
    return mk(Semantics::Buchi, 5, "a", {0}, {1, 3}, ts);
}

Automaton no_fair_traces(bool add_loop = false) {
    std::vector<std::tuple<state_t, char, state_t>> ts = {
        {0, 'a', 0}, {0, 'a', 1}, {1, 'a', 2}, {2, 'a', 2}};
    if (add_loop) ts.push_back({1, 'a', 1});
    return mk(Semantics::Buchi, 3, "a", {0}, {1}, ts);
}

// One hub fanning out to four interchangeable spokes over an overlapping
// letter pattern; quotienting and pruning alone cannot shrink it, repeated
// saturate/reduce rounds collapse one spoke.
Automaton spoke_hub() {
    return mk(Semantics::Finite, 6, "abcd", {0}, {0, 5},
              {{0, 'a', 1}, {0, 'b', 2}, {0, 'c', 3}, {0, 'd', 4},
               {1, 'a', 5}, {1, 'c', 5}, {2, 'a', 5}, {2, 'b', 5},
               {3, 'b', 5}, {3, 'c', 5}, {4, 'a', 5}});
}

bool nba_language_equal(const Automaton& a, const Automaton& b, int pre = 8,
                        int loop = 8) {
    return !nba_lasso_falsifier(a, b, pre, loop) &&
           !nba_lasso_falsifier(b, a, pre, loop);
}

// pruning only removes transitions, so the result accepts a subset of the
// input by construction; only the loss direction needs searching
bool nba_no_loss(const Automaton& in, const Automaton& out, int pre, int loop) {
    return !nba_lasso_falsifier(in, out, pre, loop);
}

// saturation only adds transitions; only the gain direction needs searching
bool nba_no_gain(const Automaton& in, const Automaton& out, int pre, int loop) {
    return !nba_lasso_falsifier(out, in, pre, loop);
}

bool nfa_language_equal(const Automaton& a, const Automaton& b) {
    return !nfa_language_difference(a, b) && !nfa_language_difference(b, a);
}

Relation closure(const Automaton& a, int k, WinningCondition c) {
    return solve_lookahead(a, k, c, {}).transitive_closure();
}

}  // namespace

TEST_CASE("quotient by lookahead closure merges trace-equal states") {
    Automaton a = merge_ladder();

    QuotientResult q2 = quotient(a, closure(a, 2, WinningCondition::Direct));
    CHECK(q2.automaton.num_states() == 3);
    CHECK(q2.automaton.num_transitions() == 12);
    // class ids are dense in ascending order of the least member
    std::vector<state_t> expect = {0, 0, 1, 2, 0, 1, 2, 1, 1};
    CHECK(q2.class_of == expect);
    CHECK(q2.automaton.initial() == std::vector<state_t>{0, 1});
    CHECK(q2.automaton.accepting().empty());
    CHECK(q2.automaton.symbols() == a.symbols());

    // with one-step lookahead only one feeder joins its gadget
    QuotientResult q1 = quotient(a, closure(a, 1, WinningCondition::Direct));
    CHECK(q1.automaton.num_states() == 8);
    CHECK(q1.automaton.num_transitions() == 18);
    CHECK(q1.class_of[7] == q1.class_of[2]);
    for (state_t p = 0; p < 9; ++p)
        for (state_t q = p + 1; q < 9; ++q)
            if (!(p == 2 && q == 7)) CHECK(q1.class_of[p] != q1.class_of[q]);
}

TEST_CASE("quotient rejects relations that are unsafe to collapse") {
    Automaton fin = merge_ladder(Semantics::Finite);
    Automaton buc = merge_ladder(Semantics::Buchi);

    // raw lookahead relations are not transitively closed
    CHECK_THROWS_WITH_AS(
        quotient(fin, solve_lookahead(fin, 2, WinningCondition::Direct, {})),
        "quotient needs a transitively closed preorder", std::invalid_argument);

    // direct collapses finite-word languages but not Buchi ones, and
    // delayed is the other way around
    CHECK_THROWS_WITH_AS(quotient(buc, closure(buc, 1, WinningCondition::Direct)),
                         "relation condition is not quotienting-safe for these "
                         "semantics",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(quotient(fin, closure(fin, 1, WinningCondition::Delayed)),
                         "relation condition is not quotienting-safe for these "
                         "semantics",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(quotient(buc, closure(buc, 1, WinningCondition::Fair)),
                         "relation condition is not quotienting-safe for these "
                         "semantics",
                         std::invalid_argument);

    Relation wrong_shape(9, 8);
    wrong_shape.closed = true;
    CHECK_THROWS_WITH_AS(quotient(fin, wrong_shape),
                         "quotient needs a square same-automaton relation",
                         std::invalid_argument);
    Relation cross_rel(9, 9);
    cross_rel.closed = true;
    cross_rel.cross = true;
    CHECK_THROWS_WITH_AS(quotient(fin, cross_rel),
                         "quotient needs a square same-automaton relation",
                         std::invalid_argument);

    // the whitelisted closures go through
    CHECK_NOTHROW(quotient(buc, closure(buc, 2, WinningCondition::Delayed)));
    CHECK_NOTHROW(quotient(buc, closure(buc, 2, WinningCondition::BackwardDirect)));
    CHECK_NOTHROW(
        quotient(fin, closure(fin, 2, WinningCondition::BackwardFiniteWord)));
}

TEST_CASE("target pruning must use the direct relation, not delayed") {
    Automaton a = loop_splitter();

    // delayed ranks the accepting sink above the non-accepting loop, so a
    // delayed-based target prune would delete the only path to acceptance
    Relation strict_de = closure(a, 1, WinningCondition::Delayed).strict_part();
    CHECK(strict_de.get(1, 0));
    CHECK_FALSE(strict_de.get(0, 1));

    Automaton dropped = mk(Semantics::Buchi, 2, "ab", {0}, {1},
                           {{0, 'a', 0}, {0, 'b', 0}, {1, 'a', 1}});
    auto witness = nba_lasso_falsifier(a, dropped, 6, 6);
    REQUIRE(witness.has_value());
    CHECK_FALSE(nba_lasso_falsifier(dropped, a, 6, 6).has_value());

    // every shipped rule leaves the automaton alone
    for (PruneRule rule :
         {PruneRule::TargetStrictDirect, PruneRule::SourceStrictBackward,
          PruneRule::SourceBackwardSimTarget, PruneRule::SourceBackwardTargetSim,
          PruneRule::TransientCombo})
        for (int k : {1, 3}) {
            PruneResult r = prune(a, {rule, k});
            CHECK(r.removed == 0);
            CHECK(r.automaton.same_structure(a));
        }
}

TEST_CASE("endpoint pruning rules fire independently but not jointly") {
    Automaton a = diamond();

    PruneResult tgt = prune(a, {PruneRule::TargetStrictDirect, 1});
    CHECK(tgt.removed == 1);
    CHECK(tgt.automaton.succ(0, *a.symbol_id("a")) == std::vector<state_t>{1});
    CHECK(nba_no_loss(a, tgt.automaton, 6, 2));

    PruneResult src = prune(a, {PruneRule::SourceStrictBackward, 1});
    CHECK(src.removed == 1);
    CHECK(src.automaton.succ(1, *a.symbol_id("a")).empty());
    CHECK(nba_no_loss(a, src.automaton, 6, 2));

    // chaining the second rule recomputes its relation on the pruned result,
    // so the composition stays language-preserving
    PruneResult chained = prune(tgt.automaton, {PruneRule::SourceStrictBackward, 1});
    CHECK(nba_no_loss(a, chained.automaton, 6, 2));
    CHECK(chained.automaton.num_states() == 4);

    // deleting both candidate transitions as computed on the original input
    // loses the word starting aac
    Automaton both = diamond(true, true);
    CHECK(nba_lasso_falsifier(a, both, 6, 2).has_value());
    CHECK(nba_no_gain(a, both, 6, 2));
}

TEST_CASE("dual-path ladders survive single prunes but not joint ones") {
    struct Case {
        Automaton full, first, second, both;
    };
    Case cases[] = {
        {twin_ladder(), twin_ladder(true, false), twin_ladder(false, true),
         twin_ladder(true, true)},
        {twin_funnel(), twin_funnel(true, false), twin_funnel(false, true),
         twin_funnel(true, true)},
    };
    for (const Case& c : cases) {
        // the only cycles are self-loops at the accepting sink, so a complete
        // search needs loop length 1 and prefixes up to the longest stem
        CHECK(nba_no_loss(c.full, c.first, 6, 2));
        CHECK(nba_no_loss(c.full, c.second, 6, 2));
        CHECK(nba_lasso_falsifier(c.full, c.both, 6, 2).has_value());
        CHECK(nba_no_gain(c.full, c.both, 6, 2));

        for (PruneRule rule :
             {PruneRule::TargetStrictDirect, PruneRule::SourceStrictBackward,
              PruneRule::SourceBackwardSimTarget,
              PruneRule::SourceBackwardTargetSim, PruneRule::TransientCombo})
            for (int k : {1, 3})
                CHECK(nba_no_loss(c.full, prune(c.full, {rule, k}).automaton,
                                  6, 2));
    }
}

TEST_CASE("transient pruning requires a transient dominating sibling") {
    Automaton a = transient_bridge();

    std::vector<Transition> trans = transient_transitions(a);
    REQUIRE(trans.size() == 3);
    CHECK(trans[0] == Transition{0, 0, 1});
    CHECK(trans[1] == Transition{1, 0, 2});
    CHECK(trans[2] == Transition{1, 1, 2});

    // the bridge 1-a->2 is transient and fair-dominated by the sibling loop,
    // but the sibling is not transient, so nothing may be removed
    CHECK(closure(a, 1, WinningCondition::BackwardDirect).strict_part().get(1, 0));
    CHECK(closure(a, 1, WinningCondition::Delayed).strict_part().get(2, 1));
    for (int k : {1, 2}) {
        PruneResult r = prune(a, {PruneRule::TransientCombo, k});
        CHECK(r.removed == 0);
    }

    Automaton dropped = transient_bridge(true);
    CHECK(nba_lasso_falsifier(a, dropped, 6, 6).has_value());

    CHECK_THROWS_WITH_AS(
        prune(a.with_semantics(Semantics::Finite), {PruneRule::TransientCombo, 1}),
        "transient pruning is only language-preserving for Buchi semantics",
        std::invalid_argument);
}

TEST_CASE("saturation adds only language-preserving transitions") {
    SUBCASE("words with at most one leading letter") {
        Automaton a = one_a_only();
        Automaton bad = one_a_only(true);
        CHECK(nba_lasso_falsifier(bad, a, 6, 6).has_value());

        SaturateResult fwd = saturate(a, {SaturateRule::Forward, 2});
        CHECK(fwd.added == 7);
        CHECK(fwd.automaton.succ(2, *a.symbol_id("a")).empty());
        CHECK(nba_no_gain(a, fwd.automaton, 6, 3));

        SaturateResult bwd = saturate(a, {SaturateRule::Backward, 2});
        CHECK(bwd.added == 3);
        for (state_t d : bwd.automaton.succ(2, *a.symbol_id("a")))
            CHECK(d != 2);  // the completing self-loop stays out
        CHECK(nba_no_gain(a, bwd.automaton, 6, 3));
    }

    SUBCASE("empty languages stay empty") {
        const Automaton fixtures[] = {dead_accepting_loop(), one_way_chain(),
                                      two_stop_chain(), no_fair_traces()};
        const Automaton spoiled[] = {dead_accepting_loop(true), one_way_chain(true),
                                     two_stop_chain(true), no_fair_traces(true)};
        for (int i = 0; i < 4; ++i) {
            CHECK(remove_dead(fixtures[i]).language_empty);
            CHECK_FALSE(remove_dead(spoiled[i]).language_empty);
            for (int k : {1, 2}) {
                for (SaturateRule rule :
                     {SaturateRule::Forward, SaturateRule::Backward}) {
                    SaturateResult r = saturate(fixtures[i], {rule, k});
                    CHECK(remove_dead(r.automaton).language_empty);
                }
            }
        }
    }

    SUBCASE("fair relates everything when no fair trace exists") {
        CHECK(closure(no_fair_traces(), 1, WinningCondition::Fair).count() == 9);
    }
}

TEST_CASE("saturate-reduce rounds shrink past the quotient-and-prune fixpoint") {
    Automaton a = spoke_hub();

    Automaton h = heavy(a, 2);
    CHECK(h.num_states() == 6);
    CHECK(h.num_transitions() == 11);
    CHECK(nfa_language_equal(a, h));

    for (int k : {1, 2, 12}) {
        Automaton s = heavy_sat(a, k);
        CHECK(s.num_states() == 5);
        CHECK(s.num_transitions() == 10);
        CHECK(nfa_language_equal(a, s));
    }

    Automaton s = heavy_sat(a, 2);
    CHECK(s.initial() == std::vector<state_t>{0});
    CHECK(s.accepting() == std::vector<state_t>{0, 4});
    const std::vector<Transition> expect = {
        {0, 0, 1}, {0, 0, 3}, {3, 0, 4}, {0, 1, 2}, {0, 1, 3},
        {2, 1, 4}, {0, 2, 1}, {0, 2, 2}, {1, 2, 4}, {0, 3, 3}};
    CHECK(s.transitions() == expect);
}

TEST_CASE("reduction reports record every effective pass") {
    Automaton a = spoke_hub();

    ReductionReport rep;
    Automaton out = heavy_sat(a, 2, &rep);
    CHECK(rep.input.states == 6);
    CHECK(rep.input.transitions == 11);
    CHECK(rep.output.states == 5);
    CHECK(rep.output.transitions == 10);
    CHECK(out.num_states() == rep.output.states);

    std::vector<std::string> names;
    for (const PassEntry& e : rep.passes) names.push_back(e.pass);
    const std::vector<std::string> expect = {
        "single_accepting",        "remove_dead",
        "saturate:forward@2",      "saturate:backward@2",
        "prune:source-strict-backward@1", "saturate:forward@2",
        "saturate:backward@2",     "prune:source-strict-backward@1",
        "saturate:forward@2",      "saturate:backward@2"};
    CHECK(names == expect);
    CHECK(rep.passes[0].states_before == 6);
    CHECK(rep.passes[0].states_after == 7);
    CHECK(rep.passes[7].states_after == 5);
    CHECK(rep.passes[7].transitions_after == 10);

    std::string csv = rep.to_csv();
    CHECK(csv.rfind("pass,states_before,states_after,transitions_before,"
                    "transitions_after,millis\n",
                    0) == 0);
    CHECK(rep.to_text().find("output: 5 states, 10 transitions") !=
          std::string::npos);

    ReductionReport lrep;
    Automaton lt = light(a, 2, &lrep);
    CHECK(lt.num_states() == 6);
    CHECK(lt.num_transitions() == 11);
    std::vector<std::string> lnames;
    for (const PassEntry& e : lrep.passes) lnames.push_back(e.pass);
    CHECK(lnames == std::vector<std::string>{"remove_dead", "quotient:direct@2"});
}

TEST_CASE("lookahead below one is rejected everywhere") {
    Automaton a = spoke_hub();
    CHECK_THROWS_AS(prune(a, {PruneRule::TargetStrictDirect, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(saturate(a, {SaturateRule::Forward, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(heavy(a, 0), std::invalid_argument);
    CHECK_THROWS_AS(light(a, -1), std::invalid_argument);
    CHECK_THROWS_AS(heavy_sat(a, 0), std::invalid_argument);
}

TEST_CASE("trivial inputs pass through unchanged") {
    Automaton u = mk(Semantics::Finite, 1, "ab", {0}, {0},
                     {{0, 'a', 0}, {0, 'b', 0}});
    CHECK(heavy_sat(u, 12).same_structure(u));
    Automaton ub = u.with_semantics(Semantics::Buchi);
    CHECK(heavy_sat(ub, 4).same_structure(ub));

    // nothing accepting reachable: the pipeline collapses to the canonical
    // empty-language automaton
    Automaton empty = heavy(merge_ladder(), 1);
    CHECK(empty.num_states() == 1);
    CHECK(empty.num_transitions() == 0);
}

TEST_CASE("full reduction preserves the language on random instances") {
    for (uint64_t seed = 900; seed < 908; ++seed) {
        TVParams p;
        p.n = 6 + static_cast<uint32_t>(seed % 3);
        p.sigma = 2;
        p.td = 1.6;
        p.ad = 0.5;
        Automaton a = tabakov_vardi(p, seed, Semantics::Buchi);
        for (int k : {1, 3}) {
            CAPTURE(seed);
            CAPTURE(k);
            CHECK(nba_language_equal(a, heavy(a, k), 7, 7));
            CHECK(nba_language_equal(a, heavy_sat(a, k), 7, 7));
        }
    }
    for (uint64_t seed = 950; seed < 958; ++seed) {
        TVParams p;
        p.n = 7;
        p.sigma = 2;
        p.td = 1.4 + 0.2 * static_cast<double>(seed % 3);
        p.ad = 0.5;
        Automaton a = tabakov_vardi(p, seed, Semantics::Finite);
        for (int k : {1, 3}) {
            CAPTURE(seed);
            CAPTURE(k);
            CHECK(nfa_language_equal(a, heavy(a, k)));
            CHECK(nfa_language_equal(a, heavy_sat(a, k)));
        }
    }
}

TEST_CASE("reduction is idempotent and saturation never loses ground") {
    for (uint64_t seed = 700; seed < 720; ++seed) {
        TVParams p;
        p.n = 5 + static_cast<uint32_t>(seed % 5);
        p.sigma = 2;
        p.td = 1.0 + 0.3 * static_cast<double>(seed % 4);
        p.ad = 0.6;
        Automaton a = tabakov_vardi(
            p, seed, (seed % 2) ? Semantics::Buchi : Semantics::Finite);
        CAPTURE(seed);
        Automaton h = heavy(a, 2);
        CHECK(heavy(h, 2).same_structure(h));
        Automaton hs = heavy_sat(a, 2);
        bool no_worse = hs.num_states() < h.num_states() ||
                        (hs.num_states() == h.num_states() &&
                         hs.num_transitions() <= h.num_transitions());
        CHECK(no_worse);
    }
}

TEST_CASE("reduced cores keep no mediated-subsumption pairs") {
    // after reduction, no distinct pair should remain where one state is
    // forward- and backward-subsumed by another: the quotient would have
    // merged it or the pruner starved it
    for (uint64_t seed = 500; seed < 520; ++seed) {
        TVParams p;
        p.n = 4 + static_cast<uint32_t>(seed % 7);
        p.sigma = 2;
        p.td = 1.0 + 0.25 * static_cast<double>(seed % 7);
        p.ad = 0.5;
        Automaton a = tabakov_vardi(p, seed, Semantics::Buchi);
        Automaton h = heavy(a, 1);
        if (h.num_states() < 2) continue;
        Relation di = solve_lookahead(h, 1, WinningCondition::Direct, {});
        Relation bw = solve_lookahead(h, 1, WinningCondition::BackwardDirect, {});
        for (state_t q = 0; q < h.num_states(); ++q)
            for (state_t r = 0; r < h.num_states(); ++r) {
                if (q == r) continue;
                CAPTURE(seed);
                CAPTURE(q);
                CAPTURE(r);
                CHECK_FALSE((di.get(q, r) && bw.get(q, r)));
            }
    }
}
