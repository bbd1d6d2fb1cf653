#pragma once

#include "autred/automaton.hpp"
#include "autred/relation.hpp"

namespace autred {

struct SimOptions {
    bool parallel = true;     // parallel sweeps when compiled with OpenMP
    bool prefilter = true;    // short-word reachability prefilter
    int prefilter_depth = 4;  // capped at 8
};

// k-lookahead simulation game on one automaton, solved to a fixpoint.
// Winner set is canonical: independent of sweep order and parallelism.
// Supported conditions: Direct, Delayed, Fair, BackwardDirect,
// BackwardFiniteWord.  k >= 1.
Relation solve_lookahead(const Automaton& aut, int k, WinningCondition cond,
                         const SimOptions& opts = {});

// Cross-automaton variant over the disjoint union: rows range over states of
// a, columns over states of b.
Relation solve_cross(const Automaton& a, const Automaton& b, int k,
                     WinningCondition cond, const SimOptions& opts = {});

// Backward counting simulation: Duplicator must keep her cumulative count of
// accepting-state visits >= Spoiler's at every round boundary and whenever
// Spoiler's backward trace passes an initial state (where her state must be
// initial too).  The count lead is clamped at k * num_states to keep the
// game finite-state, so the result under-approximates the counting backward
// trace relation.  With no accepting states it coincides with
// BackwardFiniteWord.
Relation counting_backward(const Automaton& aut, int k);

// k-lookahead fair simulation between a and b where Duplicator may first move
// along `jump` (a preorder over b's states, closed) and step acceptance asks
// for an accepting state between the jump source and target.  Sound for
// inclusion when the jump preorder is jumping-safe (counting backward /
// backward finite-word closures are).
Relation jumping_fair(const Automaton& a, const Automaton& b, int k,
                      const Relation& jump, const SimOptions& opts = {});

// Pairs (p,q) such that every word of length <= depth readable from p is
// readable from q (backward: words reading into p / into q).  Overapproximates
// every forward (resp. backward) game relation.
Relation short_word_prefilter(const Automaton& aut, int depth, bool backward);

}  // namespace autred
