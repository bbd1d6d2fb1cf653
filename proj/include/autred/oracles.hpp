#pragma once

#include <optional>

#include "autred/automaton.hpp"
#include "autred/relation.hpp"

namespace autred {

// Reference implementations, written independently of the lookahead engine
// and deliberately naive.  Meant for small automata in tests.

// Classical 1-step simulation: direct/backward by set refinement, delayed as
// a Buchi game with an obligation bit, fair as a three-priority parity game.
Relation classical_simulation_naive(const Automaton& aut, WinningCondition cond);

// Exact forward direct trace inclusion p <= q: every infinite trace from p is
// matched letter by letter by a trace from q that is accepting at every
// position where p's is.  Solved as a safety game over (state, state set).
// Throws std::length_error if the subset space exceeds the budget.
Relation exact_di_trace_inclusion(const Automaton& aut, size_t budget = 1u << 22);

// Exact backward direct trace inclusion: every initial trace ending in p is
// matched (same word, accepting positions pointwise) by an initial trace
// ending in q.  Reachability over (state, predecessor set).
Relation exact_bw_di_trace_inclusion(const Automaton& aut, size_t budget = 1u << 22);

// Bounded backward counting trace relation: compares, per word up to the
// given length, the best cumulative number of accepting visits over initial
// traces.  Overapproximates the unbounded relation (longer words could still
// separate states).
Relation bounded_bw_counting(const Automaton& aut, int max_len);

// Finite-word language comparison by subset construction; returns a shortest
// word in exactly one language, or nullopt if the languages agree.  Symbols
// are matched by name; the returned ids index the union alphabet (a's symbols
// first, then b's extras), which is written to *union_alphabet if given.
// Throws std::length_error if the product subset space exceeds the budget.
std::optional<std::vector<symbol_t>> nfa_language_difference(
    const Automaton& a, const Automaton& b, size_t budget = 1u << 22,
    std::vector<std::string>* union_alphabet = nullptr);

// Searches for an ultimately periodic word, with |prefix| <= max_prefix and
// 1 <= |loop| <= max_loop over the union alphabet, on which the two Buchi
// automata disagree.  Exhaustive within the bounds; same id convention as
// nfa_language_difference.
std::optional<LassoWord> nba_lasso_falsifier(
    const Automaton& a, const Automaton& b, int max_prefix, int max_loop,
    std::vector<std::string>* union_alphabet = nullptr);

// Independent lasso membership check via transition matrices over a
// three-valued semiring (unreachable / reachable / reachable through an
// accepting state).  For cross-checking lasso_member on tiny automata.
bool lasso_member_matrix(const Automaton& aut, const LassoWord& w);

}  // namespace autred
