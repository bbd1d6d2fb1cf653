#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "autred/automaton.hpp"
#include "autred/relation.hpp"
#include "autred/simulation.hpp"

namespace autred {

// Quotient by the equivalence classes of a closed preorder.  The preorder
// must come from a quotienting-safe condition for the automaton's semantics:
// Delayed or BackwardDirect for Buchi, Direct or BackwardFiniteWord for
// finite words.  Throws std::invalid_argument otherwise.  Class
// representative is the least member id.
struct QuotientResult {
    Automaton automaton;
    std::vector<state_t> class_of;  // old state -> new state
};
QuotientResult quotient(const Automaton& aut, const Relation& preorder);

// Transition pruning: removes transitions that are not maximal under a
// relation P on transitions built from a source-endpoint relation and a
// target-endpoint relation.  Only combinations proven language-preserving
// are accepted:
//   (identity, strict forward direct trace/sim)      [strict partial order]
//   (strict backward direct trace/sim, identity)     [strict partial order]
//   (strict backward direct simulation, forward direct trace/sim)
//   (backward direct trace/sim, strict forward direct simulation)
//   transient combo: (identity, strict forward direct)
//                    union (identity, strict fair) restricted to pairs whose
//                    subsuming transition is transient
// Relations computed at the given lookahead; simulations (not closures of
// trace oracles) are used, which under-approximate the trace relations the
// theorems are stated for.
enum class PruneRule {
    TargetStrictDirect,       // P(id, <di)
    SourceStrictBackward,     // P(<bw, id)
    SourceBackwardSimTarget,  // P(<bw-sim, <=di)
    SourceBackwardTargetSim,  // P(<=bw, <di-sim)
    TransientCombo,           // P(id, <di)  u  Pt(id, <f)
};

struct PrunerSpec {
    PruneRule rule;
    int k = 1;
};

struct PruneResult {
    Automaton automaton;
    uint64_t removed = 0;
};
PruneResult prune(const Automaton& aut, const PrunerSpec& spec,
                  const SimOptions& opts = {});

// Transition saturation: adds transitions subsumed by existing ones.  Only
// growth-safe combinations are accepted:
//   Buchi:  source above in delayed,   target below in delayed
//           source below in backward,  target above in backward
//   finite: source above in direct,    target below in direct
//           source below in backward,  target above in backward
enum class SaturateRule {
    Forward,   // de (Buchi) / di (finite)
    Backward,  // bw-di (Buchi) / bw (finite)
};

struct SaturatorSpec {
    SaturateRule rule;
    int k = 1;
};

struct SaturateResult {
    Automaton automaton;
    uint64_t added = 0;
};
SaturateResult saturate(const Automaton& aut, const SaturatorSpec& spec,
                        const SimOptions& opts = {});

struct PassEntry {
    std::string pass;
    uint32_t states_before = 0, states_after = 0;
    uint64_t transitions_before = 0, transitions_after = 0;
    double millis = 0.0;
};

struct ReductionReport {
    std::vector<PassEntry> passes;
    AutomatonStats input, output;
    std::string to_text() const;
    std::string to_csv() const;
};

// Full reduction: dead-state removal, then repeated pruning and quotienting
// at lookahead 1 and then at k, iterated to a fixpoint.  Finite-word inputs
// are first brought to single-accepting form.
Automaton heavy(const Automaton& aut, int k, ReductionReport* report = nullptr,
                const SimOptions& opts = {});

// Cheap reduction: dead-state removal and one quotient (delayed for Buchi,
// direct for finite words) at lookahead k.
Automaton light(const Automaton& aut, int k, ReductionReport* report = nullptr,
                const SimOptions& opts = {});

// heavy, then alternating saturation / quotient / saturation / heavy rounds
// while the automaton keeps shrinking (lexicographically by states, then
// transitions).
Automaton heavy_sat(const Automaton& aut, int k, ReductionReport* report = nullptr,
                    const SimOptions& opts = {});

}  // namespace autred
