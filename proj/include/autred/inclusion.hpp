#pragma once

#include <optional>
#include <string>

#include "autred/automaton.hpp"
#include "autred/relation.hpp"

namespace autred {

enum class InclusionVerdict { Included, NotIncluded, Unknown };

struct InclusionResult {
    InclusionVerdict verdict = InclusionVerdict::Unknown;
    std::optional<LassoWord> counterexample;  // set iff NotIncluded
    std::string stage;  // which pipeline stage decided
};

struct InclusionOptions {
    int k = 0;              // 0 = automatic from problem size
    bool finite = false;    // finite-word semantics
    int max_prefix = 0;     // counterexample bounds; 0 = automatic
    int max_loop = 0;
};

// Does every word of A belong to L(B)?  Layered pipeline: cheap reduction and
// a shallow counterexample probe, then joint simulation-aware reduction with
// inclusion-preserving cross checks, then a jumping fair simulation search,
// then bounded counterexample search; Unknown if all stages are inconclusive.
InclusionResult check_inclusion(const Automaton& a, const Automaton& b,
                                const InclusionOptions& opts = {});

// Format "sym1 sym2 $ sym3 ..." (prefix $ loop); finite words have no '$'.
std::string format_counterexample(const Automaton& a, const LassoWord& w);

}  // namespace autred
