#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "autred/automaton.hpp"

namespace autred::testing {

// Compact fixture builder: one char per symbol in `syms`, transitions as
// (src, symbol char, dst).
inline Automaton mk(Semantics sem, uint32_t n, const std::string& syms,
                    std::vector<state_t> init, std::vector<state_t> acc,
                    const std::vector<std::tuple<state_t, char, state_t>>& trans) {
    std::vector<std::string> table;
    for (char c : syms) table.emplace_back(1, c);
    std::vector<Transition> ts;
    for (auto& [src, c, dst] : trans) {
        auto pos = syms.find(c);
        ts.push_back(Transition{src, static_cast<symbol_t>(pos), dst});
    }
    return Automaton::build(sem, n, std::move(table), std::move(init), std::move(acc),
                            std::move(ts));
}

// Word over single-char symbol names, e.g. ids(aut, "aab").
inline std::vector<symbol_t> ids(const Automaton& aut, const std::string& word) {
    std::vector<symbol_t> out;
    for (char c : word) out.push_back(*aut.symbol_id(std::string(1, c)));
    return out;
}

inline LassoWord lasso(const Automaton& aut, const std::string& prefix,
                       const std::string& loop) {
    return LassoWord{ids(aut, prefix), ids(aut, loop)};
}

}  // namespace autred::testing
