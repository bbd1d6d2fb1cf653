#pragma once

#include <stdexcept>
#include <string>

#include "autred/automaton.hpp"

namespace autred {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_),
          line(line_) {}
};

// .ba format: leading "[id]" lines are initial states, then "sym,[src]->[dst]"
// transition lines, then trailing "[id]" lines are accepting states.  State
// names are arbitrary strings mapped to dense ids in order of first
// appearance.  If the text has no transition lines, the first line is initial
// and the rest are accepting.
Automaton parse_ba(const std::string& text, Semantics sem);

// Canonical form: initial lines (ascending id), transitions sorted by
// (symbol name, src, dst), accepting lines ascending.
std::string write_ba(const Automaton& aut);

// Best-effort rendering as a bottom-up tree automaton over unary symbols:
// a nullary operator seeds the initial states and each letter becomes a
// unary operator.
std::string write_timbuk(const Automaton& aut, const std::string& name);

}  // namespace autred
