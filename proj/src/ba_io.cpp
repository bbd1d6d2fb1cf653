#include "autred/ba_io.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace autred {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool is_state_line(const std::string& s) {
    return s.size() >= 2 && s.front() == '[' && s.back() == ']' &&
           s.find("->") == std::string::npos;
}

}  // namespace

Automaton parse_ba(const std::string& text, Semantics sem) {
    struct Line {
        int no;
        std::string body;
    };
    std::vector<Line> lines;
    {
        std::istringstream in(text);
        std::string raw;
        int no = 0;
        while (std::getline(in, raw)) {
            ++no;
            std::string t = trim(raw);
            if (!t.empty()) lines.push_back({no, t});
        }
    }
    if (lines.empty()) throw ParseError(1, "empty input");

    bool any_transition = false;
    for (const Line& l : lines)
        if (!is_state_line(l.body)) any_transition = true;

    std::map<std::string, state_t> state_ids;
    std::vector<std::string> symbols;
    std::map<std::string, symbol_t> symbol_ids;
    auto state_of = [&](const std::string& name) {
        auto [it, fresh] = state_ids.emplace(name, static_cast<state_t>(state_ids.size()));
        (void)fresh;
        return it->second;
    };
    auto symbol_of = [&](const std::string& name) {
        auto it = symbol_ids.find(name);
        if (it != symbol_ids.end()) return it->second;
        symbol_t id = static_cast<symbol_t>(symbols.size());
        symbols.push_back(name);
        symbol_ids[name] = id;
        return id;
    };

    std::vector<state_t> initial, accepting;
    std::vector<Transition> transitions;
    bool in_leading = true;
    bool seen_transition = false;
    for (size_t i = 0; i < lines.size(); ++i) {
        const Line& l = lines[i];
        if (is_state_line(l.body)) {
            std::string name = l.body.substr(1, l.body.size() - 2);
            if (name.empty()) throw ParseError(l.no, "empty state name");
            bool as_initial;
            if (any_transition)
                as_initial = in_leading && !seen_transition;
            else
                as_initial = (i == 0);
            if (as_initial)
                initial.push_back(state_of(name));
            else
                accepting.push_back(state_of(name));
        } else {
            in_leading = false;
            seen_transition = true;
            size_t comma = l.body.find(',');
            if (comma == std::string::npos)
                throw ParseError(l.no, "expected ',' in transition");
            std::string sym = trim(l.body.substr(0, comma));
            if (sym.empty()) throw ParseError(l.no, "empty symbol");
            std::string rest = trim(l.body.substr(comma + 1));
            size_t arrow = rest.find("]->[");
            if (rest.size() < 5 || rest.front() != '[' || rest.back() != ']' ||
                arrow == std::string::npos)
                throw ParseError(l.no, "expected '[src]->[dst]'");
            std::string src = rest.substr(1, arrow - 1);
            std::string dst = rest.substr(arrow + 4, rest.size() - arrow - 5);
            if (src.empty() || dst.empty())
                throw ParseError(l.no, "empty state name in transition");
            transitions.push_back({state_of(src), symbol_of(sym), state_of(dst)});
        }
    }
    if (initial.empty()) throw ParseError(lines[0].no, "no initial state");

    // When the state names are exactly the decimal ids 0..n-1, keep them as
    // the ids so that writing and re-parsing preserves the numbering.
    // Otherwise ids follow first appearance.
    {
        const size_t n = state_ids.size();
        std::vector<int64_t> numeric(n, -1);
        bool dense = true;
        std::vector<uint8_t> present(n, 0);
        for (const auto& [name, id] : state_ids) {
            bool canon = !name.empty() && name.size() <= 9 &&
                         name.find_first_not_of("0123456789") == std::string::npos &&
                         (name == "0" || name[0] != '0');
            int64_t value = canon ? std::stoll(name) : -1;
            if (!canon || value >= static_cast<int64_t>(n) || present[value]) {
                dense = false;
                break;
            }
            present[value] = 1;
            numeric[id] = value;
        }
        if (dense) {
            for (state_t& p : initial) p = static_cast<state_t>(numeric[p]);
            for (state_t& p : accepting) p = static_cast<state_t>(numeric[p]);
            for (Transition& t : transitions) {
                t.src = static_cast<state_t>(numeric[t.src]);
                t.dst = static_cast<state_t>(numeric[t.dst]);
            }
        }
    }

    return Automaton::build(sem, static_cast<uint32_t>(state_ids.size()),
                            std::move(symbols), std::move(initial),
                            std::move(accepting), std::move(transitions));
}

std::string write_ba(const Automaton& aut) {
    std::ostringstream out;
    for (state_t p : aut.initial()) out << '[' << p << "]\n";
    std::vector<Transition> trans = aut.transitions();
    std::sort(trans.begin(), trans.end(), [&](const Transition& x, const Transition& y) {
        const std::string& sx = aut.symbol_name(x.sym);
        const std::string& sy = aut.symbol_name(y.sym);
        return std::tie(sx, x.src, x.dst) < std::tie(sy, y.src, y.dst);
    });
    for (const Transition& t : trans)
        out << aut.symbol_name(t.sym) << ",[" << t.src << "]->[" << t.dst << "]\n";
    for (state_t p : aut.accepting()) out << '[' << p << "]\n";
    return out.str();
}

std::string write_timbuk(const Automaton& aut, const std::string& name) {
    std::string seed = "init";
    bool clash = true;
    while (clash) {
        clash = false;
        for (const std::string& s : aut.symbols())
            if (s == seed) {
                seed += "_";
                clash = true;
            }
    }
    std::ostringstream out;
    out << "Ops " << seed << ":0";
    for (const std::string& s : aut.symbols()) out << ' ' << s << ":1";
    out << "\n\nAutomaton " << name << "\nStates";
    for (state_t p = 0; p < aut.num_states(); ++p) out << " q" << p;
    out << "\nFinal States";
    for (state_t p : aut.accepting()) out << " q" << p;
    out << "\nTransitions\n";
    for (state_t p : aut.initial()) out << seed << "() -> q" << p << "\n";
    std::vector<Transition> trans = aut.transitions();
    std::sort(trans.begin(), trans.end(), [&](const Transition& x, const Transition& y) {
        const std::string& sx = aut.symbol_name(x.sym);
        const std::string& sy = aut.symbol_name(y.sym);
        return std::tie(sx, x.src, x.dst) < std::tie(sy, y.src, y.dst);
    });
    for (const Transition& t : trans)
        out << aut.symbol_name(t.sym) << "(q" << t.src << ") -> q" << t.dst << "\n";
    return out.str();
}

}  // namespace autred
