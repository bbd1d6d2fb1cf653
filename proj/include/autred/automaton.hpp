#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace autred {

using state_t = uint32_t;
using symbol_t = uint32_t;

enum class Semantics { Buchi, Finite };

struct Transition {
    state_t src;
    symbol_t sym;
    state_t dst;

    friend bool operator==(const Transition&, const Transition&) = default;
    friend auto operator<=>(const Transition&, const Transition&) = default;
};

// An ultimately periodic word u v^omega (v empty means the finite word u).
struct LassoWord {
    std::vector<symbol_t> prefix;
    std::vector<symbol_t> loop;
};

struct AutomatonStats {
    uint32_t states = 0;
    uint64_t transitions = 0;
    uint32_t accepting = 0;
    uint32_t symbols = 0;
    double transition_density = 0.0;  // transitions / (states * symbols)
};

// Immutable automaton over a named finite alphabet.  State ids are dense
// [0, num_states).  The same structure is read as a Buchi automaton or as a
// finite-word automaton depending on the semantics tag.
class Automaton {
public:
    Automaton() = default;

    static Automaton build(Semantics sem,
                           uint32_t num_states,
                           std::vector<std::string> symbols,
                           std::vector<state_t> initial,
                           std::vector<state_t> accepting,
                           std::vector<Transition> transitions);

    Semantics semantics() const { return sem_; }
    uint32_t num_states() const { return n_; }
    uint32_t num_symbols() const { return static_cast<uint32_t>(symbols_.size()); }
    uint64_t num_transitions() const { return num_transitions_; }

    const std::string& symbol_name(symbol_t a) const { return symbols_[a]; }
    const std::vector<std::string>& symbols() const { return symbols_; }
    std::optional<symbol_t> symbol_id(std::string_view name) const;

    bool is_initial(state_t p) const { return initial_mask_[p] != 0; }
    bool is_accepting(state_t p) const { return accepting_mask_[p] != 0; }
    const std::vector<state_t>& initial() const { return initial_; }
    const std::vector<state_t>& accepting() const { return accepting_; }

    // Sorted successor / predecessor lists.
    const std::vector<state_t>& succ(state_t p, symbol_t a) const {
        return fwd_[a][p];
    }
    const std::vector<state_t>& pred(state_t q, symbol_t a) const {
        return bwd_[a][q];
    }
    uint32_t out_degree(state_t p) const { return out_degree_[p]; }
    uint32_t in_degree(state_t p) const { return in_degree_[p]; }

    std::vector<Transition> transitions() const;  // sorted by (sym, src, dst)
    AutomatonStats stats() const;

    // Same states/alphabet/transitions; initial and accepting sets replaced.
    Automaton with_sets(std::vector<state_t> initial,
                        std::vector<state_t> accepting) const;
    Automaton with_semantics(Semantics sem) const;

    bool same_structure(const Automaton& other) const;

private:
    Semantics sem_ = Semantics::Buchi;
    uint32_t n_ = 0;
    uint64_t num_transitions_ = 0;
    std::vector<std::string> symbols_;
    std::unordered_map<std::string, symbol_t> symbol_index_;
    std::vector<state_t> initial_;    // sorted
    std::vector<state_t> accepting_;  // sorted
    std::vector<uint8_t> initial_mask_;
    std::vector<uint8_t> accepting_mask_;
    // fwd_[sym][state] -> sorted successors, bwd_ mirrored.
    std::vector<std::vector<std::vector<state_t>>> fwd_;
    std::vector<std::vector<std::vector<state_t>>> bwd_;
    std::vector<uint32_t> out_degree_;
    std::vector<uint32_t> in_degree_;
};

struct RemoveDeadResult {
    Automaton automaton;
    // old state id -> new id, or -1 if the state was removed.
    std::vector<int32_t> state_map;
    bool language_empty = false;
};

// Removes states that are unreachable or useless (Buchi: cannot reach an
// accepting cycle; finite: cannot reach an accepting state).  An automaton
// with empty language collapses to a canonical single rejecting state.
RemoveDeadResult remove_dead(const Automaton& aut);

// Transitions whose endpoints lie on no common cycle: (p,a,r) is transient
// iff r cannot reach p.  Returned sorted by (sym, src, dst).
std::vector<Transition> transient_transitions(const Automaton& aut);

// Finite-word normal form: one accepting state with no outgoing transitions
// (plus initial states that were accepting stay accepting so the empty word
// is preserved).  Language-preserving for finite-word semantics.
Automaton single_accepting_transform(const Automaton& aut);

// Membership of the finite word u (finite-word semantics).
bool word_member(const Automaton& aut, const std::vector<symbol_t>& u);

// Membership of u v^omega (Buchi semantics).  The loop must be nonempty.
bool lasso_member(const Automaton& aut, const LassoWord& w);

// Reachable pairs of the synchronized product, matching symbols by name.
std::vector<std::pair<state_t, state_t>> product_reachable(const Automaton& a,
                                                           const Automaton& b);

struct DisjointUnion {
    Automaton automaton;
    uint32_t offset = 0;  // state q of b becomes offset + q
    // symbol id remaps into the union alphabet
    std::vector<symbol_t> sym_map_a;
    std::vector<symbol_t> sym_map_b;
};

DisjointUnion disjoint_union(const Automaton& a, const Automaton& b);

// Adds (at most) a forward sink catching missing successors and a backward
// source feeding missing predecessors, so that every state has a predecessor
// and a successor for every symbol.  Both fresh states are non-initial and
// non-accepting.
Automaton complete(const Automaton& aut);

}  // namespace autred
