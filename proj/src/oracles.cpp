#include "autred/oracles.hpp"

#include <algorithm>
#include <cstring>
#include <deque>
#include <map>
#include <stdexcept>

namespace autred {

namespace {

// ---------------------------------------------------------------------------
// classical 1-step simulations by naive refinement

Relation refine_pointwise(const Automaton& a, bool backward, bool match_acc,
                          bool match_init) {
    const uint32_t n = a.num_states();
    // The pointwise condition applies to every visited position, including the
    // starting one; a position where the attacker has no move simply ends the
    // play there (its row is never refined further below).
    Relation rel(n, n);
    for (uint32_t p = 0; p < n; ++p)
        for (uint32_t q = 0; q < n; ++q) {
            if (match_acc && a.is_accepting(p) && !a.is_accepting(q)) continue;
            if (match_init && a.is_initial(p) && !a.is_initial(q)) continue;
            rel.set(p, q);
        }
    bool changed = true;
    while (changed) {
        changed = false;
        for (uint32_t p = 0; p < n; ++p) {
            for (uint32_t q = 0; q < n; ++q) {
                if (!rel.get(p, q)) continue;
                bool ok = true;
                for (symbol_t s = 0; s < a.num_symbols() && ok; ++s) {
                    const auto& pm = backward ? a.pred(p, s) : a.succ(p, s);
                    const auto& qm = backward ? a.pred(q, s) : a.succ(q, s);
                    for (state_t p2 : pm) {
                        bool found = false;
                        for (state_t q2 : qm)
                            if (rel.get(p2, q2)) {
                                found = true;
                                break;
                            }
                        if (!found) {
                            ok = false;
                            break;
                        }
                    }
                }
                if (!ok) {
                    rel.clear(p, q);
                    changed = true;
                }
            }
        }
    }
    return rel;
}

// Buchi game for delayed simulation.  Positions carry an obligation bit;
// Duplicator wins iff the bit is cleared infinitely often (or Spoiler gets
// stuck).  Explicit graph, classical attractor-based algorithm.
struct GameGraph {
    // nodes: vector of (owner, accepting) + adjacency
    std::vector<uint8_t> owner;  // 0 = duplicator chooses, 1 = spoiler chooses
    std::vector<uint8_t> acc;    // Buchi accepting for duplicator
    std::vector<std::vector<uint32_t>> next;
    std::vector<std::vector<uint32_t>> prev;

    uint32_t add(uint8_t own, uint8_t a) {
        owner.push_back(own);
        acc.push_back(a);
        next.emplace_back();
        prev.emplace_back();
        return static_cast<uint32_t>(owner.size() - 1);
    }
    void edge(uint32_t u, uint32_t v) {
        next[u].push_back(v);
        prev[v].push_back(u);
    }
};

// player = 0 (duplicator) or 1 (spoiler); returns the set from which `player`
// can force the play into `target`, within `alive`.
std::vector<uint8_t> attractor(const GameGraph& g, const std::vector<uint8_t>& alive,
                               std::vector<uint8_t> target, int player) {
    const uint32_t n = static_cast<uint32_t>(g.owner.size());
    std::vector<uint32_t> out_count(n, 0);
    for (uint32_t v = 0; v < n; ++v) {
        if (!alive[v]) target[v] = 0;
        uint32_t c = 0;
        for (uint32_t w : g.next[v])
            if (alive[w]) ++c;
        out_count[v] = c;
    }
    std::deque<uint32_t> queue;
    for (uint32_t v = 0; v < n; ++v)
        if (target[v]) queue.push_back(v);
    while (!queue.empty()) {
        uint32_t v = queue.front();
        queue.pop_front();
        for (uint32_t u : g.prev[v]) {
            if (!alive[u] || target[u]) continue;
            bool mine = (g.owner[u] != 0) == (player == 1);
            if (mine) {
                target[u] = 1;
                queue.push_back(u);
            } else {
                if (--out_count[u] == 0) {
                    target[u] = 1;
                    queue.push_back(u);
                }
            }
        }
    }
    return target;
}

// duplicator wins iff she can visit accepting nodes infinitely often
std::vector<uint8_t> buchi_win_duplicator(const GameGraph& g) {
    const uint32_t n = static_cast<uint32_t>(g.owner.size());
    std::vector<uint8_t> alive(n, 1);
    while (true) {
        std::vector<uint8_t> b(n, 0);
        for (uint32_t v = 0; v < n; ++v) b[v] = alive[v] && g.acc[v];
        std::vector<uint8_t> reach = attractor(g, alive, b, 0);
        std::vector<uint8_t> bad(n, 0);
        bool any_bad = false;
        for (uint32_t v = 0; v < n; ++v)
            if (alive[v] && !reach[v]) {
                bad[v] = 1;
                any_bad = true;
            }
        if (!any_bad) return alive;
        std::vector<uint8_t> lose = attractor(g, alive, bad, 1);
        for (uint32_t v = 0; v < n; ++v)
            if (lose[v]) alive[v] = 0;
    }
}

Relation delayed_naive(const Automaton& a) {
    const uint32_t n = a.num_states();
    const uint32_t nsym = a.num_symbols();
    GameGraph g;
    // spoiler position (p,q,b)
    auto spos = [&](uint32_t p, uint32_t q, uint32_t b) {
        return (static_cast<size_t>(p) * n + q) * 2 + b;
    };
    for (uint32_t p = 0; p < n; ++p)
        for (uint32_t q = 0; q < n; ++q)
            for (uint32_t b = 0; b < 2; ++b) g.add(1, b == 0);
    // spoiler stuck: the play ends there, so the verdict is the obligation
    // status of the position itself (the node is accepting iff b == 0, which
    // g.add above already encoded; the self-loop freezes that verdict)
    for (uint32_t p = 0; p < n; ++p) {
        if (a.out_degree(p) > 0) continue;
        for (uint32_t q = 0; q < n; ++q)
            for (uint32_t b = 0; b < 2; ++b) {
                uint32_t v = static_cast<uint32_t>(spos(p, q, b));
                g.edge(v, v);
            }
    }
    uint32_t dead_node = g.add(0, 0);  // duplicator stuck
    g.edge(dead_node, dead_node);
    for (uint32_t p = 0; p < n; ++p)
        for (symbol_t s = 0; s < nsym; ++s)
            for (state_t p2 : a.succ(p, s))
                for (uint32_t q = 0; q < n; ++q)
                    for (uint32_t b = 0; b < 2; ++b) {
                        // duplicator node for (p,q,b) after spoiler plays s to p2
                        uint32_t dnode = g.add(0, 0);
                        g.edge(static_cast<uint32_t>(spos(p, q, b)), dnode);
                        const auto& qs = a.succ(q, s);
                        if (qs.empty()) {
                            g.edge(dnode, dead_node);
                            continue;
                        }
                        for (state_t q2 : qs) {
                            uint32_t b2 =
                                ((b || a.is_accepting(p2)) && !a.is_accepting(q2)) ? 1
                                                                                   : 0;
                            g.edge(dnode, static_cast<uint32_t>(spos(p2, q2, b2)));
                        }
                    }
    std::vector<uint8_t> win = buchi_win_duplicator(g);
    Relation rel(n, n);
    rel.condition = WinningCondition::Delayed;
    for (uint32_t p = 0; p < n; ++p)
        for (uint32_t q = 0; q < n; ++q) {
            uint32_t b0 = (a.is_accepting(p) && !a.is_accepting(q)) ? 1 : 0;
            if (win[spos(p, q, b0)]) rel.set(p, q);
        }
    return rel;
}

// Zielonka for max-parity games with priorities {0,1,2}; duplicator (player 0)
// wins iff the maximum priority seen infinitely often is even.
struct ParityGame {
    std::vector<uint8_t> owner;  // 0 duplicator, 1 spoiler
    std::vector<uint8_t> prio;
    std::vector<std::vector<uint32_t>> next;
    std::vector<std::vector<uint32_t>> prev;
    uint32_t add(uint8_t own, uint8_t pr) {
        owner.push_back(own);
        prio.push_back(pr);
        next.emplace_back();
        prev.emplace_back();
        return static_cast<uint32_t>(owner.size() - 1);
    }
    void edge(uint32_t u, uint32_t v) {
        next[u].push_back(v);
        prev[v].push_back(u);
    }
};

std::vector<uint8_t> parity_attractor(const ParityGame& g,
                                      const std::vector<uint8_t>& alive,
                                      std::vector<uint8_t> target, int player) {
    const uint32_t n = static_cast<uint32_t>(g.owner.size());
    std::vector<uint32_t> out_count(n, 0);
    for (uint32_t v = 0; v < n; ++v) {
        if (!alive[v]) target[v] = 0;
        uint32_t c = 0;
        for (uint32_t w : g.next[v])
            if (alive[w]) ++c;
        out_count[v] = c;
    }
    std::deque<uint32_t> queue;
    for (uint32_t v = 0; v < n; ++v)
        if (target[v]) queue.push_back(v);
    while (!queue.empty()) {
        uint32_t v = queue.front();
        queue.pop_front();
        for (uint32_t u : g.prev[v]) {
            if (!alive[u] || target[u]) continue;
            bool mine = (g.owner[u] != 0) == (player == 1);
            if (mine) {
                target[u] = 1;
                queue.push_back(u);
            } else if (--out_count[u] == 0) {
                target[u] = 1;
                queue.push_back(u);
            }
        }
    }
    return target;
}

// returns winner-0 set within `alive`; every alive node must keep an alive
// successor (guaranteed here: all nodes have self-loops or total moves)
std::vector<uint8_t> zielonka(const ParityGame& g, std::vector<uint8_t> alive) {
    const uint32_t n = static_cast<uint32_t>(g.owner.size());
    uint8_t maxp = 0;
    bool any = false;
    for (uint32_t v = 0; v < n; ++v)
        if (alive[v]) {
            any = true;
            maxp = std::max(maxp, g.prio[v]);
        }
    std::vector<uint8_t> w0(n, 0);
    if (!any) return w0;
    int player = maxp % 2;  // player favored by the top priority

    std::vector<uint8_t> top(n, 0);
    for (uint32_t v = 0; v < n; ++v)
        if (alive[v] && g.prio[v] == maxp) top[v] = 1;
    std::vector<uint8_t> att = parity_attractor(g, alive, top, player);
    std::vector<uint8_t> rest = alive;
    for (uint32_t v = 0; v < n; ++v)
        if (att[v]) rest[v] = 0;
    std::vector<uint8_t> sub_w0 = zielonka(g, rest);

    // opponent's winning part of the subgame
    std::vector<uint8_t> opp(n, 0);
    bool any_opp = false;
    for (uint32_t v = 0; v < n; ++v) {
        bool opp_wins =
            player == 0 ? (rest[v] && !sub_w0[v]) : (rest[v] && sub_w0[v]);
        if (opp_wins) {
            opp[v] = 1;
            any_opp = true;
        }
    }
    if (!any_opp) {
        // the favored player wins everywhere
        if (player == 0)
            for (uint32_t v = 0; v < n; ++v) w0[v] = alive[v];
        return w0;
    }
    std::vector<uint8_t> opp_att = parity_attractor(g, alive, opp, 1 - player);
    for (uint32_t v = 0; v < n; ++v)
        if (opp_att[v]) alive[v] = 0;
    std::vector<uint8_t> rec = zielonka(g, alive);
    for (uint32_t v = 0; v < n; ++v)
        w0[v] = opp_att[v] ? (player == 1 ? 1 : 0) : rec[v];
    return w0;
}

Relation fair_naive(const Automaton& a) {
    const uint32_t n = a.num_states();
    ParityGame g;
    auto spos = [&](uint32_t p, uint32_t q) { return static_cast<size_t>(p) * n + q; };
    for (uint32_t p = 0; p < n; ++p)
        for (uint32_t q = 0; q < n; ++q) {
            uint8_t pr = a.is_accepting(q) ? 2 : (a.is_accepting(p) ? 1 : 0);
            g.add(1, pr);
        }
    for (uint32_t p = 0; p < n; ++p) {
        if (a.out_degree(p) > 0) continue;
        for (uint32_t q = 0; q < n; ++q) {
            uint32_t v = static_cast<uint32_t>(spos(p, q));
            g.prio[v] = 0;  // spoiler stuck: duplicator wins
            g.edge(v, v);
        }
    }
    uint32_t dead_node = g.add(0, 1);  // duplicator stuck: spoiler wins
    g.edge(dead_node, dead_node);
    for (uint32_t p = 0; p < n; ++p)
        for (symbol_t s = 0; s < a.num_symbols(); ++s)
            for (state_t p2 : a.succ(p, s))
                for (uint32_t q = 0; q < n; ++q) {
                    uint32_t dnode = g.add(0, 0);
                    g.edge(static_cast<uint32_t>(spos(p, q)), dnode);
                    const auto& qs = a.succ(q, s);
                    if (qs.empty()) {
                        g.edge(dnode, dead_node);
                        continue;
                    }
                    for (state_t q2 : qs)
                        g.edge(dnode, static_cast<uint32_t>(spos(p2, q2)));
                }
    std::vector<uint8_t> alive(g.owner.size(), 1);
    std::vector<uint8_t> w0 = zielonka(g, std::move(alive));
    Relation rel(n, n);
    rel.condition = WinningCondition::Fair;
    for (uint32_t p = 0; p < n; ++p)
        for (uint32_t q = 0; q < n; ++q)
            if (w0[spos(p, q)]) rel.set(p, q);
    return rel;
}

}  // namespace

Relation classical_simulation_naive(const Automaton& a, WinningCondition cond) {
    Relation rel;
    switch (cond) {
        case WinningCondition::Direct:
            rel = refine_pointwise(a, false, true, false);
            break;
        case WinningCondition::BackwardDirect:
            rel = refine_pointwise(a, true, true, true);
            break;
        case WinningCondition::BackwardFiniteWord:
            rel = refine_pointwise(a, true, false, true);
            break;
        case WinningCondition::Delayed:
            rel = delayed_naive(a);
            break;
        case WinningCondition::Fair:
            rel = fair_naive(a);
            break;
        default:
            throw std::invalid_argument("no naive solver for this condition");
    }
    rel.condition = cond;
    rel.lookahead = 1;
    return rel;
}

// ---------------------------------------------------------------------------
// exact forward direct trace inclusion: safety game over (state, state set)

namespace {

using StateSet = std::vector<uint64_t>;

StateSet empty_set(uint32_t n) { return StateSet((n + 63) / 64, 0); }
void set_add(StateSet& s, uint32_t p) { s[p >> 6] |= uint64_t{1} << (p & 63); }
bool set_has(const StateSet& s, uint32_t p) {
    return (s[p >> 6] >> (p & 63)) & 1;
}
bool set_empty(const StateSet& s) {
    for (uint64_t w : s)
        if (w) return false;
    return true;
}

}  // namespace

Relation exact_di_trace_inclusion(const Automaton& a, size_t budget) {
    const uint32_t n = a.num_states();

    struct Vertex {
        state_t p;
        StateSet set;
        std::vector<uint32_t> children;
        uint8_t alive = 1;
    };
    std::map<std::pair<state_t, StateSet>, uint32_t> index;
    std::vector<Vertex> verts;
    std::deque<uint32_t> work;

    auto intern = [&](state_t p, StateSet s) {
        auto key = std::make_pair(p, s);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        if (verts.size() >= budget)
            throw std::length_error("trace inclusion subset space exceeds budget");
        uint32_t id = static_cast<uint32_t>(verts.size());
        index.emplace(std::move(key), id);
        verts.push_back({p, std::move(s), {}, 1});
        work.push_back(id);
        return id;
    };

    // start vertices for all pairs: one candidate pebble on q, subject to the
    // same acceptance constraint every position obeys
    std::vector<std::vector<uint32_t>> start(n, std::vector<uint32_t>(n, 0));
    for (uint32_t p = 0; p < n; ++p)
        for (uint32_t q = 0; q < n; ++q) {
            StateSet s = empty_set(n);
            if (!a.is_accepting(p) || a.is_accepting(q)) set_add(s, q);
            start[p][q] = intern(p, std::move(s));
        }

    while (!work.empty()) {
        uint32_t id = work.front();
        work.pop_front();
        state_t p = verts[id].p;
        StateSet cur = verts[id].set;  // copy: verts may reallocate
        std::vector<uint32_t> children;
        for (symbol_t s = 0; s < a.num_symbols(); ++s) {
            for (state_t p2 : a.succ(p, s)) {
                StateSet next = empty_set(n);
                bool facc = a.is_accepting(p2);
                for (uint32_t q = 0; q < n; ++q) {
                    if (!set_has(cur, q)) continue;
                    for (state_t q2 : a.succ(q, s)) {
                        if (facc && !a.is_accepting(q2)) continue;
                        set_add(next, q2);
                    }
                }
                children.push_back(intern(p2, std::move(next)));
            }
        }
        verts[id].children = std::move(children);
    }

    // greatest fixpoint: a vertex loses once its candidate set is empty or
    // some attacker move leads to a losing vertex
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& v : verts) {
            if (!v.alive) continue;
            bool dead = set_empty(v.set);
            if (!dead)
                for (uint32_t c : v.children)
                    if (!verts[c].alive) {
                        dead = true;
                        break;
                    }
            if (dead) {
                v.alive = 0;
                changed = true;
            }
        }
    }

    Relation rel(n, n);
    rel.condition = WinningCondition::Direct;
    rel.closed = true;  // trace inclusion is itself a preorder
    for (uint32_t p = 0; p < n; ++p)
        for (uint32_t q = 0; q < n; ++q)
            if (verts[start[p][q]].alive) rel.set(p, q);
    return rel;
}

// ---------------------------------------------------------------------------
// exact backward direct trace inclusion: reachability over (state, set)

Relation exact_bw_di_trace_inclusion(const Automaton& a, size_t budget) {
    const uint32_t n = a.num_states();
    Relation rel(n, n);
    rel.condition = WinningCondition::BackwardDirect;
    rel.closed = true;

    // An attacker trace that reaches an initial state completes an initial run
    // prefix; the defender must then hold an initial candidate.  Candidate
    // sets respect the acceptance constraint at every position, the starting
    // one included.
    auto losing = [&](state_t x, const StateSet& cur) {
        if (!a.is_initial(x)) return false;
        for (state_t y : a.initial())
            if (set_has(cur, y)) return false;
        return true;
    };

    for (uint32_t p = 0; p < n; ++p)
        for (uint32_t q = 0; q < n; ++q) {
            StateSet s0 = empty_set(n);
            if (!a.is_accepting(p) || a.is_accepting(q)) set_add(s0, q);
            if (losing(p, s0)) continue;
            std::map<std::pair<state_t, StateSet>, uint8_t> seen;
            std::deque<std::pair<state_t, StateSet>> queue;
            queue.push_back({p, s0});
            seen[{p, s0}] = 1;
            bool spoiler_wins = false;
            size_t visited = 0;
            while (!queue.empty() && !spoiler_wins) {
                auto [x, cur] = queue.front();
                queue.pop_front();
                if (++visited > budget)
                    throw std::length_error(
                        "backward trace inclusion subset space exceeds budget");
                for (symbol_t s = 0; s < a.num_symbols() && !spoiler_wins; ++s)
                    for (state_t x2 : a.pred(x, s)) {
                        bool facc = a.is_accepting(x2);
                        StateSet next = empty_set(n);
                        for (uint32_t y = 0; y < n; ++y) {
                            if (!set_has(cur, y)) continue;
                            for (state_t y2 : a.pred(y, s)) {
                                if (facc && !a.is_accepting(y2)) continue;
                                set_add(next, y2);
                            }
                        }
                        if (losing(x2, next)) {
                            spoiler_wins = true;
                            break;
                        }
                        auto key = std::make_pair(x2, next);
                        if (!seen.count(key)) {
                            seen[key] = 1;
                            queue.push_back(std::move(key));
                        }
                    }
            }
            if (!spoiler_wins) rel.set(p, q);
        }
    return rel;
}

// ---------------------------------------------------------------------------
// bounded backward counting relation

Relation bounded_bw_counting(const Automaton& a, int max_len) {
    const uint32_t n = a.num_states();
    Relation rel(n, n);
    rel.condition = WinningCondition::BackwardCounting;
    rel.exact_semantics = false;
    rel.fill();
    // best visit count per (word, end state), level by level
    std::map<std::vector<symbol_t>, std::vector<int>> level;
    std::vector<int> base(n, -1);
    for (state_t p : a.initial()) base[p] = a.is_accepting(p) ? 1 : 0;
    level[{}] = base;
    auto apply = [&](const std::vector<int>& counts) {
        for (uint32_t p = 0; p < n; ++p)
            for (uint32_t q = 0; q < n; ++q)
                if (rel.get(p, q) && counts[p] > counts[q]) rel.clear(p, q);
    };
    apply(base);
    for (int len = 1; len <= max_len; ++len) {
        std::map<std::vector<symbol_t>, std::vector<int>> next_level;
        for (const auto& [word, counts] : level)
            for (symbol_t s = 0; s < a.num_symbols(); ++s) {
                std::vector<int> next(n, -1);
                bool nonempty = false;
                for (uint32_t p = 0; p < n; ++p) {
                    if (counts[p] < 0) continue;
                    for (state_t q : a.succ(p, s)) {
                        int c = counts[p] + (a.is_accepting(q) ? 1 : 0);
                        if (c > next[q]) {
                            next[q] = c;
                            nonempty = true;
                        }
                    }
                }
                if (!nonempty) continue;
                std::vector<symbol_t> w = word;
                w.push_back(s);
                apply(next);
                next_level.emplace(std::move(w), std::move(next));
            }
        level = std::move(next_level);
        if (level.empty()) break;
    }
    return rel;
}

// ---------------------------------------------------------------------------
// finite-word language difference by subset construction

namespace {

struct UnionAlphabet {
    std::vector<std::string> names;
    std::vector<int32_t> to_a;  // union id -> a's id or -1
    std::vector<int32_t> to_b;
};

UnionAlphabet make_union(const Automaton& a, const Automaton& b) {
    UnionAlphabet u;
    for (symbol_t s = 0; s < a.num_symbols(); ++s) {
        u.names.push_back(a.symbol_name(s));
        u.to_a.push_back(static_cast<int32_t>(s));
        auto t = b.symbol_id(a.symbol_name(s));
        u.to_b.push_back(t ? static_cast<int32_t>(*t) : -1);
    }
    for (symbol_t s = 0; s < b.num_symbols(); ++s) {
        if (a.symbol_id(b.symbol_name(s))) continue;
        u.names.push_back(b.symbol_name(s));
        u.to_a.push_back(-1);
        u.to_b.push_back(static_cast<int32_t>(s));
    }
    return u;
}

}  // namespace

std::optional<std::vector<symbol_t>> nfa_language_difference(
    const Automaton& a, const Automaton& b, size_t budget,
    std::vector<std::string>* union_alphabet) {
    UnionAlphabet ua = make_union(a, b);
    if (union_alphabet) *union_alphabet = ua.names;
    const uint32_t na = a.num_states(), nb = b.num_states();

    StateSet sa = empty_set(na), sb = empty_set(nb);
    for (state_t p : a.initial()) set_add(sa, p);
    for (state_t p : b.initial()) set_add(sb, p);

    auto accepts = [](const Automaton& aut, const StateSet& s) {
        for (state_t p : aut.accepting())
            if (set_has(s, p)) return true;
        return false;
    };
    struct Node {
        StateSet sa, sb;
        int32_t parent;
        symbol_t via;
    };
    std::vector<Node> nodes;
    std::map<std::pair<StateSet, StateSet>, uint32_t> seen;
    std::deque<uint32_t> queue;
    nodes.push_back({sa, sb, -1, 0});
    seen[{sa, sb}] = 0;
    queue.push_back(0);
    auto reconstruct = [&](uint32_t id) {
        std::vector<symbol_t> w;
        for (int32_t v = static_cast<int32_t>(id); nodes[v].parent >= 0;
             v = nodes[v].parent)
            w.push_back(nodes[v].via);
        std::reverse(w.begin(), w.end());
        return w;
    };
    while (!queue.empty()) {
        uint32_t id = queue.front();
        queue.pop_front();
        if (accepts(a, nodes[id].sa) != accepts(b, nodes[id].sb))
            return reconstruct(id);
        for (symbol_t s = 0; s < ua.names.size(); ++s) {
            StateSet nsa = empty_set(na), nsb = empty_set(nb);
            if (ua.to_a[s] >= 0)
                for (uint32_t p = 0; p < na; ++p)
                    if (set_has(nodes[id].sa, p))
                        for (state_t q : a.succ(p, static_cast<symbol_t>(ua.to_a[s])))
                            set_add(nsa, q);
            if (ua.to_b[s] >= 0)
                for (uint32_t p = 0; p < nb; ++p)
                    if (set_has(nodes[id].sb, p))
                        for (state_t q : b.succ(p, static_cast<symbol_t>(ua.to_b[s])))
                            set_add(nsb, q);
            auto key = std::make_pair(nsa, nsb);
            if (seen.count(key)) continue;
            if (nodes.size() >= budget)
                throw std::length_error("language difference subset space exceeds budget");
            uint32_t nid = static_cast<uint32_t>(nodes.size());
            seen.emplace(std::move(key), nid);
            nodes.push_back({std::move(nsa), std::move(nsb), static_cast<int32_t>(id), s});
            queue.push_back(nid);
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// lasso membership via three-valued transition matrices

namespace {

// entries: 0 no path, 1 path, 2 path through an accepting position
// (positions after the first; segment marking includes its endpoint)
using Mat = std::vector<uint8_t>;

Mat mat_identity(uint32_t n) {
    Mat m(static_cast<size_t>(n) * n, 0);
    for (uint32_t i = 0; i < n; ++i) m[static_cast<size_t>(i) * n + i] = 1;
    return m;
}

Mat mat_symbol(const Automaton& a, symbol_t s) {
    const uint32_t n = a.num_states();
    Mat m(static_cast<size_t>(n) * n, 0);
    for (uint32_t p = 0; p < n; ++p)
        for (state_t q : a.succ(p, s))
            m[static_cast<size_t>(p) * n + q] = a.is_accepting(q) ? 2 : 1;
    return m;
}

Mat mat_mul(const Mat& x, const Mat& y, uint32_t n) {
    Mat r(static_cast<size_t>(n) * n, 0);
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t k = 0; k < n; ++k) {
            uint8_t xv = x[static_cast<size_t>(i) * n + k];
            if (!xv) continue;
            for (uint32_t j = 0; j < n; ++j) {
                uint8_t yv = y[static_cast<size_t>(k) * n + j];
                if (!yv) continue;
                uint8_t v = std::max(xv, yv);
                uint8_t& slot = r[static_cast<size_t>(i) * n + j];
                slot = std::max(slot, v);
            }
        }
    return r;
}

}  // namespace

bool lasso_member_matrix(const Automaton& a, const LassoWord& w) {
    if (w.loop.empty()) throw std::invalid_argument("lasso loop must be nonempty");
    const uint32_t n = a.num_states();
    Mat mu = mat_identity(n);
    for (symbol_t s : w.prefix) mu = mat_mul(mu, mat_symbol(a, s), n);
    Mat mv = mat_identity(n);
    for (symbol_t s : w.loop) mv = mat_mul(mv, mat_symbol(a, s), n);

    // powers of mv until repetition
    std::vector<Mat> powers = {mat_identity(n)};  // mv^0
    std::map<Mat, size_t> seen = {{powers[0], 0}};
    while (true) {
        Mat next = mat_mul(powers.back(), mv, n);
        if (seen.count(next)) break;
        seen[next] = powers.size();
        powers.push_back(std::move(next));
    }
    // q lies on an accepting v-cycle iff some positive power marks (q,q)
    std::vector<uint8_t> good(n, 0);
    for (size_t j = 1; j < powers.size(); ++j)
        for (uint32_t q = 0; q < n; ++q)
            if (powers[j][static_cast<size_t>(q) * n + q] == 2) good[q] = 1;
    // reachable after u v^i for any i
    for (const Mat& pw : powers) {
        Mat reach = mat_mul(mu, pw, n);
        for (state_t p0 : a.initial())
            for (uint32_t q = 0; q < n; ++q)
                if (reach[static_cast<size_t>(p0) * n + q] && good[q]) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// bounded lasso disagreement search

namespace {

bool member_via_union(const Automaton& aut, const std::vector<int32_t>& sym_map,
                      const std::vector<symbol_t>& prefix,
                      const std::vector<symbol_t>& loop) {
    LassoWord w;
    for (symbol_t s : prefix) {
        if (sym_map[s] < 0) return false;
        w.prefix.push_back(static_cast<symbol_t>(sym_map[s]));
    }
    for (symbol_t s : loop) {
        if (sym_map[s] < 0) return false;
        w.loop.push_back(static_cast<symbol_t>(sym_map[s]));
    }
    return lasso_member(aut, w);
}

}  // namespace

std::optional<LassoWord> nba_lasso_falsifier(const Automaton& a, const Automaton& b,
                                             int max_prefix, int max_loop,
                                             std::vector<std::string>* union_alphabet) {
    UnionAlphabet ua = make_union(a, b);
    if (union_alphabet) *union_alphabet = ua.names;
    const uint32_t ns = static_cast<uint32_t>(ua.names.size());
    if (ns == 0) return std::nullopt;

    std::vector<symbol_t> prefix, loop;
    // iterate all words of length exactly L over ns symbols
    auto for_each_word = [&](int len, auto&& fn) {
        std::vector<symbol_t> word(len, 0);
        while (true) {
            if (!fn(word)) return false;
            int i = len - 1;
            while (i >= 0 && word[i] + 1 == ns) word[i--] = 0;
            if (i < 0) return true;
            ++word[i];
        }
    };

    std::optional<LassoWord> found;
    for (int lp = 0; lp <= max_prefix && !found; ++lp) {
        for_each_word(lp, [&](const std::vector<symbol_t>& u) {
            for (int ll = 1; ll <= max_loop && !found; ++ll) {
                for_each_word(ll, [&](const std::vector<symbol_t>& v) {
                    bool in_a = member_via_union(a, ua.to_a, u, v);
                    bool in_b = member_via_union(b, ua.to_b, u, v);
                    if (in_a != in_b) {
                        found = LassoWord{u, v};
                        return false;
                    }
                    return true;
                });
            }
            return !found;
        });
    }
    return found;
}

}  // namespace autred
