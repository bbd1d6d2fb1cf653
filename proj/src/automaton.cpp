#include "autred/automaton.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <stdexcept>

namespace autred {

namespace {

void sort_unique(std::vector<state_t>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

Automaton Automaton::build(Semantics sem, uint32_t num_states,
                           std::vector<std::string> symbols,
                           std::vector<state_t> initial,
                           std::vector<state_t> accepting,
                           std::vector<Transition> transitions) {
    Automaton a;
    a.sem_ = sem;
    a.n_ = num_states;
    a.symbols_ = std::move(symbols);
    for (symbol_t s = 0; s < a.symbols_.size(); ++s) {
        auto [it, fresh] = a.symbol_index_.emplace(a.symbols_[s], s);
        if (!fresh) throw std::invalid_argument("duplicate symbol name");
    }
    const uint32_t nsym = static_cast<uint32_t>(a.symbols_.size());
    a.initial_ = std::move(initial);
    a.accepting_ = std::move(accepting);
    sort_unique(a.initial_);
    sort_unique(a.accepting_);
    for (state_t p : a.initial_)
        if (p >= num_states) throw std::invalid_argument("initial state out of range");
    for (state_t p : a.accepting_)
        if (p >= num_states) throw std::invalid_argument("accepting state out of range");
    a.initial_mask_.assign(num_states, 0);
    a.accepting_mask_.assign(num_states, 0);
    for (state_t p : a.initial_) a.initial_mask_[p] = 1;
    for (state_t p : a.accepting_) a.accepting_mask_[p] = 1;

    a.fwd_.assign(nsym, std::vector<std::vector<state_t>>(num_states));
    a.bwd_.assign(nsym, std::vector<std::vector<state_t>>(num_states));
    a.out_degree_.assign(num_states, 0);
    a.in_degree_.assign(num_states, 0);
    std::sort(transitions.begin(), transitions.end(),
              [](const Transition& x, const Transition& y) {
                  return std::tie(x.sym, x.src, x.dst) < std::tie(y.sym, y.src, y.dst);
              });
    transitions.erase(std::unique(transitions.begin(), transitions.end()),
                      transitions.end());
    for (const Transition& t : transitions) {
        if (t.src >= num_states || t.dst >= num_states)
            throw std::invalid_argument("transition state out of range");
        if (t.sym >= nsym) throw std::invalid_argument("transition symbol out of range");
        a.fwd_[t.sym][t.src].push_back(t.dst);
        a.bwd_[t.sym][t.dst].push_back(t.src);
        ++a.out_degree_[t.src];
        ++a.in_degree_[t.dst];
    }
    for (symbol_t s = 0; s < nsym; ++s)
        for (state_t p = 0; p < num_states; ++p) {
            std::sort(a.fwd_[s][p].begin(), a.fwd_[s][p].end());
            std::sort(a.bwd_[s][p].begin(), a.bwd_[s][p].end());
        }
    a.num_transitions_ = transitions.size();
    return a;
}

std::optional<symbol_t> Automaton::symbol_id(std::string_view name) const {
    auto it = symbol_index_.find(std::string(name));
    if (it == symbol_index_.end()) return std::nullopt;
    return it->second;
}

std::vector<Transition> Automaton::transitions() const {
    std::vector<Transition> out;
    out.reserve(num_transitions_);
    for (symbol_t s = 0; s < num_symbols(); ++s)
        for (state_t p = 0; p < n_; ++p)
            for (state_t q : fwd_[s][p]) out.push_back({p, s, q});
    return out;
}

AutomatonStats Automaton::stats() const {
    AutomatonStats st;
    st.states = n_;
    st.transitions = num_transitions_;
    st.accepting = static_cast<uint32_t>(accepting_.size());
    st.symbols = num_symbols();
    if (n_ > 0 && num_symbols() > 0)
        st.transition_density =
            static_cast<double>(num_transitions_) / (static_cast<double>(n_) * num_symbols());
    return st;
}

Automaton Automaton::with_sets(std::vector<state_t> initial,
                               std::vector<state_t> accepting) const {
    return build(sem_, n_, symbols_, std::move(initial), std::move(accepting),
                 transitions());
}

Automaton Automaton::with_semantics(Semantics sem) const {
    Automaton a = *this;
    a.sem_ = sem;
    return a;
}

bool Automaton::same_structure(const Automaton& other) const {
    return n_ == other.n_ && symbols_ == other.symbols_ &&
           initial_ == other.initial_ && accepting_ == other.accepting_ &&
           fwd_ == other.fwd_;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<uint8_t> forward_reachable(const Automaton& a,
                                       const std::vector<state_t>& from) {
    std::vector<uint8_t> seen(a.num_states(), 0);
    std::deque<state_t> queue;
    for (state_t p : from)
        if (!seen[p]) {
            seen[p] = 1;
            queue.push_back(p);
        }
    while (!queue.empty()) {
        state_t p = queue.front();
        queue.pop_front();
        for (symbol_t s = 0; s < a.num_symbols(); ++s)
            for (state_t q : a.succ(p, s))
                if (!seen[q]) {
                    seen[q] = 1;
                    queue.push_back(q);
                }
    }
    return seen;
}

std::vector<uint8_t> backward_reachable(const Automaton& a,
                                        const std::vector<state_t>& from) {
    std::vector<uint8_t> seen(a.num_states(), 0);
    std::deque<state_t> queue;
    for (state_t p : from)
        if (!seen[p]) {
            seen[p] = 1;
            queue.push_back(p);
        }
    while (!queue.empty()) {
        state_t p = queue.front();
        queue.pop_front();
        for (symbol_t s = 0; s < a.num_symbols(); ++s)
            for (state_t q : a.pred(p, s))
                if (!seen[q]) {
                    seen[q] = 1;
                    queue.push_back(q);
                }
    }
    return seen;
}

// Tarjan SCC, iterative.
std::vector<uint32_t> scc_ids(const Automaton& a, uint32_t* count_out) {
    const uint32_t n = a.num_states();
    std::vector<uint32_t> comp(n, UINT32_MAX), low(n, 0), idx(n, UINT32_MAX);
    std::vector<uint8_t> on_stack(n, 0);
    std::vector<state_t> stack;
    uint32_t next_idx = 0, ncomp = 0;

    struct Frame {
        state_t v;
        symbol_t sym;
        size_t pos;
    };
    std::vector<Frame> frames;
    for (state_t root = 0; root < n; ++root) {
        if (idx[root] != UINT32_MAX) continue;
        frames.push_back({root, 0, 0});
        idx[root] = low[root] = next_idx++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!frames.empty()) {
            Frame& f = frames.back();
            state_t v = f.v;
            bool descended = false;
            while (f.sym < a.num_symbols()) {
                const auto& succs = a.succ(v, f.sym);
                if (f.pos >= succs.size()) {
                    ++f.sym;
                    f.pos = 0;
                    continue;
                }
                state_t w = succs[f.pos++];
                if (idx[w] == UINT32_MAX) {
                    idx[w] = low[w] = next_idx++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    frames.push_back({w, 0, 0});
                    descended = true;
                    break;
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], idx[w]);
                }
            }
            if (descended) continue;
            if (low[v] == idx[v]) {
                while (true) {
                    state_t w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp[w] = ncomp;
                    if (w == v) break;
                }
                ++ncomp;
            }
            frames.pop_back();
            if (!frames.empty()) {
                state_t parent = frames.back().v;
                low[parent] = std::min(low[parent], low[v]);
            }
        }
    }
    if (count_out) *count_out = ncomp;
    return comp;
}

bool has_self_loop(const Automaton& a, state_t p) {
    for (symbol_t s = 0; s < a.num_symbols(); ++s) {
        const auto& v = a.succ(p, s);
        if (std::binary_search(v.begin(), v.end(), p)) return true;
    }
    return false;
}

}  // namespace

RemoveDeadResult remove_dead(const Automaton& aut) {
    const uint32_t n = aut.num_states();
    std::vector<uint8_t> live(n, 0);
    std::vector<uint8_t> fwd = forward_reachable(aut, aut.initial());

    if (aut.semantics() == Semantics::Finite) {
        std::vector<uint8_t> bwd = backward_reachable(aut, aut.accepting());
        for (uint32_t p = 0; p < n; ++p) live[p] = fwd[p] && bwd[p];
    } else {
        // states on an accepting cycle: SCC containing an accepting state and
        // at least one internal transition
        uint32_t ncomp = 0;
        std::vector<uint32_t> comp = scc_ids(aut, &ncomp);
        std::vector<uint8_t> comp_acc(ncomp, 0), comp_cyclic(ncomp, 0);
        std::vector<uint32_t> comp_size(ncomp, 0);
        for (uint32_t p = 0; p < n; ++p) {
            ++comp_size[comp[p]];
            if (aut.is_accepting(p)) comp_acc[comp[p]] = 1;
        }
        for (uint32_t p = 0; p < n; ++p)
            if (comp_size[comp[p]] > 1 || has_self_loop(aut, p))
                comp_cyclic[comp[p]] = 1;
        std::vector<state_t> seeds;
        for (uint32_t p = 0; p < n; ++p)
            if (comp_acc[comp[p]] && comp_cyclic[comp[p]]) seeds.push_back(p);
        std::vector<uint8_t> bwd = backward_reachable(aut, seeds);
        for (uint32_t p = 0; p < n; ++p) live[p] = fwd[p] && bwd[p];
    }

    RemoveDeadResult res;
    res.state_map.assign(n, -1);
    uint32_t kept = 0;
    for (uint32_t p = 0; p < n; ++p)
        if (live[p]) res.state_map[p] = static_cast<int32_t>(kept++);

    if (kept == 0) {
        res.language_empty = true;
        res.automaton = Automaton::build(aut.semantics(), 1, aut.symbols(), {0}, {}, {});
        return res;
    }

    std::vector<state_t> initial, accepting;
    for (state_t p : aut.initial())
        if (live[p]) initial.push_back(static_cast<state_t>(res.state_map[p]));
    for (state_t p : aut.accepting())
        if (live[p]) accepting.push_back(static_cast<state_t>(res.state_map[p]));
    std::vector<Transition> trans;
    for (const Transition& t : aut.transitions())
        if (live[t.src] && live[t.dst])
            trans.push_back({static_cast<state_t>(res.state_map[t.src]), t.sym,
                             static_cast<state_t>(res.state_map[t.dst])});
    res.automaton = Automaton::build(aut.semantics(), kept, aut.symbols(),
                                     std::move(initial), std::move(accepting),
                                     std::move(trans));
    return res;
}

std::vector<Transition> transient_transitions(const Automaton& aut) {
    uint32_t ncomp = 0;
    std::vector<uint32_t> comp = scc_ids(aut, &ncomp);
    // (p,a,r) transient iff r cannot reach p, i.e. p and r are in different
    // SCCs (same SCC means mutual reachability; different SCCs and an edge
    // p->r means r never reaches back, or the SCCs would merge).
    std::vector<Transition> out;
    for (const Transition& t : aut.transitions())
        if (comp[t.src] != comp[t.dst]) out.push_back(t);
    return out;
}

Automaton single_accepting_transform(const Automaton& aut) {
    if (aut.semantics() != Semantics::Finite)
        throw std::invalid_argument("single_accepting_transform needs finite-word semantics");
    // already in normal form?
    if (aut.accepting().size() == 1) {
        state_t f = aut.accepting()[0];
        if (aut.out_degree(f) == 0 && !aut.is_initial(f)) return aut;
    }
    const uint32_t n = aut.num_states();
    const state_t acc = n;
    std::vector<Transition> trans = aut.transitions();
    std::vector<Transition> extra;
    for (const Transition& t : trans)
        if (aut.is_accepting(t.dst)) extra.push_back({t.src, t.sym, acc});
    trans.insert(trans.end(), extra.begin(), extra.end());
    std::vector<state_t> accepting = {acc};
    for (state_t p : aut.initial())
        if (aut.is_accepting(p)) accepting.push_back(p);
    return Automaton::build(Semantics::Finite, n + 1, aut.symbols(), aut.initial(),
                            std::move(accepting), std::move(trans));
}

bool word_member(const Automaton& aut, const std::vector<symbol_t>& u) {
    std::vector<uint8_t> cur(aut.num_states(), 0);
    for (state_t p : aut.initial()) cur[p] = 1;
    for (symbol_t a : u) {
        std::vector<uint8_t> next(aut.num_states(), 0);
        for (state_t p = 0; p < aut.num_states(); ++p)
            if (cur[p])
                for (state_t q : aut.succ(p, a)) next[q] = 1;
        cur = std::move(next);
    }
    for (state_t p = 0; p < aut.num_states(); ++p)
        if (cur[p] && aut.is_accepting(p)) return true;
    return false;
}

bool lasso_member(const Automaton& aut, const LassoWord& w) {
    if (w.loop.empty()) throw std::invalid_argument("lasso loop must be nonempty");
    const uint32_t n = aut.num_states();
    const uint32_t L = static_cast<uint32_t>(w.loop.size());
    // states reachable after the prefix
    std::vector<uint8_t> cur(n, 0);
    for (state_t p : aut.initial()) cur[p] = 1;
    for (symbol_t a : w.prefix) {
        std::vector<uint8_t> next(n, 0);
        for (state_t p = 0; p < n; ++p)
            if (cur[p])
                for (state_t q : aut.succ(p, a)) next[q] = 1;
        cur = std::move(next);
    }
    // unrolled loop graph: nodes (state, phase), edge on w.loop[phase]
    auto node = [&](state_t p, uint32_t ph) { return p * L + ph; };
    const uint32_t nn = n * L;
    std::vector<uint8_t> reach(nn, 0);
    std::deque<uint32_t> queue;
    for (state_t p = 0; p < n; ++p)
        if (cur[p]) {
            reach[node(p, 0)] = 1;
            queue.push_back(node(p, 0));
        }
    while (!queue.empty()) {
        uint32_t v = queue.front();
        queue.pop_front();
        state_t p = v / L;
        uint32_t ph = v % L;
        for (state_t q : aut.succ(p, w.loop[ph])) {
            uint32_t u2 = node(q, (ph + 1) % L);
            if (!reach[u2]) {
                reach[u2] = 1;
                queue.push_back(u2);
            }
        }
    }
    // SCCs of the reachable part; accepted iff some cyclic SCC contains a
    // node of an accepting state (every cycle in the unrolled graph passes
    // every phase, so no phase condition is needed)
    std::vector<int32_t> comp(nn, -1);
    std::vector<uint32_t> low(nn), idx(nn, UINT32_MAX);
    std::vector<uint8_t> on_stack(nn, 0);
    std::vector<uint32_t> stack;
    uint32_t next_idx = 0;
    int32_t ncomp = 0;
    struct Frame {
        uint32_t v;
        size_t pos;
    };
    std::vector<Frame> frames;
    std::vector<uint8_t> comp_acc, comp_cyc;
    for (uint32_t root = 0; root < nn; ++root) {
        if (!reach[root] || idx[root] != UINT32_MAX) continue;
        frames.push_back({root, 0});
        idx[root] = low[root] = next_idx++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!frames.empty()) {
            Frame& f = frames.back();
            uint32_t v = f.v;
            state_t p = v / L;
            uint32_t ph = v % L;
            const auto& succs = aut.succ(p, w.loop[ph]);
            bool descended = false;
            while (f.pos < succs.size()) {
                uint32_t u2 = node(succs[f.pos++], (ph + 1) % L);
                if (!reach[u2]) continue;
                if (idx[u2] == UINT32_MAX) {
                    idx[u2] = low[u2] = next_idx++;
                    stack.push_back(u2);
                    on_stack[u2] = 1;
                    frames.push_back({u2, 0});
                    descended = true;
                    break;
                } else if (on_stack[u2]) {
                    low[v] = std::min(low[v], idx[u2]);
                }
            }
            if (descended) continue;
            if (low[v] == idx[v]) {
                bool acc = false;
                uint32_t size = 0;
                while (true) {
                    uint32_t wv = stack.back();
                    stack.pop_back();
                    on_stack[wv] = 0;
                    comp[wv] = ncomp;
                    ++size;
                    if (aut.is_accepting(wv / L)) acc = true;
                    if (wv == v) break;
                }
                bool cyclic = size > 1;
                if (!cyclic) {
                    // self-loop in the unrolled graph (possible when L == 1)
                    const auto& sv = aut.succ(p, w.loop[ph]);
                    if (L == 1 && std::binary_search(sv.begin(), sv.end(), p))
                        cyclic = true;
                }
                comp_acc.push_back(acc ? 1 : 0);
                comp_cyc.push_back(cyclic ? 1 : 0);
                ++ncomp;
            }
            frames.pop_back();
            if (!frames.empty()) {
                uint32_t parent = frames.back().v;
                low[parent] = std::min(low[parent], low[v]);
            }
        }
    }
    for (int32_t c = 0; c < ncomp; ++c)
        if (comp_acc[c] && comp_cyc[c]) return true;
    return false;
}

std::vector<std::pair<state_t, state_t>> product_reachable(const Automaton& a,
                                                           const Automaton& b) {
    // match symbols by name
    std::vector<std::pair<symbol_t, symbol_t>> shared;
    for (symbol_t s = 0; s < a.num_symbols(); ++s)
        if (auto t = b.symbol_id(a.symbol_name(s))) shared.push_back({s, *t});

    std::vector<uint8_t> seen(static_cast<size_t>(a.num_states()) * b.num_states(), 0);
    std::deque<std::pair<state_t, state_t>> queue;
    std::vector<std::pair<state_t, state_t>> out;
    auto push = [&](state_t p, state_t q) {
        size_t id = static_cast<size_t>(p) * b.num_states() + q;
        if (!seen[id]) {
            seen[id] = 1;
            queue.push_back({p, q});
            out.push_back({p, q});
        }
    };
    for (state_t p : a.initial())
        for (state_t q : b.initial()) push(p, q);
    while (!queue.empty()) {
        auto [p, q] = queue.front();
        queue.pop_front();
        for (auto [sa, sb] : shared)
            for (state_t p2 : a.succ(p, sa))
                for (state_t q2 : b.succ(q, sb)) push(p2, q2);
    }
    std::sort(out.begin(), out.end());
    return out;
}

DisjointUnion disjoint_union(const Automaton& a, const Automaton& b) {
    DisjointUnion du;
    std::vector<std::string> symbols = a.symbols();
    std::map<std::string, symbol_t> index;
    for (symbol_t s = 0; s < symbols.size(); ++s) index[symbols[s]] = s;
    du.sym_map_a.resize(a.num_symbols());
    for (symbol_t s = 0; s < a.num_symbols(); ++s) du.sym_map_a[s] = s;
    du.sym_map_b.resize(b.num_symbols());
    for (symbol_t s = 0; s < b.num_symbols(); ++s) {
        auto it = index.find(b.symbol_name(s));
        if (it == index.end()) {
            symbol_t id = static_cast<symbol_t>(symbols.size());
            symbols.push_back(b.symbol_name(s));
            index[b.symbol_name(s)] = id;
            du.sym_map_b[s] = id;
        } else {
            du.sym_map_b[s] = it->second;
        }
    }
    du.offset = a.num_states();
    std::vector<state_t> initial, accepting;
    for (state_t p : a.initial()) initial.push_back(p);
    for (state_t p : b.initial()) initial.push_back(du.offset + p);
    for (state_t p : a.accepting()) accepting.push_back(p);
    for (state_t p : b.accepting()) accepting.push_back(du.offset + p);
    std::vector<Transition> trans;
    for (const Transition& t : a.transitions())
        trans.push_back({t.src, du.sym_map_a[t.sym], t.dst});
    for (const Transition& t : b.transitions())
        trans.push_back({du.offset + t.src, du.sym_map_b[t.sym], du.offset + t.dst});
    du.automaton = Automaton::build(a.semantics(), a.num_states() + b.num_states(),
                                    std::move(symbols), std::move(initial),
                                    std::move(accepting), std::move(trans));
    return du;
}

Automaton complete(const Automaton& aut) {
    const uint32_t n = aut.num_states();
    const uint32_t nsym = aut.num_symbols();
    bool need_sink = false, need_source = false;
    for (state_t p = 0; p < n && !need_sink; ++p)
        for (symbol_t s = 0; s < nsym; ++s)
            if (aut.succ(p, s).empty()) {
                need_sink = true;
                break;
            }
    for (state_t p = 0; p < n && !need_source; ++p)
        for (symbol_t s = 0; s < nsym; ++s)
            if (aut.pred(p, s).empty()) {
                need_source = true;
                break;
            }
    if (!need_sink && !need_source) return aut;
    uint32_t total = n + (need_sink ? 1 : 0) + (need_source ? 1 : 0);
    state_t sink = n;
    state_t source = need_sink ? n + 1 : n;
    std::vector<Transition> trans = aut.transitions();
    if (need_sink) {
        for (symbol_t s = 0; s < nsym; ++s) {
            trans.push_back({sink, s, sink});
            for (state_t p = 0; p < n; ++p)
                if (aut.succ(p, s).empty()) trans.push_back({p, s, sink});
        }
    }
    if (need_source) {
        for (symbol_t s = 0; s < nsym; ++s) {
            trans.push_back({source, s, source});
            for (state_t p = 0; p < n; ++p)
                if (aut.pred(p, s).empty()) trans.push_back({source, s, p});
        }
    }
    return Automaton::build(aut.semantics(), total, aut.symbols(), aut.initial(),
                            aut.accepting(), std::move(trans));
}

}  // namespace autred
