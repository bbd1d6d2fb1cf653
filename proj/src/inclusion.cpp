#include "autred/inclusion.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "autred/reduction.hpp"
#include "autred/simulation.hpp"

namespace autred {

namespace {

// symbol id remap by name; -1 when absent on the b side
std::vector<int32_t> map_symbols(const Automaton& a, const Automaton& b) {
    std::vector<int32_t> m(a.num_symbols(), -1);
    for (symbol_t s = 0; s < a.num_symbols(); ++s) {
        auto id = b.symbol_id(a.symbol_name(s));
        if (id) m[s] = static_cast<int32_t>(*id);
    }
    return m;
}

bool lasso_in(const Automaton& b, const std::vector<int32_t>& map,
              const LassoWord& w) {
    LassoWord mapped;
    for (symbol_t s : w.prefix) {
        if (map[s] < 0) return false;
        mapped.prefix.push_back(static_cast<symbol_t>(map[s]));
    }
    for (symbol_t s : w.loop) {
        if (map[s] < 0) return false;
        mapped.loop.push_back(static_cast<symbol_t>(map[s]));
    }
    if (b.semantics() == Semantics::Finite) return word_member(b, mapped.prefix);
    return lasso_member(b, mapped);
}

bool match_initial(const Automaton& a, const Automaton& b, const Relation& rel) {
    for (state_t p : a.initial()) {
        bool ok = false;
        for (state_t q : b.initial())
            if (rel.get(p, q)) {
                ok = true;
                break;
            }
        if (!ok) return false;
    }
    return true;
}

bool match_accepting(const Automaton& a, const Automaton& b, const Relation& rel) {
    for (state_t p : a.accepting()) {
        bool ok = false;
        for (state_t q : b.accepting())
            if (rel.get(p, q)) {
                ok = true;
                break;
            }
        if (!ok) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// bounded lasso counterexample search (Buchi): enumerate accepting lassos of
// a, short ones first, and test their words against b.

struct LassoSearch {
    const Automaton& a;
    const Automaton& b;
    std::vector<int32_t> map;
    uint32_t maxu, maxv;
    uint64_t node_budget;
    uint64_t test_budget;
    std::optional<LassoWord> found;

    std::vector<symbol_t> prefix, loop;

    LassoSearch(const Automaton& a_, const Automaton& b_, uint32_t maxu_,
                uint32_t maxv_, uint64_t nodes, uint64_t tests)
        : a(a_), b(b_), map(map_symbols(a_, b_)), maxu(maxu_), maxv(maxv_),
          node_budget(nodes), test_budget(tests) {}

    bool spent() const { return node_budget == 0 || test_budget == 0; }

    bool test() {
        if (test_budget == 0) return false;
        --test_budget;
        LassoWord w{prefix, loop};
        if (!lasso_in(b, map, w)) {
            found = w;
            return true;
        }
        return false;
    }

    // cycle DFS back to `home`, needing an accepting state on the cycle
    bool cycle(state_t home, state_t cur, bool acc, uint32_t len) {
        if (node_budget == 0) return false;
        --node_budget;
        if (len > 0 && cur == home && (acc || a.is_accepting(home)))
            if (test()) return true;
        if (len == maxv) return false;
        for (symbol_t s = 0; s < a.num_symbols(); ++s)
            for (state_t nxt : a.succ(cur, s)) {
                loop.push_back(s);
                bool hit = cycle(home, nxt, acc || a.is_accepting(nxt), len + 1);
                loop.pop_back();
                if (hit) return true;
                if (spent()) return false;
            }
        return false;
    }

    bool walk(state_t cur, uint32_t len) {
        if (node_budget == 0) return false;
        --node_budget;
        if (cycle(cur, cur, false, 0)) return true;
        if (spent() || len == maxu) return false;
        for (symbol_t s = 0; s < a.num_symbols(); ++s)
            for (state_t nxt : a.succ(cur, s)) {
                prefix.push_back(s);
                bool hit = walk(nxt, len + 1);
                prefix.pop_back();
                if (hit) return true;
                if (spent()) return false;
            }
        return false;
    }

    std::optional<LassoWord> run() {
        for (state_t p : a.initial()) {
            if (walk(p, 0)) return found;
            if (spent()) break;
        }
        return std::nullopt;
    }
};

std::optional<LassoWord> bounded_lasso_cex(const Automaton& a, const Automaton& b,
                                           uint32_t maxu, uint32_t maxv,
                                           uint64_t nodes, uint64_t tests) {
    if (maxv == 0) return std::nullopt;
    LassoSearch search(a, b, maxu, maxv, nodes, tests);
    return search.run();
}

// ---------------------------------------------------------------------------
// one-sided finite-word difference via the subset product: exact when the
// state budget suffices

enum class SubsetStatus { Included, Counterexample, Overflow };

struct SubsetResult {
    SubsetStatus status = SubsetStatus::Overflow;
    std::vector<symbol_t> word;  // a-side symbol ids
};

SubsetResult nfa_inclusion_search(const Automaton& a, const Automaton& b,
                                  uint64_t budget) {
    const uint32_t wa = (a.num_states() + 63) / 64;
    const uint32_t wb = (b.num_states() + 63) / 64;
    std::vector<int32_t> map = map_symbols(a, b);

    using Key = std::vector<uint64_t>;
    struct Node {
        int64_t parent;
        symbol_t via;
    };
    struct KeyHash {
        size_t operator()(const Key& k) const {
            uint64_t h = 0x9e3779b97f4a7c15ull;
            for (uint64_t w : k) {
                h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            }
            return static_cast<size_t>(h);
        }
    };
    std::unordered_map<Key, int64_t, KeyHash> seen;
    std::vector<Node> nodes;
    std::vector<Key> keys;
    std::deque<int64_t> queue;

    auto accepts = [](const Automaton& aut, const uint64_t* set) {
        for (state_t f : aut.accepting())
            if ((set[f >> 6] >> (f & 63)) & 1) return true;
        return false;
    };

    Key start(wa + wb, 0);
    for (state_t p : a.initial()) start[p >> 6] |= uint64_t{1} << (p & 63);
    for (state_t q : b.initial()) start[wa + (q >> 6)] |= uint64_t{1} << (q & 63);
    seen[start] = 0;
    nodes.push_back({-1, 0});
    keys.push_back(start);
    queue.push_back(0);

    auto reconstruct = [&](int64_t idx) {
        std::vector<symbol_t> w;
        while (nodes[idx].parent >= 0) {
            w.push_back(nodes[idx].via);
            idx = nodes[idx].parent;
        }
        std::reverse(w.begin(), w.end());
        return w;
    };

    while (!queue.empty()) {
        int64_t idx = queue.front();
        queue.pop_front();
        const Key key = keys[idx];
        const uint64_t* sa = key.data();
        const uint64_t* sb = key.data() + wa;
        if (accepts(a, sa) && !accepts(b, sb)) {
            return {SubsetStatus::Counterexample, reconstruct(idx)};
        }
        for (symbol_t s = 0; s < a.num_symbols(); ++s) {
            Key next(wa + wb, 0);
            bool a_alive = false;
            for (uint32_t w = 0; w < wa; ++w) {
                uint64_t bits = sa[w];
                while (bits) {
                    uint32_t p = (w << 6) + std::countr_zero(bits);
                    bits &= bits - 1;
                    for (state_t t : a.succ(p, s)) {
                        next[t >> 6] |= uint64_t{1} << (t & 63);
                        a_alive = true;
                    }
                }
            }
            if (!a_alive) continue;  // no word of a continues this way
            if (map[s] >= 0) {
                symbol_t bs = static_cast<symbol_t>(map[s]);
                for (uint32_t w = 0; w < wb; ++w) {
                    uint64_t bits = sb[w];
                    while (bits) {
                        uint32_t q = (w << 6) + std::countr_zero(bits);
                        bits &= bits - 1;
                        for (state_t t : b.succ(q, bs))
                            next[wa + (t >> 6)] |= uint64_t{1} << (t & 63);
                    }
                }
            }
            auto [it, fresh] = seen.try_emplace(next, static_cast<int64_t>(nodes.size()));
            if (!fresh) continue;
            if (nodes.size() >= budget) return {SubsetStatus::Overflow, {}};
            nodes.push_back({idx, s});
            keys.push_back(std::move(next));
            queue.push_back(it->second);
        }
    }
    return {SubsetStatus::Included, {}};
}

// ---------------------------------------------------------------------------
// cross-automaton transition pruning of a against b: an a-transition is
// dropped when some b-transition with backward-larger source and
// forward-larger target covers it.  Keeps the inclusion verdict intact.

Automaton cross_prune(const Automaton& a, const Automaton& b, const Relation& bwX,
                      const Relation& fwX, uint64_t* removed) {
    const uint32_t nb = b.num_states();
    const uint32_t words = (nb + 63) / 64;
    std::vector<Transition> kept;
    *removed = 0;
    std::vector<uint64_t> sub(words);
    for (symbol_t s = 0; s < a.num_symbols(); ++s) {
        auto bs = b.symbol_id(a.symbol_name(s));
        for (state_t p = 0; p < a.num_states(); ++p) {
            const auto& out = a.succ(p, s);
            if (out.empty()) continue;
            if (!bs) {
                for (state_t r : out) kept.push_back({p, s, r});
                continue;
            }
            std::fill(sub.begin(), sub.end(), 0);
            const uint64_t* prow = bwX.row(p);
            for (uint32_t w = 0; w < words; ++w) {
                uint64_t bits = prow[w];
                while (bits) {
                    uint32_t p2 = (w << 6) + std::countr_zero(bits);
                    bits &= bits - 1;
                    if (p2 >= nb) break;
                    for (state_t r2 : b.succ(p2, *bs))
                        sub[r2 >> 6] |= uint64_t{1} << (r2 & 63);
                }
            }
            for (state_t r : out) {
                const uint64_t* rrow = fwX.row(r);
                bool drop = false;
                for (uint32_t w = 0; w < words && !drop; ++w)
                    if (rrow[w] & sub[w]) drop = true;
                if (drop)
                    ++*removed;
                else
                    kept.push_back({p, s, r});
            }
        }
    }
    if (*removed == 0) return a;
    return Automaton::build(a.semantics(), a.num_states(), a.symbols(),
                            a.initial(), a.accepting(), std::move(kept));
}

// restrict b to states reachable in the synchronized product with a
Automaton product_trim(const Automaton& a, const Automaton& b, bool* changed) {
    std::vector<uint8_t> keep(b.num_states(), 0);
    for (auto [pa, qb] : product_reachable(a, b)) {
        (void)pa;
        keep[qb] = 1;
    }
    uint32_t kept = 0;
    std::vector<int32_t> remap(b.num_states(), -1);
    for (state_t q = 0; q < b.num_states(); ++q)
        if (keep[q]) remap[q] = static_cast<int32_t>(kept++);
    *changed = kept != b.num_states();
    if (!*changed) return b;
    if (kept == 0)
        return Automaton::build(b.semantics(), 1, b.symbols(), {0}, {}, {});
    std::vector<Transition> trans;
    for (const Transition& t : b.transitions())
        if (keep[t.src] && keep[t.dst])
            trans.push_back({static_cast<state_t>(remap[t.src]), t.sym,
                             static_cast<state_t>(remap[t.dst])});
    std::vector<state_t> initial, accepting;
    for (state_t q : b.initial())
        if (keep[q]) initial.push_back(static_cast<state_t>(remap[q]));
    for (state_t q : b.accepting())
        if (keep[q]) accepting.push_back(static_cast<state_t>(remap[q]));
    return Automaton::build(b.semantics(), kept, b.symbols(), std::move(initial),
                            std::move(accepting), std::move(trans));
}

int auto_lookahead(uint32_t states) {
    if (states <= 100) return 12;
    if (states <= 1000) return 8;
    return 4;
}

InclusionResult included(std::string stage) {
    return {InclusionVerdict::Included, std::nullopt, std::move(stage)};
}
InclusionResult not_included(LassoWord w, std::string stage) {
    return {InclusionVerdict::NotIncluded, std::move(w), std::move(stage)};
}

}  // namespace

InclusionResult check_inclusion(const Automaton& a, const Automaton& b,
                                const InclusionOptions& opts) {
    const Semantics sem = opts.finite ? Semantics::Finite : Semantics::Buchi;
    const bool buchi = sem == Semantics::Buchi;
    Automaton A = a.with_semantics(sem);
    Automaton B = b.with_semantics(sem);

    // ---- stage 0: cheap reduction and a shallow probe ----
    {
        RemoveDeadResult rd = remove_dead(A);
        if (rd.language_empty) return included("stage0:empty-left");
        A = light(std::move(rd.automaton), 1);
        B = light(std::move(B), 1);
    }
    if (remove_dead(B).language_empty) {
        // nonempty left side, empty right side: any accepted word works
        if (buchi) {
            auto cex = bounded_lasso_cex(A, B, 2 * A.num_states(), A.num_states(),
                                         1 << 22, 1 << 16);
            if (cex) return not_included(*cex, "stage0:empty-right");
        } else {
            auto res = nfa_inclusion_search(A, B, uint64_t{1} << 18);
            if (res.status == SubsetStatus::Counterexample)
                return not_included({res.word, {}}, "stage0:empty-right");
        }
    }
    if (buchi) {
        uint32_t probe = std::min<uint32_t>(8, 2 * A.num_states());
        auto cex = bounded_lasso_cex(A, B, probe, std::min<uint32_t>(8, A.num_states()),
                                     1 << 16, 1 << 12);
        if (cex) return not_included(*cex, "stage0:probe");
    } else {
        auto res = nfa_inclusion_search(A, B, uint64_t{1} << 14);
        if (res.status == SubsetStatus::Counterexample)
            return not_included({res.word, {}}, "stage0:probe");
        if (res.status == SubsetStatus::Included) return included("stage0:subset");
    }

    const int k = opts.k > 0
                      ? opts.k
                      : auto_lookahead(std::max(A.num_states(), B.num_states()));
    SimOptions sopts;

    // ---- stage 1: joint reduction with inclusion-preserving cross checks ----
    A = heavy(A, k);
    B = heavy(B, k);
    if (remove_dead(A).language_empty) return included("stage1:empty-left");

    const WinningCondition bw_cond = buchi ? WinningCondition::BackwardDirect
                                           : WinningCondition::BackwardFiniteWord;
    const WinningCondition fw_cond =
        buchi ? WinningCondition::Fair : WinningCondition::Direct;
    {
        Relation bwX = solve_cross(A, B, k, bw_cond, sopts);
        Relation fwX = solve_cross(A, B, k, fw_cond, sopts);
        if (match_initial(A, B, fwX)) return included("stage1:forward-match");
        if (match_accepting(A, B, bwX)) return included("stage1:backward-match");

        uint64_t removed = 0;
        Automaton pruned = cross_prune(A, B, bwX, fwX, &removed);
        if (removed) {
            RemoveDeadResult rd = remove_dead(pruned);
            if (rd.language_empty) return included("stage1:empty-left");
            A = std::move(rd.automaton);
        }
    }
    {
        bool changed = false;
        Automaton trimmed = product_trim(A, B, &changed);
        if (changed) B = remove_dead(trimmed).automaton;
    }
    {
        Relation fwX = solve_cross(A, B, k, fw_cond, sopts);
        if (match_initial(A, B, fwX)) return included("stage1:forward-match");
        Relation bwX = solve_cross(A, B, k, bw_cond, sopts);
        if (match_accepting(A, B, bwX)) return included("stage1:backward-match");
    }

    // ---- stage 2: jumping fair simulation ----
    {
        Relation jump = buchi
                            ? counting_backward(B, k).transitive_closure()
                            : solve_lookahead(B, k, bw_cond, sopts).transitive_closure();
        Relation rel = jumping_fair(A, B, k, jump, sopts);
        if (match_initial(A, B, rel)) return included("stage2:jumping");
    }

    // ---- stage 3: bounded counterexample search ----
    uint32_t maxu = opts.max_prefix > 0 ? static_cast<uint32_t>(opts.max_prefix)
                                        : 2 * A.num_states();
    uint32_t maxv = opts.max_loop > 0 ? static_cast<uint32_t>(opts.max_loop)
                                      : A.num_states();
    if (buchi) {
        auto cex = bounded_lasso_cex(A, B, maxu, maxv, 1 << 22, 1 << 17);
        if (cex) return not_included(*cex, "stage3:bounded-search");
    } else {
        auto res = nfa_inclusion_search(A, B, uint64_t{1} << 19);
        if (res.status == SubsetStatus::Counterexample)
            return not_included({res.word, {}}, "stage3:subset");
        if (res.status == SubsetStatus::Included) return included("stage3:subset");
    }
    return {InclusionVerdict::Unknown, std::nullopt, "stage3:exhausted"};
}

std::string format_counterexample(const Automaton& a, const LassoWord& w) {
    std::ostringstream os;
    for (size_t i = 0; i < w.prefix.size(); ++i) {
        if (i) os << ' ';
        os << a.symbol_name(w.prefix[i]);
    }
    if (!w.loop.empty()) {
        if (!w.prefix.empty()) os << ' ';
        os << '$';
        for (symbol_t s : w.loop) os << ' ' << a.symbol_name(s);
    }
    return os.str();
}

}  // namespace autred
