#include "autred/simulation.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace autred {

namespace {

constexpr int32_t kNeg = INT32_MIN / 4;  // needs no lead at all
constexpr int32_t kPos = INT32_MAX / 4;  // unwinnable

// Pareto frontier of duplicator pebbles per state: (sum, needed) where sum is
// the accepting-visit lead accumulated this round and needed the largest lead
// shortfall seen at a checkpoint.  Higher sum and lower needed dominate.
struct Frontier {
    std::vector<std::vector<std::pair<int32_t, int32_t>>> per_state;
    std::vector<uint32_t> touched;

    void reset(uint32_t n) { per_state.assign(n, {}); touched.clear(); }
    void clear() {
        for (uint32_t t : touched) per_state[t].clear();
        touched.clear();
    }
    void insert(uint32_t state, int32_t sum, int32_t needed) {
        auto& v = per_state[state];
        for (const auto& e : v)
            if (e.first >= sum && e.second <= needed) return;  // dominated
        std::erase_if(v, [&](const auto& e) {
            return sum >= e.first && needed <= e.second;
        });
        if (v.empty()) touched.push_back(state);
        v.push_back({sum, needed});
    }
    bool empty() const { return touched.empty(); }
};

struct CountingSolver {
    const Automaton& a;
    int k;
    int32_t clamp;
    uint32_t n;
    std::vector<int32_t> theta;
    std::vector<Frontier> fr;
    std::vector<uint8_t> bw_stuck;

    explicit CountingSolver(const Automaton& aut, int k_)
        : a(aut), k(k_), n(aut.num_states()) {
        clamp = static_cast<int32_t>(std::min<int64_t>(
            static_cast<int64_t>(k) * n, 1 << 20));
        theta.assign(static_cast<size_t>(n) * n, kNeg);
        fr.resize(k + 1);
        for (auto& f : fr) f.reset(n);
        bw_stuck.assign(n, 1);
        for (state_t p = 0; p < n; ++p)
            for (symbol_t s = 0; s < a.num_symbols() && bw_stuck[p]; ++s)
                if (!a.pred(p, s).empty()) bw_stuck[p] = 0;
        // a stuck attacker ends the play, but the boundary it ends on still
        // demands a non-negative lead; such rows are final from the start
        for (state_t p = 0; p < n; ++p)
            if (bw_stuck[p])
                for (state_t q = 0; q < n; ++q)
                    theta[static_cast<size_t>(p) * n + q] = 0;
    }

    int32_t th(state_t p, state_t q) const {
        return theta[static_cast<size_t>(p) * n + q];
    }

    // best (max over maximal attacks) value from spoiler state p at depth,
    // where `best` is the least stop-option value seen along this attack
    int64_t rec(state_t p, int depth, int64_t best, state_t p0, state_t q0) {
        if (depth >= 1) {
            Frontier& cur = fr[depth];
            for (uint32_t q : cur.touched)
                for (const auto& [sum, needed] : cur.per_state[q]) {
                    int64_t cont;
                    int32_t t = th(p, q);
                    if (t <= kNeg / 2)
                        cont = kNeg;
                    else if (t >= kPos / 2)
                        cont = kPos;
                    else
                        cont = static_cast<int64_t>(t) - sum;
                    int64_t opt = std::max<int64_t>(
                        {static_cast<int64_t>(needed), -static_cast<int64_t>(sum),
                         cont});
                    best = std::min(best, opt);
                }
            if (best <= th(p0, q0)) return best;  // cannot raise theta
        }
        if (depth == k || bw_stuck[p]) return best;
        int64_t val = INT64_MIN;
        for (symbol_t s = 0; s < a.num_symbols(); ++s) {
            const auto& preds = a.pred(p, s);
            for (state_t p2 : preds) {
                advance(depth, s, p2);
                int64_t v = rec(p2, depth + 1, best, p0, q0);
                val = std::max(val, v);
                if (val >= kPos) return val;
            }
        }
        return val;
    }

    // fr[depth+1] = pebbles of fr[depth] moved backward over symbol s with the
    // spoiler landing on p2
    void advance(int depth, symbol_t s, state_t p2) {
        Frontier& cur = fr[depth];
        Frontier& nxt = fr[depth + 1];
        nxt.clear();
        bool p2acc = a.is_accepting(p2);
        bool p2init = a.is_initial(p2);
        for (uint32_t q : cur.touched) {
            if (cur.per_state[q].empty()) continue;
            const auto& preds = a.pred(q, s);
            if (preds.empty()) continue;
            for (const auto& [sum, needed] : cur.per_state[q]) {
                for (state_t q2 : preds) {
                    int32_t sum2 = sum + (a.is_accepting(q2) ? 1 : 0) -
                                   (p2acc ? 1 : 0);
                    int32_t needed2 = needed;
                    if (p2init) {
                        if (!a.is_initial(q2)) continue;
                        needed2 = std::max(needed2, -sum2);
                    }
                    nxt.insert(q2, sum2, needed2);
                }
            }
        }
    }

    int32_t evaluate(state_t p, state_t q) {
        fr[0].clear();
        fr[0].insert(q, 0, kNeg);
        int64_t v = rec(p, 0, static_cast<int64_t>(kPos) * 2, p, q);
        if (v >= kPos) return kPos;
        if (v > clamp) return kPos;
        if (v <= kNeg / 2) return kNeg;
        return static_cast<int32_t>(v);
    }

    void solve() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (state_t p = 0; p < n; ++p) {
                if (bw_stuck[p]) continue;
                for (state_t q = 0; q < n; ++q) {
                    int32_t cur = th(p, q);
                    if (cur >= kPos) continue;
                    int32_t v = evaluate(p, q);
                    if (v > cur) {
                        theta[static_cast<size_t>(p) * n + q] = v;
                        changed = true;
                    }
                }
            }
        }
    }
};

}  // namespace

Relation counting_backward(const Automaton& aut, int k) {
    if (k < 1) throw std::invalid_argument("lookahead must be at least 1");
    if (k > 32) throw std::invalid_argument("lookahead too large");
    const uint32_t n = aut.num_states();
    CountingSolver solver(aut, k);
    solver.solve();

    Relation rel(n, n);
    for (state_t p = 0; p < n; ++p)
        for (state_t q = 0; q < n; ++q) {
            int32_t lead0 = (aut.is_accepting(q) ? 1 : 0) -
                            (aut.is_accepting(p) ? 1 : 0);
            if (aut.is_initial(p) && (!aut.is_initial(q) || lead0 < 0)) continue;
            if (solver.th(p, q) <= lead0) rel.set(p, q);
        }
    rel.condition = WinningCondition::BackwardCounting;
    rel.lookahead = static_cast<uint8_t>(k);
    rel.exact_semantics = false;  // lead clamped; sound under-approximation
    return rel;
}

}  // namespace autred
