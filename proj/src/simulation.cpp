#include "autred/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstring>
#include <stdexcept>

#ifdef AUTRED_HAVE_OPENMP
#include <omp.h>
#endif

namespace autred {

namespace {

constexpr int kMaxLookahead = 32;

inline uint64_t aload(const uint64_t& w) {
    return std::atomic_ref<uint64_t>(const_cast<uint64_t&>(w))
        .load(std::memory_order_relaxed);
}
inline void aclear_bit(uint64_t* row, uint32_t c) {
    std::atomic_ref<uint64_t>(row[c >> 6]).fetch_and(~(uint64_t{1} << (c & 63)),
                                                     std::memory_order_relaxed);
}
inline void aset_bit(uint64_t* row, uint32_t c) {
    std::atomic_ref<uint64_t>(row[c >> 6]).fetch_or(uint64_t{1} << (c & 63),
                                                    std::memory_order_relaxed);
}

int thread_count(bool parallel) {
#ifdef AUTRED_HAVE_OPENMP
    return parallel ? omp_get_max_threads() : 1;
#else
    (void)parallel;
    return 1;
#endif
}
int thread_id() {
#ifdef AUTRED_HAVE_OPENMP
    return omp_get_thread_num();
#else
    return 0;
#endif
}

// Precomputed move masks for the duplicator side of a game.
struct DupMasks {
    uint32_t n = 0, words = 0;
    std::vector<uint64_t> post;  // [sym][state] -> move-target mask
    std::vector<uint64_t> acc, nacc, init;

    const uint64_t* post_row(uint32_t sym, uint32_t q) const {
        return post.data() + (static_cast<size_t>(sym) * n + q) * words;
    }
};

struct Setup {
    const Automaton* sp = nullptr;  // spoiler side
    const Automaton* dp = nullptr;  // duplicator side
    std::vector<int32_t> sym_map;   // spoiler symbol -> duplicator symbol or -1
    bool backward = false;
    bool pw_acc = false, pw_init = false;  // pointwise filters (direct family)
    DupMasks dup;
    std::vector<uint8_t> sp_stuck;  // spoiler has no move at all

    uint32_t rows() const { return sp->num_states(); }
    uint32_t cols() const { return dp->num_states(); }
    uint32_t words() const { return dup.words; }
    const std::vector<state_t>& sp_moves(state_t p, symbol_t s) const {
        return backward ? sp->pred(p, s) : sp->succ(p, s);
    }
};

Setup make_setup(const Automaton& sp, const Automaton& dp, WinningCondition cond) {
    Setup s;
    s.sp = &sp;
    s.dp = &dp;
    s.backward = cond == WinningCondition::BackwardDirect ||
                 cond == WinningCondition::BackwardFiniteWord;
    s.pw_acc =
        cond == WinningCondition::Direct || cond == WinningCondition::BackwardDirect;
    s.pw_init = s.backward;

    s.sym_map.resize(sp.num_symbols());
    for (symbol_t a = 0; a < sp.num_symbols(); ++a) {
        auto id = dp.symbol_id(sp.symbol_name(a));
        s.sym_map[a] = id ? static_cast<int32_t>(*id) : -1;
    }

    const uint32_t n = dp.num_states();
    const uint32_t words = (n + 63) / 64;
    s.dup.n = n;
    s.dup.words = words;
    s.dup.post.assign(static_cast<size_t>(dp.num_symbols()) * n * words, 0);
    for (symbol_t a = 0; a < dp.num_symbols(); ++a)
        for (state_t q = 0; q < n; ++q) {
            uint64_t* row =
                s.dup.post.data() + (static_cast<size_t>(a) * n + q) * words;
            const auto& targets = s.backward ? dp.pred(q, a) : dp.succ(q, a);
            for (state_t t : targets) row[t >> 6] |= uint64_t{1} << (t & 63);
        }
    s.dup.acc.assign(words, 0);
    s.dup.init.assign(words, 0);
    for (state_t q : dp.accepting()) s.dup.acc[q >> 6] |= uint64_t{1} << (q & 63);
    for (state_t q : dp.initial()) s.dup.init[q >> 6] |= uint64_t{1} << (q & 63);
    s.dup.nacc.assign(words, ~uint64_t{0});
    if (n % 64) s.dup.nacc[words - 1] = (uint64_t{1} << (n % 64)) - 1;
    for (uint32_t w = 0; w < words; ++w) s.dup.nacc[w] &= ~s.dup.acc[w];

    s.sp_stuck.assign(sp.num_states(), 1);
    for (state_t p = 0; p < sp.num_states(); ++p)
        for (symbol_t a = 0; a < sp.num_symbols() && s.sp_stuck[p]; ++a)
            if (!s.sp_moves(p, a).empty()) s.sp_stuck[p] = 0;
    return s;
}

// ---------------------------------------------------------------------------
// short-word reachability prefilter (words readable from / into states)

// survivor(p,q) == 1 unless some word of length <= depth distinguishes them.
Relation word_prefilter(const Setup& s, int depth) {
    const uint32_t rows = s.rows(), cols = s.cols();
    Relation pre(rows, cols);
    pre.fill();
    const uint32_t nsym = s.sp->num_symbols();
    if (nsym == 0) return pre;
    // cap the signature width
    uint64_t width = 1;
    int d = 0;
    while (d < depth && width * nsym <= 4096) {
        width *= nsym;
        ++d;
    }
    if (d == 0) return pre;

    // signatures over spoiler-symbol words; duplicator transitions mapped
    auto compute = [&](const Automaton& aut, bool dup_side,
                       std::vector<std::vector<uint64_t>>& levels) {
        const uint32_t n = aut.num_states();
        uint64_t w = 1;
        std::vector<uint64_t> prev;  // level j-1 signatures
        for (int j = 1; j <= d; ++j) {
            uint64_t neww = w * nsym;
            uint32_t sw = static_cast<uint32_t>((neww + 63) / 64);
            std::vector<uint64_t> cur(static_cast<size_t>(n) * sw, 0);
            for (state_t p = 0; p < n; ++p)
                for (symbol_t a = 0; a < nsym; ++a) {
                    int32_t local = dup_side ? s.sym_map[a] : static_cast<int32_t>(a);
                    if (local < 0) continue;
                    const auto& targets =
                        s.backward ? aut.pred(p, static_cast<symbol_t>(local))
                                   : aut.succ(p, static_cast<symbol_t>(local));
                    for (state_t t : targets) {
                        if (j == 1) {
                            uint64_t idx = a;
                            cur[p * sw + (idx >> 6)] |= uint64_t{1} << (idx & 63);
                        } else {
                            // word = a . w', shift previous signature of t
                            uint32_t pw = static_cast<uint32_t>((w + 63) / 64);
                            for (uint64_t bit = 0; bit < w; ++bit) {
                                if ((prev[t * pw + (bit >> 6)] >> (bit & 63)) & 1) {
                                    uint64_t idx = a * w + bit;
                                    cur[p * sw + (idx >> 6)] |=
                                        uint64_t{1} << (idx & 63);
                                }
                            }
                        }
                    }
                }
            levels.push_back(cur);
            prev = std::move(cur);
            w = neww;
        }
    };
    std::vector<std::vector<uint64_t>> sp_lv, dp_lv;
    compute(*s.sp, false, sp_lv);
    compute(*s.dp, true, dp_lv);
    uint64_t w = 1;
    for (int j = 1; j <= d; ++j) {
        w *= nsym;
        uint32_t sw = static_cast<uint32_t>((w + 63) / 64);
        for (uint32_t p = 0; p < rows; ++p) {
            if (s.sp_stuck[p]) continue;  // stuck spoiler loses anyway
            for (uint32_t q = 0; q < cols; ++q) {
                if (!pre.get(p, q)) continue;
                for (uint32_t i = 0; i < sw; ++i)
                    if (sp_lv[j - 1][p * sw + i] & ~dp_lv[j - 1][q * sw + i]) {
                        pre.clear(p, q);
                        break;
                    }
            }
        }
    }
    return pre;
}

// ---------------------------------------------------------------------------
// attack DFS, direct family (Direct / BackwardDirect / BackwardFiniteWord)

struct DirectEval {
    const Setup* s = nullptr;
    const Relation* alive = nullptr;
    int k = 1;
    std::vector<uint64_t> bufD, bufR;

    void init(const Setup& setup, int k_) {
        s = &setup;
        k = k_;
        bufD.assign(static_cast<size_t>(k + 1) * setup.words(), 0);
        bufR.assign(static_cast<size_t>(k + 1) * setup.words(), 0);
    }

    bool rec(state_t p, int depth) {
        const uint32_t W = s->words();
        uint64_t* D = bufD.data() + static_cast<size_t>(depth) * W;
        if (depth >= 1) {
            const uint64_t* arow = alive->row(p);
            bool empty = true;
            for (uint32_t w = 0; w < W; ++w) {
                uint64_t d = D[w];
                if (!d) continue;
                empty = false;
                if (d & aload(arow[w])) return false;  // duplicator stops here
            }
            if (empty) return true;
            if (depth == k) return true;
        }
        const Automaton& SA = *s->sp;
        bool any = false;
        uint64_t* R = bufR.data() + static_cast<size_t>(depth) * W;
        for (symbol_t a = 0; a < SA.num_symbols(); ++a) {
            const auto& targets = s->sp_moves(p, a);
            if (targets.empty()) continue;
            any = true;
            int32_t da = s->sym_map[a];
            std::fill(R, R + W, 0);
            if (da >= 0) {
                for (uint32_t w = 0; w < W; ++w) {
                    uint64_t bits = D[w];
                    while (bits) {
                        uint32_t q = (w << 6) + std::countr_zero(bits);
                        bits &= bits - 1;
                        const uint64_t* pr =
                            s->dup.post_row(static_cast<uint32_t>(da), q);
                        for (uint32_t i = 0; i < W; ++i) R[i] |= pr[i];
                    }
                }
            }
            uint64_t* D2 = bufD.data() + static_cast<size_t>(depth + 1) * W;
            for (state_t p2 : targets) {
                std::memcpy(D2, R, W * sizeof(uint64_t));
                if (s->pw_acc && SA.is_accepting(p2))
                    for (uint32_t w = 0; w < W; ++w) D2[w] &= s->dup.acc[w];
                if (s->pw_init && SA.is_initial(p2))
                    for (uint32_t w = 0; w < W; ++w) D2[w] &= s->dup.init[w];
                if (rec(p2, depth + 1)) return true;
            }
        }
        if (!any) return depth >= 1;  // mid-attack deadlock: maximal attack
        return false;
    }

    bool spoiler_wins(state_t p, state_t q) {
        const uint32_t W = s->words();
        std::fill(bufD.begin(), bufD.begin() + W, 0);
        bufD[q >> 6] |= uint64_t{1} << (q & 63);
        return rec(p, 0);
    }
};

Relation solve_direct_family(const Setup& s, int k, WinningCondition cond,
                             const SimOptions& opts) {
    const uint32_t rows = s.rows(), cols = s.cols();
    Relation alive(rows, cols);
    Relation pre = opts.prefilter ? word_prefilter(s, std::min(opts.prefilter_depth, 8))
                                  : Relation();
    for (uint32_t p = 0; p < rows; ++p)
        for (uint32_t q = 0; q < cols; ++q) {
            // pointwise conditions bind at the starting position even when the
            // attacker has no move; a stuck attacker just ends the play there
            if (s.pw_acc && s.sp->is_accepting(p) && !s.dp->is_accepting(q)) continue;
            if (s.pw_init && s.sp->is_initial(p) && !s.dp->is_initial(q)) continue;
            if (!s.sp_stuck[p] && opts.prefilter && !pre.get(p, q)) continue;
            alive.set(p, q);
        }

    std::vector<DirectEval> evals(thread_count(opts.parallel));
    for (auto& e : evals) e.init(s, k);

    std::atomic<bool> changed{true};
    while (changed.load()) {
        changed.store(false);
#ifdef AUTRED_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 1) if (opts.parallel)
#endif
        for (int64_t p = 0; p < static_cast<int64_t>(rows); ++p) {
            if (s.sp_stuck[p]) continue;
            DirectEval& ev = evals[thread_id()];
            ev.alive = &alive;
            uint64_t* row = alive.row(static_cast<uint32_t>(p));
            for (uint32_t w = 0; w < alive.words_per_row(); ++w) {
                uint64_t bits = aload(row[w]);
                while (bits) {
                    uint32_t q = (w << 6) + std::countr_zero(bits);
                    bits &= bits - 1;
                    if (q >= cols) break;
                    if (ev.spoiler_wins(static_cast<state_t>(p), q)) {
                        aclear_bit(row, q);
                        changed.store(true, std::memory_order_relaxed);
                    }
                }
            }
        }
    }
    alive.condition = cond;
    alive.lookahead = static_cast<uint8_t>(k);
    return alive;
}

// ---------------------------------------------------------------------------
// attack DFS with obligation flags (Delayed / Fair)
//
// Pebbles are split into four planes by flag pair (A,B): A = spoiler accepted
// and duplicator has not accepted since, B = duplicator never accepted this
// round.  A reply is good iff not Z(end) and not (A and X(end)) and not
// (B and Y(end)).

struct FlagEval {
    const Setup* s = nullptr;
    const Relation* X = nullptr;  // may be null: empty set
    const Relation* Y = nullptr;
    const Relation* Z = nullptr;
    int k = 1;
    std::vector<uint64_t> planes;  // (k+1) * 4 * words
    std::vector<uint64_t> posts;   // per depth scratch: 4 * words

    void init(const Setup& setup, int k_) {
        s = &setup;
        k = k_;
        planes.assign(static_cast<size_t>(k + 1) * 4 * setup.words(), 0);
        posts.assign(static_cast<size_t>(k + 1) * 4 * setup.words(), 0);
    }

    bool rec(state_t p, int depth) {
        const uint32_t W = s->words();
        uint64_t* P = planes.data() + static_cast<size_t>(depth) * 4 * W;
        uint64_t* P00 = P;
        uint64_t* P01 = P + W;
        uint64_t* P10 = P + 2 * W;
        uint64_t* P11 = P + 3 * W;
        if (depth >= 1) {
            const uint64_t* xr = X ? X->row(p) : nullptr;
            const uint64_t* yr = Y ? Y->row(p) : nullptr;
            const uint64_t* zr = Z ? Z->row(p) : nullptr;
            bool empty = true;
            for (uint32_t w = 0; w < W; ++w) {
                uint64_t nx = xr ? ~aload(xr[w]) : ~uint64_t{0};
                uint64_t ny = yr ? ~aload(yr[w]) : ~uint64_t{0};
                uint64_t nz = zr ? ~aload(zr[w]) : ~uint64_t{0};
                uint64_t good = (P00[w] & nz) | (P01[w] & nz & ny) |
                                (P10[w] & nz & nx) | (P11[w] & nz & nx & ny);
                if (good) return false;
                if (P00[w] | P01[w] | P10[w] | P11[w]) empty = false;
            }
            if (empty) return true;
            if (depth == k) return true;
        }
        const Automaton& SA = *s->sp;
        bool any = false;
        uint64_t* R = posts.data() + static_cast<size_t>(depth) * 4 * W;
        for (symbol_t a = 0; a < SA.num_symbols(); ++a) {
            const auto& targets = s->sp_moves(p, a);
            if (targets.empty()) continue;
            any = true;
            int32_t da = s->sym_map[a];
            std::fill(R, R + 4 * W, 0);
            if (da >= 0) {
                for (int c = 0; c < 4; ++c) {
                    const uint64_t* src = P + static_cast<size_t>(c) * W;
                    uint64_t* dst = R + static_cast<size_t>(c) * W;
                    for (uint32_t w = 0; w < W; ++w) {
                        uint64_t bits = src[w];
                        while (bits) {
                            uint32_t q = (w << 6) + std::countr_zero(bits);
                            bits &= bits - 1;
                            const uint64_t* pr =
                                s->dup.post_row(static_cast<uint32_t>(da), q);
                            for (uint32_t i = 0; i < W; ++i) dst[i] |= pr[i];
                        }
                    }
                }
            }
            uint64_t* N = planes.data() + static_cast<size_t>(depth + 1) * 4 * W;
            uint64_t* N00 = N;
            uint64_t* N01 = N + W;
            uint64_t* N10 = N + 2 * W;
            uint64_t* N11 = N + 3 * W;
            const uint64_t* R00 = R;
            const uint64_t* R01 = R + W;
            const uint64_t* R10 = R + 2 * W;
            const uint64_t* R11 = R + 3 * W;
            for (state_t p2 : targets) {
                bool pacc = SA.is_accepting(p2);
                for (uint32_t w = 0; w < W; ++w) {
                    uint64_t all = R00[w] | R01[w] | R10[w] | R11[w];
                    uint64_t inF = all & s->dup.acc[w];
                    uint64_t n00, n01, n10, n11;
                    if (pacc) {
                        n00 = inF;
                        n01 = 0;
                        n10 = (R00[w] | R10[w]) & s->dup.nacc[w];
                        n11 = (R01[w] | R11[w]) & s->dup.nacc[w];
                    } else {
                        n00 = inF | (R00[w] & s->dup.nacc[w]);
                        n01 = R01[w] & s->dup.nacc[w];
                        n10 = R10[w] & s->dup.nacc[w];
                        n11 = R11[w] & s->dup.nacc[w];
                    }
                    // keep only the weakest flags per state
                    n01 &= ~n00;
                    n10 &= ~n00;
                    n11 &= ~(n00 | n01 | n10);
                    N00[w] = n00;
                    N01[w] = n01;
                    N10[w] = n10;
                    N11[w] = n11;
                }
                if (rec(p2, depth + 1)) return true;
            }
        }
        if (!any) return depth >= 1;
        return false;
    }

    bool spoiler_wins(state_t p, state_t q) {
        const uint32_t W = s->words();
        std::fill(planes.begin(), planes.begin() + 4 * W, 0);
        int plane;
        if (s->dp->is_accepting(q))
            plane = 0;  // (A,B) = (0,0)
        else if (s->sp->is_accepting(p))
            plane = 3;  // (1,1)
        else
            plane = 1;  // (0,1)
        planes[static_cast<size_t>(plane) * W + (q >> 6)] |= uint64_t{1} << (q & 63);
        return rec(p, 0);
    }
};

// one sweep: evaluate candidates and move them between matrices
// mode 0: remove from M pairs that are not spoiler-wins (greatest fixpoint)
// mode 1: add to M pairs not yet in M that are spoiler-wins (least fixpoint)
bool flag_sweep(const Setup& s, std::vector<FlagEval>& evals, Relation& M,
                const Relation* X, const Relation* Y, const Relation* Z, int mode,
                const SimOptions& opts) {
    const uint32_t rows = s.rows(), cols = s.cols();
    std::atomic<bool> changed{false};
#ifdef AUTRED_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 1) if (opts.parallel)
#endif
    for (int64_t p = 0; p < static_cast<int64_t>(rows); ++p) {
        FlagEval& ev = evals[thread_id()];
        ev.X = X;
        ev.Y = Y;
        ev.Z = Z;
        uint64_t* row = M.row(static_cast<uint32_t>(p));
        if (s.sp_stuck[p]) {
            if (mode == 0) {
                // the play ends at a stuck attacker; with an obligation still
                // pending the attacker wins unless the defender sits on an
                // accepting state right here (mode 0 is only used for the
                // pending-obligation fixpoint of the delayed game)
                for (uint32_t q = 0; q < cols; ++q)
                    if (s.dp->is_accepting(q) &&
                        ((aload(row[q >> 6]) >> (q & 63)) & 1)) {
                        aclear_bit(row, q);
                        changed.store(true, std::memory_order_relaxed);
                    }
            }
            continue;
        }
        for (uint32_t q = 0; q < cols; ++q) {
            bool inM = (aload(row[q >> 6]) >> (q & 63)) & 1;
            if (mode == 0 ? !inM : inM) continue;
            bool win = ev.spoiler_wins(static_cast<state_t>(p), q);
            if (mode == 0 && !win) {
                aclear_bit(row, q);
                changed.store(true, std::memory_order_relaxed);
            } else if (mode == 1 && win) {
                aset_bit(row, q);
                changed.store(true, std::memory_order_relaxed);
            }
        }
    }
    return changed.load();
}

Relation seed_spoiler_wins(const Setup& s, const SimOptions& opts) {
    const uint32_t rows = s.rows(), cols = s.cols();
    Relation W(rows, cols);
    if (!opts.prefilter) return W;
    Relation pre = word_prefilter(s, std::min(opts.prefilter_depth, 8));
    for (uint32_t p = 0; p < rows; ++p) {
        if (s.sp_stuck[p]) continue;
        for (uint32_t q = 0; q < cols; ++q)
            if (!pre.get(p, q)) W.set(p, q);
    }
    return W;
}

Relation complement_to_relation(const Setup& s, const Relation& W,
                                WinningCondition cond, int k) {
    Relation rel(W.rows(), W.cols());
    for (uint32_t p = 0; p < W.rows(); ++p)
        for (uint32_t q = 0; q < W.cols(); ++q)
            if (!W.get(p, q)) rel.set(p, q);
    (void)s;
    rel.condition = cond;
    rel.lookahead = static_cast<uint8_t>(k);
    return rel;
}

Relation solve_delayed(const Setup& s, int k, const SimOptions& opts) {
    const uint32_t rows = s.rows(), cols = s.cols();
    std::vector<FlagEval> evals(thread_count(opts.parallel));
    for (auto& e : evals) e.init(s, k);

    Relation W = seed_spoiler_wins(s, opts);
    // a stuck attacker on an accepting state beats a non-accepting defender:
    // the obligation raised right there can never be discharged
    for (uint32_t p = 0; p < rows; ++p) {
        if (!s.sp_stuck[p] || !s.sp->is_accepting(p)) continue;
        for (uint32_t q = 0; q < cols; ++q)
            if (!s.dp->is_accepting(q)) W.set(p, q);
    }
    while (true) {
        // X* = largest X with X = CPre(X, X, W): attacker keeps some pending
        // obligation alive forever (replies that discharge the inherited one
        // but raise a fresh one are checked against X as well)
        Relation X(rows, cols);
        X.fill();
        while (flag_sweep(s, evals, X, &X, &X, &W, 0, opts)) {
        }
        // W grows by CPre(X*, empty, W)
        bool added = false;
        while (flag_sweep(s, evals, W, &X, nullptr, &W, 1, opts)) added = true;
        if (!added) break;
    }
    return complement_to_relation(s, W, WinningCondition::Delayed, k);
}

Relation solve_fair(const Setup& s, int k, const SimOptions& opts) {
    const uint32_t rows = s.rows(), cols = s.cols();
    std::vector<FlagEval> evals(thread_count(opts.parallel));
    for (auto& e : evals) e.init(s, k);

    Relation Z = seed_spoiler_wins(s, opts);
    while (true) {
        // X* = largest X with X = least Y solving Y = CPre(X, Y, Z)
        Relation X(rows, cols);
        X.fill();
        while (true) {
            Relation Ynew(rows, cols);
            while (flag_sweep(s, evals, Ynew, &X, &Ynew, &Z, 1, opts)) {
            }
            if (Ynew == X) break;
            X = std::move(Ynew);
        }
        // accumulate
        bool grew = false;
        for (uint32_t p = 0; p < rows; ++p) {
            uint64_t* zr = Z.row(p);
            const uint64_t* xr = X.row(p);
            for (uint32_t w = 0; w < Z.words_per_row(); ++w) {
                uint64_t add = xr[w] & ~zr[w];
                if (add) {
                    zr[w] |= add;
                    grew = true;
                }
            }
        }
        if (!grew) break;
    }
    return complement_to_relation(s, Z, WinningCondition::Fair, k);
}

Relation dispatch(const Setup& s, int k, WinningCondition cond,
                  const SimOptions& opts) {
    switch (cond) {
        case WinningCondition::Direct:
        case WinningCondition::BackwardDirect:
        case WinningCondition::BackwardFiniteWord:
            return solve_direct_family(s, k, cond, opts);
        case WinningCondition::Delayed:
            return solve_delayed(s, k, opts);
        case WinningCondition::Fair:
            return solve_fair(s, k, opts);
        default:
            throw std::invalid_argument(
                "counting condition is solved by counting_backward");
    }
}

void check_k(int k) {
    if (k < 1) throw std::invalid_argument("lookahead must be at least 1");
    if (k > kMaxLookahead) throw std::invalid_argument("lookahead too large");
}

}  // namespace

Relation solve_lookahead(const Automaton& aut, int k, WinningCondition cond,
                         const SimOptions& opts) {
    check_k(k);
    Setup s = make_setup(aut, aut, cond);
    return dispatch(s, k, cond, opts);
}

Relation solve_cross(const Automaton& a, const Automaton& b, int k,
                     WinningCondition cond, const SimOptions& opts) {
    check_k(k);
    Setup s = make_setup(a, b, cond);
    Relation rel = dispatch(s, k, cond, opts);
    rel.cross = true;
    return rel;
}

Relation short_word_prefilter(const Automaton& aut, int depth, bool backward) {
    if (depth < 0 || depth > 8)
        throw std::invalid_argument("prefilter depth must be in [0, 8]");
    Setup s = make_setup(aut, aut,
                         backward ? WinningCondition::BackwardFiniteWord
                                  : WinningCondition::Direct);
    Relation pre = word_prefilter(s, depth);
    pre.exact_semantics = false;
    return pre;
}

// ---------------------------------------------------------------------------
// jumping fair simulation via an acceptance-bit expansion of b

Relation jumping_fair(const Automaton& a, const Automaton& b, int k,
                      const Relation& jump, const SimOptions& opts) {
    check_k(k);
    const uint32_t n = b.num_states();
    if (jump.rows() != n || jump.cols() != n)
        throw std::invalid_argument("jump relation shape mismatch");
    if (!jump.is_reflexive())
        throw std::invalid_argument("jump relation must be reflexive");
    if (!jump.closed)
        throw std::invalid_argument("jump relation must be transitively closed");

    // targets reachable by jumping through an accepting state
    std::vector<std::vector<uint8_t>> through_acc(n, std::vector<uint8_t>(n, 0));
    for (uint32_t q = 0; q < n; ++q)
        for (state_t f : b.accepting()) {
            if (!jump.get(q, f)) continue;
            for (uint32_t r = 0; r < n; ++r)
                if (jump.get(f, r)) through_acc[q][r] = 1;
        }

    // expanded automaton: state 2q+bit, accepting iff bit set
    std::vector<Transition> trans;
    for (uint32_t q = 0; q < n; ++q) {
        for (symbol_t s = 0; s < b.num_symbols(); ++s) {
            std::vector<uint8_t> plain(n, 0), acc(n, 0);
            for (uint32_t mid = 0; mid < n; ++mid) {
                if (!jump.get(q, mid)) continue;
                bool via_acc = through_acc[q][mid];
                for (state_t t : b.succ(mid, s)) {
                    if (via_acc)
                        acc[t] = 1;
                    else
                        plain[t] = 1;
                }
            }
            for (uint32_t t = 0; t < n; ++t) {
                if (acc[t])
                    for (uint32_t bit = 0; bit < 2; ++bit)
                        trans.push_back({2 * q + bit, s, 2 * t + 1});
                else if (plain[t])
                    for (uint32_t bit = 0; bit < 2; ++bit)
                        trans.push_back({2 * q + bit, s, 2 * t});
            }
        }
    }
    auto bit0 = [&](uint32_t q) {
        for (state_t f : b.accepting())
            if (jump.get(q, f)) return 1u;
        return 0u;
    };
    std::vector<state_t> initial, accepting;
    for (state_t q : b.initial()) initial.push_back(2 * q + bit0(q));
    for (uint32_t q = 0; q < n; ++q) accepting.push_back(2 * q + 1);
    Automaton expanded = Automaton::build(b.semantics(), 2 * n, b.symbols(),
                                          std::move(initial), std::move(accepting),
                                          std::move(trans));

    WinningCondition cond = a.semantics() == Semantics::Finite
                                ? WinningCondition::Direct
                                : WinningCondition::Fair;
    Relation wide = solve_cross(a, expanded, k, cond, opts);
    Relation rel(a.num_states(), n);
    for (uint32_t p = 0; p < a.num_states(); ++p)
        for (uint32_t q = 0; q < n; ++q)
            if (wide.get(p, 2 * q + bit0(q))) rel.set(p, q);
    rel.condition = cond;
    rel.lookahead = static_cast<uint8_t>(k);
    rel.cross = true;
    rel.exact_semantics = false;  // sound under-approximation for inclusion
    return rel;
}

}  // namespace autred
