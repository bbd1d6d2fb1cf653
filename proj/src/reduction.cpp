#include "autred/reduction.hpp"

#include <algorithm>
#include <bit>
#include <array>
#include <chrono>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace autred {

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0)
        .count();
}

void record(ReductionReport* rep, const std::string& pass, const Automaton& before,
            const Automaton& after, double millis) {
    if (!rep) return;
    rep->passes.push_back({pass, before.num_states(), after.num_states(),
                           before.num_transitions(), after.num_transitions(),
                           millis});
}

// Lazily computed transitive closures of the lookahead games on one automaton
// instance.  Reset whenever the automaton changes.
struct RelCache {
    const Automaton* aut = nullptr;
    int k = 1;
    const SimOptions* opts = nullptr;
    std::array<std::optional<Relation>, 6> closures;
    std::array<std::optional<Relation>, 6> one_step;

    void bind(const Automaton& a, int kk, const SimOptions& o) {
        aut = &a;
        k = kk;
        opts = &o;
        closures = {};
        one_step = {};
    }
    const Relation& closure(WinningCondition c) {
        auto i = static_cast<size_t>(c);
        if (!closures[i])
            closures[i] = solve_lookahead(*aut, k, c, *opts).transitive_closure();
        return *closures[i];
    }
    // Plain one-step simulation, regardless of the bound lookahead.  The
    // strict endpoint of the two-endpoint pruning rules must come from here:
    // those rules are only language-preserving when the strict side is a
    // genuine simulation (which propagates move-by-move), while the coarser
    // lookahead closures are safe on the non-strict side only.  Using the
    // closure on both sides lets simultaneous removals starve each other's
    // justifying paths.
    const Relation& plain(WinningCondition c) {
        if (k == 1) return closure(c);
        auto i = static_cast<size_t>(c);
        if (!one_step[i])
            one_step[i] = solve_lookahead(*aut, 1, c, *opts).transitive_closure();
        return *one_step[i];
    }
};

WinningCondition forward_cond(const Automaton& a) {
    return a.semantics() == Semantics::Buchi ? WinningCondition::Delayed
                                             : WinningCondition::Direct;
}
WinningCondition backward_cond(const Automaton& a) {
    return a.semantics() == Semantics::Buchi ? WinningCondition::BackwardDirect
                                             : WinningCondition::BackwardFiniteWord;
}

// succ masks per symbol for subsumer lookups
std::vector<uint64_t> succ_masks(const Automaton& a, symbol_t s, uint32_t words) {
    std::vector<uint64_t> m(static_cast<size_t>(a.num_states()) * words, 0);
    for (state_t p = 0; p < a.num_states(); ++p)
        for (state_t r : a.succ(p, s))
            m[static_cast<size_t>(p) * words + (r >> 6)] |= uint64_t{1} << (r & 63);
    return m;
}

uint64_t pack_transition(const Transition& t) {
    return (static_cast<uint64_t>(t.src) << 42) |
           (static_cast<uint64_t>(t.sym) << 21) | t.dst;
}

// Removes every transition with a distinct subsumer among the original
// transitions.  src_rel == nullptr means identity on sources.
PruneResult prune_transitions(const Automaton& aut, const Relation* src_rel,
                              const Relation& tgt_rel,
                              const Relation* tgt_rel2 = nullptr,
                              const std::unordered_set<uint64_t>* transient2 =
                                  nullptr) {
    const uint32_t n = aut.num_states();
    const uint32_t words = (n + 63) / 64;
    std::vector<Transition> kept;
    uint64_t removed = 0;
    for (symbol_t s = 0; s < aut.num_symbols(); ++s) {
        std::vector<uint64_t> smask;
        std::vector<uint64_t> subsumer(words);
        for (state_t p = 0; p < n; ++p) {
            const auto& out = aut.succ(p, s);
            if (out.empty()) continue;
            // targets of candidate subsuming transitions with source related
            // to p (identity: p itself)
            const uint64_t* sub = nullptr;
            if (!src_rel) {
                if (smask.empty()) smask = succ_masks(aut, s, words);
                sub = smask.data() + static_cast<size_t>(p) * words;
            } else {
                std::fill(subsumer.begin(), subsumer.end(), 0);
                const uint64_t* prow = src_rel->row(p);
                for (uint32_t w = 0; w < words; ++w) {
                    uint64_t bits = prow[w];
                    while (bits) {
                        uint32_t p2 = (w << 6) + std::countr_zero(bits);
                        bits &= bits - 1;
                        if (p2 >= n) break;
                        for (state_t r2 : aut.succ(p2, s))
                            subsumer[r2 >> 6] |= uint64_t{1} << (r2 & 63);
                    }
                }
                sub = subsumer.data();
            }
            for (state_t r : out) {
                bool drop = false;
                const uint64_t* trow = tgt_rel.row(r);
                for (uint32_t w = 0; w < words && !drop; ++w)
                    if (trow[w] & sub[w]) drop = true;
                if (!drop && tgt_rel2 && transient2) {
                    // second component: subsumer must be a transient transition
                    const uint64_t* t2row = tgt_rel2->row(r);
                    for (state_t r2 : out) {
                        if (!((t2row[r2 >> 6] >> (r2 & 63)) & 1)) continue;
                        if (transient2->count(pack_transition({p, s, r2}))) {
                            drop = true;
                            break;
                        }
                    }
                }
                if (drop)
                    ++removed;
                else
                    kept.push_back({p, s, r});
            }
        }
    }
    if (removed == 0) return {aut, 0};
    Automaton out = Automaton::build(aut.semantics(), n, aut.symbols(),
                                     aut.initial(), aut.accepting(),
                                     std::move(kept));
    return {std::move(out), removed};
}

PruneResult prune_cached(const Automaton& aut, PruneRule rule, RelCache& cache) {
    switch (rule) {
        case PruneRule::TargetStrictDirect: {
            Relation strict = cache.closure(WinningCondition::Direct).strict_part();
            return prune_transitions(aut, nullptr, strict);
        }
        case PruneRule::SourceStrictBackward: {
            Relation strict = cache.closure(backward_cond(aut)).strict_part();
            Relation id(aut.num_states(), aut.num_states());
            for (uint32_t p = 0; p < aut.num_states(); ++p) id.set(p, p);
            return prune_transitions(aut, &strict, id);
        }
        case PruneRule::SourceBackwardSimTarget: {
            Relation strict_bw = cache.plain(backward_cond(aut)).strict_part();
            const Relation& di = cache.closure(WinningCondition::Direct);
            return prune_transitions(aut, &strict_bw, di);
        }
        case PruneRule::SourceBackwardTargetSim: {
            const Relation& bw = cache.closure(backward_cond(aut));
            Relation strict_di =
                cache.plain(WinningCondition::Direct).strict_part();
            return prune_transitions(aut, &bw, strict_di);
        }
        case PruneRule::TransientCombo: {
            if (aut.semantics() != Semantics::Buchi)
                throw std::invalid_argument(
                    "transient pruning is only language-preserving for Buchi "
                    "semantics");
            Relation strict_di =
                cache.closure(WinningCondition::Direct).strict_part();
            Relation strict_f = cache.closure(WinningCondition::Fair).strict_part();
            std::unordered_set<uint64_t> transient;
            for (const Transition& t : transient_transitions(aut))
                transient.insert(pack_transition(t));
            return prune_transitions(aut, nullptr, strict_di, &strict_f,
                                     &transient);
        }
    }
    throw std::invalid_argument("unknown prune rule");
}

const char* prune_name(PruneRule rule) {
    switch (rule) {
        case PruneRule::TargetStrictDirect: return "prune:target-strict-direct";
        case PruneRule::SourceStrictBackward: return "prune:source-strict-backward";
        case PruneRule::SourceBackwardSimTarget:
            return "prune:source-backward-sim-target";
        case PruneRule::SourceBackwardTargetSim:
            return "prune:source-backward-target-sim";
        case PruneRule::TransientCombo: return "prune:transient-combo";
    }
    return "prune:?";
}

}  // namespace

QuotientResult quotient(const Automaton& aut, const Relation& preorder) {
    const uint32_t n = aut.num_states();
    if (preorder.rows() != n || preorder.cols() != n || preorder.cross)
        throw std::invalid_argument("quotient needs a square same-automaton relation");
    if (!preorder.closed)
        throw std::invalid_argument("quotient needs a transitively closed preorder");
    const bool buchi = aut.semantics() == Semantics::Buchi;
    const WinningCondition c = preorder.condition;
    const bool ok = buchi ? (c == WinningCondition::Delayed ||
                             c == WinningCondition::BackwardDirect)
                          : (c == WinningCondition::Direct ||
                             c == WinningCondition::BackwardFiniteWord);
    if (!ok)
        throw std::invalid_argument(
            "relation condition is not quotienting-safe for these semantics");

    std::vector<state_t> rep(n);
    for (state_t p = 0; p < n; ++p) {
        rep[p] = p;
        for (state_t q = 0; q < p; ++q)
            if (preorder.get(p, q) && preorder.get(q, p)) {
                rep[p] = rep[q];
                break;
            }
    }
    std::vector<state_t> dense(n, 0);
    uint32_t classes = 0;
    for (state_t p = 0; p < n; ++p)
        if (rep[p] == p) dense[p] = classes++;
    QuotientResult res;
    res.class_of.resize(n);
    for (state_t p = 0; p < n; ++p) res.class_of[p] = dense[rep[p]];

    std::vector<Transition> trans;
    for (const Transition& t : aut.transitions())
        trans.push_back({res.class_of[t.src], t.sym, res.class_of[t.dst]});
    std::vector<state_t> initial, accepting;
    for (state_t p : aut.initial()) initial.push_back(res.class_of[p]);
    for (state_t p : aut.accepting()) accepting.push_back(res.class_of[p]);
    res.automaton = Automaton::build(aut.semantics(), classes, aut.symbols(),
                                     std::move(initial), std::move(accepting),
                                     std::move(trans));
    return res;
}

PruneResult prune(const Automaton& aut, const PrunerSpec& spec,
                  const SimOptions& opts) {
    if (spec.k < 1) throw std::invalid_argument("lookahead must be at least 1");
    RelCache cache;
    cache.bind(aut, spec.k, opts);
    return prune_cached(aut, spec.rule, cache);
}

SaturateResult saturate(const Automaton& aut, const SaturatorSpec& spec,
                        const SimOptions& opts) {
    if (spec.k < 1) throw std::invalid_argument("lookahead must be at least 1");
    const uint32_t n = aut.num_states();
    const uint32_t words = (n + 63) / 64;
    const bool buchi = aut.semantics() == Semantics::Buchi;
    WinningCondition cond = spec.rule == SaturateRule::Forward
                                ? (buchi ? WinningCondition::Delayed
                                         : WinningCondition::Direct)
                                : (buchi ? WinningCondition::BackwardDirect
                                         : WinningCondition::BackwardFiniteWord);
    Relation R = solve_lookahead(aut, spec.k, cond, opts).transitive_closure();
    // column masks: col(r) = { r2 : R(r2, r) }
    std::vector<uint64_t> cols(static_cast<size_t>(n) * words, 0);
    for (uint32_t p = 0; p < n; ++p)
        for (uint32_t q = 0; q < n; ++q)
            if (R.get(p, q))
                cols[static_cast<size_t>(q) * words + (p >> 6)] |=
                    uint64_t{1} << (p & 63);

    // per symbol, per new source: mask of new targets
    std::vector<std::vector<uint64_t>> grown(
        aut.num_symbols(),
        std::vector<uint64_t>(static_cast<size_t>(n) * words, 0));
    for (const Transition& t : aut.transitions()) {
        const uint64_t* sources;  // states allowed as the new source
        const uint64_t* targets;  // states allowed as the new target
        if (spec.rule == SaturateRule::Forward) {
            sources = R.row(t.src);  // p above old source
            targets = cols.data() + static_cast<size_t>(t.dst) * words;
        } else {
            sources = cols.data() + static_cast<size_t>(t.src) * words;
            targets = R.row(t.dst);
        }
        auto& g = grown[t.sym];
        for (uint32_t w = 0; w < words; ++w) {
            uint64_t bits = sources[w];
            while (bits) {
                uint32_t p2 = (w << 6) + std::countr_zero(bits);
                bits &= bits - 1;
                if (p2 >= n) break;
                uint64_t* row = g.data() + static_cast<size_t>(p2) * words;
                for (uint32_t i = 0; i < words; ++i) row[i] |= targets[i];
            }
        }
    }
    std::vector<Transition> trans;
    for (symbol_t s = 0; s < aut.num_symbols(); ++s)
        for (state_t p = 0; p < n; ++p) {
            const uint64_t* row = grown[s].data() + static_cast<size_t>(p) * words;
            for (uint32_t w = 0; w < words; ++w) {
                uint64_t bits = row[w];
                while (bits) {
                    uint32_t r = (w << 6) + std::countr_zero(bits);
                    bits &= bits - 1;
                    if (r >= n) break;
                    trans.push_back({p, s, r});
                }
            }
        }
    SaturateResult res;
    res.automaton = Automaton::build(aut.semantics(), n, aut.symbols(),
                                     aut.initial(), aut.accepting(),
                                     std::move(trans));
    res.added = res.automaton.num_transitions() - aut.num_transitions();
    return res;
}

namespace {

// one pruning+quotienting round at lookahead kk; returns true when changed
bool reduction_round(Automaton& A, int kk, ReductionReport* report,
                     const SimOptions& opts) {
    bool changed = false;
    RelCache cache;
    cache.bind(A, kk, opts);
    auto tag = [&](const char* name) {
        return std::string(name) + "@" + std::to_string(kk);
    };

    // Source-endpoint rules run first: a freshly saturated transition shares
    // its source with the transition that justified it, so the target-endpoint
    // rule would delete it again before it had a chance to subsume transitions
    // from backward-dominated sources.
    constexpr PruneRule rules[] = {
        PruneRule::SourceStrictBackward, PruneRule::SourceBackwardSimTarget,
        PruneRule::SourceBackwardTargetSim, PruneRule::TargetStrictDirect,
        PruneRule::TransientCombo};
    for (PruneRule rule : rules) {
        if (rule == PruneRule::TransientCombo &&
            A.semantics() != Semantics::Buchi)
            continue;
        auto t0 = std::chrono::steady_clock::now();
        PruneResult pr = prune_cached(A, rule, cache);
        if (pr.removed) {
            Automaton next = remove_dead(pr.automaton).automaton;
            record(report, tag(prune_name(rule)), A, next, ms_since(t0));
            A = std::move(next);
            cache.bind(A, kk, opts);
            changed = true;
        }
    }
    for (WinningCondition cond : {forward_cond(A), backward_cond(A)}) {
        auto t0 = std::chrono::steady_clock::now();
        QuotientResult qr = quotient(A, cache.closure(cond));
        if (qr.automaton.num_states() < A.num_states()) {
            Automaton next = remove_dead(qr.automaton).automaton;
            record(report, tag(("quotient:" + to_string(cond)).c_str()), A, next,
                   ms_since(t0));
            A = std::move(next);
            cache.bind(A, kk, opts);
            changed = true;
        }
    }
    return changed;
}

Automaton heavy_inner(Automaton A, int k, ReductionReport* report,
                      const SimOptions& opts) {
    {
        auto t0 = std::chrono::steady_clock::now();
        RemoveDeadResult rd = remove_dead(A);
        if (rd.automaton.num_states() != A.num_states() ||
            rd.automaton.num_transitions() != A.num_transitions())
            record(report, "remove_dead", A, rd.automaton, ms_since(t0));
        A = std::move(rd.automaton);
    }
    std::vector<int> ks = {1};
    if (k > 1) ks.push_back(k);
    bool outer = true;
    while (outer) {
        outer = false;
        for (int kk : ks)
            while (reduction_round(A, kk, report, opts)) outer = true;
    }
    return A;
}

}  // namespace

Automaton heavy(const Automaton& aut, int k, ReductionReport* report,
                const SimOptions& opts) {
    if (k < 1) throw std::invalid_argument("lookahead must be at least 1");
    if (report && report->passes.empty()) report->input = aut.stats();
    Automaton A = aut;
    if (A.semantics() == Semantics::Finite) {
        auto t0 = std::chrono::steady_clock::now();
        Automaton next = single_accepting_transform(A);
        if (!next.same_structure(A))
            record(report, "single_accepting", A, next, ms_since(t0));
        A = std::move(next);
    }
    A = heavy_inner(std::move(A), k, report, opts);
    if (report) report->output = A.stats();
    return A;
}

Automaton light(const Automaton& aut, int k, ReductionReport* report,
                const SimOptions& opts) {
    if (k < 1) throw std::invalid_argument("lookahead must be at least 1");
    if (report && report->passes.empty()) report->input = aut.stats();
    auto t0 = std::chrono::steady_clock::now();
    Automaton A = remove_dead(aut).automaton;
    record(report, "remove_dead", aut, A, ms_since(t0));
    t0 = std::chrono::steady_clock::now();
    Relation R = solve_lookahead(A, k, forward_cond(A), opts).transitive_closure();
    QuotientResult qr = quotient(A, R);
    Automaton next = remove_dead(qr.automaton).automaton;
    record(report,
           "quotient:" + to_string(forward_cond(A)) + "@" + std::to_string(k), A,
           next, ms_since(t0));
    A = std::move(next);
    if (report) report->output = A.stats();
    return A;
}

namespace {

// Exact structural fingerprint (semantics, sets, transition list).  Used to
// detect that the saturate/reduce orbit has started repeating.
std::string fingerprint(const Automaton& a) {
    std::ostringstream os;
    os << static_cast<int>(a.semantics()) << ';' << a.num_states() << ';';
    for (state_t q : a.initial()) os << q << ',';
    os << ';';
    for (state_t q : a.accepting()) os << q << ',';
    os << ';';
    for (const auto& t : a.transitions())
        os << t.src << '>' << t.sym << '>' << t.dst << ',';
    return os.str();
}

}  // namespace

Automaton heavy_sat(const Automaton& aut, int k, ReductionReport* report,
                    const SimOptions& opts) {
    Automaton best = heavy(aut, k, report, opts);
    // A saturate pass can trade transitions sideways (same counts, different
    // shape) before a later pass can cash the trade in, so the loop keeps
    // going as long as it sees a structure it has not seen before, and
    // returns the lexicographically smallest (states, transitions) automaton
    // encountered.  The structure space is finite, so this terminates; the
    // round cap is a belt-and-braces bound.
    Automaton cur = best;
    std::unordered_set<std::string> seen{fingerprint(cur)};
    for (int round = 0; round < 64; ++round) {
        auto t0 = std::chrono::steady_clock::now();
        SaturateResult fwd = saturate(cur, {SaturateRule::Forward, k}, opts);
        record(report, "saturate:forward@" + std::to_string(k), cur,
               fwd.automaton, ms_since(t0));
        cur = std::move(fwd.automaton);

        t0 = std::chrono::steady_clock::now();
        Relation bw = solve_lookahead(cur, k, backward_cond(cur), opts)
                          .transitive_closure();
        QuotientResult qr = quotient(cur, bw);
        if (qr.automaton.num_states() < cur.num_states()) {
            record(report, "quotient:" + to_string(backward_cond(cur)) + "@" +
                               std::to_string(k),
                   cur, qr.automaton, ms_since(t0));
            cur = std::move(qr.automaton);
        }

        t0 = std::chrono::steady_clock::now();
        SaturateResult bwd = saturate(cur, {SaturateRule::Backward, k}, opts);
        record(report, "saturate:backward@" + std::to_string(k), cur,
               bwd.automaton, ms_since(t0));
        cur = std::move(bwd.automaton);

        cur = heavy_inner(std::move(cur), k, report, opts);
        bool better = cur.num_states() < best.num_states() ||
                      (cur.num_states() == best.num_states() &&
                       cur.num_transitions() < best.num_transitions());
        if (better) best = cur;
        if (!seen.insert(fingerprint(cur)).second) break;
    }
    if (report) report->output = best.stats();
    return best;
}

std::string ReductionReport::to_text() const {
    std::ostringstream os;
    os << "input:  " << input.states << " states, " << input.transitions
       << " transitions\n";
    for (const PassEntry& e : passes) {
        os << "  " << e.pass << ": " << e.states_before << "->" << e.states_after
           << " states, " << e.transitions_before << "->" << e.transitions_after
           << " transitions (" << e.millis << " ms)\n";
    }
    os << "output: " << output.states << " states, " << output.transitions
       << " transitions\n";
    return os.str();
}

std::string ReductionReport::to_csv() const {
    std::ostringstream os;
    os << "pass,states_before,states_after,transitions_before,transitions_after,"
          "millis\n";
    for (const PassEntry& e : passes)
        os << e.pass << ',' << e.states_before << ',' << e.states_after << ','
           << e.transitions_before << ',' << e.transitions_after << ',' << e.millis
           << '\n';
    return os.str();
}

}  // namespace autred
