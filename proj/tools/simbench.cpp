// Times the parallel fixpoint sweeps against the serial reference on random
// automata and checks that both produce the same relation.
// Usage: simbench [n] [k] [count] [seed]

#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef AUTRED_HAVE_OPENMP
#include <omp.h>
#endif

#include "autred/generate.hpp"
#include "autred/relation.hpp"
#include "autred/simulation.hpp"

using namespace autred;

namespace {

double run_ms(const Automaton& aut, int k, WinningCondition cond, bool parallel,
              Relation* out) {
    SimOptions opts;
    opts.parallel = parallel;
    auto t0 = std::chrono::steady_clock::now();
    Relation r = solve_lookahead(aut, k, cond, opts);
    auto t1 = std::chrono::steady_clock::now();
    *out = std::move(r);
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

const char* cond_name(WinningCondition c) {
    switch (c) {
        case WinningCondition::Direct: return "direct";
        case WinningCondition::Delayed: return "delayed";
        case WinningCondition::Fair: return "fair";
        case WinningCondition::BackwardDirect: return "backward-direct";
        case WinningCondition::BackwardFiniteWord: return "backward-word";
        default: return "?";
    }
}

}  // namespace

int main(int argc, char** argv) {
    uint32_t n = argc > 1 ? static_cast<uint32_t>(std::atoi(argv[1])) : 60;
    int k = argc > 2 ? std::atoi(argv[2]) : 4;
    uint32_t count = argc > 3 ? static_cast<uint32_t>(std::atoi(argv[3])) : 5;
    uint64_t seed = argc > 4 ? std::strtoull(argv[4], nullptr, 10) : 7;

#ifdef AUTRED_HAVE_OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (compiled without OpenMP)\n");
#endif
    std::printf("n=%u k=%d count=%u seed=%llu td=2.0 ad=0.5 sigma=2\n\n", n, k, count,
                static_cast<unsigned long long>(seed));
    std::printf("%-16s %12s %12s %8s\n", "condition", "serial ms", "parallel ms",
                "speedup");

    const WinningCondition conds[] = {
        WinningCondition::Direct,
        WinningCondition::Delayed,
        WinningCondition::Fair,
        WinningCondition::BackwardDirect,
    };
    int mismatches = 0;
    for (WinningCondition cond : conds) {
        double serial = 0.0, parallel = 0.0;
        for (uint32_t i = 0; i < count; ++i) {
            TVParams params{n, 2, 2.0, 0.5};
            Automaton aut = tabakov_vardi(params, seed + i, Semantics::Buchi);
            Relation rs, rp;
            serial += run_ms(aut, k, cond, false, &rs);
            parallel += run_ms(aut, k, cond, true, &rp);
            if (!(rs == rp)) {
                std::fprintf(stderr, "MISMATCH: %s instance %u\n", cond_name(cond), i);
                ++mismatches;
            }
        }
        std::printf("%-16s %12.2f %12.2f %8.2f\n", cond_name(cond), serial / count,
                    parallel / count, parallel > 0 ? serial / parallel : 0.0);
    }
    if (mismatches) {
        std::fprintf(stderr, "\n%d mismatching instances\n", mismatches);
        return 1;
    }
    std::printf("\nall relations agree between serial and parallel runs\n");
    return 0;
}
